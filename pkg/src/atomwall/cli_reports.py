"""Command-line front end: energy, sweep, validate, regimes.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation
failure.  Floats are written with 12 significant digits in scientific
notation so that identical configurations give identical bytes.
"""
from __future__ import annotations

import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from functools import lru_cache
import io
import json
import math
import sys

import numpy as np

from .filon import QuadratureError
from .hydrogen_spectral import (GROUND_ENERGY, SPECTRAL_GAP, RadialGrid, SpectralError,
                                bound_state_energies, build_spectral_measure,
                                dalgarno_lewis_reference, expectation)
from .image_charge import WallGeometry, coulomb_expectation
from .interaction_energy import (classify_regime, fit_power_law, interaction_energy,
                                 phi_sharp_norm_scaling, regime_thresholds)
from .oscillatory_engine import (CutoffProfile, OscillatoryParams, aleph_of_product,
                                 eval_I_contour, eval_I_direct, eval_J)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VALIDATION = 0, 1, 2, 3
CSV_FIELDS = ("alpha", "L", "aleph", "W_qft", "vdw_baseline", "retardation_ratio", "regime",
              "e1", "e2", "e3", "e4", "route_residual")
SCHEMA_VERSION = 1
MISSING = "nan"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    alpha: float = 1.0 / 173.0
    L: float | None = None
    L_min: float = 2.0
    L_max: float = 300.0
    steps: int = 50
    log_steps: bool = False
    lambda_cutoff: float = 1.0
    cutoff: str = "bump"
    grid_points: int = 20000
    r_max: float = 200.0
    energy_cutoff: float = 400.0
    rtol: float = 1e-11
    prefactors: tuple = (1.0, 1.0, 1.0, 1.0)
    format: str = "csv"
    out: str | None = None
    workers: int = 1

    def validate(self, need_range=False):
        if not 0 < self.alpha < 1:
            raise UsageError(f"--alpha must lie in (0, 1), got {self.alpha}")
        if self.L is not None and not self.L > 1:
            raise UsageError(f"--L must exceed 1, got {self.L}")
        if need_range:
            if not (self.L_min > 1 and self.L_max >= self.L_min):
                raise UsageError(f"need 1 < L-min <= L-max, got {self.L_min}, {self.L_max}")
            if self.steps < 1:
                raise UsageError("--steps must be >= 1")
        if self.lambda_cutoff <= 0 or self.rtol <= 0:
            raise UsageError("cutoff scale and tolerances must be positive")
        if self.cutoff not in ("bump", "exp"):
            raise UsageError(f"--cutoff must be bump or exp, got {self.cutoff}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.format}")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.grid_points < 2 or self.r_max <= 0:
            raise UsageError("grid needs r_max > 0 and at least 2 points")
        return self

    @property
    def grid(self):
        return RadialGrid(self.r_max, self.grid_points)

    def params(self, L, alpha=None):
        return OscillatoryParams(self.alpha if alpha is None else alpha, L,
                                 CutoffProfile(self.cutoff, self.lambda_cutoff), rtol=self.rtol)

    def L_values(self):
        if self.steps == 1:
            return [self.L_min]
        if self.log_steps:
            return list(np.geomspace(self.L_min, self.L_max, self.steps))
        return list(np.linspace(self.L_min, self.L_max, self.steps))


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key, value):
    if key == "prefactors":
        parts = [float(v) for v in str(value).replace(";", ",").split(",")]
        if len(parts) != 4:
            raise UsageError("prefactors needs four comma-separated numbers")
        return tuple(parts)
    kind = _FIELD_TYPES[key]
    if kind == "bool":
        return str(value).strip().lower() in ("1", "true", "yes", "on")
    if kind == "int":
        return int(value)
    if kind in ("float", "float | None"):
        return float(value)
    return str(value)


def read_config_file(path):
    """Flat key=value file; '#' starts a comment, dashes and underscores both accepted."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _FIELD_TYPES:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = _coerce(key, value)
            except ValueError as exc:
                raise UsageError(f"{path}:{n}: bad value for {key}: {value!r}") from exc
    return out


@lru_cache(maxsize=4)
def cached_measure(r_max, n_points, energy_cutoff):
    return build_spectral_measure(RadialGrid(r_max, n_points), energy_cutoff)


def measure_for(cfg: RunConfig):
    return cached_measure(cfg.r_max, cfg.grid_points, cfg.energy_cutoff)


# ---------------------------------------------------------------- records

@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    L: float
    aleph: float
    W_qft: float
    vdw_baseline: float
    retardation_ratio: float
    regime: str
    e1: float
    e2: float
    e3: float
    e4: float
    route_residual: float

    @classmethod
    def from_breakdown(cls, b):
        eb = b.error_budget
        return cls(b.alpha, b.L, b.aleph, b.W_qft, b.vdw_baseline, b.retardation_ratio,
                   b.regime.label, eb.e1, eb.e2, eb.e3, eb.e4, b.route_residual)

    def cells(self):
        return [fmt(getattr(self, k)) for k in CSV_FIELDS]


def fmt(v):
    if isinstance(v, str):
        return v
    v = float(v)
    if not math.isfinite(v):
        return MISSING
    return format(v, ".11e")


def _json_value(v):
    s = fmt(v)
    if isinstance(v, str):
        return json.dumps(s)
    return json.dumps(s) if s == MISSING else s


def records_to_csv(records):
    buf = io.StringIO()
    buf.write(",".join(CSV_FIELDS) + "\n")
    for r in records:
        buf.write(",".join(r.cells()) + "\n")
    return buf.getvalue()


def records_to_json(records):
    rows = []
    for r in records:
        items = ", ".join(f'"{k}": {_json_value(getattr(r, k))}' for k in CSV_FIELDS)
        rows.append("  {" + items + "}")
    return "[\n" + ",\n".join(rows) + "\n]\n"


def breakdown_to_json(b):
    d = b.as_dict()
    parts = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, bool):
            parts.append(f'  "{k}": {"true" if v else "false"}')
        elif isinstance(v, dict):
            continue
        else:
            parts.append(f'  "{k}": {_json_value(v)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------- commands

def evaluate_point(cfg: RunConfig, L, measure=None):
    measure = measure_for(cfg) if measure is None else measure
    return interaction_energy(cfg.params(L), measure, cfg.prefactors)


def cmd_energy(cfg: RunConfig):
    cfg.validate()
    if cfg.L is None:
        raise UsageError("energy needs --L")
    b = evaluate_point(cfg, cfg.L)
    _emit(breakdown_to_json(b), cfg.out)
    return b


def sweep_records(cfg: RunConfig):
    cfg.validate(need_range=True)
    measure = measure_for(cfg)
    Ls = cfg.L_values()
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        out = list(pool.map(lambda L: SweepRecord.from_breakdown(evaluate_point(cfg, L, measure)), Ls))
    return out


def cmd_sweep(cfg: RunConfig):
    records = sweep_records(cfg)
    text = records_to_csv(records) if cfg.format == "csv" else records_to_json(records)
    _emit(text, cfg.out)
    return records


def cmd_regimes(cfg: RunConfig):
    cfg.validate()
    rows = regime_thresholds(cfg.alpha)
    if cfg.format == "json":
        text = json.dumps([{"row": n, "L": float(fmt(t)), "leading": s} for n, t, s in rows],
                          indent=2) + "\n"
    else:
        text = f"alpha = {fmt(cfg.alpha)}\n" + "".join(
            f"{n}: L = {t:.2f}  ({fmt(t)})  {s}\n" for n, t, s in rows)
    _emit(text, cfg.out)
    return rows


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    required: str
    passed: bool
    detail: str = ""

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{tag}] {self.name}: measured {fmt(self.measured)} required {self.required}{extra}"


def validation_checks(cfg: RunConfig):
    """Generator of Check results, run sequentially."""
    grid = cfg.grid

    def safe(name, fn):
        try:
            return fn()
        except (QuadratureError, SpectralError, ValueError, np.linalg.LinAlgError) as exc:
            return Check(name, float("nan"), "no error", False, f"{type(exc).__name__}: {exc}")

    measure_box = {}

    def get_measure():
        if "m" not in measure_box:
            measure_box["m"] = measure_for(cfg)
        return measure_box["m"]

    def sum_weights():
        m = get_measure()
        r = abs(m.total_weight - 12.0) / 12.0
        return Check("sum rule sum(w) = 12", r, "< 1e-06 relative", r < 1e-6,
                     f"sum(w) = {fmt(m.total_weight)}")
    yield safe("sum rule sum(w) = 12", sum_weights)

    def first_moment():
        m = get_measure()
        r = abs(m.first_moment - 3.0) / 3.0
        return Check("sum rule sum(w lambda) = 3", r, "< 1e-05 relative", r < 1e-5,
                     f"sum(w lambda) = {fmt(m.first_moment)}; relative stencil bias "
                     f"h^2/48 = {fmt(grid.spacing**2 / 48)}")
    yield safe("sum rule sum(w lambda) = 3", first_moment)

    def bound_states():
        e = bound_state_energies(grid, 3)
        exact = np.array([-1 / 16, -1 / 36, -1 / 64])
        d = float(np.max(np.abs(e - exact)))
        return Check("l=1 bound states -1/16, -1/36, -1/64", d, "< 1e-06", d < 1e-6)
    yield safe("l=1 bound states", bound_states)

    def gap():
        m = get_measure()
        d = abs(float(np.min(m.lambdas)) - SPECTRAL_GAP)
        return Check("spectral gap 3/16", d, "< 1e-04", d < 1e-4)
    yield safe("spectral gap", gap)

    def dalgarno():
        m = get_measure()
        ref = dalgarno_lewis_reference(RadialGrid(cfg.r_max, 2 * cfg.grid_points))
        val = expectation(m, lambda l: 1.0 / l)
        r = abs(val - ref) / ref
        return Check("sum(w/lambda) vs linear-solve oracle", r, "< 1e-03 relative", r < 1e-3,
                     f"spectral {fmt(val)} oracle {fmt(ref)}")
    yield safe("Dalgarno-Lewis", dalgarno)

    def aleph_limit():
        m = get_measure()
        val = aleph_of_product(100.0, m)
        ref = expectation(m, lambda l: 1.0 / l) / (6 * math.pi)
        r = abs(val - ref) / ref
        return Check("aleph at alpha L = 100 vs sum(w/lambda)/(6 pi)", r, "< 1e-02 relative",
                     r < 1e-2)
    yield safe("aleph asymptote", aleph_limit)

    def contour():
        m = get_measure()
        worst = 0.0
        for L in (5.0, 20.0, 100.0):
            p = OscillatoryParams(0.01, L, CutoffProfile("exp", cfg.lambda_cutoff), rtol=cfg.rtol)
            I = eval_I_direct(p, m)
            arc, im = eval_I_contour(p, m)
            worst = max(worst, abs(I - arc - im) / abs(I))
        return Check("contour identity, exp cutoff, alpha=0.01, L in {5,20,100}", worst,
                     "< 1e-04 relative", worst < 1e-4)
    yield safe("contour identity", contour)

    def vdw():
        m = get_measure()
        b = interaction_energy(cfg.params(2.0, alpha=0.01), m)
        v = b.W_qft * 2.0**3 / 0.01**2
        return Check("W L^3/alpha^2 at alpha=0.01, L=2", v, "in [-1.05, -0.95]",
                     -1.05 <= v <= -0.95)
    yield safe("vdW row", vdw)

    def cancellation():
        m = get_measure()
        p = cfg.params(50.0, alpha=0.005)
        b = interaction_energy(p, m)
        v = (0.005**2 / 50.0**3 - b.script_E) * 50.0**4 / 0.005
        r = abs(v / b.aleph - 1)
        return Check("(alpha^2/L^3 - E) L^4/alpha vs aleph at alpha=0.005, L=50", r,
                     "< 5e-02 relative", r < 0.05)
    yield safe("vdW cancellation", cancellation)

    def coulomb():
        g = WallGeometry(0.01, 100.0)
        v = coulomb_expectation(g) * 100.0**3 / 0.01**2
        return Check("Coulomb image term L^3/alpha^2 at alpha=0.01, L=100", v,
                     "within 1e-02 of -1", abs(v + 1) < 0.01)
    yield safe("Coulomb baseline", coulomb)

    def j_slopes():
        m = get_measure()
        al = np.geomspace(1e-3, 1e-1, 7)
        sa, _ = fit_power_law(al, [eval_J(cfg.params(1e5, alpha=a), m) for a in al])
        Ls = np.geomspace(1e4, 1e5, 7)
        sl, _ = fit_power_law(Ls, [eval_J(cfg.params(L, alpha=0.01), m) for L in Ls])
        ok = abs(sa - 3) <= 0.15 and abs(sl + 2) <= 0.3
        return Check("J exponents for alpha L >> 16/3 (alpha at L=1e5; L in [1e4,1e5])", sa,
                     "alpha slope 3 +- 0.15, L slope -2 +- 0.3", ok, f"L slope {fmt(sl)}")
    yield safe("J scaling", j_slopes)

    def phi_scaling():
        m = get_measure()
        fit = phi_sharp_norm_scaling(m, np.geomspace(1e-4, 1e-2, 7), 10.0,
                                     CutoffProfile(cfg.cutoff, cfg.lambda_cutoff))
        ok = 2.8 <= fit.exponent <= 3.2
        return Check("||Phi_#||^2 exponent in alpha over [1e-4, 1e-2]", fit.exponent,
                     "in [2.8, 3.2]", ok, f"with log factor {fmt(fit.exponent_log_corrected)}")
    yield safe("Phi scaling", phi_scaling)


def cmd_validate(cfg: RunConfig, stream=None):
    cfg.validate()
    stream = sys.stdout if stream is None else stream
    results = []
    for chk in validation_checks(cfg):
        results.append(chk)
        stream.write(chk.line() + "\n")
        stream.flush()
    n_fail = sum(not c.passed for c in results)
    stream.write(f"{len(results) - n_fail}/{len(results)} checks passed\n")
    return results


# ---------------------------------------------------------------- argparse

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    d = RunConfig()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value file; flags override it")
    common.add_argument("--alpha", type=float, help=f"coupling in (0,1) (default {d.alpha:.7g})")
    common.add_argument("--L", type=float, help="distance in Bohr radii, > 1")
    common.add_argument("--L-min", dest="L_min", type=float, help=f"sweep start (default {d.L_min})")
    common.add_argument("--L-max", dest="L_max", type=float, help=f"sweep end (default {d.L_max})")
    common.add_argument("--steps", type=int, help=f"sweep points (default {d.steps})")
    common.add_argument("--log-steps", dest="log_steps", action="store_const", const=True,
                        help="log-spaced sweep (default linear)")
    common.add_argument("--lambda-cutoff", dest="lambda_cutoff", type=float,
                        help=f"ultraviolet cutoff Lambda (default {d.lambda_cutoff})")
    common.add_argument("--cutoff", choices=("bump", "exp"), help=f"cutoff profile (default {d.cutoff})")
    common.add_argument("--grid-points", dest="grid_points", type=int,
                        help=f"radial grid points (default {d.grid_points})")
    common.add_argument("--r-max", dest="r_max", type=float, help=f"radial box (default {d.r_max})")
    common.add_argument("--format", choices=("csv", "json"), help=f"output format (default {d.format})")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--workers", type=int, help=f"concurrent sweep points (default {d.workers})")

    p = _Parser(prog="atomwall", description="Atom-wall interaction energy with retardation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("energy", parents=[common], help="single (alpha, L) breakdown as JSON")
    sub.add_parser("sweep", parents=[common], help="table of records over a range of L")
    sub.add_parser("validate", parents=[common], help="run the invariant checks")
    sub.add_parser("regimes", parents=[common], help="distance thresholds for one alpha")
    return p


def config_from_args(ns):
    values = {}
    if ns.config:
        try:
            values.update(read_config_file(ns.config))
        except OSError as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from exc
    for key in _FIELD_TYPES:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    if ns.command == "sweep" and "L" in values and "L_min" not in values and "L_max" not in values:
        # a single --L is a one-point sweep
        values["L_min"] = values["L_max"] = values["L"]
        values.setdefault("steps", 1)
    return replace(RunConfig(), **values)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if ns.command == "energy":
            cmd_energy(cfg)
        elif ns.command == "sweep":
            cmd_sweep(cfg)
        elif ns.command == "regimes":
            cmd_regimes(cfg)
        else:
            results = cmd_validate(cfg)
            if not all(c.passed for c in results):
                return EXIT_VALIDATION
    except UsageError as exc:
        print(f"atomwall: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, SpectralError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"atomwall: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"atomwall: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
