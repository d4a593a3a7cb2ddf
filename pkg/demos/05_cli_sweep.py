# Driving the command line from Python: a sweep written to CSV and JSON.
import csv
import json
import tempfile
from pathlib import Path

from atomwall.cli_reports import main

tmp = Path(tempfile.mkdtemp())
args = ["sweep", "--alpha", "0.0057803468", "--L-min", "2", "--L-max", "300",
        "--steps", "12", "--log-steps", "--grid-points", "8000", "--workers", "4"]
main(args + ["--out", str(tmp / "sweep.csv")])
main(args + ["--out", str(tmp / "sweep.json"), "--format", "json"])

rows = list(csv.DictReader(open(tmp / "sweep.csv")))
for r in rows:
    print(f"{float(r['L']):8.2f}  {float(r['W_qft']):+.4e}  {r['regime']}")

js = json.loads((tmp / "sweep.json").read_text())
print("csv and json agree:", all(float(r["W_qft"]) == j["W_qft"] for r, j in zip(rows, js)))

# a config file holds the same keys as the flags
cfg = tmp / "run.cfg"
cfg.write_text("alpha = 0.01\nL = 2\ngrid_points = 8000\n")
main(["energy", "--config", str(cfg)])
