from .cli_reports import main

raise SystemExit(main())
