from bns.cli import main

raise SystemExit(main())
