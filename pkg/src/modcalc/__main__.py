import sys

from modcalc.cli import main

sys.exit(main())
