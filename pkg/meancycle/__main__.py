import sys

from meancycle.cli import main

sys.exit(main())
