import sys

from arghelp.cli import main

sys.exit(main())
