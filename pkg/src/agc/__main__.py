import sys

from agc.cli import main

sys.exit(main())
