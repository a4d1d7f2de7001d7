"""Allow ``python -m dcgraph``."""

import sys

from dcgraph.cli import main

sys.exit(main())
