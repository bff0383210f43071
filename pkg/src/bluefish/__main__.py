"""Entry point for python -m bluefish."""

import sys

from .cli import main

sys.exit(main())
