"""Entry point for python -m tslib."""

from tslib.cli import main
import sys

if __name__ == "__main__":
    sys.exit(main())
