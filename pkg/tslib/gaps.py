"""Gaps mode implementation for twinspace."""

import sys

from tslib.config import RunConfig
from tslib.export import GAP_FIELDS, write_records
from tslib.oracle import prime_gap_check


class GapsCommand:
    """Implements the gaps command: no prime p <= N may have its successor at 2p or beyond."""

    def __init__(self, config: RunConfig):
        """Initialize GapsCommand.

        Args:
            config: Validated RunConfig for the gaps command
        """
        self.config = config

    def run(self) -> int:
        """Execute gaps command.

        Returns:
            0 when the violation list is empty, 1 otherwise
        """
        violations = prime_gap_check(self.config.n_max)
        write_records(self.config, GAP_FIELDS, ({"p": v.p, "next": v.nxt} for v in violations))
        if violations:
            print(f"Error: {len(violations)} consecutive primes with p' >= 2p", file=sys.stderr)
            return 1
        print(f"no gap violations up to {self.config.n_max}", file=sys.stderr)
        return 0
