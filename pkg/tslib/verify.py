"""Verify mode implementation for twinspace."""

import logging
import sys

import numpy as np

from tslib.config import RunConfig
from tslib.exclusion import pairs_from_survivors, sieve_forms, sieve_prime_threads
from tslib.export import SURVIVOR_FIELDS, write_records
from tslib.oracle import oracle_survivor_array, primes_up_to

logger = logging.getLogger(__name__)

# Discrepancies listed on failure
MAX_REPORTED = 10

# Survivor sets up to this size are printed in the summary
SHOW_SET_UP_TO = 20


def find_discrepancies(
    survivor_sets: dict[str, np.ndarray], limit: int = MAX_REPORTED
) -> list[str]:
    """Describe the first k values on which the survivor sets disagree.

    Args:
        survivor_sets: Strategy name -> ascending survivor array
        limit: Maximum number of lines returned
    """
    members = {name: set(ks.tolist()) for name, ks in survivor_sets.items()}
    union = sorted(set().union(*members.values()))
    lines = []
    for k in union:
        verdicts = {name: k in ks for name, ks in members.items()}
        if len(set(verdicts.values())) > 1:
            parts = ", ".join(
                f"{name}={'survivor' if v else 'excluded'}" for name, v in verdicts.items()
            )
            lines.append(f"k={k}: {parts}")
            if len(lines) == limit:
                break
    return lines


class VerifyCommand:
    """Implements the verify command: forms sieve, prime-thread sieve and oracle must agree."""

    def __init__(self, config: RunConfig):
        """Initialize VerifyCommand.

        Args:
            config: Validated RunConfig for the verify command
        """
        self.config = config

    def run(self) -> int:
        """Execute verify command.

        Returns:
            0 if all three survivor sets are identical, 1 otherwise
        """
        cfg = self.config
        kind, K = cfg.kind, cfg.limit

        table = primes_up_to(kind.members(K)[1])
        forms = sieve_forms(kind, K, segment_size=cfg.segment_size, workers=cfg.workers)
        threads = sieve_prime_threads(kind, K, segment_size=cfg.segment_size, workers=cfg.workers)
        survivor_sets = {
            "forms": forms.survivor_array(),
            "threads": threads.survivor_array(),
            "oracle": oracle_survivor_array(kind, K, table),
        }

        reference = survivor_sets["oracle"]
        if not all(np.array_equal(ks, reference) for ks in survivor_sets.values()):
            print(f"Error: survivor sets differ for {kind.value} up to k = {K}", file=sys.stderr)
            for line in find_discrepancies(survivor_sets):
                print(f"  {line}", file=sys.stderr)
            return 1

        ks = reference.tolist()
        pairs = pairs_from_survivors(kind, ks, table)
        write_records(cfg, SURVIVOR_FIELDS, (p.as_record() for p in pairs))

        print(
            f"3 strategies agree ({len(ks)} {kind.value} survivors up to k = {K})",
            file=sys.stderr,
        )
        if len(ks) <= SHOW_SET_UP_TO:
            print("survivors: {" + ", ".join(map(str, ks)) + "}", file=sys.stderr)
        return 0
