"""Sieve mode implementation for twinspace."""

import logging
import sys

from tslib.config import Method, RunConfig
from tslib.exclusion import (
    PairDefectError,
    SieveWindow,
    pairs_from_survivors,
    sieve_forms,
    sieve_prime_threads,
    survivors,
)
from tslib.export import SURVIVOR_FIELDS, write_records

logger = logging.getLogger(__name__)


class SieveCommand:
    """Implements the sieve command: survivors of [1, K] with their prime pairs."""

    def __init__(self, config: RunConfig):
        """Initialize SieveCommand.

        Args:
            config: Validated RunConfig for the sieve command
        """
        self.config = config

    def _sieve(self, method: Method) -> SieveWindow:
        cfg = self.config
        run = sieve_forms if method is Method.FORMS else sieve_prime_threads
        return run(cfg.kind, cfg.limit, segment_size=cfg.segment_size, workers=cfg.workers)

    def run(self) -> int:
        """Execute sieve command.

        Returns:
            0 on success, 1 if the strategies disagree or a survivor is not a prime pair
        """
        cfg = self.config
        if cfg.method is Method.BOTH:
            forms = self._sieve(Method.FORMS)
            window = self._sieve(Method.THREADS)
            if not forms.same_bits(window):
                print("Error: forms and prime-thread sieves disagree", file=sys.stderr)
                return 1
        else:
            window = self._sieve(cfg.method)

        ks = survivors(window)
        try:
            pairs = pairs_from_survivors(cfg.kind, ks)
        except PairDefectError as e:
            print(f"Error: {e}", file=sys.stderr)
            return 1

        write_records(cfg, SURVIVOR_FIELDS, (p.as_record() for p in pairs))
        logger.info("%d %s survivors up to k = %d", len(pairs), cfg.kind.value, cfg.limit)
        return 0
