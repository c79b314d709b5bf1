"""Independent ground truth: odd-only segmented Eratosthenes and direct pair checks.

Nothing here uses the generative forms, so the oracle can validate them.
"""

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional

import numpy as np

from tslib import TwinspaceError
from tslib.genspace import PairKind

logger = logging.getLogger(__name__)


# Largest sieve limit; covers 6K+5 for K = 10^9
ORACLE_CAPACITY = 6_000_000_005

# Odd numbers per sieve segment
DEFAULT_SEGMENT_ODDS = 1 << 21


class OracleCapacityError(TwinspaceError, ValueError):
    """Raised when a sieve limit is outside the oracle's range."""

    pass


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit from a plain (unsegmented) sieve."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _odd_segment(low: int, high: int, base: np.ndarray) -> np.ndarray:
    """Primality mask for the odd numbers low, low+2, ... below high (low odd)."""
    mask = np.ones((high - low + 1) // 2, dtype=bool)
    if low == 1:
        mask[0] = False
    for p in base:
        p = int(p)
        if p == 2:
            continue
        if p * p >= high:
            break
        start = max(p * p, -(-low // p) * p)
        if start % 2 == 0:
            start += p
        if start < high:
            mask[(start - low) // 2 :: p] = False
    return mask


def _segments(limit: int, segment_odds: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (low, mask) for consecutive odd-only segments covering [1, limit]."""
    base = _simple_sieve(isqrt(limit) + 1)
    span = 2 * segment_odds
    low = 1
    while low <= limit:
        high = min(low + span, limit + 1)
        yield low, _odd_segment(low, high, base)
        low += span


def _check_limit(limit: int) -> None:
    if limit < 2:
        raise OracleCapacityError(f"sieve limit must be at least 2, got {limit}")
    if limit > ORACLE_CAPACITY:
        raise OracleCapacityError(f"sieve limit {limit} exceeds capacity {ORACLE_CAPACITY}")


class PrimeTable:
    """Primality bitmap over [0, limit], storing odd numbers only.

    Bit i stands for 2i + 1. The table is read-only once built.
    """

    def __init__(self, limit: int, odd_bits: np.ndarray):
        self.limit = limit
        self._bits = odd_bits
        self._bits.flags.writeable = False

    def is_prime(self, n: int) -> bool:
        """Return whether n is prime.

        Raises:
            OracleCapacityError: If n is beyond the table
        """
        if n > self.limit:
            raise OracleCapacityError(f"{n} is beyond the table limit {self.limit}")
        if n == 2:
            return True
        return n > 2 and n % 2 == 1 and bool(self._bits[n // 2])

    def __contains__(self, n: int) -> bool:
        return self.is_prime(n)

    def is_prime_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorized is_prime for an integer array."""
        values = np.asarray(values, dtype=np.int64)
        if values.size and int(values.max()) > self.limit:
            raise OracleCapacityError(f"{int(values.max())} is beyond the table limit {self.limit}")
        result = values == 2
        odd = (values % 2 == 1) & (values > 2)
        result[odd] = self._bits[values[odd] // 2]
        return result

    def primes(self, upto: Optional[int] = None) -> np.ndarray:
        """Ascending primes <= upto (default: the whole table)."""
        upto = self.limit if upto is None else min(upto, self.limit)
        if upto < 2:
            return np.array([], dtype=np.int64)
        odd = 2 * np.flatnonzero(self._bits[: (upto + 1) // 2]).astype(np.int64) + 1
        return np.concatenate([np.array([2], dtype=np.int64), odd])

    def count(self, upto: Optional[int] = None) -> int:
        """pi(upto): number of primes <= upto."""
        upto = self.limit if upto is None else min(upto, self.limit)
        if upto < 2:
            return 0
        return 1 + int(np.count_nonzero(self._bits[: (upto + 1) // 2]))


def primes_up_to(limit: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> PrimeTable:
    """Build a PrimeTable covering [0, limit].

    Args:
        limit: Largest number the table answers for (2 <= limit <= ORACLE_CAPACITY)
        segment_odds: Odd numbers sieved per segment

    Raises:
        OracleCapacityError: If limit is out of range
    """
    _check_limit(limit)
    bits = np.zeros((limit + 1) // 2, dtype=bool)
    for low, mask in _segments(limit, segment_odds):
        i = (low - 1) // 2
        bits[i : i + mask.size] = mask
    logger.debug("prime table to %d built", limit)
    return PrimeTable(limit, bits)


def iter_prime_segments(
    limit: int, segment_odds: int = DEFAULT_SEGMENT_ODDS
) -> Iterator[np.ndarray]:
    """Stream the primes <= limit as ascending arrays, one per segment."""
    _check_limit(limit)
    yield np.array([2], dtype=np.int64)
    for low, mask in _segments(limit, segment_odds):
        primes = low + 2 * np.flatnonzero(mask).astype(np.int64)
        if primes.size:
            yield primes


def oracle_survivor_array(kind: PairKind, K: int, table: Optional[PrimeTable] = None) -> np.ndarray:
    """Indices k in [1, K] whose two pair members are both prime."""
    e_small, e_large = kind.offsets
    if table is None:
        table = primes_up_to(6 * K + e_large)
    ks = np.arange(1, K + 1, dtype=np.int64)
    both = table.is_prime_array(6 * ks + e_small) & table.is_prime_array(6 * ks + e_large)
    return ks[both]


def oracle_survivors(kind: PairKind, K: int, table: Optional[PrimeTable] = None) -> list[int]:
    """Ordered list of k <= K with both pair members prime.

    Args:
        kind: TWIN for (6k-1, 6k+1), COUSIN for (6k+1, 6k+5)
        K: Largest index checked
        table: Optional PrimeTable covering 6K+5; built when omitted
    """
    return oracle_survivor_array(kind, K, table).tolist()


@dataclass(frozen=True)
class GapViolation:
    """Consecutive primes p < nxt with nxt >= 2p (nxt None: none found below 2p)."""

    p: int
    nxt: Optional[int]


def prime_gap_check(N: int, segment_odds: int = DEFAULT_SEGMENT_ODDS) -> list[GapViolation]:
    """Report every prime p <= N whose successor is at least 2p.

    Primes are streamed segment by segment up to 2N, so the full list is
    never held in memory.
    """
    if N < 3:
        raise ValueError(f"gap check needs N >= 3, got {N}")

    violations = []
    prev = None
    for primes in iter_prime_segments(2 * N, segment_odds):
        seq = primes if prev is None else np.concatenate([np.array([prev], dtype=np.int64), primes])
        lower, upper = seq[:-1], seq[1:]
        in_range = lower <= N
        bad = in_range & (upper >= 2 * lower)
        violations.extend(GapViolation(int(p), int(q)) for p, q in zip(lower[bad], upper[bad]))
        prev = int(seq[-1])
        if prev > N:
            break
    else:
        if prev is not None and prev <= N:
            violations.append(GapViolation(prev, None))

    if violations:
        logger.warning("%d gap violations up to %d", len(violations), N)
    return violations
