"""Segmented exclusion sieve over generative space.

Two independent strategies mark the excluded k in a window [lo, hi]:

- FORMS walks every form family thread k = first + y*step for x = 1, 2, ...
  while 5x-1 <= hi (the literal construction, Theta(K log K) marks).
- PRIME_THREADS marks only the two threads per prime q >= 5; they start at
  the first k whose pair member is q*m with m >= 5.

Both must produce the same bitmap. A k with a clear bit is a survivor.
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from tslib import TwinspaceError
from tslib.genspace import FormFamily, PairKind
from tslib.oracle import PrimeTable, primes_up_to

logger = logging.getLogger(__name__)


# Pair members 6k+5 must fit an unsigned 64-bit integer
MAX_GEN_INDEX = (2**64 - 1 - 5) // 6

# One bitmap byte per k; no window or merged result holds more indices
MAX_SIEVE_INDEX = 1_000_000_000

DEFAULT_SEGMENT_SIZE = 1 << 20
MAX_SEGMENT_SIZE = 1 << 27


# Custom exceptions
class SieveRangeError(TwinspaceError, ValueError):
    """Raised when a sieve range is empty, starts below 1 or exceeds a sieve capacity."""

    pass


class PairDefectError(TwinspaceError):
    """Raised when a supposed survivor has a composite pair member."""

    pass


class WindowMergeError(TwinspaceError, ValueError):
    """Raised when windows cannot be concatenated."""

    pass


class SieveStrategy(enum.Enum):
    """How excluded k are marked."""

    FORMS = "forms"
    PRIME_THREADS = "threads"


@dataclass(eq=False)
class SieveWindow:
    """Exclusion bitmap for k in [lo, hi]; bit i stands for k = lo + i."""

    lo: int
    hi: int
    excluded: np.ndarray
    kind: PairKind
    strategy: SieveStrategy

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    @property
    def sealed(self) -> bool:
        return not self.excluded.flags.writeable

    def seal(self) -> "SieveWindow":
        """Freeze the bitmap; returns self."""
        self.excluded.flags.writeable = False
        return self

    def is_excluded(self, k: int) -> bool:
        return bool(self.excluded[k - self.lo])

    def survivor_array(self) -> np.ndarray:
        return self.lo + np.flatnonzero(~self.excluded).astype(np.int64)

    def same_bits(self, other: "SieveWindow") -> bool:
        """True when both windows cover the same range with identical bits."""
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and self.kind is other.kind
            and np.array_equal(self.excluded, other.excluded)
        )


@dataclass(frozen=True)
class SurvivorPair:
    """A surviving index k and its prime pair."""

    k: int
    small: int
    large: int

    def as_record(self) -> dict:
        return {"k": self.k, "small": self.small, "large": self.large}


def _check_range(lo: int, hi: int) -> None:
    if lo < 1 or hi < lo:
        raise SieveRangeError(f"invalid generative range [{lo}, {hi}]")
    if hi > MAX_GEN_INDEX:
        raise SieveRangeError(f"K = {hi} exceeds the 64-bit limit {MAX_GEN_INDEX}")
    if hi - lo + 1 > MAX_SIEVE_INDEX:
        raise SieveRangeError(f"[{lo}, {hi}] holds more than {MAX_SIEVE_INDEX} indices")


def _family_threads(
    family: FormFamily, v: np.ndarray, fixed_y: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (first, step) of a family's threads at parameters v."""
    if fixed_y:
        return 6 * v + family.b + family.a * v + family.d, 6 * v + family.b
    return 6 * v + family.a + family.b * v + family.d, 6 * v + family.a


def form_threads(kind: PairKind, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """(first, step) of every fixed-x family thread with 5x-1 <= hi."""
    x = np.arange(1, (hi + 1) // 5 + 1, dtype=np.int64)
    parts = [_family_threads(family, x, fixed_y=False) for family in kind.families]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def prime_thread_starts(kind: PairKind, primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(first, step) of the two coefficient-q threads for each prime q >= 5.

    Families with a == b are symmetric in x and y, so their fixed-y threads
    repeat the fixed-x ones and are skipped.
    """
    primes = np.asarray(primes, dtype=np.int64)
    primes = primes[primes >= 5]
    firsts, steps = [], []
    for family in kind.families:
        roles = (False,) if family.a == family.b else (False, True)
        for fixed_y in roles:
            shift = family.b if fixed_y else family.a
            q = primes[(primes - shift) % 6 == 0]
            f, s = _family_threads(family, (q - shift) // 6, fixed_y)
            firsts.append(f)
            steps.append(s)
    return np.concatenate(firsts), np.concatenate(steps)


def _mark(bits: np.ndarray, lo: int, hi: int, firsts: np.ndarray, steps: np.ndarray) -> None:
    """Set bits for every progression member in [lo, hi]."""
    behind = firsts < lo
    starts = firsts.copy()
    starts[behind] += -((firsts[behind] - lo) // steps[behind]) * steps[behind]
    live = starts <= hi
    for start, step in zip(starts[live].tolist(), steps[live].tolist()):
        bits[start - lo :: step] = True


def sieve_window(
    kind: PairKind,
    lo: int,
    hi: int,
    strategy: SieveStrategy,
    primes: Optional[np.ndarray] = None,
) -> SieveWindow:
    """Sieve one contiguous window [lo, hi] and seal it.

    Args:
        kind: Pair kind whose exclusion forms are used
        lo: First index (>= 1)
        hi: Last index (inclusive)
        strategy: FORMS or PRIME_THREADS
        primes: For PRIME_THREADS, ascending primes covering (6*hi+5)/5;
            computed from the oracle when omitted

    Raises:
        SieveRangeError: If the range is invalid
    """
    _check_range(lo, hi)
    bits = np.zeros(hi - lo + 1, dtype=bool)
    if strategy is SieveStrategy.FORMS:
        firsts, steps = form_threads(kind, hi)
    else:
        if primes is None:
            primes = thread_primes(hi)
        firsts, steps = prime_thread_starts(kind, primes[primes <= (6 * hi + 5) // 5])
    _mark(bits, lo, hi, firsts, steps)
    return SieveWindow(lo, hi, bits, kind, strategy).seal()


def thread_primes(hi: int, table: Optional[PrimeTable] = None) -> np.ndarray:
    """Primes q <= (6*hi+5)/5 from the oracle: every possible thread coefficient."""
    bound = max(2, (6 * hi + 5) // 5)
    if table is None or table.limit < bound:
        table = primes_up_to(bound)
    return table.primes(bound)


def merge_windows(windows: Sequence[SieveWindow]) -> SieveWindow:
    """Concatenate adjacent windows of one kind and strategy into one sealed window.

    Raises:
        WindowMergeError: If the windows are empty, mixed or not contiguous
    """
    if not windows:
        raise WindowMergeError("nothing to merge")
    head = windows[0]
    for prev, cur in zip(windows, windows[1:]):
        if cur.lo != prev.hi + 1:
            raise WindowMergeError(f"gap between [{prev.lo}, {prev.hi}] and [{cur.lo}, {cur.hi}]")
        if cur.kind is not head.kind or cur.strategy is not head.strategy:
            raise WindowMergeError("windows mix kinds or strategies")
    bits = np.concatenate([w.excluded for w in windows])
    return SieveWindow(head.lo, windows[-1].hi, bits, head.kind, head.strategy).seal()


def sieve_segmented(
    kind: PairKind,
    lo: int,
    hi: int,
    strategy: SieveStrategy,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> SieveWindow:
    """Sieve [lo, hi] in fixed-size segments and merge them in order.

    Segments are independent, so with workers > 1 they are sieved on a
    thread pool; the merge is still in segment order.
    """
    _check_range(lo, hi)
    if not 1 <= segment_size <= MAX_SEGMENT_SIZE:
        raise SieveRangeError(
            f"segment size must be in [1, {MAX_SEGMENT_SIZE}], got {segment_size}"
        )

    primes = thread_primes(hi) if strategy is SieveStrategy.PRIME_THREADS else None
    bounds = [(a, min(a + segment_size - 1, hi)) for a in range(lo, hi + 1, segment_size)]
    logger.debug(
        "sieving %s [%d, %d] by %s in %d segments", kind.value, lo, hi, strategy.value, len(bounds)
    )

    def run(bound):
        return sieve_window(kind, bound[0], bound[1], strategy, primes)

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            windows = list(pool.map(run, bounds))
    else:
        windows = [run(b) for b in bounds]
    return merge_windows(windows)


def sieve_forms(kind: PairKind, K: int, **kwargs) -> SieveWindow:
    """Mark k in [1, K] generated by the literal form families."""
    return sieve_segmented(kind, 1, K, SieveStrategy.FORMS, **kwargs)


def sieve_prime_threads(kind: PairKind, K: int, **kwargs) -> SieveWindow:
    """Mark k in [1, K] through the prime-coefficient residue threads."""
    return sieve_segmented(kind, 1, K, SieveStrategy.PRIME_THREADS, **kwargs)


def survivors(window: SieveWindow) -> list[int]:
    """Ascending k in the window whose bit is clear."""
    return window.survivor_array().tolist()


def pairs_from_survivors(
    kind: PairKind, ks: Iterable[int], table: Optional[PrimeTable] = None
) -> list[SurvivorPair]:
    """Map survivors to their prime pairs, checking every member against the oracle.

    Raises:
        PairDefectError: If any pair member is composite
    """
    ks = list(ks)
    if not ks:
        return []
    largest = kind.members(max(ks))[1]
    if table is None or table.limit < largest:
        table = primes_up_to(largest)

    pairs = []
    for k in ks:
        small, large = kind.members(k)
        if not (table.is_prime(small) and table.is_prime(large)):
            raise PairDefectError(f"k = {k} gives ({small}, {large}), which is not a prime pair")
        pairs.append(SurvivorPair(k, small, large))
    return pairs


class PairCounter:
    """pi_pairs lookups against one sieved window starting at k = 1."""

    def __init__(self, window: SieveWindow):
        if window.lo != 1:
            raise SieveRangeError("pair counts need a window starting at k = 1")
        self.kind = window.kind
        self.covered = window.kind.members(window.hi)[1]
        # The next unsieved pair has larger member covered + 6
        self.max_n = self.covered + 5
        self._large = 6 * window.survivor_array() + window.kind.offsets[1]

    def count(self, n: int) -> int:
        """Number of survivor pairs whose larger member is <= n.

        Raises:
            SieveRangeError: If n lies beyond the sieved window
        """
        if n > self.max_n:
            raise SieveRangeError(f"n = {n} is beyond the sieved range (<= {self.max_n})")
        return int(np.searchsorted(self._large, n, side="right"))

    def counts(self, ns: np.ndarray) -> np.ndarray:
        """Vectorized count; ns need not be sorted."""
        ns = np.asarray(ns, dtype=np.int64)
        if ns.size and int(ns.max()) > self.max_n:
            raise SieveRangeError(
                f"n = {int(ns.max())} is beyond the sieved range (<= {self.max_n})"
            )
        return np.searchsorted(self._large, ns, side="right")


def pi_pairs(kind: PairKind, n: int, window: Optional[SieveWindow] = None) -> int:
    """pi_TP(n) / pi_CP(n): pairs whose larger member is <= n.

    Args:
        kind: Pair kind
        n: Bound in observational space (>= 1)
        window: Optional sieved window from k = 1 covering n; sieved when omitted
    """
    K = kind.max_index_for(n)
    if K == 0:
        return 0
    if window is None:
        window = sieve_prime_threads(kind, K)
    return PairCounter(window).count(n)
