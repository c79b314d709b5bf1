"""Density bookkeeping, product envelopes and lower bounds, checked against the sieve.

Exact values are kept as Fractions; floats appear only in reports.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from tslib import TwinspaceError
from tslib.exclusion import PairCounter, sieve_prime_threads
from tslib.genspace import PairKind, SixFormTag, classify_six_form, excluded_residues
from tslib.oracle import primes_up_to

logger = logging.getLogger(__name__)


# Full-period counts allocate one byte per residue mod 5*7*...*23 = 37,182,145
FULL_PERIOD_MAX_STEPS = 7

# Empirical densities allocate one byte per k in [1, W]
MAX_WINDOW = 1_000_000_000

# Smallest n for which the final bound is claimed
BOUND20_VALID_FROM = 18

# Cited Rosser-Schoenfeld constant for prod (1 - 2/p) (ln n)^2
TC2_CITED = 0.83

EULER_GAMMA = 0.5772156649015329

C1 = Fraction(3, 5)


# Custom exceptions
class BoundDomainError(TwinspaceError, ValueError):
    """Raised when a bound is evaluated where ln(n/6) <= 0."""

    pass


class PeriodTooLargeError(TwinspaceError, ValueError):
    """Raised when a full-period count is requested for more than 7 primes."""

    pass


class WindowTooLargeError(TwinspaceError, ValueError):
    """Raised when an empirical window exceeds MAX_WINDOW."""

    pass


class DensityMismatchError(TwinspaceError):
    """Raised when the recurrence and the closed product disagree."""

    pass


@lru_cache(maxsize=8)
def sieving_primes(m: int) -> tuple[int, ...]:
    """The first m primes greater than 3: p5(1) = 5, p5(2) = 7, ..."""
    if m < 1:
        raise ValueError(f"step count must be positive, got {m}")
    n = m + 2
    limit = 15 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 1
    primes = primes_up_to(limit).primes()
    return tuple(int(p) for p in primes[2 : 2 + m])


@dataclass(frozen=True)
class DensityStep:
    """One sieving step: the j-th prime above 3 and the densities after it."""

    j: int
    p5: int
    form: SixFormTag
    alpha: int
    p5r: int
    c_exact: Fraction
    true_exact: Fraction

    @property
    def c_float(self) -> float:
        return float(self.c_exact)

    @property
    def true_float(self) -> float:
        return float(self.true_exact)


def _closed_factor(p: int) -> int:
    # p5r read off p mod 6, independent of the six-form classification
    return p - (1 if p % 6 == 1 else 2)


def density_sequence(m: int) -> list[DensityStep]:
    """c_j for j = 1..m by the recurrence c_j = (p5r(j)/p5(j)) c_(j-1).

    The recurrence takes alpha from the six-form of each prime. At every
    step it is compared with the closed product, whose factors come from
    p mod 6 directly.

    Raises:
        DensityMismatchError: If recurrence and closed product differ
    """
    steps = []
    c = Fraction(1)
    t = Fraction(1)
    num = den = 1
    for j, p in enumerate(sieving_primes(m), 1):
        form = classify_six_form(p).tag
        alpha = 1 if form is SixFormTag.MPL else 2
        p5r = p - alpha
        c *= Fraction(p5r, p)
        t *= Fraction(p - 2, p)
        num *= _closed_factor(p)
        den *= p
        if num * c.denominator != den * c.numerator:
            raise DensityMismatchError(f"recurrence and closed product differ at step {j}")
        steps.append(DensityStep(j, p, form, alpha, p5r, c, t))
    return steps


def closed_product(m: int) -> Fraction:
    """c_m as the product of p5r(j) over the product of p5(j), j <= m."""
    num = den = 1
    for p in sieving_primes(m):
        num *= _closed_factor(p)
        den *= p
    return Fraction(num, den)


def true_density(m: int) -> Fraction:
    """Product of (1 - 2/p5(j)) for j <= m: the surviving share of residues."""
    d = Fraction(1)
    for p in sieving_primes(m):
        d *= Fraction(p - 2, p)
    return d


def period(m: int) -> int:
    """P = p5(1) * ... * p5(m)."""
    return math.prod(sieving_primes(m))


def thread_level_count(m: int) -> int:
    """P * c_m: the thread-level count of potentially available classes."""
    return math.prod(_closed_factor(p) for p in sieving_primes(m))


def full_period_survivor_count(kind: PairKind, m: int) -> int:
    """Residues r mod P avoiding every excluded residue class of the first m primes.

    Raises:
        PeriodTooLargeError: If m > FULL_PERIOD_MAX_STEPS
    """
    if m > FULL_PERIOD_MAX_STEPS:
        raise PeriodTooLargeError(f"full period needs m <= {FULL_PERIOD_MAX_STEPS}, got {m}")
    P = period(m)
    alive = np.ones(P, dtype=bool)
    for q in sieving_primes(m):
        for r in excluded_residues(kind, q):
            alive[r::q] = False
    return int(np.count_nonzero(alive))


def empirical_densities(kind: PairKind, m: int, W: int) -> list[Fraction]:
    """Share of k in [1, W] outside the excluded classes of the first j primes, j = 1..m."""
    if W < 1:
        raise ValueError(f"window must be positive, got {W}")
    if W > MAX_WINDOW:
        raise WindowTooLargeError(f"window {W} exceeds {MAX_WINDOW}")
    alive = np.ones(W, dtype=bool)
    shares = []
    for q in sieving_primes(m):
        for r in excluded_residues(kind, q):
            first = r if r > 0 else q
            alive[first - 1 :: q] = False
        shares.append(Fraction(int(np.count_nonzero(alive)), W))
    return shares


def empirical_density(kind: PairKind, m: int, W: int) -> Fraction:
    """Share of k in [1, W] outside the excluded classes of the first m primes."""
    return empirical_densities(kind, m, W)[-1]


def _odd_primes(N: int) -> np.ndarray:
    primes = primes_up_to(N).primes()
    return primes[primes > 2].astype(np.float64)


@dataclass(frozen=True)
class MertensProduct:
    """prod_{2<p<=N} (1 - 2/p) and the same times (ln N)^2."""

    N: int
    product: float
    normalized: float


def mertens_twin_product(N: int) -> MertensProduct:
    """Evaluate the twin Mertens product through a compensated sum of logs."""
    if N < 5:
        raise ValueError(f"N must be at least 5, got {N}")
    log_sum = math.fsum(np.log1p(-2.0 / _odd_primes(N)).tolist())
    product = math.exp(log_sum)
    return MertensProduct(N, product, product * math.log(N) ** 2)


def twin_constant_estimate(N: int) -> float:
    """4 e^(-2 gamma) prod_{2<p<=N} (1 - 1/(p-1)^2), the value tc(2) should approach."""
    p = _odd_primes(N)
    log_sum = math.fsum(np.log1p(-1.0 / (p - 1.0) ** 2).tolist())
    return 4.0 * math.exp(-2.0 * EULER_GAMMA + log_sum)


def lower_bound_log(n: float) -> float:
    """n / (15 (ln(n/6))^2).

    Raises:
        BoundDomainError: If n <= 6
    """
    if n <= 6:
        raise BoundDomainError(f"bound undefined for n = {n} (needs n > 6)")
    return n / (15.0 * math.log(n / 6.0) ** 2)


def is_sub_threshold(n: int) -> bool:
    """True below the smallest n the final bound is claimed for."""
    return n < BOUND20_VALID_FROM


@dataclass(frozen=True)
class ProductSides:
    """Both sides of the product inequalities after m steps."""

    m: int
    c_thread: Fraction
    envelope: Fraction
    odd_product: Fraction
    tripled_product: Fraction
    split_product: Fraction
    mertens_term: float


def product_side_report(m: int) -> ProductSides:
    """c_m beside the all-alpha=2 envelope, the 3*prod_{2<p} form and tc(2)/ln^2.

    Only c_m > envelope (m >= 2) is a forced statement; the rest is reported.
    """
    p_last = sieving_primes(m)[-1]
    envelope = true_density(m)
    odd_product = Fraction(1, 3) * envelope
    return ProductSides(
        m=m,
        c_thread=closed_product(m),
        envelope=envelope,
        odd_product=odd_product,
        tripled_product=3 * odd_product,
        split_product=odd_product + 2 * odd_product,
        mertens_term=TC2_CITED / math.log(p_last) ** 2,
    )


class DensitySchedule:
    """c at the largest step m with 6 * p5(m) <= n, for n up to n_max.

    Below 30 no step qualifies and c_1 is used.
    """

    def __init__(self, n_max: int):
        m = max(1, len(sieving_primes_upto(n_max // 6)))
        self._p5 = np.array(sieving_primes(m), dtype=np.int64)
        self._c = [s.c_exact for s in density_sequence(m)]

    def step_for(self, n: int) -> int:
        return max(1, int(np.searchsorted(6 * self._p5, n, side="right")))

    def c_for(self, n: int) -> Fraction:
        return self._c[self.step_for(n) - 1]


def sieving_primes_upto(bound: int) -> list[int]:
    """Primes p with 3 < p <= bound."""
    if bound < 5:
        return []
    return [int(p) for p in primes_up_to(bound).primes() if p > 3]


@dataclass(frozen=True)
class BoundReport:
    """Actual pair count at n against the three lower bounds."""

    kind: PairKind
    n: int
    pi_actual: int
    bound9: float
    bound11: float
    bound20: Optional[float]
    sub_threshold: bool

    @property
    def ok9(self) -> bool:
        return self.pi_actual > self.bound9

    @property
    def ok11(self) -> bool:
        return self.pi_actual > self.bound11

    @property
    def ok20(self) -> Optional[bool]:
        if self.bound20 is None:
            return None
        return self.pi_actual > self.bound20

    @property
    def margins(self) -> dict:
        return {
            "bound9": self.pi_actual - self.bound9,
            "bound11": self.pi_actual - self.bound11,
            "bound20": None if self.bound20 is None else self.pi_actual - self.bound20,
        }

    @property
    def violates20(self) -> bool:
        """A counted bound20 failure: below-threshold rows never count."""
        return not self.sub_threshold and self.ok20 is False


def bound_report(
    kind: PairKind,
    n: int,
    counter: Optional[PairCounter] = None,
    schedule: Optional[DensitySchedule] = None,
) -> BoundReport:
    """Fill actual pi at n and every applicable bound.

    Args:
        kind: TWIN or COUSIN (cousin rows reuse the twin c rules)
        n: Bound in observational space
        counter: PairCounter covering n; sieved when omitted
        schedule: DensitySchedule covering n; built when omitted
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if counter is None:
        K = kind.max_index_for(n)
        pi = 0 if K == 0 else PairCounter(sieve_prime_threads(kind, K)).count(n)
    else:
        pi = counter.count(n)
    if schedule is None:
        schedule = DensitySchedule(n)
    if kind is PairKind.COUSIN:
        logger.info("cousin bounds at n = %d reuse the twin density rules (extrapolated)", n)

    return BoundReport(
        kind=kind,
        n=n,
        pi_actual=pi,
        bound9=float(C1 * n / 6),
        bound11=float(schedule.c_for(n) * n / 12),
        bound20=lower_bound_log(n) if n > 6 else None,
        sub_threshold=is_sub_threshold(n),
    )
