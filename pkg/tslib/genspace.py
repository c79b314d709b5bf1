"""Generative-space forms: six-residue classes, CPN5 witnesses and exclusion threads.

A generative index k stands for a candidate pair of odd numbers: (6k-1, 6k+1) for
twins, (6k+1, 6k+5) for cousins. Every k whose pair holds a composite member is
generated by one of three bilinear form families

    k(x, y) = 6xy + a*y + b*x + d,    x, y >= 1

and the composite member factors as (6x + a)(6y + b). Fixing either variable gives
an arithmetic progression (a thread) whose step is the matching factor.
"""

import enum
import logging
from dataclasses import dataclass
from math import isqrt
from typing import Optional

from tslib import TwinspaceError

logger = logging.getLogger(__name__)


# Custom exceptions
class WitnessError(TwinspaceError, ValueError):
    """Raised when a CPN5 witness is requested for a prime or a multiple of 2 or 3."""

    pass


class ReductionError(TwinspaceError, ValueError):
    """Raised when a thread cannot be reduced to a prime coefficient."""

    pass


class NotPrimeError(TwinspaceError, ValueError):
    """Raised when a thread modulus is not a prime above 3."""

    pass


class SixFormTag(enum.Enum):
    """Residue class of an integer with respect to 6."""

    MPL = "mpl"
    MPS = "mps"
    NEITHER = "neither"


@dataclass(frozen=True)
class SixForm:
    """An integer written as 6l+1 (mpl), 6s-1 (mps), or neither."""

    tag: SixFormTag
    param: Optional[int] = None

    def value(self) -> int:
        """Rebuild the integer from its parameter.

        Raises:
            ValueError: If the form is NEITHER (nothing to rebuild)
        """
        if self.tag is SixFormTag.MPL:
            return 6 * self.param + 1
        if self.tag is SixFormTag.MPS:
            return 6 * self.param - 1
        raise ValueError("NEITHER form carries no parameter")


class PairKind(enum.Enum):
    """Which candidate pair an index k stands for."""

    TWIN = "twin"
    COUSIN = "cousin"

    @property
    def offsets(self) -> tuple[int, int]:
        """Offsets e such that the pair members are 6k + e."""
        if self is PairKind.TWIN:
            return (-1, 1)
        return (1, 5)

    @property
    def gap(self) -> int:
        return self.offsets[1] - self.offsets[0]

    def members(self, k: int) -> tuple[int, int]:
        """Return the (small, large) candidate pair for index k."""
        lo, hi = self.offsets
        return 6 * k + lo, 6 * k + hi

    def max_index_for(self, n: int) -> int:
        """Largest k whose larger pair member is <= n (0 when there is none)."""
        return max(0, (n - self.offsets[1]) // 6)

    @property
    def families(self) -> tuple["FormFamily", ...]:
        return tuple(f for f in FormFamily if f.kind is self)


class WitnessEquation(enum.Enum):
    """The four CPN5 product shapes, in tie-break order.

    Names give the form of the x factor, then the y factor.
    """

    MPL_MPS = "mpl_mps"
    MPS_MPL = "mps_mpl"
    MPL_MPL = "mpl_mpl"
    MPS_MPS = "mps_mps"


@dataclass(frozen=True)
class Cpn5Witness:
    """A composite n = mpl/mps x mpl/mps written with parameters x and y."""

    n: int
    equation: WitnessEquation
    x: int
    y: int

    def factors(self) -> tuple[int, int]:
        """Return the two factors in the order the equation writes them."""
        x, y = self.x, self.y
        if self.equation is WitnessEquation.MPL_MPS:
            return 6 * x + 1, 6 * y - 1
        if self.equation is WitnessEquation.MPS_MPL:
            return 6 * y + 1, 6 * x - 1
        if self.equation is WitnessEquation.MPL_MPL:
            return 6 * x + 1, 6 * y + 1
        return 6 * x - 1, 6 * y - 1

    def reconstruct(self) -> int:
        """Evaluate the equation's polynomial form 6(...) +- 1."""
        x, y = self.x, self.y
        if self.equation is WitnessEquation.MPL_MPS:
            return 6 * (6 * x * y - x + y) - 1
        if self.equation is WitnessEquation.MPS_MPL:
            return 6 * (6 * x * y + x - y) - 1
        if self.equation is WitnessEquation.MPL_MPL:
            return 6 * (6 * x * y + x + y) + 1
        return 6 * (6 * x * y - x - y) + 1

    def is_valid(self) -> bool:
        a, b = self.factors()
        return self.reconstruct() == self.n == a * b


class FormFamily(enum.Enum):
    """Exclusion form families k(x, y) = 6xy + a*y + b*x + d.

    Values are (kind, a, b, d, label). C3 is reconstructed from the
    mpl x mpl case of 6k+1 and is not printed in the cousin form list.
    """

    T1 = (PairKind.TWIN, -1, 1, 0, "(6x-1)y+x")
    T2 = (PairKind.TWIN, -1, -1, 0, "(6x-1)y-x")
    T3 = (PairKind.TWIN, 1, 1, 0, "(6x+1)y+x")
    C1 = (PairKind.COUSIN, -1, 1, -1, "(6x-1)y+x-1")
    C2 = (PairKind.COUSIN, -1, -1, 0, "(6x-1)y-x")
    C3 = (PairKind.COUSIN, 1, 1, 0, "(6x+1)y+x")

    def __init__(self, kind: PairKind, a: int, b: int, d: int, label: str):
        self.kind = kind
        self.a = a
        self.b = b
        self.d = d
        self.label = label

    @property
    def reconstructed(self) -> bool:
        return self is FormFamily.C3

    @property
    def member_offset(self) -> int:
        """Offset e of the pair member 6k + e that this family makes composite."""
        return self.a * self.b - 6 * self.d

    def k(self, x: int, y: int) -> int:
        return 6 * x * y + self.a * y + self.b * x + self.d

    def composite_member(self, x: int, y: int) -> tuple[int, int]:
        """Return the factors (6x + a, 6y + b) of the member 6k(x, y) + e."""
        return 6 * x + self.a, 6 * y + self.b

    def thread(self, x: int) -> "ExclusionThread":
        """Thread of this family with x fixed and y = 1, 2, 3, ..."""
        return ExclusionThread(self, ThreadRole.FIXED_X, x, 6 * x + self.a, self.k(x, 1))

    def thread_fixed_y(self, y: int) -> "ExclusionThread":
        """Thread of this family with y fixed and x = 1, 2, 3, ..."""
        return ExclusionThread(self, ThreadRole.FIXED_Y, y, 6 * y + self.b, self.k(1, y))


class ThreadRole(enum.Enum):
    """Which form variable a thread holds fixed."""

    FIXED_X = "x"
    FIXED_Y = "y"


@dataclass(frozen=True)
class ExclusionThread:
    """Arithmetic progression first, first + q, first + 2q, ... of excluded k."""

    family: FormFamily
    role: ThreadRole
    param: int
    coefficient: int
    first: int

    @property
    def step(self) -> int:
        return self.coefficient

    def __contains__(self, k: int) -> bool:
        return k >= self.first and (k - self.first) % self.coefficient == 0

    def members(self, upto: int) -> range:
        """Members not exceeding upto, ascending."""
        return range(self.first, upto + 1, self.coefficient)

    def first_at_or_after(self, lo: int) -> int:
        """Smallest member >= lo."""
        if lo <= self.first:
            return self.first
        return self.first + -(-(lo - self.first) // self.coefficient) * self.coefficient

    def describe(self) -> str:
        """Render as coefficient*var + offset, e.g. '25y+4' or '7x-1'."""
        var = "y" if self.role is ThreadRole.FIXED_X else "x"
        offset = self.first - self.coefficient
        if offset == 0:
            return f"{self.coefficient}{var}"
        return f"{self.coefficient}{var}{offset:+d}"


@dataclass(frozen=True)
class Exclusion:
    """A family point (x, y) that generates an excluded k."""

    family: FormFamily
    x: int
    y: int

    @property
    def k(self) -> int:
        return self.family.k(self.x, self.y)


def smallest_prime_factor(n: int) -> int:
    """Smallest prime factor of n >= 2 by trial division."""
    if n % 2 == 0:
        return 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return d
    return n


def is_prime(n: int) -> bool:
    """Trial-division primality, for coefficients and test-scale inputs only."""
    return n >= 2 and smallest_prime_factor(n) == n


def classify_six_form(n: int) -> SixForm:
    """Classify n as mpl (6l+1, l >= 1), mps (6s-1, s >= 1) or neither.

    Args:
        n: Positive integer

    Returns:
        SixForm with the parameter that rebuilds n
    """
    r = n % 6
    if r == 1 and n >= 7:
        return SixForm(SixFormTag.MPL, (n - 1) // 6)
    if r == 5:
        return SixForm(SixFormTag.MPS, (n + 1) // 6)
    return SixForm(SixFormTag.NEITHER)


def _witness_candidates(n: int, u: int, w: int):
    """Yield (x, y, equation) readings of n = u * w with u, w >= 5."""
    fu, fw = classify_six_form(u), classify_six_form(w)
    if fu.tag is SixFormTag.MPL and fw.tag is SixFormTag.MPS:
        yield fu.param, fw.param, WitnessEquation.MPL_MPS
        yield fw.param, fu.param, WitnessEquation.MPS_MPL
    elif fu.tag is SixFormTag.MPL and fw.tag is SixFormTag.MPL:
        yield fu.param, fw.param, WitnessEquation.MPL_MPL
    elif fu.tag is SixFormTag.MPS and fw.tag is SixFormTag.MPS:
        yield fu.param, fw.param, WitnessEquation.MPS_MPS


def cpn5_witness(n: int) -> Cpn5Witness:
    """Write a composite n coprime to 6 in one of the CPN5 product shapes.

    Among all factorizations the witness with the smallest x wins, then the
    smallest y, then the earlier equation.

    Args:
        n: Composite integer with n = +-1 (mod 6)

    Returns:
        Cpn5Witness whose polynomial form rebuilds n

    Raises:
        WitnessError: If n has a factor 2 or 3, or is not composite
    """
    if n % 2 == 0 or n % 3 == 0:
        raise WitnessError(f"{n} has a factor 2 or 3")

    order = list(WitnessEquation)
    best = None
    for d in range(5, isqrt(n) + 1):
        if n % d:
            continue
        e = n // d
        for u, w in ((d, e), (e, d)):
            for x, y, eq in _witness_candidates(n, u, w):
                key = (x, y, order.index(eq))
                if best is None or key < best[0]:
                    best = (key, Cpn5Witness(n, eq, x, y))

    if best is None:
        raise WitnessError(f"{n} is not composite")
    return best[1]


def k_forms(kind: PairKind, x: int) -> tuple[ExclusionThread, ...]:
    """The three fixed-x exclusion threads of a pair kind."""
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    return tuple(family.thread(x) for family in kind.families)


def twin_k_forms(x: int) -> tuple[ExclusionThread, ...]:
    """Twin threads (6x-1)y+x, (6x-1)y-x, (6x+1)y+x for fixed x."""
    return k_forms(PairKind.TWIN, x)


def cousin_k_forms(x: int) -> tuple[ExclusionThread, ...]:
    """Cousin threads (6x-1)y+x-1, (6x-1)y-x, (6x+1)y+x for fixed x."""
    return k_forms(PairKind.COUSIN, x)


def find_exclusion(kind: PairKind, k: int) -> Optional[Exclusion]:
    """Search every family point that could generate k.

    The smallest member of any family at parameter x is 5x-1, so x runs
    up to (k+1)/5.

    Returns:
        The first Exclusion found (x ascending, families in order), or None
    """
    x = 1
    while 5 * x - 1 <= k:
        for family in kind.families:
            t = family.thread(x)
            if k in t:
                return Exclusion(family, x, (k - t.first) // t.step + 1)
        x += 1
    return None


def is_excluded(kind: PairKind, k: int) -> bool:
    """True iff k is generated by some form family with x, y >= 1."""
    return find_exclusion(kind, k) is not None


def _check_modulus(q: int) -> None:
    if q <= 3 or not is_prime(q):
        raise NotPrimeError(f"modulus must be a prime above 3, got {q}")


def excluded_residues(kind: PairKind, q: int) -> frozenset[int]:
    """Residues r mod q for which q divides a pair member 6r + e.

    Raises:
        NotPrimeError: If q is not a prime >= 5
    """
    _check_modulus(q)
    inv6 = pow(6, -1, q)
    return frozenset((-e * inv6) % q for e in kind.offsets)


def prime_threads(kind: PairKind, q: int) -> tuple[ExclusionThread, ...]:
    """The two family threads whose coefficient is the prime q.

    Each starts at the first k whose member is q*m with m >= 5; the k with
    member q itself is never part of a thread.
    """
    _check_modulus(q)
    found = {}
    for family in kind.families:
        if (q - family.a) % 6 == 0:
            t = family.thread((q - family.a) // 6)
            found.setdefault(t.first, t)
        if (q - family.b) % 6 == 0:
            t = family.thread_fixed_y((q - family.b) // 6)
            found.setdefault(t.first, t)
    return tuple(found[first] for first in sorted(found))


def reduction_factor(q: int) -> int:
    """Prime factor of q used by reduce_thread.

    The smallest prime factor of the form 6l+1 when q has one, otherwise the
    smallest prime factor.
    """
    factors = []
    m = q
    while m > 1:
        p = smallest_prime_factor(m)
        factors.append(p)
        m //= p
    mpl = [p for p in factors if p % 6 == 1]
    return min(mpl) if mpl else min(factors)


def reduce_thread(thread: ExclusionThread) -> ExclusionThread:
    """Replace a composite-coefficient thread by a prime-coefficient one covering it.

    Every member of the input thread is a member of the returned thread.

    Raises:
        ReductionError: If the coefficient is prime
    """
    q = thread.coefficient
    if is_prime(q):
        raise ReductionError(f"thread {thread.describe()} already has a prime coefficient")

    p = reduction_factor(q)
    residue = thread.first % p
    for candidate in prime_threads(thread.family.kind, p):
        if candidate.first % p == residue:
            logger.debug("reduced %s to %s", thread.describe(), candidate.describe())
            return candidate
    raise ReductionError(f"no thread of coefficient {p} contains {thread.describe()}")
