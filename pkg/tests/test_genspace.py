"""Tests for tslib.genspace module."""

import pytest

from tslib.genspace import (
    FormFamily,
    NotPrimeError,
    PairKind,
    ReductionError,
    SixForm,
    SixFormTag,
    ThreadRole,
    WitnessEquation,
    WitnessError,
    classify_six_form,
    cousin_k_forms,
    cpn5_witness,
    excluded_residues,
    find_exclusion,
    is_excluded,
    k_forms,
    prime_threads,
    reduce_thread,
    reduction_factor,
    twin_k_forms,
)

# Exhaustive soundness and completeness run up to this index
CHECK_K = 1500


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _primes_between(lo, hi):
    return [q for q in range(lo, hi + 1) if _is_prime(q)]


class TestSixForm:
    """Tests for classify_six_form and SixForm."""

    @pytest.mark.parametrize(
        "n,tag,param",
        [
            (7, SixFormTag.MPL, 1),
            (35, SixFormTag.MPS, 6),
            (5, SixFormTag.MPS, 1),
            (49, SixFormTag.MPL, 8),
            (12, SixFormTag.NEITHER, None),
            (1, SixFormTag.NEITHER, None),
            (9, SixFormTag.NEITHER, None),
            (4, SixFormTag.NEITHER, None),
        ],
    )
    def test_classify(self, n, tag, param):
        """Test classification and parameter of small integers."""
        form = classify_six_form(n)
        assert form.tag is tag
        assert form.param == param

    def test_value_rebuilds_integer(self):
        """Test value() inverts classify_six_form for every mpl/mps number."""
        for n in range(5, 500):
            form = classify_six_form(n)
            if form.tag is not SixFormTag.NEITHER:
                assert form.value() == n

    def test_value_of_neither_raises(self):
        """Test NEITHER form has no value."""
        with pytest.raises(ValueError):
            SixForm(SixFormTag.NEITHER).value()


class TestCpn5Witness:
    """Tests for cpn5_witness."""

    @pytest.mark.parametrize(
        "n,equation,x,y",
        [
            (35, WitnessEquation.MPL_MPS, 1, 1),
            (49, WitnessEquation.MPL_MPL, 1, 1),
            (25, WitnessEquation.MPS_MPS, 1, 1),
            (55, WitnessEquation.MPS_MPS, 1, 2),
            (65, WitnessEquation.MPS_MPL, 1, 2),
        ],
    )
    def test_examples(self, n, equation, x, y):
        """Test smallest-x, then smallest-y witness selection."""
        w = cpn5_witness(n)
        assert (w.equation, w.x, w.y) == (equation, x, y)
        assert w.is_valid()

    def test_every_witness_reconstructs(self):
        """Test witness validity for every composite coprime to 6 below 3000."""
        for n in range(25, 3000):
            if n % 2 and n % 3 and not _is_prime(n):
                w = cpn5_witness(n)
                assert w.reconstruct() == n
                a, b = w.factors()
                assert a * b == n and a >= 5 and b >= 5

    @pytest.mark.parametrize("n", [37, 21, 26, 5])
    def test_rejects_prime_or_small_factor(self, n):
        """Test primes and multiples of 2 or 3 raise WitnessError."""
        with pytest.raises(WitnessError):
            cpn5_witness(n)


class TestKForms:
    """Tests for twin_k_forms and cousin_k_forms."""

    def test_twin_x1(self):
        """Test twin threads at x = 1."""
        threads = twin_k_forms(1)
        assert [t.first for t in threads] == [6, 4, 8]
        assert [t.step for t in threads] == [5, 5, 7]

    def test_twin_x3(self):
        """Test twin threads at x = 3."""
        threads = twin_k_forms(3)
        assert [t.first for t in threads] == [20, 14, 22]
        assert [t.describe() for t in threads] == ["17y+3", "17y-3", "19y+3"]

    def test_twin_x4_has_composite_coefficient(self):
        """Test the third twin thread at x = 4 is 25y+4."""
        t = twin_k_forms(4)[2]
        assert t.step == 25
        assert t.describe() == "25y+4"

    def test_cousin_x1(self):
        """Test cousin threads at x = 1."""
        threads = cousin_k_forms(1)
        assert [t.first for t in threads] == [5, 4, 8]
        assert [t.step for t in threads] == [5, 5, 7]

    def test_cousin_member_offsets(self):
        """Test C1 hits 6k+5 and C2, C3 hit 6k+1."""
        assert FormFamily.C1.member_offset == 5
        assert FormFamily.C2.member_offset == 1
        assert FormFamily.C3.member_offset == 1
        assert FormFamily.C3.reconstructed
        assert not FormFamily.C1.reconstructed

    @pytest.mark.parametrize(
        "family,x,y,k,member",
        [
            (FormFamily.C1, 1, 1, 5, 35),
            (FormFamily.C3, 2, 1, 15, 91),
            (FormFamily.T3, 1, 1, 8, 49),
        ],
    )
    def test_composite_member(self, family, x, y, k, member):
        """Test the generated k carries the factored composite member."""
        assert family.k(x, y) == k
        u, w = family.composite_member(x, y)
        assert u * w == member == 6 * k + family.member_offset

    def test_threads_match_form_values(self):
        """Test thread members are k(x, y) for y = 1, 2, 3, ..."""
        for kind in PairKind:
            for x in range(1, 12):
                for t in k_forms(kind, x):
                    expected = [t.family.k(x, y) for y in range(1, 11)]
                    assert list(t.members(t.first + 9 * t.step)) == expected

    def test_y_zero_is_not_a_member(self):
        """Test the y = 0 value first - step lies outside every thread."""
        for t in twin_k_forms(5) + cousin_k_forms(5):
            assert (t.first - t.step) not in t

    def test_first_at_or_after(self):
        """Test first_at_or_after on 5y-1."""
        t = twin_k_forms(1)[1]
        assert t.first_at_or_after(1) == 4
        assert t.first_at_or_after(5) == 9
        assert t.first_at_or_after(9) == 9

    def test_rejects_nonpositive_x(self):
        """Test x = 0 raises ValueError."""
        with pytest.raises(ValueError):
            twin_k_forms(0)


class TestFormEquivalence:
    """Test the alternative twin form (6x+1)y-x generates the same indices."""

    def test_alternative_form_same_set(self):
        """Test {(6x+1)y-x} equals {(6x-1)y+x} below a bound."""
        bound = 5000
        primary = {k for x in range(1, bound) for k in FormFamily.T1.thread(x).members(bound)}
        alternative = set()
        for x in range(1, bound):
            start = 6 * x + 1 - x
            if start > bound:
                break
            alternative.update(range(start, bound + 1, 6 * x + 1))
        assert primary == alternative


class TestIsExcluded:
    """Tests for is_excluded and find_exclusion."""

    def test_twin_four(self):
        """Test k = 4 is excluded by T2 at x = y = 1."""
        found = find_exclusion(PairKind.TWIN, 4)
        assert (found.family, found.x, found.y) == (FormFamily.T2, 1, 1)

    def test_twin_eight(self):
        """Test k = 8 is excluded by T3 at x = y = 1."""
        found = find_exclusion(PairKind.TWIN, 8)
        assert (found.family, found.x, found.y) == (FormFamily.T3, 1, 1)
        assert found.k == 8

    def test_twin_twelve_survives(self):
        """Test k = 12 (71, 73) is not excluded."""
        assert find_exclusion(PairKind.TWIN, 12) is None
        assert not is_excluded(PairKind.TWIN, 12)

    def test_cousin_four(self):
        """Test cousin k = 4 (25 composite) is excluded."""
        assert is_excluded(PairKind.COUSIN, 4)

    def test_twin_survivors_to_twenty(self):
        """Test the non-excluded twin indices up to 20."""
        survivors = [k for k in range(1, 21) if not is_excluded(PairKind.TWIN, k)]
        assert survivors == [1, 2, 3, 5, 7, 10, 12, 17, 18]

    def test_cousin_survivors_to_thirteen(self):
        """Test the non-excluded cousin indices up to 13."""
        kept = [k for k in range(1, 14) if not is_excluded(PairKind.COUSIN, k)]
        assert kept == [1, 2, 3, 6, 7, 11, 13]

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_soundness(self, kind):
        """Test every exclusion factors a pair member into two factors >= 5."""
        for k in range(1, CHECK_K + 1):
            found = find_exclusion(kind, k)
            if found is None:
                continue
            u, w = found.family.composite_member(found.x, found.y)
            member = 6 * k + found.family.member_offset
            assert member in kind.members(k)
            assert u * w == member and u >= 5 and w >= 5

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_completeness(self, kind):
        """Test every k with a composite pair member is excluded."""
        for k in range(1, CHECK_K + 1):
            small, large = kind.members(k)
            assert is_excluded(kind, k) == (not (_is_prime(small) and _is_prime(large)))


class TestExcludedResidues:
    """Tests for excluded_residues and prime_threads."""

    @pytest.mark.parametrize(
        "kind,q,expected",
        [
            (PairKind.TWIN, 5, {1, 4}),
            (PairKind.TWIN, 7, {1, 6}),
            (PairKind.COUSIN, 5, {0, 4}),
            (PairKind.COUSIN, 7, {1, 5}),
        ],
    )
    def test_examples(self, kind, q, expected):
        """Test residues for the two smallest moduli."""
        assert excluded_residues(kind, q) == expected

    @pytest.mark.parametrize("q", [1, 2, 3, 9, 25])
    def test_rejects_bad_modulus(self, q):
        """Test non-primes and primes <= 3 raise NotPrimeError."""
        with pytest.raises(NotPrimeError):
            excluded_residues(PairKind.TWIN, q)

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_residues_divide_members(self, kind):
        """Test q divides a pair member exactly on the excluded residues."""
        for q in _primes_between(5, 200):
            residues = excluded_residues(kind, q)
            assert len(residues) == 2
            for r in range(q):
                hit = any((6 * r + e) % q == 0 for e in kind.offsets)
                assert hit == (r in residues)

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_prime_threads(self, kind):
        """Test two coefficient-q threads starting at member 5q or 7q."""
        for q in _primes_between(5, 200):
            threads = prime_threads(kind, q)
            assert len(threads) == 2
            assert {t.coefficient for t in threads} == {q}
            assert {t.first % q for t in threads} == excluded_residues(kind, q)
            for t in threads:
                member = 6 * t.first + t.family.member_offset
                assert member in (5 * q, 7 * q)

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_residue_consistency(self, kind):
        """Test thread membership is residue membership past the member q itself."""
        for q in _primes_between(5, 100):
            threads = prime_threads(kind, q)
            residues = excluded_residues(kind, q)
            for k in range(1, 12 * q):
                in_thread = any(k in t for t in threads)
                in_class = k % q in residues
                member_is_q = q in kind.members(k)
                assert in_thread == (in_class and not member_is_q)

    def test_fixed_y_role_appears(self):
        """Test an mpl modulus uses a fixed-y twin thread."""
        roles = {t.role for t in prime_threads(PairKind.TWIN, 7)}
        assert roles == {ThreadRole.FIXED_X, ThreadRole.FIXED_Y}


class TestReduceThread:
    """Tests for reduce_thread."""

    @pytest.mark.parametrize(
        "thread,original,reduced",
        [
            (FormFamily.T3.thread(4), "25y+4", "5y-1"),
            (FormFamily.T2.thread(6), "35y-6", "7y+1"),
            (FormFamily.T3.thread(8), "49y+8", "7y+1"),
        ],
    )
    def test_examples(self, thread, original, reduced):
        """Test the worked reductions."""
        assert thread.describe() == original
        assert reduce_thread(thread).describe() == reduced

    def test_prime_coefficient_raises(self):
        """Test a prime coefficient has nothing to reduce."""
        with pytest.raises(ReductionError):
            reduce_thread(twin_k_forms(1)[0])

    @pytest.mark.parametrize(
        "q,p",
        [(25, 5), (35, 7), (49, 7), (55, 5), (65, 13), (85, 5), (91, 7), (95, 19), (121, 11)],
    )
    def test_reduction_factor(self, q, p):
        """Test the 6l+1 factor is preferred, else the smallest factor."""
        assert reduction_factor(q) == p

    @pytest.mark.parametrize("kind", list(PairKind))
    def test_reduction_covers_members(self, kind):
        """Test every member <= 10^5 of a composite-coefficient thread lies in its reduction."""
        upto = 100_000
        for x in range(1, 51):
            for t in k_forms(kind, x):
                if _is_prime(t.coefficient):
                    continue
                reduced = reduce_thread(t)
                assert _is_prime(reduced.coefficient)
                assert t.coefficient % reduced.coefficient == 0
                assert all(k in reduced for k in t.members(upto))
