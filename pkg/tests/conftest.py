"""Shared fixtures for test suite."""

from argparse import Namespace

import pytest

from tslib.config import RunConfig
from tslib.exclusion import sieve_forms, sieve_prime_threads
from tslib.genspace import PairKind
from tslib.oracle import primes_up_to

# Index range of the fast strategy-equivalence tests
SMALL_K = 20_000

# Index range of the slow acceptance runs
LARGE_K = 1_000_000


@pytest.fixture(scope="session")
def small_table():
    """Fixture providing a PrimeTable up to 10^5."""
    return primes_up_to(100_000)


@pytest.fixture(scope="session")
def large_table():
    """Fixture providing a PrimeTable covering the pairs of k <= 10^6."""
    return primes_up_to(6 * LARGE_K + 5)


@pytest.fixture(scope="session")
def small_windows():
    """Fixture providing forms and prime-thread windows for both kinds up to SMALL_K."""
    return {
        kind: (sieve_forms(kind, SMALL_K), sieve_prime_threads(kind, SMALL_K))
        for kind in PairKind
    }


@pytest.fixture
def make_config(tmp_path):
    """Fixture building a validated RunConfig from keyword arguments.

    Output goes to tmp_path/out.txt unless out is given.
    """

    def _make(command, **kwargs):
        kwargs.setdefault("out", str(tmp_path / "out.txt"))
        return RunConfig.from_args(Namespace(command=command, **kwargs))

    return _make
