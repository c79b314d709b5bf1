"""Tests for tslib.bounds module."""

from unittest.mock import patch

import pytest

from tslib.analytics import BoundReport, lower_bound_log
from tslib.bounds import BoundsCommand, sample_points
from tslib.exclusion import sieve_prime_threads
from tslib.export import render_csv
from tslib.genspace import PairKind


@pytest.mark.parametrize(
    "n_max,step,dense_until,expected",
    [
        (100, 10, 5, [1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100]),
        (25, 10, 20, list(range(1, 21)) + [25]),
        (10, 1000, 0, [10]),
        (3, 1, 10, [1, 2, 3]),
        (2500, 1000, 0, [1000, 2000, 2500]),
    ],
)
def test_sample_points(n_max, step, dense_until, expected):
    """Test dense prefix, sparse multiples, and the final n_max."""
    assert sample_points(n_max, step, dense_until) == expected


def test_bounds_rows(make_config, tmp_path):
    """Test the header and the rows at n = 6 and n = 18."""
    config = make_config("bounds", n_max=100, step=10, dense_until=20)
    assert BoundsCommand(config).run() == 0
    lines = (tmp_path / "out.txt").read_text().splitlines()
    assert lines[0] == "n,pi,bound9,bound11,bound20,ok9,ok11,ok20"
    assert lines[6] == "6,0,0.6,0.3,,false,false,"
    assert lines[18] == f"18,2,1.8,0.9,{render_csv(lower_bound_log(18))},true,true,true"
    assert lines[-1].startswith("100,7,")
    assert len(lines) == 1 + 20 + 8


def test_bounds_cousin(make_config, tmp_path):
    """Test cousin rows count pi_CP."""
    config = make_config("bounds", kind="cousin", n_max=83, step=83, dense_until=0)
    assert BoundsCommand(config).run() == 0
    assert (tmp_path / "out.txt").read_text().splitlines()[1].startswith("83,7,")


def test_bounds_violation_exits_one(make_config, capsys):
    """Test a counted bound20 failure exits 1."""
    config = make_config("bounds", n_max=50, step=50, dense_until=0)
    failing = BoundReport(PairKind.TWIN, 50, 0, 5.0, 2.5, 1.0, False)
    with patch("tslib.bounds.bound_report", return_value=failing):
        assert BoundsCommand(config).run() == 1
    assert "break the final bound" in capsys.readouterr().err


def test_bounds_sub_threshold_failure_ignored(make_config, capsys):
    """Test a failing row below 18 does not change the exit code but is reported."""
    config = make_config("bounds", n_max=10, step=10, dense_until=0)
    failing = BoundReport(PairKind.TWIN, 10, 0, 1.0, 0.5, 2.0, True)
    with patch("tslib.bounds.bound_report", return_value=failing):
        assert BoundsCommand(config).run() == 0
    err = capsys.readouterr().err
    assert "1 sampled n < 18 are sub-threshold for the final bound (1 below it, not counted)" in err


def test_bounds_summary_counts_sub_threshold_rows(make_config, capsys):
    """Test the summary names how many sampled n fall below 18."""
    config = make_config("bounds", n_max=100, step=10, dense_until=20)
    assert BoundsCommand(config).run() == 0
    assert "17 sampled n < 18 are sub-threshold" in capsys.readouterr().err


def test_bounds_no_sub_threshold_note(make_config, capsys):
    """Test no sub-threshold note when every sampled n is at least 18."""
    config = make_config("bounds", n_max=100, step=50, dense_until=0)
    assert BoundsCommand(config).run() == 0
    assert "sub-threshold" not in capsys.readouterr().err


def test_bounds_passes_workers(make_config):
    """Test --workers and --segment reach the pair-count sieve."""
    config = make_config("bounds", n_max=600, step=100, dense_until=0, segment_size=7, workers=3)
    with patch("tslib.bounds.sieve_prime_threads", wraps=sieve_prime_threads) as mock_sieve:
        assert BoundsCommand(config).run() == 0
    mock_sieve.assert_called_once_with(PairKind.TWIN, 99, segment_size=7, workers=3)


@pytest.mark.slow
def test_bounds_sweep_to_million(make_config, tmp_path):
    """Test no sampled n in [18, 10^6] breaks the final bound."""
    config = make_config("bounds", n_max=1_000_000)
    assert BoundsCommand(config).run() == 0
    lines = (tmp_path / "out.txt").read_text().splitlines()
    assert lines[-1].startswith("1000000,8168,")
