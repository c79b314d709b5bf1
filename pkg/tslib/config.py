"""Run configuration: one validated RunConfig per CLI invocation."""

import enum
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO

from tslib import TwinspaceError
from tslib.analytics import FULL_PERIOD_MAX_STEPS, MAX_WINDOW
from tslib.exclusion import DEFAULT_SEGMENT_SIZE, MAX_SEGMENT_SIZE, MAX_SIEVE_INDEX
from tslib.genspace import PairKind
from tslib.oracle import ORACLE_CAPACITY


# Constants
STDOUT_PATH = "-"
DEFAULT_BOUNDS_STEP = 1000
DEFAULT_DENSE_UNTIL = 10_000

# Each sampled n becomes one report row held in memory
MAX_BOUND_SAMPLES = 10_000_000

# Optional argparse destinations copied onto RunConfig when present
INT_OPTIONS = (
    "limit",
    "n_max",
    "steps",
    "window",
    "step",
    "dense_until",
    "segment_size",
    "workers",
)


# Custom exceptions
class ConfigError(TwinspaceError, ValueError):
    """Raised when a command-line value is outside what the modules accept."""

    pass


class Command(enum.Enum):
    SIEVE = "sieve"
    VERIFY = "verify"
    DENSITY = "density"
    BOUNDS = "bounds"
    GAPS = "gaps"


class Method(enum.Enum):
    FORMS = "forms"
    THREADS = "threads"
    BOTH = "both"


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


@dataclass
class RunConfig:
    """Everything one command needs; built from parsed arguments."""

    command: Command
    kind: PairKind = PairKind.TWIN
    limit: Optional[int] = None
    n_max: Optional[int] = None
    steps: Optional[int] = None
    window: Optional[int] = None
    full_period: bool = False
    step: int = DEFAULT_BOUNDS_STEP
    dense_until: int = DEFAULT_DENSE_UNTIL
    method: Method = Method.THREADS
    segment_size: int = DEFAULT_SEGMENT_SIZE
    workers: int = 1
    format: OutputFormat = OutputFormat.CSV
    out: str = STDOUT_PATH

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Build and validate a RunConfig from an argparse namespace.

        Raises:
            ConfigError: If any value is out of range
        """
        values = {"command": Command(args.command)}
        if getattr(args, "kind", None):
            values["kind"] = PairKind(args.kind)
        if getattr(args, "method", None):
            values["method"] = Method(args.method)
        if getattr(args, "format", None):
            values["format"] = OutputFormat(args.format)
        for name in INT_OPTIONS + ("out",):
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        values["full_period"] = bool(getattr(args, "full_period", False))

        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        """Check limits against module capacities.

        Raises:
            ConfigError: On the first invalid value
        """
        if self.command in (Command.SIEVE, Command.VERIFY):
            self._require_range("limit", self.limit, 1, MAX_SIEVE_INDEX)
            # The oracle must reach the larger pair member 6K+5
            if self.command is Command.VERIFY:
                self._require_range("limit", self.limit, 1, (ORACLE_CAPACITY - 5) // 6)
        if self.command is Command.DENSITY:
            self._require_range("steps", self.steps, 1, None)
            if self.full_period and self.steps > FULL_PERIOD_MAX_STEPS:
                raise ConfigError(
                    f"--full-period needs --steps <= {FULL_PERIOD_MAX_STEPS}, got {self.steps}"
                )
            if self.window is not None:
                self._require_range("window", self.window, 1, MAX_WINDOW)
        if self.command is Command.BOUNDS:
            self._require_range("max", self.n_max, 1, 6 * MAX_SIEVE_INDEX + 5)
            self._require_range("step", self.step, 1, None)
            self._require_range("dense-until", self.dense_until, 0, None)
            samples = min(self.dense_until, self.n_max) + self.n_max // self.step
            if samples > MAX_BOUND_SAMPLES:
                raise ConfigError(
                    f"--max {self.n_max} with --step {self.step} "
                    f"and --dense-until {self.dense_until} "
                    f"samples about {samples} n (limit {MAX_BOUND_SAMPLES})"
                )
        if self.command is Command.GAPS:
            self._require_range("max", self.n_max, 3, ORACLE_CAPACITY // 2)
        self._require_range("segment", self.segment_size, 1, MAX_SEGMENT_SIZE)
        self._require_range("workers", self.workers, 1, None)

    @staticmethod
    def _require_range(name: str, value: Optional[int], lo: int, hi: Optional[int]) -> None:
        if value is None:
            raise ConfigError(f"--{name} is required")
        if value < lo or (hi is not None and value > hi):
            upper = "" if hi is None else f" and <= {hi}"
            raise ConfigError(f"--{name} must be >= {lo}{upper}, got {value}")

    def writes_stdout(self) -> bool:
        return self.out == STDOUT_PATH

    def get_out_path(self) -> Optional[Path]:
        """Return the resolved output file path, or None for standard output."""
        if self.writes_stdout():
            return None
        return Path(self.out).resolve()

    def open_output(self) -> TextIO:
        """Open the output stream; the caller closes it unless it is stdout."""
        path = self.get_out_path()
        if path is None:
            return sys.stdout
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="")
