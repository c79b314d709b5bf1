"""CLI argument parsing and command routing."""

import argparse
import logging
import sys

from tslib import TwinspaceError
from tslib.analytics import (
    BoundDomainError,
    DensityMismatchError,
    PeriodTooLargeError,
    WindowTooLargeError,
)
from tslib.bounds import BoundsCommand
from tslib.config import (
    DEFAULT_BOUNDS_STEP,
    DEFAULT_DENSE_UNTIL,
    STDOUT_PATH,
    ConfigError,
    RunConfig,
)
from tslib.density import DensityCommand
from tslib.exclusion import DEFAULT_SEGMENT_SIZE, PairDefectError, SieveRangeError
from tslib.gaps import GapsCommand
from tslib.oracle import OracleCapacityError
from tslib.sieve import SieveCommand
from tslib.verify import VerifyCommand

# Exit-code contract
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the top-level parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="twinspace",
        description="twinspace - generative-space sieves and bounds for twin and cousin primes",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=["csv", "json"], default="csv", help="Record format")
    output.add_argument("--out", default=STDOUT_PATH, help="Output file (default: standard output)")

    kind = argparse.ArgumentParser(add_help=False)
    kind.add_argument("--kind", choices=["twin", "cousin"], default="twin", help="Pair kind")

    segments = argparse.ArgumentParser(add_help=False)
    segments.add_argument(
        "--segment",
        dest="segment_size",
        type=int,
        default=DEFAULT_SEGMENT_SIZE,
        help="k-values per segment",
    )
    segments.add_argument("--workers", type=int, default=1, help="Segments sieved concurrently")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Sieve subcommand
    sieve_parser = subparsers.add_parser(
        "sieve", parents=[kind, segments, output], help="List surviving k and their prime pairs"
    )
    sieve_parser.add_argument("--limit", type=int, required=True, help="Largest generative index K")
    sieve_parser.add_argument(
        "--method",
        choices=["forms", "threads", "both"],
        default="threads",
        help="Exclusion strategy",
    )

    # Verify subcommand
    verify_parser = subparsers.add_parser(
        "verify",
        parents=[kind, segments, output],
        help="Check forms sieve, prime-thread sieve and oracle agree",
    )
    verify_parser.add_argument(
        "--limit", type=int, required=True, help="Largest generative index K"
    )

    # Density subcommand
    density_parser = subparsers.add_parser(
        "density", parents=[kind, output], help="Tabulate c_thread and the true density per step"
    )
    density_parser.add_argument("--steps", type=int, required=True, help="Number of sieving primes")
    density_parser.add_argument(
        "--window", type=int, help="Also report the empirical density over [1, W]"
    )
    density_parser.add_argument(
        "--full-period",
        action="store_true",
        help="Also count survivors over the full period (steps <= 7)",
    )

    # Bounds subcommand
    bounds_parser = subparsers.add_parser(
        "bounds", parents=[kind, segments, output], help="Compare pair counts with the lower bounds"
    )
    bounds_parser.add_argument(
        "--max", dest="n_max", type=int, required=True, help="Largest n sampled"
    )
    bounds_parser.add_argument(
        "--step", type=int, default=DEFAULT_BOUNDS_STEP, help="Sampling step"
    )
    bounds_parser.add_argument(
        "--dense-until",
        type=int,
        default=DEFAULT_DENSE_UNTIL,
        help="Sample every n up to this value",
    )

    # Gaps subcommand
    gaps_parser = subparsers.add_parser(
        "gaps", parents=[output], help="Scan for consecutive primes p' >= 2p"
    )
    gaps_parser.add_argument(
        "--max", dest="n_max", type=int, required=True, help="Largest p checked"
    )

    return parser


def main(argv=None):
    """Main entry point for twinspace CLI.

    Args:
        argv: Argument list (default: sys.argv[1:])

    Returns:
        Exit code (0 success, 1 violated check, 2 usage error)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    _configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)

        # Route to appropriate command
        if args.command == "sieve":
            return SieveCommand(config).run()
        elif args.command == "verify":
            return VerifyCommand(config).run()
        elif args.command == "density":
            return DensityCommand(config).run()
        elif args.command == "bounds":
            return BoundsCommand(config).run()
        else:
            return GapsCommand(config).run()

    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (
        SieveRangeError,
        OracleCapacityError,
        PeriodTooLargeError,
        WindowTooLargeError,
        BoundDomainError,
    ) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError:
        print("Error: not enough memory for this range; lower the limit", file=sys.stderr)
        return EXIT_USAGE
    except (PairDefectError, DensityMismatchError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except TwinspaceError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
