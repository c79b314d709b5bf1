"""Density mode implementation for twinspace."""

import logging
import sys

from tslib.analytics import (
    TC2_CITED,
    density_sequence,
    empirical_densities,
    full_period_survivor_count,
    mertens_twin_product,
    period,
    product_side_report,
    sieving_primes,
    thread_level_count,
    twin_constant_estimate,
)
from tslib.config import RunConfig
from tslib.export import DENSITY_FIELDS, write_records
from tslib.genspace import PairKind

logger = logging.getLogger(__name__)

EMPIRICAL_FIELDS = ("empirical",)
PERIOD_FIELDS = ("period", "period_survivors", "period_threads")


class DensityCommand:
    """Implements the density command: c_thread and the true density step by step."""

    def __init__(self, config: RunConfig):
        """Initialize DensityCommand.

        Args:
            config: Validated RunConfig for the density command
        """
        self.config = config

    def fields(self) -> tuple[str, ...]:
        fields = DENSITY_FIELDS
        if self.config.window is not None:
            fields += EMPIRICAL_FIELDS
        if self.config.full_period:
            fields += PERIOD_FIELDS
        return fields

    def records(self) -> list[dict]:
        """One record per step, in step order."""
        cfg = self.config
        steps = density_sequence(cfg.steps)
        empirical = None
        if cfg.window is not None:
            empirical = empirical_densities(cfg.kind, cfg.steps, cfg.window)

        records = []
        for s in steps:
            record = {
                "step": s.j,
                "p5": s.p5,
                "form": s.form.value,
                "alpha": s.alpha,
                "p5r": s.p5r,
                "c_num": s.c_exact.numerator,
                "c_den": s.c_exact.denominator,
                "c_float": s.c_float,
                "true_num": s.true_exact.numerator,
                "true_den": s.true_exact.denominator,
                "true_float": s.true_float,
            }
            if empirical is not None:
                record["empirical"] = float(empirical[s.j - 1])
            if cfg.full_period:
                record["period"] = period(s.j)
                record["period_survivors"] = full_period_survivor_count(cfg.kind, s.j)
                record["period_threads"] = thread_level_count(s.j)
            records.append(record)
        return records

    def run(self) -> int:
        """Execute density command.

        Returns:
            0 on success
        """
        cfg = self.config
        if cfg.kind is PairKind.COUSIN:
            logger.info("cousin c_thread uses the twin alpha rules (extrapolated)")

        write_records(cfg, self.fields(), self.records())

        sides = product_side_report(cfg.steps)
        print(
            f"c_{cfg.steps} = {float(sides.c_thread):.10g} "
            f"vs envelope {float(sides.envelope):.10g}; "
            f"3*prod_(2<p) = {float(sides.tripled_product):.10g}; "
            f"tc(2)/ln^2 = {sides.mertens_term:.10g}",
            file=sys.stderr,
        )

        N = sieving_primes(cfg.steps)[-1]
        mertens = mertens_twin_product(N)
        estimate = twin_constant_estimate(N)
        print(
            f"N = {N}: prod_(2<p<=N) (1 - 2/p) ln^2 N = {mertens.normalized:.10g}; "
            f"4 e^(-2 gamma) C2 = {estimate:.10g}; cited tc(2) = {TC2_CITED}",
            file=sys.stderr,
        )
        return 0
