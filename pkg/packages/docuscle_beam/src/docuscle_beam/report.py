"""Beam run plus estimates plus exact comparison, as one report."""

from __future__ import annotations

from docuscle_types.schemas.models import SimulationReport

from .estimates import EXPERIMENT_QUANTITIES, compare, estimate, exact_values
from .pipeline import Pipeline
from .simulator import DEFAULT_EMISSION_CAP, BeamSimulator


def simulate(
    pipeline: Pipeline,
    n: int,
    seed: int,
    emission_cap: int = DEFAULT_EMISSION_CAP,
    workers: int = 1,
) -> SimulationReport:
    """
    Run a pipeline and compare every defined estimate with its exact value.

    Standard experiments are compared on their own quantities; ad hoc
    pipelines on every estimate the table supports.
    """
    table = BeamSimulator(pipeline).run(n, seed, emission_cap=emission_cap, workers=workers)
    estimates = estimate(table)
    quantities = EXPERIMENT_QUANTITIES.get(pipeline.kind) if pipeline.kind else None
    return SimulationReport(
        table=table,
        estimates=estimates,
        comparisons=compare(estimates, exact_values(pipeline), quantities),
    )
