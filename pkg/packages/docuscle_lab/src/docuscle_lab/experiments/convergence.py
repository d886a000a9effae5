"""Monte Carlo convergence of one experiment's headline estimate."""

from __future__ import annotations

from typing import List, Sequence

from docuscle_beam.estimates import HEADLINE_QUANTITY, SIGMA_BAND, estimate, exact_values
from docuscle_beam.pipeline import Emitter, PropertyLike, StateLike, standard_experiment
from docuscle_beam.simulator import DEFAULT_EMISSION_CAP, BeamSimulator
from docuscle_core.tolerances import QUANTUM_TOL
from docuscle_types.errors import InvalidInputError
from docuscle_types.schemas.enums import ExperimentKind
from docuscle_types.schemas.models import ConvergenceReport, ConvergenceRow
from loguru import logger


def convergence_study(
    kind: ExperimentKind,
    state: StateLike,
    x: PropertyLike,
    r: PropertyLike,
    n_list: Sequence[int],
    seed: int,
    emission_cap: int = DEFAULT_EMISSION_CAP,
    workers: int = 1,
) -> ConvergenceReport:
    """
    One beam run per N, each compared with the exact value.

    All runs share ``seed``, so each run extends the previous one: the
    first N docuscles of a longer run are exactly the shorter run.

    Raises:
        InvalidInputError: the headline quantity is undefined for the instance
        ProgressImpossibleError: propagated from the simulator
    """
    kind = ExperimentKind(kind)
    if not n_list:
        raise InvalidInputError("n_list must not be empty")
    pipeline = standard_experiment(kind, Emitter(state), x, r)
    quantity = HEADLINE_QUANTITY[kind]
    exact = exact_values(pipeline)
    truth = exact.values[quantity]
    if truth is None:
        raise InvalidInputError(
            f"{quantity} is undefined for this instance ({exact.reasons[quantity]})"
        )

    simulator = BeamSimulator(pipeline)
    rows: List[ConvergenceRow] = []
    for n in n_list:
        table = simulator.run(n, seed, emission_cap=emission_cap, workers=workers)
        est = estimate(table).get(quantity)
        err = abs(est.value - truth)
        rows.append(
            ConvergenceRow(
                n=n,
                estimate=est.value,
                exact=truth,
                abs_error=err,
                standard_error=est.standard_error,
                within_5sigma=err <= SIGMA_BAND * est.standard_error + QUANTUM_TOL,
                n_emitted=table.n_emitted,
            )
        )
        logger.debug(f"{kind.value} N={n}: {quantity}={est.value:.6f} exact={truth:.6f}")
    return ConvergenceReport(kind=kind, quantity=quantity, seed=seed, rows=rows)


def convergence_rows(report: ConvergenceReport) -> List[dict]:
    return [
        {"kind": report.kind.value, "quantity": report.quantity, **row.model_dump()}
        for row in report.rows
    ]
