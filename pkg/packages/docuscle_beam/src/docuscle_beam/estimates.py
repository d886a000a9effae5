"""
Frequency estimates from beam tables and their exact counterparts.

An estimate is a frequency v over ``count`` trials with standard error
sqrt(v(1-v)/count). Ratios with a zero or missing denominator are left
absent rather than reported as 0.
"""

from __future__ import annotations

import math
from typing import Dict, List, NamedTuple, Optional

from docuscle_core import classical, quantum
from docuscle_core.tolerances import QUANTUM_TOL
from docuscle_types.errors import DocuscleError, InvalidInputError
from docuscle_types.schemas.enums import ExperimentKind, PropertyRole
from docuscle_types.schemas.models import (
    Comparison,
    Estimates,
    EstimateValue,
    FrequencyTable,
    LtpEstimate,
)

from .pipeline import Pipeline

SIGMA_BAND = 5.0

# Quantities a standard experiment is compared on, in report order
EXPERIMENT_QUANTITIES: Dict[ExperimentKind, List[str]] = {
    ExperimentKind.E1: ["r"],
    ExperimentKind.E2: ["r", "p"],
    ExperimentKind.E3: ["r", "q"],
    ExperimentKind.E4: ["px"],
    ExperimentKind.E5: ["px", "x"],
}

# The single quantity a convergence study tracks per experiment
HEADLINE_QUANTITY: Dict[ExperimentKind, str] = {
    ExperimentKind.E1: "r",
    ExperimentKind.E2: "p",
    ExperimentKind.E3: "q",
    ExperimentKind.E4: "px",
    ExperimentKind.E5: "x",
}


class ExactValues(NamedTuple):
    """Exact quantities; undefined ones carry an error reason instead."""

    values: Dict[str, Optional[float]]
    reasons: Dict[str, str]


def _frequency(hits: Optional[int], count: Optional[int]) -> Optional[EstimateValue]:
    if hits is None or not count:
        return None
    v = hits / count
    return EstimateValue(value=v, standard_error=math.sqrt(v * (1.0 - v) / count), count=count)


def _sum(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


def estimate(table: FrequencyTable) -> Estimates:
    """
    Frequency estimates of r, p, q, x and P(X) from one table.

    r = n_R / (n_R + n_Rbar), p = n_XR / n_R, q = n_XRbar / n_Rbar,
    x = R_X / n_X and P(X) = n_X / (n_X + n_Xbar).
    """
    return Estimates(
        r=_frequency(table.n_R, _sum(table.n_R, table.n_Rbar)),
        p=_frequency(table.n_XR, table.n_R),
        q=_frequency(table.n_XRbar, table.n_Rbar),
        x=_frequency(table.r_x, table.n_X),
        px=_frequency(table.n_X, _sum(table.n_X, table.n_Xbar)),
    )


def exact_values(pipeline: Pipeline) -> ExactValues:
    """
    Exact r, p, q, x and P(X) for the emitter and properties of a pipeline.

    p and q are the sequential conditionals (relevance tested first), which
    is what E2 and E3 measure.
    """
    x_prop = pipeline.property_for(PropertyRole.EXPANSION)
    r_prop = pipeline.property_for(PropertyRole.RELEVANCE)
    state = pipeline.emitter.state
    if pipeline.model == "classical":
        formulas = {
            "r": lambda: classical.prob(state, r_prop),
            "p": lambda: classical.cond_prob(state, x_prop, r_prop),
            "q": lambda: classical.cond_prob(state, x_prop, r_prop.complement()),
            "x": lambda: classical.cond_prob(state, r_prop, x_prop),
            "px": lambda: classical.prob(state, x_prop),
        }
    else:
        formulas = {
            "r": lambda: quantum.born_prob(state, r_prop),
            "p": lambda: quantum.cond_given_r(state, x_prop, r_prop),
            "q": lambda: quantum.cond_given_r(state, x_prop, r_prop.complement()),
            "x": lambda: quantum.expansion_prob(state, x_prop, r_prop),
            "px": lambda: quantum.born_prob(state, x_prop),
        }
    needs = {
        "r": [r_prop],
        "p": [x_prop, r_prop],
        "q": [x_prop, r_prop],
        "x": [x_prop, r_prop],
        "px": [x_prop],
    }

    values: Dict[str, Optional[float]] = {}
    reasons: Dict[str, str] = {}
    for name, formula in formulas.items():
        if any(prop is None for prop in needs[name]):
            values[name] = None
            reasons[name] = "not_in_pipeline"
            continue
        try:
            values[name] = formula()
        except DocuscleError as exc:
            values[name] = None
            reasons[name] = exc.reason
    return ExactValues(values, reasons)


def compare(
    estimates: Estimates,
    exact: ExactValues,
    quantities: Optional[List[str]] = None,
) -> List[Comparison]:
    """Each defined estimate against its exact value, flagged within 5 sigma."""
    rows = []
    for name, est in estimates.defined().items():
        if quantities is not None and name not in quantities:
            continue
        truth = exact.values.get(name)
        if truth is None:
            rows.append(
                Comparison(
                    quantity=name,
                    estimate=est.value,
                    standard_error=est.standard_error,
                    reason=exact.reasons.get(name, "undefined"),
                )
            )
            continue
        err = abs(est.value - truth)
        rows.append(
            Comparison(
                quantity=name,
                estimate=est.value,
                standard_error=est.standard_error,
                exact=truth,
                abs_error=err,
                # a zero standard error still admits rounding in the exact value
                within_5sigma=err <= SIGMA_BAND * est.standard_error + QUANTUM_TOL,
            )
        )
    return rows


def estimate_ltp_residual(
    e1: FrequencyTable,
    e2: FrequencyTable,
    e3: FrequencyTable,
    e4: FrequencyTable,
    exact: Optional[float] = None,
) -> LtpEstimate:
    """
    P(X) - [p r + q (1 - r)] from four independent runs.

    r comes from E1, p from E2, q from E3 and P(X) from E4. The standard
    error propagates the four binomial variances to first order.
    """
    try:
        r = estimate(e1).get("r")
        p = estimate(e2).get("p")
        q = estimate(e3).get("q")
        px = estimate(e4).get("px")
    except DocuscleError as exc:
        raise InvalidInputError(f"tables cannot form an LTP residual: {exc}") from exc
    residual = px.value - (p.value * r.value + q.value * (1.0 - r.value))
    variance = (
        px.standard_error**2
        + (r.value * p.standard_error) ** 2
        + ((1.0 - r.value) * q.standard_error) ** 2
        + ((p.value - q.value) * r.standard_error) ** 2
    )
    return LtpEstimate(residual=residual, standard_error=math.sqrt(variance), exact=exact)
