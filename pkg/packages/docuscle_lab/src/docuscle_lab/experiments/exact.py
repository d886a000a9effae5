"""Exact evaluation of one instance, tolerant of undefined quantities."""

from __future__ import annotations

from functools import partial
from typing import Any, Callable, Dict, Optional

from docuscle_beam.pipeline import PropertyLike, StateLike
from docuscle_core import classical, quantum
from docuscle_core.classical import ClassicalState
from docuscle_core.tolerances import BOOST_MARGIN, CLASSICAL_TOL
from docuscle_types.errors import DocuscleError
from docuscle_types.schemas.models import ExactReport


def _attempt(fn: Callable[[], Any], name: str, reasons: Dict[str, str]) -> Optional[Any]:
    try:
        return fn()
    except DocuscleError as exc:
        reasons[name] = exc.reason
        return None


def evaluate_instance(
    state: StateLike,
    x: PropertyLike,
    r: PropertyLike,
    tolerance: Optional[float] = None,
    instance_id: Optional[str] = None,
) -> ExactReport:
    """
    r, p, q, x, the boost and naturalness flags and the LTP residual.

    When the full boost report is undefined (P(R) in {0, 1} or P(X) = 0)
    each quantity is computed on its own; the ones that stay undefined
    are None with their error reason.
    """
    reasons: Dict[str, str] = {}
    if isinstance(state, ClassicalState):
        model, tol = "classical", tolerance or CLASSICAL_TOL
        full = partial(classical.boost_indicators, state, x, r, tol=tol)
        parts = {
            "r": lambda: classical.prob(state, r),
            "p": lambda: classical.cond_prob(state, x, r),
            "q": lambda: classical.cond_prob(state, x, r.complement()),
            "x": lambda: classical.cond_prob(state, r, x),
            "px": lambda: classical.prob(state, x),
            "ltp_residual": lambda: classical.ltp_residual(state, x, r),
        }
    else:
        model, tol = "quantum", tolerance or BOOST_MARGIN
        full = partial(quantum.quantum_equivalence, state, x, r, tol=tol)
        parts = {
            "r": lambda: quantum.born_prob(state, r),
            "p": lambda: quantum.cond_given_r(state, x, r),
            "q": lambda: quantum.cond_given_r(state, x, r.complement()),
            "x": lambda: quantum.expansion_prob(state, x, r),
            "px": lambda: quantum.born_prob(state, x),
            "ltp_residual": lambda: quantum.ltp_residual_q(state, x, r),
        }

    values = {name: _attempt(fn, name, reasons) for name, fn in parts.items()}
    report = _attempt(full, "boost", reasons)
    if report is None:
        for flag in ("natural", "tie"):
            reasons[flag] = reasons["boost"]
        if model == "quantum":
            reasons["natural_sequential"] = reasons["boost"]
        return ExactReport(model=model, instance_id=instance_id, reasons=reasons, **values)

    extra: Dict[str, Any] = {}
    if model == "quantum":
        extra = {
            "bayes_p": report.bayes_p,
            "bayes_q": report.bayes_q,
            "natural_sequential": report.natural_sequential,
        }
    return ExactReport(
        model=model,
        r=report.r,
        p=report.p,
        q=report.q,
        x=report.x,
        boost=report.boost,
        natural=report.natural,
        tie=report.tie,
        ltp_residual=report.ltp_residual,
        px=values["px"],
        instance_id=instance_id,
        reasons=reasons,
        **extra,
    )
