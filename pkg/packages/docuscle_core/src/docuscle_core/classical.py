"""
Exact classical probability over a finite sample space.

The sample space is the index set 0..n-1. A state is a probability vector,
an event an indicator vector of the same length. Everything here is a pure
function of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from docuscle_types.errors import (
    ConditioningOnNullError,
    DegenerateRelevanceError,
    DimensionMismatchError,
    InvalidInputError,
)
from docuscle_types.schemas.models import BoostReport

from .tolerances import CLASSICAL_TOL, NULL_TOL, clamp_probability, sign_band


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ClassicalState:
    """Probability distribution over outcomes 0..dim-1."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise InvalidInputError("weights must be a non-empty vector")
        if not np.all(np.isfinite(w)):
            raise InvalidInputError("weights must be finite")
        if np.any(w < -CLASSICAL_TOL):
            raise InvalidInputError(f"negative weight {w.min()!r}")
        total = w.sum()
        if abs(total - 1.0) > CLASSICAL_TOL:
            raise InvalidInputError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", _frozen(np.clip(w, 0.0, None)))

    @property
    def dim(self) -> int:
        return int(self.weights.size)

    @classmethod
    def uniform(cls, dim: int) -> "ClassicalState":
        if dim < 1:
            raise InvalidInputError("dim must be >= 1")
        return cls(np.full(dim, 1.0 / dim))

    @classmethod
    def point_mass(cls, dim: int, index: int) -> "ClassicalState":
        if not 0 <= index < dim:
            raise InvalidInputError(f"index {index} outside 0..{dim - 1}")
        w = np.zeros(dim)
        w[index] = 1.0
        return cls(w)

    def cdf(self) -> np.ndarray:
        """Cumulative weights normalised so the last entry is exactly 1."""
        c = np.cumsum(self.weights)
        return c / c[-1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicalState):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.weights, other.weights))

    def __repr__(self) -> str:
        return f"ClassicalState(dim={self.dim}, weights={self.weights.tolist()})"


@dataclass(frozen=True, eq=False)
class Event:
    """Subset of the sample space as a boolean indicator."""

    members: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.members)
        if m.ndim != 1 or m.size < 1:
            raise InvalidInputError("indicator must be a non-empty vector")
        if m.dtype != bool:
            if not np.all(np.isin(m, (0, 1))):
                raise InvalidInputError("indicator entries must be 0/1 or boolean")
            m = m.astype(bool)
        object.__setattr__(self, "members", _frozen(m))

    @property
    def dim(self) -> int:
        return int(self.members.size)

    @property
    def indices(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(self.members))

    @classmethod
    def from_indices(cls, dim: int, indices: Iterable[int]) -> "Event":
        m = np.zeros(dim, dtype=bool)
        for i in indices:
            if not 0 <= i < dim:
                raise InvalidInputError(f"member {i} outside 0..{dim - 1}")
            m[i] = True
        return cls(m)

    @classmethod
    def full(cls, dim: int) -> "Event":
        return cls(np.ones(dim, dtype=bool))

    @classmethod
    def empty(cls, dim: int) -> "Event":
        return cls(np.zeros(dim, dtype=bool))

    def complement(self) -> "Event":
        return Event(~self.members)

    def __and__(self, other: "Event") -> "Event":
        _check_dims(self.dim, other.dim)
        return Event(self.members & other.members)

    def __or__(self, other: "Event") -> "Event":
        _check_dims(self.dim, other.dim)
        return Event(self.members | other.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Event):
            return NotImplemented
        return bool(np.array_equal(self.members, other.members))

    def __repr__(self) -> str:
        return f"Event(dim={self.dim}, members={list(self.indices)})"


def complement(event: Event) -> Event:
    return event.complement()


def _check_dims(*dims: int) -> None:
    if len(set(dims)) > 1:
        raise DimensionMismatchError(f"dimensions differ: {dims}")


# --------------------------------------------------------------------------- #
# Operations                                                                  #
# --------------------------------------------------------------------------- #


def prob(state: ClassicalState, a: Event) -> float:
    """P(A): total weight of the members of ``a``."""
    _check_dims(state.dim, a.dim)
    return clamp_probability(float(state.weights[a.members].sum()), CLASSICAL_TOL)


def cond_prob(state: ClassicalState, a: Event, given: Event) -> float:
    """P(A | given)."""
    _check_dims(state.dim, a.dim, given.dim)
    pg = prob(state, given)
    if pg <= NULL_TOL:
        raise ConditioningOnNullError(f"conditioning on an event of probability {pg!r}")
    return clamp_probability(prob(state, a & given) / pg, CLASSICAL_TOL)


def condition(state: ClassicalState, given: Event) -> ClassicalState:
    """Renormalised restriction of ``state`` to ``given``."""
    _check_dims(state.dim, given.dim)
    pg = prob(state, given)
    if pg <= NULL_TOL:
        raise ConditioningOnNullError(f"conditioning on an event of probability {pg!r}")
    w = np.where(given.members, state.weights / pg, 0.0)
    return ClassicalState(w / w.sum())


def _relevance_prob(state: ClassicalState, r: Event) -> float:
    pr = prob(state, r)
    if pr <= NULL_TOL or pr >= 1.0 - NULL_TOL:
        raise DegenerateRelevanceError(f"P(R) = {pr!r}; P(X|R) or P(X|R-bar) undefined")
    return pr


def ltp_residual(state: ClassicalState, x: Event, r: Event) -> float:
    """P(X) - [P(X|R) P(R) + P(X|R-bar) P(R-bar)]; zero up to rounding."""
    _check_dims(state.dim, x.dim, r.dim)
    pr = _relevance_prob(state, r)
    p = cond_prob(state, x, r)
    q = cond_prob(state, x, r.complement())
    return prob(state, x) - (p * pr + q * (1.0 - pr))


def boost_indicators(
    state: ClassicalState,
    x_event: Event,
    r_event: Event,
    tol: float = CLASSICAL_TOL,
) -> BoostReport:
    """
    Relevance boost (x > r) against naturalness (p > q) of an expansion term.

    The natural side is compared through r(1-r)(p-q)/P(X), which equals
    x - r exactly, so both sides fall inside the band together.

    Raises:
        DegenerateRelevanceError: P(R) is 0 or 1
        ConditioningOnNullError: P(X) is 0
    """
    _check_dims(state.dim, x_event.dim, r_event.dim)
    r = _relevance_prob(state, r_event)
    px = prob(state, x_event)
    x = cond_prob(state, r_event, x_event)
    p = cond_prob(state, x_event, r_event)
    q = cond_prob(state, x_event, r_event.complement())

    boost_sign = sign_band(x - r, tol)
    natural_sign = sign_band(r * (1.0 - r) * (p - q) / px, tol)
    tie = boost_sign == 0 or natural_sign == 0
    return BoostReport(
        r=r,
        p=p,
        q=q,
        x=x,
        boost=not tie and boost_sign > 0,
        natural=not tie and natural_sign > 0,
        tie=tie,
        ltp_residual=px - (p * r + q * (1.0 - r)),
    )


def sample_outcome(state: ClassicalState, randomness: np.random.Generator) -> int:
    """Draw one outcome index with probability ``weights[i]``."""
    return int(outcomes_from_uniforms(state, np.array([randomness.random()]))[0])


def outcomes_from_uniforms(state: ClassicalState, uniforms: np.ndarray) -> np.ndarray:
    """Inverse-CDF map of uniforms in [0, 1) to outcome indices.

    Zero-weight outcomes are never returned.
    """
    idx = np.searchsorted(state.cdf(), uniforms, side="right")
    return np.minimum(idx, state.dim - 1)
