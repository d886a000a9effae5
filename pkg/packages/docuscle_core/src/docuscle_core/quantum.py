"""
Density operators, projectors and the quantum relevance-boost formulas.

Probabilities are real parts of traces of operator products; an imaginary
part above ``IMAG_TOL`` means the inputs broke an invariant. Dense complex
arrays throughout, aimed at dimensions up to a few dozen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
import scipy.linalg
from docuscle_types.errors import (
    DegenerateRelevanceError,
    DimensionMismatchError,
    InvalidInputError,
    InvariantViolationError,
    PostSelectionOnNullError,
)
from docuscle_types.schemas.models import QBoostReport

from .classical import ClassicalState, Event
from .tolerances import (
    BOOST_MARGIN,
    IMAG_TOL,
    NULL_TOL,
    QUANTUM_TOL,
    clamp_probability,
    sign_band,
)


def _square_complex(entries: np.ndarray, what: str) -> np.ndarray:
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InvalidInputError(f"{what} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError(f"{what} has non-finite entries")
    if np.max(np.abs(m - m.conj().T)) > QUANTUM_TOL:
        raise InvalidInputError(f"{what} is not Hermitian")
    # exact Hermitian copy
    m = (m + m.conj().T) / 2
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = _square_complex(self.entries, "density matrix")
        lowest = scipy.linalg.eigvalsh(m)[0]
        if lowest < -QUANTUM_TOL:
            raise InvalidInputError(f"density matrix has eigenvalue {lowest!r} < 0")
        trace = np.trace(m).real
        if abs(trace - 1.0) > QUANTUM_TOL:
            raise InvalidInputError(f"density matrix has trace {trace!r}")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_pure(cls, vector: Iterable[complex]) -> "DensityMatrix":
        v = np.asarray(list(vector), dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidInputError("zero vector is not a state")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def from_diagonal(cls, weights: Iterable[float]) -> "DensityMatrix":
        return cls(np.diag(np.asarray(list(weights), dtype=float)).astype(complex))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self.entries)

    def rank(self, cutoff: float = 1e-8) -> int:
        return int(np.sum(self.eigenvalues() > cutoff))

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Projector:
    """Hermitian idempotent operator; a testable property."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = _square_complex(self.entries, "projector")
        if np.max(np.abs(m @ m - m)) > QUANTUM_TOL:
            raise InvalidInputError("projector is not idempotent")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.entries).real))

    @classmethod
    def identity(cls, dim: int) -> "Projector":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def zero(cls, dim: int) -> "Projector":
        return cls(np.zeros((dim, dim), dtype=complex))

    @classmethod
    def from_vector(cls, vector: Iterable[complex]) -> "Projector":
        """Rank-1 projector onto the span of ``vector``."""
        v = np.asarray(list(vector), dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidInputError("cannot project onto the zero vector")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def from_indices(cls, dim: int, indices: Iterable[int]) -> "Projector":
        """Diagonal projector onto the given basis vectors."""
        return cls.from_event(Event.from_indices(dim, indices))

    @classmethod
    def from_event(cls, event: Event) -> "Projector":
        return cls(np.diag(event.members.astype(float)).astype(complex))

    def complement(self) -> "Projector":
        return Projector(np.eye(self.dim, dtype=complex) - self.entries)

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim}, rank={self.rank})"


def complement(p: Projector) -> Projector:
    return p.complement()


def _check_dims(*dims: int) -> None:
    if len(set(dims)) > 1:
        raise DimensionMismatchError(f"dimensions differ: {dims}")


def _tr(*ops: np.ndarray) -> float:
    """Real part of tr(A B ...), rejecting a sizeable imaginary part."""
    prod = ops[0]
    for op in ops[1:-1]:
        prod = prod @ op
    value = np.einsum("ij,ji->", prod, ops[-1]) if len(ops) > 1 else np.trace(prod)
    if abs(value.imag) > IMAG_TOL:
        raise InvariantViolationError(f"trace has imaginary part {value.imag!r}")
    return float(value.real)


# --------------------------------------------------------------------------- #
# Operations                                                                  #
# --------------------------------------------------------------------------- #


def born_prob(rho: DensityMatrix, p: Projector) -> float:
    """tr(P ρ): chance a docuscle in state ρ passes the test P."""
    _check_dims(rho.dim, p.dim)
    return clamp_probability(_tr(p.entries, rho.entries), QUANTUM_TOL, "Born probability")


def lueders_update(rho: DensityMatrix, p: Projector) -> DensityMatrix:
    """Post-measurement state PρP / tr(PρP) after the test P succeeds."""
    pb = born_prob(rho, p)
    m = p.entries @ rho.entries @ p.entries
    m = (m + m.conj().T) / 2
    weight = float(np.trace(m).real)
    if min(pb, weight) <= NULL_TOL:
        raise PostSelectionOnNullError(f"post-selection on a property of probability {pb!r}")
    m = m / weight
    values, vectors = scipy.linalg.eigh(m)
    if values[0] < -QUANTUM_TOL:
        # rounding on a rare branch can push the spectrum below zero
        values = np.clip(values, 0.0, None)
        m = (vectors * (values / values.sum())) @ vectors.conj().T
    return DensityMatrix(m)


def _relevance_prob(rho: DensityMatrix, r: Projector) -> float:
    pr = born_prob(rho, r)
    if pr <= NULL_TOL:
        raise DegenerateRelevanceError(f"tr(Rρ) = {pr!r}; conditional undefined")
    return pr


def cond_given_r(rho: DensityMatrix, x: Projector, r: Projector) -> float:
    """tr(RρRX) / tr(Rρ): X tested after R was found.

    Evaluated as the Born probability of X in the Lüders-updated state, so
    it stays a probability when tr(Rρ) is tiny. Pass ``r.complement()`` for
    the non-relevant conditional q.
    """
    _check_dims(rho.dim, x.dim, r.dim)
    _relevance_prob(rho, r)
    try:
        updated = lueders_update(rho, r)
    except PostSelectionOnNullError as exc:
        raise DegenerateRelevanceError(exc.message) from exc
    return born_prob(updated, x)


def expansion_prob(rho: DensityMatrix, x: Projector, r: Projector) -> float:
    """tr(XρXR) / tr(Xρ): relevance among docuscles post-selected on X."""
    _check_dims(rho.dim, x.dim, r.dim)
    px = born_prob(rho, x)
    if px <= NULL_TOL:
        raise PostSelectionOnNullError(f"tr(Xρ) = {px!r}; no docuscle survives selection")
    return born_prob(lueders_update(rho, x), r)


def boost_condition(rho: DensityMatrix, x: Projector, r: Projector) -> bool:
    """tr(XρXR) > tr(Xρ) tr(ρR), the division-free boost inequality."""
    _check_dims(rho.dim, x.dim, r.dim)
    X = x.entries
    lhs = _tr(X, rho.entries, X, r.entries)
    rhs = _tr(X, rho.entries) * _tr(rho.entries, r.entries)
    return lhs > rhs + BOOST_MARGIN


def ltp_residual_q(rho: DensityMatrix, x: Projector, r: Projector) -> float:
    """tr(Xρ) - [tr(RρRX) + tr(R̄ρR̄X)]; zero when ρ, X, R commute."""
    _check_dims(rho.dim, x.dim, r.dim)
    pr = born_prob(rho, r)
    if pr <= NULL_TOL or pr >= 1.0 - NULL_TOL:
        raise DegenerateRelevanceError(f"tr(Rρ) = {pr!r}; LTP decomposition undefined")
    R, Rb, X, s = r.entries, r.complement().entries, x.entries, rho.entries
    return _tr(X, s) - (_tr(R, s, R, X) + _tr(Rb, s, Rb, X))


def quantum_equivalence(
    rho: DensityMatrix,
    x: Projector,
    r: Projector,
    tol: float = BOOST_MARGIN,
) -> QBoostReport:
    """
    Boost against naturalness for a quantum instance.

    ``natural`` compares the Bayes-inverted ratios tr(XρXR)/tr(ρR) and
    tr(XρXR̄)/tr(ρR̄); r(1-r)(bayes_p - bayes_q)/tr(Xρ) equals x - r, so
    ``natural == boost`` always. ``natural_sequential`` compares the
    sequential conditionals p = P(X|R), q = P(X|R̄), which agree with the
    boost only when the operators commute.

    Raises:
        DegenerateRelevanceError: tr(ρR) is 0 or 1
        PostSelectionOnNullError: tr(Xρ) is 0
    """
    _check_dims(rho.dim, x.dim, r.dim)
    r_val = born_prob(rho, r)
    if r_val <= NULL_TOL or r_val >= 1.0 - NULL_TOL:
        raise DegenerateRelevanceError(f"tr(Rρ) = {r_val!r}; p or q undefined")
    rbar = r.complement()
    p = cond_given_r(rho, x, r)
    q = cond_given_r(rho, x, rbar)
    x_val = expansion_prob(rho, x, r)
    px = born_prob(rho, x)

    X, s = x.entries, rho.entries
    bayes_p = _tr(X, s, X, r.entries) / r_val
    bayes_q = _tr(X, s, X, rbar.entries) / (1.0 - r_val)

    boost_sign = sign_band(x_val - r_val, tol)
    natural_sign = sign_band(r_val * (1.0 - r_val) * (bayes_p - bayes_q) / px, tol)
    tie = boost_sign == 0 or natural_sign == 0
    if not tie and boost_sign != natural_sign:
        raise InvariantViolationError(
            f"x - r = {x_val - r_val!r} and Bayes ratios disagree in sign"
        )
    seq_sign = sign_band(p - q, tol)
    sequential_tie = boost_sign == 0 or seq_sign == 0

    return QBoostReport(
        r=r_val,
        p=p,
        q=q,
        x=x_val,
        boost=not tie and boost_sign > 0,
        natural=not tie and natural_sign > 0,
        tie=tie,
        ltp_residual=ltp_residual_q(rho, x, r),
        bayes_p=bayes_p,
        bayes_q=bayes_q,
        natural_sequential=not sequential_tie and seq_sign > 0,
        sequential_tie=sequential_tie,
    )


def embed_classical(
    state: ClassicalState, x_event: Event, r_event: Event
) -> Tuple[DensityMatrix, Projector, Projector]:
    """Diagonal (commuting) quantum copy of a classical triple."""
    _check_dims(state.dim, x_event.dim, r_event.dim)
    return (
        DensityMatrix.from_diagonal(state.weights),
        Projector.from_event(x_event),
        Projector.from_event(r_event),
    )
