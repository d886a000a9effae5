"""
Seeded random instances for scans, violation searches and generator specs.

States come from the Ginibre construction G G† / tr(G G†); projectors from
the column span of a complex Gaussian matrix, which is a Haar-random
subspace. Classical states are Dirichlet weights on a random support.

Every function takes an explicit ``numpy.random.Generator``; nothing here
touches global random state.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
import scipy.linalg
from docuscle_types.errors import InvalidInputError
from numpy.random import Generator, SeedSequence, default_rng

from .classical import ClassicalState, Event
from .quantum import DensityMatrix, Projector


def derive_generator(seed: int, *key: int) -> Generator:
    """Independent stream for ordinal ``key`` under a master seed.

    Streams depend only on (seed, key), so trials or blocks can be drawn in
    any order or on any worker.
    """
    return default_rng(SeedSequence(seed, spawn_key=tuple(int(k) for k in key)))


def _randnz(shape, generator: Generator) -> np.ndarray:
    """Standard complex normal variates (real and imaginary parts N(0, 1))."""
    return generator.standard_normal(shape) + 1j * generator.standard_normal(shape)


def _check_rank(dim: int, rank: int, lowest: int) -> None:
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    if not lowest <= rank <= dim:
        raise InvalidInputError(f"rank must be in {lowest}..{dim}, got {rank}")


# --------------------------------------------------------------------------- #
# Quantum                                                                     #
# --------------------------------------------------------------------------- #


def random_density(dim: int, rank: int, randomness: Generator) -> DensityMatrix:
    """
    Ginibre density matrix of the given rank.

    Args:
        dim: Hilbert-space dimension
        rank: Number of non-zero eigenvalues, 1..dim
        randomness: Random source

    Returns:
        Valid DensityMatrix supported on a random rank-dimensional subspace
    """
    _check_rank(dim, rank, 1)
    g = _randnz((dim, rank), randomness)
    gg = g @ g.conj().T
    return DensityMatrix(gg / np.trace(gg).real)


def random_pure_state(dim: int, randomness: Generator) -> DensityMatrix:
    """Ginibre rank-one state, uniform on the pure states of ``dim``."""
    return random_density(dim, 1, randomness)


def random_projector(dim: int, rank: int, randomness: Generator) -> Projector:
    """Projector onto a Haar-random subspace; rank 0 and rank dim are exact."""
    _check_rank(dim, rank, 0)
    if rank == 0:
        return Projector.zero(dim)
    if rank == dim:
        return Projector.identity(dim)
    q, _ = scipy.linalg.qr(_randnz((dim, rank), randomness), mode="economic")
    return Projector(q @ q.conj().T)


# --------------------------------------------------------------------------- #
# Classical                                                                   #
# --------------------------------------------------------------------------- #


def random_classical_state(
    dim: int, rank: Optional[int], randomness: Generator
) -> ClassicalState:
    """Flat-Dirichlet weights on a random support of size ``rank`` (all of it when None)."""
    rank = dim if rank is None else rank
    _check_rank(dim, rank, 1)
    support = randomness.choice(dim, size=rank, replace=False)
    w = np.zeros(dim)
    w[support] = randomness.dirichlet(np.ones(rank))
    # dirichlet sums to 1 only up to rounding
    return ClassicalState(w / w.sum())


def random_event(dim: int, size: Optional[int], randomness: Generator) -> Event:
    """Random subset: exactly ``size`` points, or each point with chance 1/2 when None."""
    if size is None:
        if dim < 1:
            raise InvalidInputError(f"dim must be >= 1, got {dim}")
        return Event(randomness.random(dim) < 0.5)
    _check_rank(dim, size, 0)
    return Event.from_indices(dim, randomness.choice(dim, size=size, replace=False).tolist())


# --------------------------------------------------------------------------- #
# Batched raw arrays                                                          #
# --------------------------------------------------------------------------- #


def pure_vector_batch(batch: int, dim: int, randomness: Generator) -> np.ndarray:
    """``(batch, dim)`` unit vectors, uniform on the complex sphere."""
    v = _randnz((batch, dim), randomness)
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def density_batch(batch: int, dim: int, rank: int, randomness: Generator) -> np.ndarray:
    """``(batch, dim, dim)`` Ginibre density matrices of one rank."""
    _check_rank(dim, rank, 1)
    g = _randnz((batch, dim, rank), randomness)
    gg = g @ np.conj(np.swapaxes(g, 1, 2))
    tr = np.einsum("bii->b", gg).real
    return gg / tr[:, None, None]


def projector_batch(batch: int, dim: int, rank: int, randomness: Generator) -> np.ndarray:
    """``(batch, dim, dim)`` Haar-random rank-``rank`` projectors."""
    _check_rank(dim, rank, 0)
    if rank == 0:
        return np.zeros((batch, dim, dim), dtype=complex)
    if rank == dim:
        return np.broadcast_to(np.eye(dim, dtype=complex), (batch, dim, dim)).copy()
    q, _ = np.linalg.qr(_randnz((batch, dim, rank), randomness))
    return q @ np.conj(np.swapaxes(q, 1, 2))
