"""
Random search for large quantum violations of the law of total probability.

Instances are drawn in batches and their residuals evaluated with batched
einsum; the best one is rebuilt as validated core objects and re-evaluated
with ``ltp_residual_q`` so the reported residual is exactly what a rebuilt
instance gives.
"""

from __future__ import annotations

import time
from typing import Literal, Optional, Tuple

import numpy as np
from docuscle_core.quantum import DensityMatrix, Projector, ltp_residual_q
from docuscle_core.random_instances import (
    density_batch,
    derive_generator,
    projector_batch,
    pure_vector_batch,
)
from docuscle_core.tolerances import NULL_TOL
from docuscle_types.errors import InvalidInputError
from docuscle_types.schemas.models import ViolationReport
from docuscle_types.utils.deterministic_ids import instance_id
from loguru import logger

from ..config.loader import to_instance_spec

Generator = Literal["ginibre", "pure", "commuting"]

BATCH_SIZE = 4096


def _trace(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("bij,bji->b", a, b).real


def _draw(
    kind: Generator, batch: int, dim: int, rank: int, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if kind == "pure":
        v = pure_vector_batch(batch, dim, rng)
        rho = v[:, :, None] * v.conj()[:, None, :]
    elif kind == "ginibre":
        rho = density_batch(batch, dim, dim, rng)
    else:
        weights = rng.dirichlet(np.ones(dim), size=batch)
        rho = np.zeros((batch, dim, dim), dtype=complex)
        rho[:, np.arange(dim), np.arange(dim)] = weights
    if kind == "commuting":
        picks = np.argsort(rng.random((2, batch, dim)), axis=2)[:, :, :rank]
        x = np.zeros((batch, dim, dim), dtype=complex)
        r = np.zeros((batch, dim, dim), dtype=complex)
        rows = np.arange(batch)[:, None]
        x[rows, picks[0], picks[0]] = 1.0
        r[rows, picks[1], picks[1]] = 1.0
    else:
        x = projector_batch(batch, dim, rank, rng)
        r = projector_batch(batch, dim, rank, rng)
    return rho, x, r


def batch_residuals(rho: np.ndarray, x: np.ndarray, r: np.ndarray) -> np.ndarray:
    """tr(Xρ) - tr(RρRX) - tr(R̄ρR̄X) per instance; 0 where tr(Rρ) is 0 or 1."""
    rbar = np.eye(rho.shape[1], dtype=complex)[None] - r
    residual = _trace(x, rho) - _trace(r @ rho @ r, x) - _trace(rbar @ rho @ rbar, x)
    pr = _trace(r, rho)
    residual[(pr <= NULL_TOL) | (pr >= 1.0 - NULL_TOL)] = 0.0
    return residual


def find_ltp_violation(
    dim: int,
    budget: int,
    seed: int,
    generator: Generator = "ginibre",
    projector_rank: Optional[int] = None,
    batch_size: int = BATCH_SIZE,
) -> ViolationReport:
    """
    Keep the instance with the largest |LTP residual| among ``budget`` draws.

    Args:
        dim: Hilbert-space dimension
        budget: Number of random instances
        seed: Master seed; batch ``b`` uses stream (seed, b)
        generator: ``ginibre`` (full-rank states), ``pure`` or ``commuting``
            (diagonal states and projectors)
        projector_rank: Rank of X and R, default ``dim // 2``

    Returns:
        Best instance with its residual; in dimension 1 the residual is 0
        and ``diagnostic`` says why
    """
    if budget < 1:
        raise InvalidInputError(f"budget must be >= 1, got {budget}")
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    if dim == 1:
        return ViolationReport(
            dim=1,
            budget=budget,
            seed=seed,
            generator=generator,
            iterations=0,
            residual=0.0,
            abs_residual=0.0,
            diagnostic="dimension 1: all operators commute, no violation is possible",
        )
    rank = projector_rank if projector_rank is not None else dim // 2
    if not 1 <= rank <= dim - 1:
        raise InvalidInputError(f"projector rank must be in 1..{dim - 1}, got {rank}")

    started = time.perf_counter()
    best = (-1.0, None)
    drawn = 0
    for b in range(-(-budget // batch_size)):
        size = min(batch_size, budget - drawn)
        rho, x, r = _draw(generator, size, dim, rank, derive_generator(seed, b))
        residual = batch_residuals(rho, x, r)
        i = int(np.argmax(np.abs(residual)))
        if abs(residual[i]) > best[0]:
            best = (abs(residual[i]), (rho[i], x[i], r[i]))
        drawn += size

    rho_b, x_b, r_b = best[1]
    state, x_p, r_p = DensityMatrix(rho_b), Projector(x_b), Projector(r_b)
    spec = to_instance_spec(state, x_p, r_p)
    value = ltp_residual_q(state, x_p, r_p)
    logger.info(
        f"Violation search: dim={dim} budget={budget} generator={generator} "
        f"best={value:.6f} in {time.perf_counter() - started:.2f}s"
    )
    return ViolationReport(
        dim=dim,
        budget=budget,
        seed=seed,
        generator=generator,
        iterations=drawn,
        residual=value,
        abs_residual=abs(value),
        instance=spec,
        instance_id=instance_id(spec),
    )
