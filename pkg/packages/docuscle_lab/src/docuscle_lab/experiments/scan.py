"""
Randomised check that relevance boost and naturalness agree.

Every trial draws its own instance from ``SeedSequence(seed, spawn_key=(dim,
trial))``, so a dimension's tally does not depend on which other dimensions
were scanned or on how the dimensions were split across workers.
"""

from __future__ import annotations

import time
from collections import Counter
from typing import List, Optional, Union

from docuscle_core.classical import boost_indicators
from docuscle_core.quantum import quantum_equivalence
from docuscle_core.random_instances import (
    derive_generator,
    random_classical_state,
    random_density,
    random_event,
    random_projector,
)
from docuscle_core.tolerances import sign_band
from docuscle_types.errors import DocuscleError
from docuscle_types.schemas.models import BoostReport, DimTally, ScanConfig, ScanReport
from joblib import Parallel, delayed
from loguru import logger
from tqdm import tqdm

# precondition failures of a drawn instance; every other error is a disagreement
SKIP_REASONS = frozenset(
    {"degenerate_relevance", "post_selection_on_null", "conditioning_on_null"}
)


def draw_report(model: str, dim: int, seed: int, trial: int, band: float) -> BoostReport:
    """Boost report of the instance of (dim, trial); raises when it is degenerate."""
    rng = derive_generator(seed, dim, trial)
    if model == "classical":
        state = random_classical_state(dim, None, rng)
        x = random_event(dim, None, rng)
        r = random_event(dim, None, rng)
        return boost_indicators(state, x, r, tol=band)
    rho = random_density(dim, int(rng.integers(1, dim + 1)), rng)
    # projector ranks 1..dim-1; dim 1 only has the trivial ranks 0 and 1
    low, high = (1, dim) if dim > 1 else (0, 2)
    x = random_projector(dim, int(rng.integers(low, high)), rng)
    r = random_projector(dim, int(rng.integers(low, high)), rng)
    return quantum_equivalence(rho, x, r, tol=band)


def scan_dim(model: str, dim: int, trials: int, seed: int, band: float) -> DimTally:
    """Tally all trials of one dimension."""
    counts: Counter = Counter()
    skips: Counter = Counter()
    worst_tie_gap = 0.0
    max_ltp = 0.0
    for trial in range(trials):
        try:
            report = draw_report(model, dim, seed, trial, band)
        except DocuscleError as exc:
            if exc.reason in SKIP_REASONS:
                skips[exc.reason] += 1
                continue
            logger.warning(f"dim={dim} trial={trial}: {exc.reason}: {exc.message}")
            counts["disagree"] += 1
            counts["sequential_disagree"] += 1
            continue

        max_ltp = max(max_ltp, abs(report.ltp_residual))

        if report.tie:
            counts["tie"] += 1
            worst_tie_gap = max(worst_tie_gap, abs(report.x - report.r))
        elif report.boost == report.natural:
            counts["agree"] += 1
        else:
            counts["disagree"] += 1

        boost_sign = sign_band(report.x - report.r, band)
        seq_sign = sign_band(report.p - report.q, band)
        if boost_sign == 0 or seq_sign == 0:
            counts["sequential_tie"] += 1
        elif boost_sign == seq_sign:
            counts["sequential_agree"] += 1
        else:
            counts["sequential_disagree"] += 1

    return DimTally(
        dim=dim,
        trials=trials,
        agree=counts["agree"],
        tie=counts["tie"],
        disagree=counts["disagree"],
        skipped=sum(skips.values()),
        skip_reasons=dict(sorted(skips.items())),
        worst_tie_gap=worst_tie_gap,
        max_abs_ltp_residual=max_ltp,
        sequential_agree=counts["sequential_agree"],
        sequential_tie=counts["sequential_tie"],
        sequential_disagree=counts["sequential_disagree"],
    )


def scan_equivalence(
    config: Union[ScanConfig, dict],
    workers: int = 1,
    progress: bool = False,
) -> ScanReport:
    """
    Compare sign(x - r) with the naturalness sign over random instances.

    Args:
        config: Model, dimensions, trials per dimension, seed and band
        workers: Dimensions scanned concurrently
        progress: Show a progress bar over dimensions

    Returns:
        Per-dimension tallies; ``disagree`` is zero for both models, the
        ``sequential_*`` tallies compare against P(X|R) > P(X|R-bar) and may
        disagree for quantum instances
    """
    if not isinstance(config, ScanConfig):
        config = ScanConfig.model_validate(config)
    band = config.band
    started = time.perf_counter()
    logger.info(
        f"Scan start: model={config.model} dims={config.dims} "
        f"trials={config.trials} band={band:g}"
    )
    dims = tqdm(config.dims, desc="scan", unit="dim", disable=not progress)
    per_dim: List[DimTally]
    if workers > 1:
        per_dim = Parallel(n_jobs=workers)(
            delayed(scan_dim)(config.model, d, config.trials, config.seed, band) for d in dims
        )
    else:
        per_dim = [scan_dim(config.model, d, config.trials, config.seed, band) for d in dims]

    elapsed = time.perf_counter() - started
    for tally in per_dim:
        logger.debug(
            f"dim={tally.dim} agree={tally.agree} tie={tally.tie} "
            f"disagree={tally.disagree} skipped={tally.skipped}"
        )
    report = ScanReport(config=config, per_dim=per_dim, elapsed_seconds=elapsed)
    logger.info(
        f"Scan done: disagree={report.disagree} "
        f"sequential_disagree={report.sequential_disagree} in {elapsed:.1f}s"
    )
    return report


def scan_rows(report: ScanReport) -> List[dict]:
    """One CSV row per dimension."""
    return [
        {
            "model": report.config.model,
            **tally.model_dump(exclude={"skip_reasons"}),
            "skip_reasons": ";".join(f"{k}={v}" for k, v in tally.skip_reasons.items()),
        }
        for tally in report.per_dim
    ]


def default_scan_config(model: str, seed: int, trials: Optional[int] = None) -> ScanConfig:
    """Dimensions and trials of the headline checks for each model."""
    dims = [2, 4, 8, 16] if model == "classical" else list(range(2, 9))
    return ScanConfig(model=model, dims=dims, trials=trials or 10_000, seed=seed)
