"""
Vectorised beam simulator.

Docuscles are emitted in blocks of ``BLOCK_SIZE``. Block ``b`` draws its
uniforms from ``SeedSequence(seed, spawn_key=(b,))`` and docuscle ``i``
uses row ``i % BLOCK_SIZE`` of block ``i // BLOCK_SIZE``, so a run is
bit-identical however the blocks are scheduled, and a run of ``n``
docuscles is a prefix of any longer run with the same seed.

Classical docuscles draw one uniform, which fixes their outcome; every
appliance then reads event membership. Quantum docuscles draw one uniform
per appliance and click when it falls below the Born probability of their
collapsed state. The collapsed states only depend on the outcome path, so
they are computed once per run as a small tree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from docuscle_core.classical import outcomes_from_uniforms
from docuscle_core.quantum import DensityMatrix, born_prob, lueders_update
from docuscle_core.random_instances import derive_generator
from docuscle_types.errors import InvalidInputError, ProgressImpossibleError
from docuscle_types.schemas.enums import ApplianceMode, PropertyRole
from docuscle_types.schemas.models import BranchCount, FrequencyTable
from joblib import Parallel, delayed
from loguru import logger

from .pipeline import Pipeline

BLOCK_SIZE = 8192
DEFAULT_EMISSION_CAP = 10**8
MAX_DEPTH = 16
# Born probabilities this close to 0 or 1 are sampled as exactly 0 or 1
BRANCH_TOL = 1e-12


def path_label(code: int, stage: int) -> str:
    """Outcome path of earlier stages, ``+`` for a click, oldest first."""
    if stage == 0:
        return ""
    return format(code, f"0{stage}b").replace("1", "+").replace("0", "-")


def _snap(p: float) -> float:
    if p <= BRANCH_TOL:
        return 0.0
    if p >= 1.0 - BRANCH_TOL:
        return 1.0
    return p


@dataclass
class _Tally:
    """Per-stage inflow and click counts indexed by path code."""

    inflow: List[np.ndarray]
    positive: List[np.ndarray]

    @classmethod
    def empty(cls, depth: int) -> "_Tally":
        return cls(
            inflow=[np.zeros(2**s, dtype=np.int64) for s in range(depth)],
            positive=[np.zeros(2**s, dtype=np.int64) for s in range(depth)],
        )

    def add(self, outcomes: np.ndarray) -> None:
        code = np.zeros(outcomes.shape[0], dtype=np.int64)
        for s in range(len(self.inflow)):
            tested = outcomes[:, s] != 0
            clicked = outcomes[:, s] > 0
            self.inflow[s] += np.bincount(code[tested], minlength=2**s)
            self.positive[s] += np.bincount(code[clicked], minlength=2**s)
            code = code * 2 + clicked

    def negative(self, stage: int) -> np.ndarray:
        return self.inflow[stage] - self.positive[stage]


class BeamSimulator:
    """Runs one pipeline; reusable for several ``n`` and seeds."""

    def __init__(self, pipeline: Pipeline, block_size: int = BLOCK_SIZE):
        if pipeline.depth > MAX_DEPTH:
            raise InvalidInputError(f"pipelines deeper than {MAX_DEPTH} stages are not supported")
        if block_size < 1:
            raise InvalidInputError("block_size must be >= 1")
        self.pipeline = pipeline
        self.block_size = block_size
        self._click_probs: List[np.ndarray] = []
        self._reach = 0.0
        if pipeline.model == "quantum":
            self._build_tree()
        else:
            self._reach = self._classical_reach()

    # ------------------------------------------------------------------ #
    # Exact structure                                                    #
    # ------------------------------------------------------------------ #

    def _classical_reach(self) -> float:
        weights = self.pipeline.emitter.state.weights
        alive = np.ones(weights.size, dtype=bool)
        for stage in self.pipeline.stages[:-1]:
            if stage.mode == ApplianceMode.SELECT:
                alive &= stage.prop.members
            elif stage.mode == ApplianceMode.BLOCK:
                alive &= ~stage.prop.members
        return float(weights[alive].sum())

    def _build_tree(self) -> None:
        """Click probability of every reachable (stage, path) node."""
        states: Dict[int, DensityMatrix] = {0: self.pipeline.emitter.state}
        reach: Dict[int, float] = {0: 1.0}
        last = self.pipeline.depth - 1
        for s, stage in enumerate(self.pipeline.stages):
            probs = np.zeros(2**s)
            children: Dict[int, DensityMatrix] = {}
            child_reach: Dict[int, float] = {}
            for code, rho in states.items():
                p_pos = _snap(born_prob(rho, stage.prop))
                probs[code] = p_pos
                if s == last:
                    continue
                for positive, p_branch, proj in (
                    (True, p_pos, stage.prop),
                    (False, 1.0 - p_pos, stage.prop.complement()),
                ):
                    if p_branch > 0.0 and stage.passes(positive):
                        child = code * 2 + int(positive)
                        children[child] = lueders_update(rho, proj)
                        child_reach[child] = reach[code] * p_branch
            self._click_probs.append(probs)
            if s < last:
                states, reach = children, child_reach
        self._reach = float(sum(reach.values()))

    @property
    def reach_probability(self) -> float:
        """Exact chance that one emitted docuscle reaches the last appliance."""
        return self._reach

    # ------------------------------------------------------------------ #
    # Sampling                                                           #
    # ------------------------------------------------------------------ #

    def block(self, seed: int, index: int) -> np.ndarray:
        """
        Outcomes of the ``BLOCK_SIZE`` docuscles of block ``index``.

        Returns:
            int8 array ``(block_size, depth)``: +1 click, -1 no click,
            0 not tested (discarded by an earlier appliance)
        """
        stages = self.pipeline.stages
        width = self.pipeline.depth if self.pipeline.model == "quantum" else 1
        u = derive_generator(seed, index).random((self.block_size, width))

        if self.pipeline.model == "classical":
            idx = outcomes_from_uniforms(self.pipeline.emitter.state, u[:, 0])

        out = np.zeros((self.block_size, len(stages)), dtype=np.int8)
        alive = np.ones(self.block_size, dtype=bool)
        code = np.zeros(self.block_size, dtype=np.int64)
        for s, stage in enumerate(stages):
            if self.pipeline.model == "classical":
                clicked = stage.prop.members[idx]
            else:
                clicked = u[:, s] < self._click_probs[s][code]
                code = code * 2 + clicked
            out[alive, s] = np.where(clicked[alive], 1, -1)
            if stage.mode == ApplianceMode.SELECT:
                alive &= clicked
            elif stage.mode == ApplianceMode.BLOCK:
                alive &= ~clicked
        return out

    def run(
        self,
        n: int,
        seed: int,
        emission_cap: int = DEFAULT_EMISSION_CAP,
        workers: int = 1,
    ) -> FrequencyTable:
        """
        Emit docuscles until exactly ``n`` reach the last appliance.

        Args:
            n: Docuscles to record at the last appliance
            seed: Master seed of the run
            emission_cap: Emissions allowed before giving up
            workers: Blocks sampled concurrently (does not change results)

        Returns:
            Frequency table of the run

        Raises:
            ProgressImpossibleError: the last appliance is unreachable, or the
                cap is hit before ``n`` docuscles arrive
        """
        if n < 1:
            raise InvalidInputError(f"n must be >= 1, got {n}")
        if seed is None or seed < 0:
            raise InvalidInputError("a non-negative seed is required")
        if self.reach_probability <= 0.0:
            raise ProgressImpossibleError(
                "no docuscle can reach the last appliance: selection probability is 0"
            )

        started = time.perf_counter()
        tally = _Tally.empty(self.pipeline.depth)
        emitted = arrived = 0
        next_block = 0
        logger.debug(
            f"Beam run: kind={self.pipeline.kind} model={self.pipeline.model} "
            f"n={n} seed={seed} reach={self.reach_probability:.3g}"
        )
        with Parallel(n_jobs=workers, prefer="threads") as parallel:
            while arrived < n:
                if emitted >= emission_cap:
                    raise ProgressImpossibleError(
                        f"emission cap {emission_cap} reached with "
                        f"{arrived} of {n} docuscles recorded",
                        emitted=emitted,
                        recorded=arrived,
                    )
                indices = range(next_block, next_block + workers)
                if workers > 1:
                    blocks = parallel(delayed(self.block)(seed, i) for i in indices)
                else:
                    blocks = [self.block(seed, next_block)]
                next_block += len(blocks)
                for out in blocks:
                    out = out[: emission_cap - emitted]
                    reached = np.cumsum(out[:, -1] != 0)
                    if reached.size and reached[-1] >= n - arrived:
                        out = out[: int(np.searchsorted(reached, n - arrived)) + 1]
                    tally.add(out)
                    emitted += out.shape[0]
                    arrived += int(np.count_nonzero(out[:, -1]))
                    if arrived >= n or emitted >= emission_cap:
                        break

        table = self._table(tally, n, emitted, seed)
        logger.info(
            f"Beam run done: kind={self.pipeline.kind} N={n} emitted={emitted} "
            f"in {time.perf_counter() - started:.2f}s"
        )
        return table

    # ------------------------------------------------------------------ #
    # Tables                                                             #
    # ------------------------------------------------------------------ #

    def _table(self, tally: _Tally, n: int, emitted: int, seed: int) -> FrequencyTable:
        pipeline = self.pipeline
        branches = [
            BranchCount(
                stage=s,
                path=path_label(int(code), s),
                inflow=int(tally.inflow[s][code]),
                positive=int(tally.positive[s][code]),
                negative=int(tally.negative(s)[code]),
            )
            for s in range(pipeline.depth)
            for code in np.flatnonzero(tally.inflow[s])
        ]

        def on_branch(stage: int, counts: np.ndarray, earlier: int, bit: int) -> int:
            codes = np.arange(counts.size)
            mask = ((codes >> (stage - 1 - earlier)) & 1) == bit
            return int(counts[mask].sum())

        derived: Dict[str, Optional[int]] = {}
        i_r = pipeline.first_stage(PropertyRole.RELEVANCE)
        i_x = pipeline.first_stage(PropertyRole.EXPANSION)
        if i_r is not None and (i_x is None or i_r < i_x):
            derived["n_R"] = int(tally.positive[i_r].sum())
            derived["n_Rbar"] = int(tally.negative(i_r).sum())
        if i_x is not None and (i_r is None or i_x < i_r):
            derived["n_X"] = int(tally.positive[i_x].sum())
            derived["n_Xbar"] = int(tally.negative(i_x).sum())
        if i_r is not None and i_x is not None and i_r < i_x:
            mode = pipeline.stages[i_r].mode
            if mode != ApplianceMode.BLOCK:
                derived["n_XR"] = on_branch(i_x, tally.positive[i_x], i_r, 1)
            if mode != ApplianceMode.SELECT:
                derived["n_XRbar"] = on_branch(i_x, tally.positive[i_x], i_r, 0)
        if i_r is not None and i_x is not None and i_x < i_r:
            if pipeline.stages[i_x].mode != ApplianceMode.BLOCK:
                derived["r_x"] = on_branch(i_r, tally.positive[i_r], i_x, 1)

        return FrequencyTable(
            kind=pipeline.kind,
            model=pipeline.model,
            n_total=n,
            n_emitted=emitted,
            seed=seed,
            stages=[stage.info() for stage in pipeline.stages],
            branches=branches,
            **derived,
        )


def run(
    pipeline: Pipeline,
    n: int,
    seed: int,
    emission_cap: int = DEFAULT_EMISSION_CAP,
    workers: int = 1,
) -> FrequencyTable:
    """Run ``pipeline`` until ``n`` docuscles reach its last appliance."""
    return BeamSimulator(pipeline).run(n, seed, emission_cap=emission_cap, workers=workers)
