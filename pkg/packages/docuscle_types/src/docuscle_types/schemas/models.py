"""
Pydantic models for docuscle data contracts.

These models are the reports and tables exchanged between the exact
evaluators, the beam simulator, the batch experiments and the CLI writers.
All of them are frozen: a value is immutable once returned.
"""

from __future__ import annotations

import math
from typing import Dict, List, Literal, Optional

from pydantic import Field, field_validator, model_validator

from ..errors import AbsentEstimateError
from .base_types import StrictBase
from .config import InstanceSpec
from .enums import ApplianceMode, ExperimentKind, ModelKind

# --------------------------------------------------------------------------- #
# Exact evaluation                                                            #
# --------------------------------------------------------------------------- #


class BoostReport(StrictBase):
    """Boost indicators of one (state, X, R) instance.

    ``boost`` is x > r and ``natural`` is p > q; inside the tolerance band both
    are False and ``tie`` is set.
    """

    r: float = Field(..., ge=0.0, le=1.0, description="P(R)")
    p: float = Field(..., ge=0.0, le=1.0, description="P(X|R)")
    q: float = Field(..., ge=0.0, le=1.0, description="P(X|R-bar)")
    x: float = Field(..., ge=0.0, le=1.0, description="P(R|X)")
    boost: bool
    natural: bool
    tie: bool = False
    ltp_residual: float = 0.0


class QBoostReport(BoostReport):
    """Quantum boost indicators.

    ``p`` and ``q`` are the sequential conditionals (relevance tested first).
    ``bayes_p`` and ``bayes_q`` are tr(XρXR)/tr(ρR) and tr(XρXR̄)/tr(ρR̄);
    ``natural`` compares those, ``natural_sequential`` compares p and q.
    """

    bayes_p: float
    bayes_q: float
    natural_sequential: bool
    sequential_tie: bool = False


class ExactReport(StrictBase):
    """Exact quantities of one instance as reported by the CLI.

    Undefined quantities are None and ``reasons`` maps each of them to the
    error reason that made it undefined.
    """

    model: ModelKind
    r: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None
    x: Optional[float] = None
    boost: Optional[bool] = None
    natural: Optional[bool] = None
    tie: Optional[bool] = None
    ltp_residual: Optional[float] = None
    px: Optional[float] = None
    bayes_p: Optional[float] = None
    bayes_q: Optional[float] = None
    natural_sequential: Optional[bool] = None
    instance_id: Optional[str] = None
    reasons: Dict[str, str] = Field(default_factory=dict)


# --------------------------------------------------------------------------- #
# Beam simulation                                                             #
# --------------------------------------------------------------------------- #


class BranchCount(StrictBase):
    """Clicks at one stage for docuscles that arrived along one outcome path.

    ``path`` lists the earlier outcomes, e.g. ``"+"`` means the docuscle
    passed stage 0 positively.
    """

    stage: int = Field(..., ge=0)
    path: str = Field("", pattern=r"^[+-]*$")
    inflow: int = Field(..., ge=0)
    positive: int = Field(..., ge=0)
    negative: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _conserved(self) -> "BranchCount":
        if self.positive + self.negative != self.inflow:
            raise ValueError(
                f"stage {self.stage} path {self.path!r}: "
                f"{self.positive} + {self.negative} != inflow {self.inflow}"
            )
        if len(self.path) != self.stage:
            raise ValueError(f"path {self.path!r} does not lead to stage {self.stage}")
        return self


class StageInfo(StrictBase):
    role: Literal["R", "X"]
    mode: ApplianceMode


class FrequencyTable(StrictBase):
    """Counts from one beam run.

    Derived counts are None when the pipeline does not produce them (for
    example ``n_XRbar`` in E2, whose non-relevant branch is blocked).
    """

    kind: Optional[ExperimentKind] = None
    model: Optional[ModelKind] = None
    n_total: int = Field(..., ge=0, description="N, docuscles at the final stage")
    n_emitted: Optional[int] = Field(None, ge=0)
    seed: Optional[int] = None
    stages: List[StageInfo] = Field(default_factory=list)
    branches: List[BranchCount] = Field(default_factory=list)

    n_R: Optional[int] = Field(None, ge=0)
    n_Rbar: Optional[int] = Field(None, ge=0)
    n_XR: Optional[int] = Field(None, ge=0)
    n_XRbar: Optional[int] = Field(None, ge=0)
    n_X: Optional[int] = Field(None, ge=0)
    n_Xbar: Optional[int] = Field(None, ge=0)
    r_x: Optional[int] = Field(None, ge=0, description="R_X, relevant among X-selected")

    @model_validator(mode="after")
    def _relevance_split(self) -> "FrequencyTable":
        if self.kind == ExperimentKind.E1 and None not in (self.n_R, self.n_Rbar):
            if self.n_R + self.n_Rbar != self.n_total:
                raise ValueError(
                    f"n_R + n_Rbar = {self.n_R + self.n_Rbar} != N = {self.n_total}"
                )
        return self

    def inflow(self, stage: int) -> int:
        return sum(b.inflow for b in self.branches if b.stage == stage)


class EstimateValue(StrictBase):
    value: float = Field(..., ge=0.0, le=1.0)
    standard_error: float = Field(..., ge=0.0)
    count: int = Field(..., ge=1, description="Denominator of the frequency")


class Estimates(StrictBase):
    """Frequency estimates; undefined ratios are absent, never 0."""

    r: Optional[EstimateValue] = None
    p: Optional[EstimateValue] = None
    q: Optional[EstimateValue] = None
    x: Optional[EstimateValue] = None
    px: Optional[EstimateValue] = None

    def get(self, name: str) -> EstimateValue:
        if name not in type(self).model_fields:
            raise AbsentEstimateError(f"unknown estimate {name!r}")
        value = getattr(self, name)
        if value is None:
            raise AbsentEstimateError(f"estimate {name!r} is undefined for this table")
        return value

    def defined(self) -> Dict[str, EstimateValue]:
        return {k: v for k in type(self).model_fields if (v := getattr(self, k)) is not None}


class Comparison(StrictBase):
    """One estimate against its exact value."""

    quantity: str
    estimate: float
    standard_error: float
    exact: Optional[float] = None
    abs_error: Optional[float] = None
    within_5sigma: Optional[bool] = None
    reason: Optional[str] = None


class SimulationReport(StrictBase):
    table: FrequencyTable
    estimates: Estimates
    comparisons: List[Comparison] = Field(default_factory=list)


class LtpEstimate(StrictBase):
    """LTP residual assembled from independent E1-E4 runs."""

    residual: float
    standard_error: float
    exact: Optional[float] = None


# --------------------------------------------------------------------------- #
# Batch experiments                                                           #
# --------------------------------------------------------------------------- #


class ScanConfig(StrictBase):
    model: ModelKind
    dims: List[int] = Field(..., min_length=1)
    trials: int = Field(..., ge=1, description="Trials per dim")
    seed: int = Field(..., ge=0)
    tolerance: Optional[float] = Field(None, gt=0.0)

    @field_validator("dims")
    @classmethod
    def _dims_positive(cls, v: List[int]) -> List[int]:
        if any(d < 1 for d in v):
            raise ValueError("every dim must be >= 1")
        return v

    @property
    def band(self) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return 1e-12 if self.model == "classical" else 1e-10


class DimTally(StrictBase):
    """Sign agreement of (x - r) against (p - q) for one dimension."""

    dim: int = Field(..., ge=1)
    trials: int = Field(..., ge=0)
    agree: int = 0
    tie: int = 0
    disagree: int = 0
    skipped: int = 0
    skip_reasons: Dict[str, int] = Field(default_factory=dict)
    worst_tie_gap: float = Field(0.0, ge=0.0, description="max |x - r| among ties")
    max_abs_ltp_residual: float = Field(
        0.0, ge=0.0, description="max |ltp_residual| over tallied instances"
    )
    sequential_agree: int = 0
    sequential_tie: int = 0
    sequential_disagree: int = 0

    @model_validator(mode="after")
    def _accounted(self) -> "DimTally":
        total = self.agree + self.tie + self.disagree + self.skipped
        if total != self.trials:
            raise ValueError(f"dim {self.dim}: tallies sum to {total}, expected {self.trials}")
        seq = self.sequential_agree + self.sequential_tie + self.sequential_disagree
        if seq != self.trials - self.skipped:
            raise ValueError(f"dim {self.dim}: sequential tallies sum to {seq}")
        if sum(self.skip_reasons.values()) != self.skipped:
            raise ValueError(f"dim {self.dim}: skip reasons do not sum to {self.skipped}")
        return self


class ScanReport(StrictBase):
    config: ScanConfig
    per_dim: List[DimTally]
    elapsed_seconds: float = Field(0.0, ge=0.0)

    @property
    def disagree(self) -> int:
        return sum(t.disagree for t in self.per_dim)

    @property
    def sequential_disagree(self) -> int:
        return sum(t.sequential_disagree for t in self.per_dim)


class ViolationReport(StrictBase):
    """Best LTP violation found by random search."""

    dim: int = Field(..., ge=1)
    budget: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)
    generator: Literal["ginibre", "pure", "commuting"] = "ginibre"
    iterations: int = Field(..., ge=0)
    residual: float
    abs_residual: float = Field(..., ge=0.0)
    instance: Optional[InstanceSpec] = None
    instance_id: Optional[str] = None
    diagnostic: Optional[str] = None

    @field_validator("residual", "abs_residual")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("residual must be finite")
        return v


class ConvergenceRow(StrictBase):
    n: int = Field(..., ge=1)
    estimate: float
    exact: float
    abs_error: float = Field(..., ge=0.0)
    standard_error: float = Field(..., ge=0.0)
    within_5sigma: bool
    n_emitted: int = Field(..., ge=0)


class ConvergenceReport(StrictBase):
    kind: ExperimentKind
    quantity: str
    seed: int
    rows: List[ConvergenceRow]
