"""
Run configuration models.

A run configuration is a JSON document naming the model kind, where the
state and the two properties X and R come from, and the command-specific
knobs (experiment kind, N, seed, dims, trials, budget). Complex matrix
entries are ``[re, im]`` pairs, row-major.
"""

from __future__ import annotations

from typing import Annotated, List, Literal, Optional, Tuple

from pydantic import AfterValidator, Field, field_validator, model_validator

from .base_types import StrictBase
from .enums import ExperimentKind, ModelKind

U64_MAX = 2**64 - 1

ComplexEntry = Tuple[float, float]


def _check_square(rows: List[List[ComplexEntry]]) -> List[List[ComplexEntry]]:
    n = len(rows)
    if n == 0:
        raise ValueError("matrix must have at least one row")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"matrix row {i} has {len(row)} entries, expected {n}")
    return rows


MatrixEntries = Annotated[List[List[ComplexEntry]], AfterValidator(_check_square)]


# --------------------------------------------------------------------------- #
# Sources                                                                     #
# --------------------------------------------------------------------------- #


class GeneratorSpec(StrictBase):
    """Random instance generator: Ginibre states, Haar projectors, Dirichlet weights."""

    dim: int = Field(..., ge=1, description="Sample-space or Hilbert-space dimension")
    rank: Optional[int] = Field(
        None,
        ge=0,
        description="State rank / support size, or projector rank / event size",
    )
    seed: Optional[int] = Field(
        None,
        ge=0,
        le=U64_MAX,
        description="Own seed; derived from the top-level seed when omitted",
    )
    pure: bool = Field(False, description="Draw a pure state (rank 1)")

    @model_validator(mode="after")
    def _rank_within_dim(self) -> "GeneratorSpec":
        if self.rank is not None and self.rank > self.dim:
            raise ValueError(f"rank {self.rank} exceeds dim {self.dim}")
        return self


class StateSpec(StrictBase):
    """Where the emitted state comes from; exactly one source."""

    weights: Optional[List[float]] = Field(
        None, description="Classical probability weights, one per outcome"
    )
    matrix: Optional[MatrixEntries] = Field(
        None, description="Density matrix, row-major [re, im] pairs"
    )
    generator: Optional[GeneratorSpec] = None

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "StateSpec":
        given = [k for k in ("weights", "matrix", "generator") if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError(
                f"exactly one of weights, matrix, generator is required (got {given or 'none'})"
            )
        return self


class PropertySpec(StrictBase):
    """Where a tested property (X or R) comes from; exactly one source."""

    members: Optional[List[int]] = Field(
        None,
        description="Outcome indices; classical event or diagonal projector",
    )
    matrix: Optional[MatrixEntries] = Field(
        None, description="Projector, row-major [re, im] pairs"
    )
    generator: Optional[GeneratorSpec] = None

    @field_validator("members")
    @classmethod
    def _members_non_negative(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and any(i < 0 for i in v):
            raise ValueError("members must be non-negative indices")
        return v

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "PropertySpec":
        given = [k for k in ("members", "matrix", "generator") if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError(
                f"exactly one of members, matrix, generator is required (got {given or 'none'})"
            )
        return self


class InstanceSpec(StrictBase):
    """A (state, X, R) triple in serialized form."""

    model: ModelKind = Field(..., description="classical or quantum")
    state: StateSpec
    x: PropertySpec
    r: PropertySpec


class OutputSpec(StrictBase):
    path: Optional[str] = Field(None, description="Report path; stdout when omitted")
    format: Literal["json", "csv"] = "json"


# --------------------------------------------------------------------------- #
# Run configuration                                                           #
# --------------------------------------------------------------------------- #


class RunConfig(StrictBase):
    """Configuration for one CLI command."""

    model: ModelKind = Field("classical", description="classical or quantum")
    state: Optional[StateSpec] = None
    x: Optional[PropertySpec] = None
    r: Optional[PropertySpec] = None

    # simulate / convergence
    experiment: Optional[ExperimentKind] = None
    n: Optional[int] = Field(None, ge=1, description="Docuscles recorded at the final stage")
    n_list: Optional[List[int]] = Field(None, description="N values for a convergence study")
    emission_cap: int = Field(10**8, ge=1, description="Maximum emissions per run")
    workers: int = Field(1, ge=1, description="Parallel block workers")

    # shared
    seed: Optional[int] = Field(None, ge=0, le=U64_MAX, description="Top-level seed")
    tolerance: Optional[float] = Field(None, gt=0.0, description="Equality band")

    # scan
    dims: Optional[List[int]] = None
    trials: Optional[int] = Field(None, ge=1)

    # violate
    dim: Optional[int] = Field(None, ge=1)
    budget: Optional[int] = Field(None, ge=1)
    pure: bool = False
    commuting: bool = False
    projector_rank: Optional[int] = Field(None, ge=0)

    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("dims")
    @classmethod
    def _dims_positive(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None:
            if not v:
                raise ValueError("dims must not be empty")
            if any(d < 1 for d in v):
                raise ValueError("every dim must be >= 1")
        return v

    @field_validator("n_list")
    @classmethod
    def _n_list_positive(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None:
            if not v:
                raise ValueError("n_list must not be empty")
            if any(n < 1 for n in v):
                raise ValueError("every n must be >= 1")
        return v

    def instance(self) -> InstanceSpec:
        """The (state, X, R) part of the config; raises if any is missing."""
        missing = [k for k in ("state", "x", "r") if getattr(self, k) is None]
        if missing:
            raise ValueError(f"missing instance fields: {', '.join(missing)}")
        return InstanceSpec(model=self.model, state=self.state, x=self.x, r=self.r)
