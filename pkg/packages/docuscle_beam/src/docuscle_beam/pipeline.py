"""
Emitters, testing appliances and the five standard measurement diagrams.

A pipeline is an emitter followed by an ordered list of appliances. Each
appliance tests one property (an Event or a Projector, matching the
emitter) and either records both outcomes, selects the positives or blocks
them. A run stops once N docuscles have reached the last appliance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from docuscle_core.classical import ClassicalState, Event
from docuscle_core.quantum import DensityMatrix, Projector
from docuscle_types.errors import DimensionMismatchError, InvalidInputError
from docuscle_types.schemas.enums import (
    ApplianceMode,
    ExperimentKind,
    ModelKind,
    PropertyRole,
)
from docuscle_types.schemas.models import StageInfo

StateLike = Union[ClassicalState, DensityMatrix]
PropertyLike = Union[Event, Projector]


@dataclass(frozen=True)
class Emitter:
    """Source of docuscles, each prepared independently in ``state``."""

    state: StateLike

    def __post_init__(self) -> None:
        if not isinstance(self.state, (ClassicalState, DensityMatrix)):
            raise InvalidInputError(
                "emitter state must be ClassicalState or DensityMatrix, "
                f"got {type(self.state).__name__}"
            )

    @property
    def model(self) -> ModelKind:
        return "classical" if isinstance(self.state, ClassicalState) else "quantum"

    @property
    def dim(self) -> int:
        return self.state.dim


@dataclass(frozen=True)
class Appliance:
    """One property test and what it lets through."""

    prop: PropertyLike
    mode: ApplianceMode = ApplianceMode.RECORD
    role: PropertyRole = PropertyRole.RELEVANCE

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", ApplianceMode(self.mode))
        object.__setattr__(self, "role", PropertyRole(self.role))

    def passes(self, positive: bool) -> bool:
        if self.mode == ApplianceMode.SELECT:
            return positive
        if self.mode == ApplianceMode.BLOCK:
            return not positive
        return True

    def info(self) -> StageInfo:
        return StageInfo(role=self.role.value, mode=self.mode)


@dataclass(frozen=True)
class Pipeline:
    emitter: Emitter
    stages: Tuple[Appliance, ...]
    kind: Optional[ExperimentKind] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))
        if not self.stages:
            raise InvalidInputError("a pipeline needs at least one appliance")
        wanted = Event if self.emitter.model == "classical" else Projector
        for i, stage in enumerate(self.stages):
            if not isinstance(stage.prop, wanted):
                raise InvalidInputError(
                    f"stage {i}: {self.emitter.model} emitter needs a {wanted.__name__}, "
                    f"got {type(stage.prop).__name__}"
                )
            if stage.prop.dim != self.emitter.dim:
                raise DimensionMismatchError(
                    f"stage {i} has dimension {stage.prop.dim}, emitter {self.emitter.dim}"
                )

    @property
    def model(self) -> ModelKind:
        return self.emitter.model

    @property
    def depth(self) -> int:
        return len(self.stages)

    def first_stage(self, role: PropertyRole) -> Optional[int]:
        for i, stage in enumerate(self.stages):
            if stage.role == role:
                return i
        return None

    def property_for(self, role: PropertyRole) -> Optional[PropertyLike]:
        i = self.first_stage(role)
        return None if i is None else self.stages[i].prop


def standard_experiment(
    kind: ExperimentKind,
    emitter: Emitter,
    x_property: PropertyLike,
    r_property: PropertyLike,
) -> Pipeline:
    """
    Wire one of the five standard diagrams.

    E1 records R. E2 selects R then records X. E3 blocks R (passing the
    non-relevant branch) then records X. E4 records X alone. E5 selects X
    then records R.

    Both properties are checked against the emitter even when the diagram
    uses only one of them.
    """
    kind = ExperimentKind(kind)
    for name, prop in (("x", x_property), ("r", r_property)):
        if prop.dim != emitter.dim:
            raise DimensionMismatchError(
                f"{name} has dimension {prop.dim}, emitter {emitter.dim}", field=name
            )
    R, X = PropertyRole.RELEVANCE, PropertyRole.EXPANSION
    rec, sel, blk = ApplianceMode.RECORD, ApplianceMode.SELECT, ApplianceMode.BLOCK
    wiring = {
        ExperimentKind.E1: [Appliance(r_property, rec, R)],
        ExperimentKind.E2: [Appliance(r_property, sel, R), Appliance(x_property, rec, X)],
        ExperimentKind.E3: [Appliance(r_property, blk, R), Appliance(x_property, rec, X)],
        ExperimentKind.E4: [Appliance(x_property, rec, X)],
        ExperimentKind.E5: [Appliance(x_property, sel, X), Appliance(r_property, rec, R)],
    }
    return Pipeline(emitter=emitter, stages=tuple(wiring[kind]), kind=kind)
