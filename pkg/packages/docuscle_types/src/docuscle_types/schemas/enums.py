"""Enumerations shared by schemas, the simulator and the CLI."""

from __future__ import annotations

from enum import Enum
from typing import Literal

ModelKind = Literal["classical", "quantum"]


class ExperimentKind(str, Enum):
    """The five measurement diagrams of the beam metaphor."""

    E1 = "E1"  # relevance only
    E2 = "E2"  # select R, check X
    E3 = "E3"  # select R-bar, check X
    E4 = "E4"  # check X directly
    E5 = "E5"  # select X, check R


class ApplianceMode(str, Enum):
    """What a testing appliance passes onward."""

    RECORD = "record"
    SELECT = "select"
    BLOCK = "block"


class PropertyRole(str, Enum):
    RELEVANCE = "R"
    EXPANSION = "X"
