"""
Beam simulation of docuscle measurement diagrams.

An emitter prepares docuscles, appliances test properties and record,
select or block them, and the simulator tallies exactly N arrivals at the
last appliance into a frequency table.
"""

from .estimates import (
    ExactValues,
    compare,
    estimate,
    estimate_ltp_residual,
    exact_values,
)
from .pipeline import Appliance, Emitter, Pipeline, standard_experiment
from .report import simulate
from .simulator import BLOCK_SIZE, DEFAULT_EMISSION_CAP, BeamSimulator, run

__all__ = [
    "Emitter",
    "Appliance",
    "Pipeline",
    "standard_experiment",
    "BeamSimulator",
    "run",
    "BLOCK_SIZE",
    "DEFAULT_EMISSION_CAP",
    "estimate",
    "exact_values",
    "ExactValues",
    "compare",
    "estimate_ltp_residual",
    "simulate",
]
