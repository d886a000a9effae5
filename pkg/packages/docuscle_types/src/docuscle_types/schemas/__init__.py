"""
Docuscle schema package.

Authoritative data contracts for the docuscle packages: run configurations,
exact-evaluation reports, beam frequency tables, estimates and batch reports.
"""

from .base_types import StrictBase
from .config import (
    ComplexEntry,
    GeneratorSpec,
    InstanceSpec,
    MatrixEntries,
    OutputSpec,
    PropertySpec,
    RunConfig,
    StateSpec,
)
from .enums import ApplianceMode, ExperimentKind, ModelKind, PropertyRole
from .models import (
    BoostReport,
    BranchCount,
    Comparison,
    ConvergenceReport,
    ConvergenceRow,
    DimTally,
    Estimates,
    ExactReport,
    EstimateValue,
    FrequencyTable,
    LtpEstimate,
    QBoostReport,
    ScanConfig,
    ScanReport,
    SimulationReport,
    StageInfo,
    ViolationReport,
)

__all__ = [
    "StrictBase",
    # Configuration
    "ComplexEntry",
    "GeneratorSpec",
    "InstanceSpec",
    "MatrixEntries",
    "OutputSpec",
    "PropertySpec",
    "RunConfig",
    "StateSpec",
    # Enums
    "ApplianceMode",
    "ExperimentKind",
    "ModelKind",
    "PropertyRole",
    # Reports
    "BoostReport",
    "QBoostReport",
    "ExactReport",
    "BranchCount",
    "StageInfo",
    "FrequencyTable",
    "EstimateValue",
    "Estimates",
    "Comparison",
    "SimulationReport",
    "LtpEstimate",
    "ScanConfig",
    "DimTally",
    "ScanReport",
    "ViolationReport",
    "ConvergenceRow",
    "ConvergenceReport",
]
