"""Batch studies over random instances and beam runs."""

from .convergence import convergence_rows, convergence_study
from .exact import evaluate_instance
from .scan import default_scan_config, scan_equivalence, scan_rows
from .violation import find_ltp_violation

__all__ = [
    "evaluate_instance",
    "scan_equivalence",
    "scan_rows",
    "default_scan_config",
    "find_ltp_violation",
    "convergence_study",
    "convergence_rows",
]
