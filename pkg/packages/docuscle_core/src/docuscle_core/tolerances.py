"""Tolerance policy for exact evaluation."""

from docuscle_types.errors import InvariantViolationError

# classical probabilities and the boost/naturalness equality band
CLASSICAL_TOL = 1e-12
# quantum operator invariants and probabilities
QUANTUM_TOL = 1e-10
# divisions below this are conditioning / post-selection on null
NULL_TOL = 1e-15
# largest imaginary part tolerated in a trace of Hermitian products
IMAG_TOL = 1e-8
# margin of the strict quantum boost inequality
BOOST_MARGIN = 1e-12


def sign_band(value: float, tol: float) -> int:
    """Sign of ``value`` with ``|value| <= tol`` treated as zero."""
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def clamp_probability(value: float, tol: float, what: str = "probability") -> float:
    """Clamp a computed probability into [0, 1].

    Values more than ``tol`` outside the interval signal corrupted inputs.
    """
    if value < -tol or value > 1.0 + tol:
        raise InvariantViolationError(f"{what} {value!r} outside [0, 1] beyond {tol:g}")
    return min(1.0, max(0.0, float(value)))
