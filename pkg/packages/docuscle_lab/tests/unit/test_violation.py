"""
Tests for the LTP violation search.
"""

import numpy as np
import pytest
from docuscle_core.quantum import ltp_residual_q
from docuscle_lab.config.loader import build_instance
from docuscle_lab.experiments.violation import batch_residuals, find_ltp_violation
from docuscle_types.errors import InvalidInputError
from docuscle_types.utils.deterministic_ids import instance_id


class TestFindLtpViolation:
    def test_dimension_one(self):
        report = find_ltp_violation(1, 100, 0)
        assert report.residual == 0.0
        assert report.iterations == 0
        assert "dimension 1" in report.diagnostic
        assert report.instance is None

    def test_pure_qubits_approach_half(self):
        report = find_ltp_violation(2, 100_000, 7, generator="pure")
        assert report.abs_residual >= 0.45
        assert report.abs_residual <= 0.5 + 1e-12
        assert report.iterations == 100_000

    def test_commuting_instances_never_violate(self):
        report = find_ltp_violation(4, 5_000, 3, generator="commuting")
        assert report.abs_residual <= 1e-10

    def test_reported_instance_reproduces_residual(self):
        report = find_ltp_violation(3, 2_000, 11)
        rho, x, r = build_instance(report.instance)
        assert ltp_residual_q(rho, x, r) == report.residual
        assert instance_id(report.instance) == report.instance_id

    def test_deterministic(self):
        a = find_ltp_violation(2, 3_000, 5, batch_size=512)
        b = find_ltp_violation(2, 3_000, 5, batch_size=512)
        assert a.residual == b.residual
        assert a.instance == b.instance

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInputError):
            find_ltp_violation(2, 0, 1)
        with pytest.raises(InvalidInputError, match="rank"):
            find_ltp_violation(3, 10, 1, projector_rank=3)


class TestBatchResiduals:
    def test_plus_instance(self):
        plus = np.full((2, 2), 0.5, dtype=complex)
        ket0 = np.diag([1.0, 0.0]).astype(complex)
        residual = batch_residuals(plus[None], plus[None], ket0[None])
        assert residual[0] == pytest.approx(0.5)

    def test_degenerate_relevance_is_zero(self):
        plus = np.full((2, 2), 0.5, dtype=complex)
        residual = batch_residuals(plus[None], plus[None], np.eye(2, dtype=complex)[None])
        assert residual[0] == 0.0
