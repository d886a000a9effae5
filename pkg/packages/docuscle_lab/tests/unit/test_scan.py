"""
Tests for the boost/naturalness scan.
"""

import pytest
from docuscle_lab.experiments.scan import (
    SKIP_REASONS,
    default_scan_config,
    draw_report,
    scan_dim,
    scan_equivalence,
    scan_rows,
)
from docuscle_types.errors import InvalidInputError, PostSelectionOnNullError
from docuscle_types.schemas.models import ScanConfig


class TestScanEquivalence:
    def test_classical_never_disagrees(self):
        report = scan_equivalence({"model": "classical", "dims": [8], "trials": 1000, "seed": 1})
        (tally,) = report.per_dim
        assert tally.disagree == 0
        assert tally.agree + tally.tie + tally.skipped == 1000
        assert report.sequential_disagree == 0
        assert tally.max_abs_ltp_residual <= 1e-12

    def test_quantum_never_disagrees(self):
        report = scan_equivalence({"model": "quantum", "dims": [2, 3, 4], "trials": 500, "seed": 2})
        assert report.disagree == 0
        # p > q is not the quantum boost criterion
        assert report.sequential_disagree > 0

    def test_single_trial_accounting(self):
        report = scan_equivalence({"model": "quantum", "dims": [2], "trials": 1, "seed": 3})
        tally = report.per_dim[0]
        assert tally.agree + tally.tie + tally.skipped == 1

    def test_dimension_one_is_skipped(self):
        tally = scan_dim("quantum", 1, 20, 4, 1e-10)
        assert tally.skipped == 20
        assert tally.skip_reasons == {"degenerate_relevance": 20}

    def test_trials_independent_of_other_dims(self):
        alone = scan_equivalence({"model": "quantum", "dims": [3], "trials": 200, "seed": 5})
        together = scan_equivalence(
            {"model": "quantum", "dims": [2, 3], "trials": 200, "seed": 5}, workers=2
        )
        assert together.per_dim[1] == alone.per_dim[0]

    def test_draw_is_deterministic(self):
        first = draw_report("classical", 6, 9, 17, 1e-12)
        assert first == draw_report("classical", 6, 9, 17, 1e-12)


class TestErrorPolicy:
    def test_precondition_errors_are_skipped(self, monkeypatch):
        def null_selection(*args):
            raise PostSelectionOnNullError("tr(Xρ) = 0.0")

        monkeypatch.setattr("docuscle_lab.experiments.scan.draw_report", null_selection)
        tally = scan_dim("quantum", 3, 25, 0, 1e-10)
        assert tally.skip_reasons == {"post_selection_on_null": 25}
        assert tally.disagree == 0

    def test_other_errors_count_as_disagreement(self, monkeypatch):
        def broken_construction(*args):
            raise InvalidInputError("density matrix has eigenvalue -1e-09 < 0")

        monkeypatch.setattr("docuscle_lab.experiments.scan.draw_report", broken_construction)
        tally = scan_dim("quantum", 3, 25, 0, 1e-10)
        assert tally.disagree == tally.sequential_disagree == 25
        assert tally.skipped == 0
        assert tally.skip_reasons == {}

    def test_only_preconditions_are_skip_reasons(self):
        assert "invalid_input" not in SKIP_REASONS
        assert "invariant_violation" not in SKIP_REASONS


class TestHelpers:
    def test_default_config(self):
        assert default_scan_config("classical", 0).dims == [2, 4, 8, 16]
        config = default_scan_config("quantum", 0, trials=7)
        assert config.dims == list(range(2, 9))
        assert config.trials == 7

    def test_rows(self):
        report = scan_equivalence(ScanConfig(model="quantum", dims=[1, 2], trials=10, seed=0))
        rows = scan_rows(report)
        assert [row["dim"] for row in rows] == [1, 2]
        assert rows[0]["skip_reasons"] == "degenerate_relevance=10"
        assert rows[0]["model"] == "quantum"


@pytest.mark.slow
class TestDefaultScans:
    @pytest.mark.parametrize("model", ["classical", "quantum"])
    def test_default_configuration_has_no_disagreement(self, model):
        report = scan_equivalence(default_scan_config(model, 2024), workers=4)
        assert report.disagree == 0
        if model == "classical":
            assert max(t.max_abs_ltp_residual for t in report.per_dim) <= 1e-12
