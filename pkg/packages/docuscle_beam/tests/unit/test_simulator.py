"""
Tests for the beam simulator.
"""

import numpy as np
import pytest
from docuscle_beam.pipeline import Appliance, Emitter, Pipeline, standard_experiment
from docuscle_beam.report import simulate
from docuscle_beam.simulator import BeamSimulator, path_label, run
from docuscle_core.classical import ClassicalState, Event
from docuscle_core.quantum import DensityMatrix, Projector
from docuscle_types.errors import InvalidInputError, ProgressImpossibleError
from docuscle_types.schemas.enums import ApplianceMode, PropertyRole


class TestPathLabel:
    def test_labels(self):
        assert path_label(0, 0) == ""
        assert path_label(1, 1) == "+"
        assert path_label(2, 2) == "+-"


class TestDeterminism:
    def test_same_seed_same_table(self, uniform_emitter, classical_pair):
        pipeline = standard_experiment("E2", uniform_emitter, *classical_pair)
        assert run(pipeline, 5_000, 17) == run(pipeline, 5_000, 17)

    def test_different_seed_different_blocks(self, uniform_emitter, classical_pair):
        simulator = BeamSimulator(standard_experiment("E1", uniform_emitter, *classical_pair))
        assert not np.array_equal(simulator.block(1, 0), simulator.block(2, 0))
        assert not np.array_equal(simulator.block(1, 0), simulator.block(1, 1))

    def test_workers_do_not_change_results(self, plus_emitter, plus_pair):
        pipeline = standard_experiment("E3", plus_emitter, *plus_pair)
        serial = run(pipeline, 20_000, 5, workers=1)
        parallel = run(pipeline, 20_000, 5, workers=3)
        assert serial == parallel

    def test_prefix_property(self, uniform_emitter, classical_pair):
        pipeline = standard_experiment("E1", uniform_emitter, *classical_pair)
        simulator = BeamSimulator(pipeline, block_size=64)
        clicks = np.concatenate([simulator.block(9, b)[:, 0] for b in range(4)]) > 0
        for n in (10, 64, 100, 200):
            assert simulator.run(n, 9).n_R == int(clicks[:n].sum())


class TestConservation:
    def test_branch_counts(self, plus_emitter, plus_pair):
        table = run(standard_experiment("E5", plus_emitter, *plus_pair), 3_000, 8)
        for branch in table.branches:
            assert branch.positive + branch.negative == branch.inflow
        # select mode: only the "+" branch reaches stage 1
        assert {b.path for b in table.branches if b.stage == 1} == {"+"}
        assert table.inflow(1) == table.n_total == 3_000
        assert table.inflow(0) == table.n_emitted

    def test_block_mode_passes_negatives(self, uniform_emitter, classical_pair):
        table = run(standard_experiment("E3", uniform_emitter, *classical_pair), 1_000, 3)
        assert {b.path for b in table.branches if b.stage == 1} == {"-"}
        assert table.n_XRbar is not None and table.n_XR is None


class TestRunOutcomes:
    def test_relevance_frequency(self, uniform_emitter, classical_pair):
        n = 100_000
        table = run(standard_experiment("E1", uniform_emitter, *classical_pair), n, 2024)
        assert abs(table.n_R / n - 0.5) <= 5 * np.sqrt(0.25 / n)
        assert table.n_R + table.n_Rbar == n

    def test_post_selected_eigenstate(self, mixed_emitter):
        ket0 = Projector.from_indices(2, [0])
        table = run(standard_experiment("E5", mixed_emitter, ket0, ket0), 10_000, 6)
        assert table.r_x == table.n_total == 10_000
        assert table.n_X == 10_000

    def test_simulate_report(self, plus_emitter, plus_pair):
        report = simulate(standard_experiment("E2", plus_emitter, *plus_pair), 20_000, 4)
        assert [c.quantity for c in report.comparisons] == ["r", "p"]
        assert all(c.within_5sigma for c in report.comparisons)


class TestProgress:
    def test_unreachable_stage(self):
        emitter = Emitter(ClassicalState.point_mass(2, 0))
        pipeline = standard_experiment("E2", emitter, Event.full(2), Event.from_indices(2, [1]))
        with pytest.raises(ProgressImpossibleError, match="selection probability is 0"):
            run(pipeline, 10, 1)

    def test_emission_cap(self, plus_emitter, plus_pair):
        pipeline = standard_experiment("E5", plus_emitter, *plus_pair)
        with pytest.raises(ProgressImpossibleError) as info:
            run(pipeline, 1_000, 1, emission_cap=100)
        assert info.value.emitted == 100
        assert info.value.recorded < 1_000

    def test_invalid_arguments(self, uniform_emitter, classical_pair):
        pipeline = standard_experiment("E1", uniform_emitter, *classical_pair)
        with pytest.raises(InvalidInputError):
            run(pipeline, 0, 1)
        with pytest.raises(InvalidInputError):
            run(pipeline, 10, -1)


class TestRareBranch:
    @pytest.mark.parametrize("eps", np.linspace(2e-6, 2e-5, 40))
    def test_record_after_nearly_orthogonal_relevance(self, eps):
        rho = DensityMatrix.from_pure(np.array([1.0, -1.0 + eps]))
        plus = Projector.from_vector(np.array([1.0, 1.0]))
        ket0 = Projector.from_indices(2, [0])
        pipeline = Pipeline(
            Emitter(rho),
            (
                Appliance(plus, ApplianceMode.RECORD, PropertyRole.RELEVANCE),
                Appliance(ket0, ApplianceMode.RECORD, PropertyRole.EXPANSION),
            ),
        )
        simulator = BeamSimulator(pipeline)
        assert simulator.reach_probability == pytest.approx(1.0)
        table = simulator.run(200, 9)
        assert table.n_total == 200
