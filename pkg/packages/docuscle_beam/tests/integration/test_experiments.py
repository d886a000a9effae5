"""
End-to-end beam experiments against exact values.
"""

import math

import numpy as np
import pytest
from docuscle_beam.estimates import estimate, estimate_ltp_residual, exact_values
from docuscle_beam.pipeline import Emitter, standard_experiment
from docuscle_beam.report import simulate
from docuscle_beam.simulator import run
from docuscle_core.classical import ClassicalState, Event, ltp_residual
from docuscle_core.quantum import DensityMatrix, Projector, embed_classical, ltp_residual_q
from docuscle_core.random_instances import derive_generator, random_density, random_projector

pytestmark = pytest.mark.slow

N = 100_000
KINDS = ("E1", "E2", "E3", "E4", "E5")


def classical_instance(weights, x, r):
    dim = len(weights)
    return (
        ClassicalState(np.array(weights)),
        Event.from_indices(dim, x),
        Event.from_indices(dim, r),
    )


def random_quantum_instance():
    rng = derive_generator(21)
    rho = random_density(3, 2, rng)
    return rho, random_projector(3, 1, rng), random_projector(3, 1, rng)


# (state, X, R) triples: three classical, two quantum
INSTANCES = {
    "skewed": classical_instance((0.4, 0.1, 0.2, 0.3), [1, 2], [0, 1]),
    "uniform": classical_instance((0.25, 0.25, 0.25, 0.25), [0], [0, 1]),
    "tail_heavy": classical_instance((0.05, 0.15, 0.3, 0.5), [0, 2, 3], [1, 2]),
    "plus": (
        DensityMatrix.from_pure([1.0, 1.0]),
        Projector.from_vector([1.0, 1.0]),
        Projector.from_indices(2, [0]),
    ),
    "qutrit": random_quantum_instance(),
}
CLASSICAL = ("skewed", "uniform", "tail_heavy")


def pipeline_for(kind, state, x, r):
    return standard_experiment(kind, Emitter(state), x, r)


def ltp_from_beams(emitter, x, r, seed):
    tables = [
        run(standard_experiment(kind, emitter, x, r), N, seed + i)
        for i, kind in enumerate(("E1", "E2", "E3", "E4"))
    ]
    return tables, estimate_ltp_residual(*tables)


class TestLtpFromBeams:
    def test_quantum_violation_detected(self):
        rho = DensityMatrix.from_pure([1.0, 1.0])
        x, r = Projector.from_vector([1.0, 1.0]), Projector.from_indices(2, [0])
        exact = ltp_residual_q(rho, x, r)
        _, result = ltp_from_beams(Emitter(rho), x, r, seed=100)
        assert exact == pytest.approx(0.5)
        assert abs(result.residual - exact) <= 5 * result.standard_error

    def test_classical_residual_vanishes(self):
        state = ClassicalState.uniform(4)
        x, r = Event.from_indices(4, [0, 1]), Event.from_indices(4, [0, 2])
        assert ltp_residual(state, x, r) == pytest.approx(0.0, abs=1e-12)
        _, result = ltp_from_beams(Emitter(state), x, r, seed=200)
        assert abs(result.residual) <= 5 * result.standard_error


class TestBoostFromBeams:
    def test_e5_expansion_probability(self):
        rho = DensityMatrix(Projector.from_indices(2, [0]).entries)
        x, r = Projector.from_vector([1.0, 1.0]), Projector.from_indices(2, [1])
        table = run(standard_experiment("E5", Emitter(rho), x, r), N, 7)
        est = estimate(table).get("x")
        assert abs(est.value - 0.5) <= 5 * est.standard_error


class TestFixedInstances:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("name", sorted(INSTANCES))
    def test_estimates_within_five_sigma(self, name, kind):
        pipeline = pipeline_for(kind, *INSTANCES[name])
        report = simulate(pipeline, N, 31)
        assert report.table.n_total == N
        assert report.comparisons
        for row in report.comparisons:
            assert row.within_5sigma, f"{name} {kind} {row.quantity}: {row}"

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("name", sorted(INSTANCES))
    def test_same_seed_rerun_is_identical(self, name, kind):
        pipeline = pipeline_for(kind, *INSTANCES[name])
        assert run(pipeline, N, 47) == run(pipeline, N, 47)


class TestEmbeddedAgreement:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("name", CLASSICAL)
    def test_embedded_run_matches_classical_run(self, name, kind):
        triple = INSTANCES[name]
        classical = simulate(pipeline_for(kind, *triple), N, 53)
        embedded = simulate(pipeline_for(kind, *embed_classical(*triple)), N, 59)
        assert [c.quantity for c in classical.comparisons] == [
            c.quantity for c in embedded.comparisons
        ]
        for a, b in zip(classical.comparisons, embedded.comparisons):
            assert a.exact == pytest.approx(b.exact, abs=1e-12)
            assert a.within_5sigma and b.within_5sigma
            spread = math.hypot(a.standard_error, b.standard_error)
            assert abs(a.estimate - b.estimate) <= 5 * spread + 1e-12

    @pytest.mark.parametrize("name", CLASSICAL)
    def test_exact_values_match(self, name):
        triple = INSTANCES[name]
        for kind in KINDS:
            classical = exact_values(pipeline_for(kind, *triple)).values
            embedded = exact_values(pipeline_for(kind, *embed_classical(*triple))).values
            for quantity, value in classical.items():
                if value is None:
                    assert embedded[quantity] is None
                else:
                    assert embedded[quantity] == pytest.approx(value, abs=1e-12)


class TestEstimatorConsistency:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("name", ["skewed", "qutrit"])
    def test_error_shrinks_with_n(self, name, kind):
        pipeline = pipeline_for(kind, *INSTANCES[name])
        errors = {}
        for n in (1_000, 10_000, 100_000):
            report = simulate(pipeline, n, 61)
            for row in report.comparisons:
                assert row.within_5sigma, f"n={n} {row.quantity}: {row}"
                # every frequency here has a denominator of at least n
                assert row.standard_error <= 0.5 / math.sqrt(n) + 1e-15
            errors[n] = max(row.abs_error for row in report.comparisons)
        assert errors[100_000] <= 5 * 0.5 / math.sqrt(100_000)
