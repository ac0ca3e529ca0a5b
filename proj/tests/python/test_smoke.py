"""Smoke tests for the swarmmatch Python bindings."""

import math

import pytest

import swarmmatch as sm


def test_default_design_converges_and_verifies():
    problem = sm.DesignProblem()
    config = sm.default_swarm_config(problem, seed=2024)
    config.max_iterations = 1000

    result = sm.design(problem, config, sm.SweepSettings())

    assert result.fitness <= 1e-2
    assert result.ordering_ok
    z = result.impedances
    assert len(z) == 3
    assert abs(z[0] * z[2] / z[1] - 70.711) <= 0.1
    assert result.verified_db_at_f0 <= -40.0


def test_design_is_deterministic_per_seed():
    problem = sm.DesignProblem()
    config = sm.default_swarm_config(problem, seed=7)
    config.max_iterations = 200

    a = sm.design(problem, config, sm.SweepSettings())
    b = sm.design(problem, config, sm.SweepSettings())
    assert a.impedances == b.impedances
    assert a.fitness == b.fitness
    assert a.trace == b.trace


def test_fitness_and_ordering_helpers():
    problem = sm.DesignProblem()
    assert sm.closed_form_fitness([86.427, 55.545, 45.444], problem) <= 1e-2
    assert sm.check_ordering([86.427, 55.545, 45.444])
    assert not sm.check_ordering([50.0, 50.0, 40.0])
    assert sm.ordering_penalty([50.0, 60.0, 40.0], problem) == 1000.0 * 10.0

    with pytest.raises(ValueError):
        sm.closed_form_fitness([50.0, -1.0, 40.0], problem)


def test_cascade_fitness_matches_closed_form():
    problem = sm.DesignProblem()
    problem.ordering_required = False
    z = [86.427, 55.545, 45.444]
    assert sm.cascade_fitness(z, problem) == pytest.approx(
        sm.closed_form_fitness(z, problem), rel=1e-9, abs=1e-12
    )


def test_verify_reference_design():
    points, db_at_f0 = sm.verify([86.427, 55.545, 45.444])
    assert db_at_f0 <= -40.0
    assert len(points) == 201
    frequency, gamma, db = points[0]
    assert frequency == 1e9
    assert isinstance(gamma, complex)
    assert db == pytest.approx(20 * math.log10(abs(gamma)), abs=1e-9)


def test_generic_pso_with_python_objective():
    config = sm.SwarmConfig()
    config.bounds = [sm.Bound(-5.0, 5.0)] * 3
    config.population = 60
    config.max_iterations = 800
    config.seed = 11

    result = sm.run(config, lambda x: sum(v * v for v in x))
    assert result.termination == sm.Termination.tolerance
    assert result.best_fitness < 1e-6
    assert all(-5.0 <= v <= 5.0 for v in result.best_position)


def test_reflection_helper():
    gamma, db = sm.reflection(complex(100.0, 0.0), 50.0)
    assert gamma == pytest.approx(1.0 / 3.0)
    assert db == pytest.approx(-9.5424, abs=1e-3)
