import cmath

import numpy as np
import pytest
from pydantic import ValidationError

from src.config.tolerance import Tolerances
from src.oracle.sampling import random_chain_config, random_disk_point, sample_nodes
from src.schur.chain import (
    ChainConfig,
    chain_matrix,
    check_coefficient_gap,
    check_determinant_identity,
    check_neighbor_identities,
    check_reflection_identity,
    evaluate_chain,
)
from src.schur.differences import InterpolationData, SchurParameter, build_table
from src.schur.errors import InfeasibleProblemError, PoleError
from src.schur.hyperbolic import mobius_transfer

TOL = Tolerances()


def confluent(z0, gamma):
    return ChainConfig.from_parameter(SchurParameter(z0=z0, gamma=gamma))


def test_initial_stage():
    ev = evaluate_chain(confluent(0.2, [0.3 - 0.4j]), 0.5j, TOL)
    assert ev.a[0] == pytest.approx(0.3 + 0.4j)
    assert ev.a_tilde[0] == 1
    assert ev.b[0] == 1
    assert ev.b_tilde[0] == pytest.approx(0.3 - 0.4j)


def test_confluent_values_at_base_point():
    gamma = [0.3, -0.2j, 0.5, 0.1 + 0.1j]
    ev = evaluate_chain(confluent(0.4j, gamma), 0.4j, TOL)
    np.testing.assert_allclose(ev.b, np.ones(4))
    np.testing.assert_allclose(ev.b_tilde, np.full(4, 0.3))


def test_confluent_first_stage_closed_form():
    g0, g1, z0, z = 0.3 + 0.2j, -0.5j, 0.1, -0.4 + 0.3j
    ev = evaluate_chain(confluent(z0, [g0, g1]), z, TOL)
    t = mobius_transfer(-z0, z)
    assert ev.a_tilde[1] == pytest.approx(g0 * g1.conjugate() + t)
    assert ev.b[1] == pytest.approx(1 + g0.conjugate() * g1 * t)


def test_confluent_degree_in_transferred_variable():
    gamma = [0.3, -0.2j, 0.5, 0.1 + 0.1j]
    z0 = 0.2 - 0.1j
    config = confluent(z0, gamma)
    zs = [0.1, -0.3j, 0.5 + 0.2j, -0.6, 0.2 + 0.7j, -0.1 - 0.1j]
    ts = np.array([mobius_transfer(-z0, z) for z in zs])
    evs = [evaluate_chain(config, z, TOL) for z in zs]
    for k in range(4):
        vander = np.vander(ts, k + 1)
        for name in ("a", "a_tilde", "b", "b_tilde"):
            ys = np.array([getattr(ev, name)[k] for ev in evs])
            coefficients = np.linalg.lstsq(vander, ys, rcond=None)[0]
            np.testing.assert_allclose(vander @ coefficients, ys, atol=1e-12)


def test_determinant_identity_first_stage():
    d0 = 0.6 - 0.2j
    ev = evaluate_chain(confluent(0, [d0]), 0.3, TOL)
    assert ev.a_tilde[0] * ev.b[0] - ev.a[0] * ev.b_tilde[0] == pytest.approx(1 - abs(d0) ** 2)


def test_determinant_identity_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        config = random_chain_config(rng, 3)
        ev = evaluate_chain(config, random_disk_point(rng, 1.0), TOL)
        assert check_determinant_identity(ev) < 1e-12


def test_determinant_vanishes_at_first_node():
    rng = np.random.default_rng(8)
    nodes = sample_nodes(rng, 3)
    config = ChainConfig(mode="multipoint", nodes=nodes, diagonal=[0.2, -0.3j, 0.5])
    ev = evaluate_chain(config, nodes[0], TOL)
    lhs = ev.a_tilde * ev.b - ev.a * ev.b_tilde
    np.testing.assert_allclose(lhs[1:], 0, atol=1e-14)


def test_reflection_identity():
    rng = np.random.default_rng(2)
    config = random_chain_config(rng, 2)
    assert check_reflection_identity(config, 0.3 + 0.4j, TOL) < 1e-10


def test_reflection_on_circle_relates_gaps():
    rng = np.random.default_rng(4)
    config = random_chain_config(rng, 3, bound=0.9)
    z = cmath.exp(0.9j)
    ev = evaluate_chain(config, z, TOL)
    assert check_reflection_identity(config, z, TOL) < 1e-10
    np.testing.assert_allclose(
        np.abs(ev.b) ** 2 - np.abs(ev.b_tilde) ** 2, np.abs(ev.b) ** 2 - np.abs(ev.a) ** 2, atol=1e-12
    )


def test_reflection_identity_poles():
    config = ChainConfig(mode="multipoint", nodes=[0.3, -0.2j], diagonal=[0.1, 0.2])
    with pytest.raises(PoleError):
        check_reflection_identity(config, 0, TOL)
    with pytest.raises(PoleError):
        check_reflection_identity(config, 0.3, TOL)


def test_neighbor_identities_first_step():
    d0, d1 = 0.4 + 0.1j, -0.3j
    ev = evaluate_chain(ChainConfig(mode="multipoint", nodes=[0.1, 0.5j], diagonal=[d0, d1]), -0.2, TOL)
    lhs = ev.a[1] * ev.a_tilde[0] - ev.a[0] * ev.a_tilde[1]
    assert lhs == pytest.approx(d1.conjugate() * (1 - abs(d0) ** 2))
    assert check_neighbor_identities(ev) < 1e-12


def test_neighbor_identities_random():
    rng = np.random.default_rng(6)
    for _ in range(20):
        ev = evaluate_chain(random_chain_config(rng, 3), random_disk_point(rng, 1.0), TOL)
        assert check_neighbor_identities(ev) < 1e-12


def test_neighbor_identities_zero_diagonal():
    ev = evaluate_chain(confluent(0.3, [0, 0, 0]), 0.5j, TOL)
    assert check_neighbor_identities(ev) == 0


def test_coefficient_gap_first_stage_is_tight():
    ev = evaluate_chain(confluent(0.3, [0.5j]), 0.2, TOL)
    assert check_coefficient_gap(ev, TOL) == pytest.approx(0, abs=1e-15)


def test_coefficient_gap_on_circle():
    rng = np.random.default_rng(9)
    config = random_chain_config(rng, 4)
    for phi in np.linspace(0, 2 * np.pi, 64, endpoint=False):
        ev = evaluate_chain(config, cmath.exp(1j * phi), TOL)
        assert check_coefficient_gap(ev, TOL) >= -1e-11


def test_coefficient_gap_zero_diagonal():
    ev = evaluate_chain(confluent(0, [0, 0, 0]), 0.5, TOL)
    np.testing.assert_allclose(np.abs(ev.b), 1)
    np.testing.assert_allclose(np.abs(ev.a_tilde), [1, 0.5, 0.25])
    assert check_coefficient_gap(ev, TOL) == pytest.approx(0, abs=1e-15)


def test_matrix_product_matches_recurrence():
    rng = np.random.default_rng(12)
    config = random_chain_config(rng, 5)
    z = 0.3 - 0.5j
    ev = evaluate_chain(config, z, TOL)
    expected = np.array([[ev.a[-1], ev.a_tilde[-1]], [ev.b[-1], ev.b_tilde[-1]]])
    np.testing.assert_allclose(chain_matrix(config, z), expected, atol=1e-14)


def test_chain_config_validation():
    with pytest.raises(ValidationError):
        ChainConfig(mode="multipoint", nodes=[0, 0.5], diagonal=[1, 0.2])
    with pytest.raises(ValidationError):
        ChainConfig(mode="multipoint", nodes=[0], diagonal=[0.1, 0.2])
    with pytest.raises(ValidationError):
        ChainConfig(mode="confluent", nodes=[0, 0.5], diagonal=[0.1, 0.2])
    ChainConfig(mode="multipoint", nodes=[0, 0.5], diagonal=[0.1, 1j])


def test_chain_config_from_infeasible_table():
    table = build_table(InterpolationData(nodes=[0, 0.5], values=[0, 0.9]), TOL)
    with pytest.raises(InfeasibleProblemError):
        ChainConfig.from_table(table)
