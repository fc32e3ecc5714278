import numpy as np
import pytest
from pydantic import ValidationError

from src.config.tolerance import Tolerances
from src.oracle.sampling import random_blaschke, sample_nodes
from src.schur.differences import (
    DeltaQuotient,
    EntryStatus,
    InterpolationData,
    SchurParameter,
    build_table,
    classify_diagonal,
    confluent_table,
    delta_operator,
    estimate_center_value,
    hyperbolic_derivative_estimate,
    hyperbolic_derivatives,
    iterated_divided_difference,
    table_diagonal,
)
from src.schur.errors import DomainError
from src.schur.functions import (
    Composition,
    Constant,
    FiniteBlaschke,
    NestedChain,
    PolynomialSchur,
    SchurFunction,
)

TOL = Tolerances()


class Opaque(SchurFunction):
    """解析的な微分を隠したラッパー"""

    def __init__(self, inner):
        self.inner = inner

    def __call__(self, z):
        return self.inner(z)


def data(nodes, values):
    return InterpolationData(nodes=nodes, values=values)


def test_interpolation_data_validation():
    with pytest.raises(ValidationError):
        data([0, 0.5], [0])
    with pytest.raises(ValidationError):
        data([1.0], [0])
    with pytest.raises(ValidationError):
        data([0.2, 0.2], [0, 0])
    with pytest.raises(ValidationError):
        data([], [])


def test_build_table_two_points():
    table = build_table(data([0, 0.5], [0, 0.25]), TOL)
    assert table.feasible
    assert table.entry(0, 0).value.value == 0
    assert table.entry(1, 0).value.value == 0.25
    assert table.entry(1, 1).value.value == pytest.approx(0.5)
    assert table.entry(1, 1).status is EntryStatus.INTERIOR
    assert [e.value.value for e in table_diagonal(table)] == pytest.approx([0, 0.5])


def test_build_table_boundary_exception():
    table = build_table(data([0, 0.5], [1, 1]), TOL)
    entry = table.entry(1, 1)
    assert table.feasible
    assert entry.value.value == 0
    assert entry.exception
    assert table.entry(0, 0).status is EntryStatus.BOUNDARY


def test_build_table_infinite_entry():
    table = build_table(data([0, 0.5], [0, 0.9]), TOL)
    assert not table.feasible
    assert table.entry(1, 1).status is EntryStatus.INFINITE
    assert table_diagonal(table)[-1].value.infinite


def test_build_table_stops_at_infinite_column():
    table = build_table(data([0, 0.5, -0.5], [0, 0.9, 0]), TOL)
    assert len(table.columns) == 2
    assert table.entry(2, 2) is None
    assert table_diagonal(table)[2].status is EntryStatus.INFINITE


def test_build_table_tie_is_boundary():
    table = build_table(data([0, 0.5], [0, 0.5]), TOL)
    entry = table.entry(1, 1)
    assert entry.status is EntryStatus.BOUNDARY
    assert abs(entry.value.value) == 1.0


def test_single_node_table():
    table = build_table(data([0.3j], [0.2]), TOL)
    assert [e.value.value for e in table_diagonal(table)] == [0.2]


def test_build_table_checks_separation_with_tolerances():
    with pytest.raises(DomainError):
        build_table(data([0, 0.01], [0, 0]), Tolerances(separation=0.1))


def test_separation_override_below_default_admits_close_nodes():
    close = data([0, 1e-9], [0, 5e-10])
    with pytest.raises(DomainError):
        build_table(close, Tolerances())
    table = build_table(close, Tolerances(separation=1e-12))
    assert table.feasible


def test_boundary_override_is_applied_to_values_and_gamma():
    with pytest.raises(DomainError):
        build_table(data([0], [1.1]), TOL)
    assert build_table(data([0], [1.1]), Tolerances(boundary=0.2)).feasible
    with pytest.raises(DomainError):
        confluent_table(SchurParameter(z0=0, gamma=[0.2, 1 + 1e-6]), TOL)
    confluent_table(SchurParameter(z0=0, gamma=[0.2, 1 + 1e-6]), Tolerances(boundary=1e-5))


def test_table_matches_iterated_divided_differences():
    rng = np.random.default_rng(3)
    f = random_blaschke(4, rng)
    nodes = sample_nodes(rng, 4)
    table = build_table(data(nodes, [f(z) for z in nodes]), TOL)
    assert table.feasible
    for row in range(4):
        for column in range(row + 1):
            expected = iterated_divided_difference(f, nodes[row], nodes[:column], TOL)
            assert table.entry(row, column).value.value == pytest.approx(expected.value, abs=1e-10)


def test_delta_operator_square():
    g = delta_operator(PolynomialSchur([0, 0, 1]), 0, TOL)
    assert g(0.3) == pytest.approx(0.3)
    assert g(0) == pytest.approx(0)


def test_delta_operator_constant_is_zero():
    g = delta_operator(Constant(0.4 - 0.2j), 0.3, TOL)
    assert g(-0.5) == pytest.approx(0)
    assert g(0.3) == pytest.approx(0)


def test_delta_operator_identity_is_one():
    g = delta_operator(FiniteBlaschke([0.0]), 0.2 + 0.1j, TOL)
    assert g(-0.4) == pytest.approx(1)
    assert g(0.2 + 0.1j) == pytest.approx(1)


def test_delta_operator_boundary_value_gives_degenerate_constant():
    g = delta_operator(Constant(1j), 0.1, TOL)
    assert isinstance(g, Constant)
    assert g.degenerate
    assert g(0.5) == 0


def test_delta_operator_rejects_outside_point():
    with pytest.raises(DomainError):
        delta_operator(Constant(0), 1.0, TOL)


def test_delta_operator_chain_rule():
    f = FiniteBlaschke([0.3, -0.2j], 1j)
    g = FiniteBlaschke([0.5 + 0.1j])
    z0, z = 0.1 - 0.3j, 0.4 + 0.2j
    lhs = delta_operator(Composition(f, g), z0, TOL)(z)
    rhs = delta_operator(f, g(z0), TOL)(g(z)) * delta_operator(g, z0, TOL)(z)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_delta_operator_stays_in_schur_class():
    rng = np.random.default_rng(11)
    f = random_blaschke(3, rng)
    g = delta_operator(f, 0.2 - 0.4j, TOL)
    radius = 0.99 * np.sqrt(rng.uniform(size=1000))
    angle = 2 * np.pi * rng.uniform(size=1000)
    for z in radius * np.exp(1j * angle):
        assert abs(g(z)) <= 1 + 1e-10


def test_hyperbolic_derivative_of_square():
    f = PolynomialSchur([0, 0, 1])
    assert hyperbolic_derivative_estimate(f, 0, 1, TOL) == pytest.approx(0, abs=1e-12)
    assert hyperbolic_derivative_estimate(f, 0, 2, TOL) == pytest.approx(1)


def test_hyperbolic_derivative_of_constant():
    for order in (1, 2, 3):
        assert hyperbolic_derivative_estimate(Constant(0.3), 0.4j, order, TOL) == pytest.approx(0, abs=1e-12)


def test_first_hyperbolic_derivative_matches_formula():
    f = PolynomialSchur([0.1, 0.5, 0.2j])
    z0 = 0.3 - 0.1j
    expected = (1 - abs(z0) ** 2) * f.derivative(z0) / (1 - abs(f(z0)) ** 2)
    assert hyperbolic_derivative_estimate(Opaque(f), z0, 1, TOL) == pytest.approx(expected, abs=1e-8)


def test_estimate_center_value_of_smooth_function():
    f = FiniteBlaschke([0.3, -0.5j])
    assert estimate_center_value(f, 0.2, TOL) == pytest.approx(f(0.2), abs=1e-10)


def test_derivatives_recover_schur_parameters():
    gamma = [0.3, -0.2, 0.1 + 0.1j]
    z0 = 0.25
    f = NestedChain.extremal([z0] * 3, gamma, 0.4)
    estimates = hyperbolic_derivatives(f, z0, 2, TOL)
    assert estimates == pytest.approx(gamma, abs=1e-6)
    for order in (1, 2):
        assert hyperbolic_derivative_estimate(f, z0, order, TOL) == pytest.approx(gamma[order], abs=1e-6)


def test_hyperbolic_derivative_order_limits():
    with pytest.raises(DomainError):
        hyperbolic_derivative_estimate(Constant(0), 0, 0, TOL)
    with pytest.raises(DomainError):
        hyperbolic_derivative_estimate(Constant(0), 0, 9, TOL)


def test_delta_quotient_uses_analytic_derivative():
    f = FiniteBlaschke([0.4])
    g = delta_operator(f, 0.1, TOL)
    assert isinstance(g, DeltaQuotient)
    expected = (1 - 0.01) * f.derivative(0.1) / (1 - abs(f(0.1)) ** 2)
    assert g.center_value == pytest.approx(expected)


def test_iterated_divided_difference():
    assert iterated_divided_difference(FiniteBlaschke([0.0]), 0.3, [0.1j], TOL).value == pytest.approx(1)
    f = FiniteBlaschke([0.0, 0.5])
    for z in (0.3, -0.6j, 0.1 + 0.2j):
        value = iterated_divided_difference(f, z, [0, 0.5], TOL)
        assert abs(value) == pytest.approx(1, abs=1e-9)


def test_iterated_divided_difference_rejects_repeated_points():
    with pytest.raises(DomainError):
        iterated_divided_difference(FiniteBlaschke([0.0]), 0.3, [0.3], TOL)


def test_confluent_table():
    table = confluent_table(SchurParameter(z0=0.1, gamma=[0.5, 1, 0, 0]), TOL)
    assert table.confluent
    assert table.feasible
    assert table.entry(3, 1).value.value == 1
    assert table.entry(3, 1).status is EntryStatus.BOUNDARY
    assert not confluent_table(SchurParameter(z0=0.1, gamma=[0.5, 1, 0.2]), TOL).feasible


def test_classify_diagonal():
    assert classify_diagonal([0.3, -0.2, 0.1], TOL) == ("infinitely_many", None)
    assert classify_diagonal([0.5, 1, 0, 0], TOL) == ("unique_blaschke", 1)
    assert classify_diagonal([1j], TOL) == ("unique_blaschke", 0)
    assert classify_diagonal([0.5, 1, 0.2, 0], TOL) == ("no_solution", 1)
