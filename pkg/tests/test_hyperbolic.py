import cmath

import numpy as np
import pytest
from pydantic import ValidationError

from src.schur.errors import DegenerateError, DomainError
from src.schur.hyperbolic import (
    ClosedDisk,
    ExtendedComplex,
    apollonius_disk,
    bracket,
    mobius_transfer,
    pseudo_hyperbolic_distance,
    unimodular,
)


def test_mobius_transfer_values():
    assert mobius_transfer(0.5, 0) == pytest.approx(0.5)
    assert mobius_transfer(0.5, -0.5) == pytest.approx(0)
    assert mobius_transfer(0.5j, 0.5) == pytest.approx(0.352941176 + 0.588235294j, abs=1e-8)


def test_mobius_transfer_keeps_circle():
    for phi in np.linspace(0, 2 * np.pi, 17):
        assert abs(mobius_transfer(0.3 - 0.6j, cmath.exp(1j * phi))) == pytest.approx(1.0)


def test_mobius_transfer_rejects_outside():
    with pytest.raises(DomainError):
        mobius_transfer(1.0, 0.2)
    with pytest.raises(DomainError):
        mobius_transfer(0.2, 1.5)


def test_bracket():
    assert bracket(0.5, 0).value == pytest.approx(0.5)
    assert bracket(0.3 + 0.1j, 0.3 + 0.1j).value == 0
    assert bracket(1, 1).infinite
    assert abs(bracket(1j, 1j)) == float("inf")
    with pytest.raises(DomainError):
        bracket(2, 0)


def test_pseudo_hyperbolic_distance():
    assert pseudo_hyperbolic_distance(0.5, 0) == pytest.approx(0.5)
    assert pseudo_hyperbolic_distance(0.2j, 0.2j) == 0
    assert pseudo_hyperbolic_distance(0.1, 0.7j) == pytest.approx(pseudo_hyperbolic_distance(0.7j, 0.1))
    with pytest.raises(DomainError):
        pseudo_hyperbolic_distance(1.0, 0)


def test_extended_complex_needs_exactly_one():
    with pytest.raises(ValidationError):
        ExtendedComplex()
    with pytest.raises(ValidationError):
        ExtendedComplex(value=1, infinite=True)
    assert ExtendedComplex.finite(0.5j).is_finite
    assert not ExtendedComplex.infinity().is_finite


def test_extended_complex_accepts_pairs():
    assert ExtendedComplex(value=[0.25, -1]).value == complex(0.25, -1)


def test_closed_disk():
    disk = ClosedDisk(center=0.1, radius=0.5)
    assert disk.contains(0.6)
    assert not disk.contains(0.7)
    assert disk.overhang(0.1) == pytest.approx(-0.5)
    with pytest.raises(ValidationError):
        ClosedDisk(center=0, radius=-1)


@pytest.mark.parametrize("k", [0.2, 0.5, 0.9])
def test_apollonius_disk_boundary_has_ratio_k(k):
    p, q = 0.3 + 0.1j, -0.2 + 0.4j
    disk = apollonius_disk(p, q, k)
    for phi in np.linspace(0, 2 * np.pi, 9):
        lam = disk.center + disk.radius * cmath.exp(1j * phi)
        assert abs(lam - p) / abs(lam - q) == pytest.approx(k)
    assert disk.contains(p)


def test_apollonius_disk_degenerate_cases():
    with pytest.raises(DegenerateError):
        apollonius_disk(0, 0.5, 1.0)
    with pytest.raises(DomainError):
        apollonius_disk(0, 0.5, -0.1)
    assert apollonius_disk(0.2, 0.2, 0.5).radius == 0


def test_unimodular():
    assert abs(unimodular(0.999999 + 0.0001j)) == pytest.approx(1.0, abs=1e-15)
    assert cmath.phase(unimodular(-2j)) == pytest.approx(-np.pi / 2)


@pytest.mark.parametrize("w", [1, -1, 1j, -1j])
def test_unimodular_keeps_exact_unit_values(w):
    assert unimodular(w) == w
