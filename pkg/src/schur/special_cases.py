"""よく知られた特別な場合の閉じた式

一般の鎖による計算とは独立に書いてあり、テストと verify で照合に使う。
"""
from typing import Optional

from ..config.tolerance import Tolerances, get_tolerances
from .errors import DomainError
from .hyperbolic import bracket, mobius_transfer
from .variability import VariabilityRegion


def _mobius_image(alpha: complex, beta: complex, gamma: complex, delta: complex, center: complex, radius: float):
    """w ↦ (αw+β)/(γw+δ) による円板 |w-c| <= r の像 (極を含まない場合)"""
    shifted = gamma * center + delta
    denominator = abs(shifted) ** 2 - abs(gamma) ** 2 * radius ** 2
    image_center = ((alpha * center + beta) * shifted.conjugate() - alpha * gamma.conjugate() * radius ** 2) / denominator
    image_radius = radius * abs(alpha * delta - beta * gamma) / abs(denominator)
    return image_center, image_radius


def schwarz_pick_disk(z1: complex, w1: complex, z: complex, tolerances: Optional[Tolerances] = None) -> VariabilityRegion:
    """f(z1) = w1 だけが分かっているときの f(z) の範囲"""
    tol = tolerances or get_tolerances()
    w1 = complex(w1)
    if abs(w1) >= 1.0 - tol.boundary:
        return VariabilityRegion.single(w1, "schwarz-pick")
    t2 = abs(mobius_transfer(-complex(z1), complex(z))) ** 2
    gap = 1.0 - t2 * abs(w1) ** 2
    center = w1 * (1.0 - t2) / gap
    radius = t2 ** 0.5 * (1.0 - abs(w1) ** 2) / gap
    return VariabilityRegion.from_disk(center, radius, "schwarz-pick")


def two_point_disk(
    z1: complex, z2: complex, w1: complex, w2: complex, z: complex, tolerances: Optional[Tolerances] = None
) -> VariabilityRegion:
    """f = T_{w1}(T_{-z1} g)、g(z2) = Δ_2^1 と分解して、g(z) の円板を写す"""
    tol = tolerances or get_tolerances()
    z1, z2, w1, w2, z = (complex(v) for v in (z1, z2, w1, w2, z))
    if abs(w1) >= 1.0 - tol.boundary:
        if abs(w2 - w1) <= tol.boundary:
            return VariabilityRegion.single(w1, "two-point")
        return VariabilityRegion.empty("two-point")

    if z1 == z2:
        raise DomainError("z1 と z2 は異なる点である必要があります")
    quotient = bracket(w2, w1).value / bracket(z2, z1).value
    if abs(quotient) > 1.0 + tol.boundary:
        return VariabilityRegion.empty("two-point")
    u = mobius_transfer(-z1, z)
    if abs(quotient) >= 1.0 - tol.boundary:
        return VariabilityRegion.single(mobius_transfer(w1, u * quotient), "two-point")

    inner = schwarz_pick_disk(z2, quotient, z, tol)
    center, radius = _mobius_image(1.0, w1, w1.conjugate(), 1.0, u * inner.center, abs(u) * inner.radius)
    return VariabilityRegion.from_disk(center, radius, "two-point")


def two_point_origin_disk(z2: complex, w2: complex, z: complex) -> VariabilityRegion:
    """f(0) = 0, f(z2) = w2 の場合の閉じた式"""
    z2, w2, z = complex(z2), complex(w2), complex(z)
    if z2 == 0:
        raise DomainError("z2 は 0 以外である必要があります")
    ratio = w2 / z2
    t2 = abs(mobius_transfer(-z2, z)) ** 2
    gap = 1.0 - t2 * abs(ratio) ** 2
    center = (1.0 - t2) / gap * z * ratio
    radius = abs(z) * t2 ** 0.5 * (1.0 - abs(ratio) ** 2) / gap
    return VariabilityRegion.from_disk(center, radius, "two-point-origin")


def rogosinski_pick_disk(
    z0: complex, gamma1: complex, z: complex, tolerances: Optional[Tolerances] = None
) -> VariabilityRegion:
    """f(z0) = 0 かつ H^1 f(z0) = γ_1 のときの f(z) の範囲"""
    tol = tolerances or get_tolerances()
    gamma1 = complex(gamma1)
    t = mobius_transfer(-complex(z0), complex(z))
    if abs(gamma1) >= 1.0 - tol.boundary:
        return VariabilityRegion.single(gamma1 * t, "rogosinski-pick")
    t2 = abs(t) ** 2
    gap = 1.0 - t2 * abs(gamma1) ** 2
    center = t * gamma1 * (1.0 - t2) / gap
    radius = t2 * (1.0 - abs(gamma1) ** 2) / gap
    return VariabilityRegion.from_disk(center, radius, "rogosinski-pick")


def rogosinski_disk(derivative: complex, z: complex, tolerances: Optional[Tolerances] = None) -> VariabilityRegion:
    """f(0) = 0、f'(0) が与えられたときの f(z) の範囲"""
    return rogosinski_pick_disk(0j, derivative, z, tolerances)
