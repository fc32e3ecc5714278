"""Schur 族の関数オブジェクト

どのクラスも生成後は不変で、スレッド間で共有してよい。
derivative() は解析的に求まる場合だけ値を返し、求まらなければ None。
"""
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError
from .hyperbolic import BOUNDARY_TOL, mobius_transfer_extended, unimodular


class SchurFunction(ABC):
    structure: str = "generic"

    @abstractmethod
    def __call__(self, z: complex) -> complex:
        ...

    def derivative(self, z: complex) -> Optional[complex]:
        return None

    def evaluate_many(self, zs) -> np.ndarray:
        return np.array([self(complex(z)) for z in np.ravel(zs)], dtype=complex)


class Constant(SchurFunction):
    structure = "constant"

    def __init__(self, value: complex, degenerate: bool = False):
        value = complex(value)
        if abs(value) > 1.0 + BOUNDARY_TOL:
            raise DomainError(f"定数関数の値が閉単位円板の外にあります: {value}")
        self.value = value
        # 最大値原理で定数に潰れたことを示す
        self.degenerate = degenerate

    def __call__(self, z: complex) -> complex:
        return self.value

    def derivative(self, z: complex) -> complex:
        return 0j

    def evaluate_many(self, zs) -> np.ndarray:
        return np.full(np.size(zs), self.value, dtype=complex)

    def __repr__(self) -> str:
        return f"Constant({self.value})"


class FiniteBlaschke(SchurFunction):
    """B(z) = u * prod (z - a_j)/(1 - conj(a_j) z)"""

    structure = "finite_blaschke"

    def __init__(self, zeros: Sequence[complex], factor: complex = 1.0):
        self.zeros = np.asarray(list(zeros), dtype=complex)
        if np.any(np.abs(self.zeros) >= 1.0):
            raise DomainError("Blaschke 積の零点は開単位円板内に必要です")
        factor = complex(factor)
        if abs(abs(factor) - 1.0) > BOUNDARY_TOL:
            raise DomainError(f"Blaschke 積の係数は単位円上に必要です: {factor}")
        self.factor = unimodular(factor)

    @property
    def degree(self) -> int:
        return int(self.zeros.size)

    def _factors(self, z: complex) -> np.ndarray:
        return (z - self.zeros) / (1 - np.conj(self.zeros) * z)

    def __call__(self, z: complex) -> complex:
        return complex(self.factor * np.prod(self._factors(complex(z))))

    def derivative(self, z: complex) -> complex:
        z = complex(z)
        if self.degree == 0:
            return 0j
        factors = self._factors(z)
        slopes = (1 - np.abs(self.zeros) ** 2) / (1 - np.conj(self.zeros) * z) ** 2
        # 対数微分の和を、零点でも割り算が起きないよう前後の累積積で書く
        before = np.concatenate(([1.0 + 0j], np.cumprod(factors[:-1])))
        after = np.concatenate((np.cumprod(factors[::-1][:-1])[::-1], [1.0 + 0j]))
        return complex(self.factor * np.sum(slopes * before * after))

    def evaluate_many(self, zs) -> np.ndarray:
        zs = np.ravel(np.asarray(zs, dtype=complex))
        if self.degree == 0:
            return np.full(zs.size, self.factor, dtype=complex)
        factors = (zs[:, None] - self.zeros[None, :]) / (1 - np.conj(self.zeros)[None, :] * zs[:, None])
        return self.factor * np.prod(factors, axis=1)

    def __repr__(self) -> str:
        return f"FiniteBlaschke(degree={self.degree}, factor={self.factor})"


def automorphism(a: complex) -> FiniteBlaschke:
    """T_a を次数 1 の Blaschke 積として返す"""
    return FiniteBlaschke([-complex(a)], 1.0)


class ScaledBlaschke(SchurFunction):
    structure = "scaled_blaschke"

    def __init__(self, scale: float, blaschke: FiniteBlaschke):
        if not 0.0 < scale <= 1.0:
            raise DomainError(f"スケールは (0, 1] に必要です: {scale}")
        self.scale = float(scale)
        self.blaschke = blaschke

    def __call__(self, z: complex) -> complex:
        return self.scale * self.blaschke(z)

    def derivative(self, z: complex) -> complex:
        return self.scale * self.blaschke.derivative(z)

    def evaluate_many(self, zs) -> np.ndarray:
        return self.scale * self.blaschke.evaluate_many(zs)


class PolynomialSchur(SchurFunction):
    """係数の絶対値の和が 1 以下の多項式 (Schur 族に入る十分条件)"""

    structure = "polynomial"

    def __init__(self, coefficients: Sequence[complex]):
        coefficients = np.asarray(list(coefficients), dtype=complex)
        if np.sum(np.abs(coefficients)) > 1.0 + BOUNDARY_TOL:
            raise DomainError("多項式の係数の絶対値の和が 1 を超えています")
        self.polynomial = Polynomial(coefficients)
        self._slope = self.polynomial.deriv()

    def __call__(self, z: complex) -> complex:
        return complex(self.polynomial(complex(z)))

    def derivative(self, z: complex) -> complex:
        return complex(self._slope(complex(z)))


class Composition(SchurFunction):
    """outer ∘ inner"""

    structure = "composition"

    def __init__(self, outer: SchurFunction, inner: SchurFunction):
        self.outer = outer
        self.inner = inner

    def __call__(self, z: complex) -> complex:
        return self.outer(self.inner(z))

    def derivative(self, z: complex) -> Optional[complex]:
        inner_slope = self.inner.derivative(z)
        if inner_slope is None:
            return None
        outer_slope = self.outer.derivative(self.inner(z))
        if outer_slope is None:
            return None
        return outer_slope * inner_slope


class NestedChain(SchurFunction):
    """T_{d_0}(T_{-z_1}(z) T_{d_1}( ... T_{d_n}(T_{-z_{n+1}}(z) tail(z)) ... ))

    nodes = (z_1, ..., z_{n+1}) と diagonal = (d_0, ..., d_n) を外側から並べる。
    一点に集中した場合は nodes がすべて z_0 になる。
    """

    structure = "nested_chain"

    def __init__(self, nodes: Sequence[complex], diagonal: Sequence[complex], tail: SchurFunction):
        self.nodes = tuple(complex(v) for v in nodes)
        self.diagonal = tuple(complex(v) for v in diagonal)
        if len(self.nodes) != len(self.diagonal):
            raise DomainError("nodes と diagonal の長さが一致しません")
        if any(abs(a) >= 1.0 for a in self.nodes):
            raise DomainError("節点は開単位円板内に必要です")
        if any(abs(d) > 1.0 + BOUNDARY_TOL for d in self.diagonal):
            raise DomainError("diagonal の成分は閉単位円板内に必要です")
        self.tail = tail

    @classmethod
    def extremal(cls, nodes: Sequence[complex], diagonal: Sequence[complex], epsilon: complex) -> "NestedChain":
        return cls(nodes, diagonal, Constant(epsilon))

    @property
    def depth(self) -> int:
        return len(self.nodes)

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        x = self.tail(z)
        for node, d in zip(reversed(self.nodes), reversed(self.diagonal)):
            x = mobius_transfer_extended(d, mobius_transfer_extended(-node, z) * x)
        return x

    def derivative(self, z: complex) -> Optional[complex]:
        z = complex(z)
        dx = self.tail.derivative(z)
        if dx is None:
            return None
        x = self.tail(z)
        for node, d in zip(reversed(self.nodes), reversed(self.diagonal)):
            t = mobius_transfer_extended(-node, z)
            dt = (1 - abs(node) ** 2) / (1 - node.conjugate() * z) ** 2
            u = t * x
            du = dt * x + t * dx
            x = mobius_transfer_extended(d, u)
            dx = (1 - abs(d) ** 2) / (1 + d.conjugate() * u) ** 2 * du
        return dx
