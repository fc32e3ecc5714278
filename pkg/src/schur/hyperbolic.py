"""単位円板上の双曲幾何の基本演算

T_a、括弧 [z, w]、擬双曲距離、Apollonius の円の中心と半径を扱う。
すべて引数だけに依存する純粋関数。
"""
from typing import Optional

from pydantic import Field, model_validator

from .errors import DegenerateError, DomainError
from .types import ComplexValue, DomainModel

DEGENERACY_TOL = 1e-12
BOUNDARY_TOL = 1e-9


class ExtendedComplex(DomainModel):
    """有限の複素数か無限遠点のどちらか一方"""

    value: Optional[ComplexValue] = None
    infinite: bool = False

    @model_validator(mode="after")
    def _exactly_one(self) -> "ExtendedComplex":
        if self.infinite == (self.value is not None):
            raise ValueError("value と infinite はちょうど一方だけを指定してください")
        return self

    @classmethod
    def finite(cls, value: complex) -> "ExtendedComplex":
        return cls(value=value)

    @classmethod
    def infinity(cls) -> "ExtendedComplex":
        return cls(infinite=True)

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def __abs__(self) -> float:
        return float("inf") if self.infinite else abs(self.value)


class ClosedDisk(DomainModel):
    center: ComplexValue
    radius: float = Field(ge=0.0)

    def contains(self, w: complex, slack: float = 0.0) -> bool:
        return abs(w - self.center) <= self.radius + slack

    def overhang(self, w: complex) -> float:
        """円板からのはみ出し量 (内部なら負)"""
        return abs(w - self.center) - self.radius


def _check_closed_disk(name: str, z: complex, tol: float) -> None:
    if abs(z) > 1.0 + tol:
        raise DomainError(f"{name}={z} は閉単位円板の外にあります")


def mobius_transfer_extended(a: complex, z: complex) -> complex:
    """T_a(z) = (z+a)/(1+conj(a) z) を検査なしで評価する (円板外での代数的な延長)"""
    return (z + a) / (1 + a.conjugate() * z)


def mobius_transfer(a: complex, z: complex, tol: float = BOUNDARY_TOL) -> complex:
    """円板の自己同型 T_a(z) = (z+a)/(1+conj(a) z)"""
    a, z = complex(a), complex(z)
    if abs(a) >= 1.0:
        raise DomainError(f"T_a には |a| < 1 が必要です: a={a}")
    _check_closed_disk("z", z, tol)
    return mobius_transfer_extended(a, z)


def bracket(
    z: complex,
    w: complex,
    degeneracy: float = DEGENERACY_TOL,
    tol: float = BOUNDARY_TOL,
) -> ExtendedComplex:
    """[z, w] = (z-w)/(1-conj(w) z)。z conj(w) = 1 のときは無限遠点。

    z = w が単位円上にある場合もここでは無限遠点を返す。差分表の
    境界例外 (値 0) は build_table 側で扱う。
    """
    z, w = complex(z), complex(w)
    _check_closed_disk("z", z, tol)
    _check_closed_disk("w", w, tol)
    denominator = 1 - w.conjugate() * z
    if abs(denominator) < degeneracy:
        return ExtendedComplex.infinity()
    return ExtendedComplex.finite((z - w) / denominator)


def pseudo_hyperbolic_distance(z: complex, w: complex) -> float:
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DomainError(f"擬双曲距離は開単位円板上でのみ定義されます: z={z}, w={w}")
    return abs((z - w) / (1 - w.conjugate() * z))


def apollonius_disk(p: complex, q: complex, k: float, degeneracy: float = DEGENERACY_TOL) -> ClosedDisk:
    """{λ : |(λ-p)/(λ-q)| <= k} を表す閉円板。

    k > 1 では同じ式が Apollonius の円を与えるが、集合そのものは
    その円の外側になる。ライブラリ内部では k < 1 でしか呼ばない。
    """
    p, q = complex(p), complex(q)
    if k < 0:
        raise DomainError(f"k は非負である必要があります: k={k}")
    gap = 1.0 - k * k
    if abs(gap) < degeneracy:
        raise DegenerateError(f"k={k} が 1 に近すぎて円が退化します")
    if abs(p - q) <= degeneracy:
        return ClosedDisk(center=p, radius=0.0)
    center = (p - k * k * q) / gap
    radius = k * abs(p - q) / abs(gap)
    return ClosedDisk(center=center, radius=radius)


def unimodular(w: complex) -> complex:
    """単位円上に射影する (偏角だけを残す)。単位円上の値はそのまま返る"""
    w = complex(w)
    modulus = abs(w)
    if modulus == 0.0:
        return 1.0 + 0j
    return w / modulus
