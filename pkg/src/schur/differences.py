"""双曲差分商の表と演算子 Δ_{z0}

補間データ (z_j, w_j) から三角形の表 Δ_j^k を作る Schur アルゴリズムと、
関数オブジェクトに作用する Δ_{z0}、合流極限による高階双曲微分の推定を扱う。

行と列は 0 始まりで持つ。row = j-1、column = k として
entry(row, column) が Δ_j^k に対応し、row == column が対角成分 Δ_{k+1}^k。
"""
from collections.abc import Sequence
from enum import Enum
from functools import cached_property
from typing import Literal, Optional

from pydantic import model_validator

from ..config.tolerance import Tolerances, get_tolerances
from ..utils.logger import get_logger
from .errors import DerivativeEstimationError, DomainError
from .functions import Constant, SchurFunction
from .hyperbolic import ExtendedComplex, pseudo_hyperbolic_distance, unimodular
from .types import ComplexValue, DomainModel

logger = get_logger(__name__)

MAX_DERIVATIVE_ORDER = 8
_CENTER_TOL = 1e-12
_DIRECTIONS = (1.0 + 0j, 1j, -1.0 + 0j, -1j)

SolvabilityTag = Literal["infinitely_many", "unique_blaschke", "no_solution"]


class InterpolationData(DomainModel):
    nodes: list[ComplexValue]
    values: list[ComplexValue]

    @model_validator(mode="after")
    def _check(self) -> "InterpolationData":
        if not self.nodes:
            raise ValueError("節点が 1 つ以上必要です")
        if len(self.nodes) != len(self.values):
            raise ValueError(f"nodes ({len(self.nodes)}) と values ({len(self.values)}) の長さが一致しません")
        for z in self.nodes:
            if abs(z) >= 1.0:
                raise ValueError(f"節点 {z} が開単位円板の外にあります")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("同じ節点が重複しています")
        return self

    @property
    def n(self) -> int:
        return len(self.nodes) - 1


class SchurParameter(DomainModel):
    z0: ComplexValue
    gamma: list[ComplexValue]

    @model_validator(mode="after")
    def _check(self) -> "SchurParameter":
        if abs(self.z0) >= 1.0:
            raise ValueError(f"z0={self.z0} が開単位円板の外にあります")
        if not self.gamma:
            raise ValueError("gamma が空です")
        return self

    @property
    def n(self) -> int:
        return len(self.gamma) - 1


class EntryStatus(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    INFINITE = "infinite"


class TableEntry(DomainModel):
    row: int
    column: int
    value: ExtendedComplex
    status: EntryStatus
    # Δ_j^{k-1} = Δ_k^{k-1} が単位円上にあるため 0 とした成分
    exception: bool = False


class DifferenceTable(DomainModel):
    nodes: list[ComplexValue]
    values: list[ComplexValue]
    columns: list[list[TableEntry]]
    feasible: bool
    confluent: bool = False

    @property
    def n(self) -> int:
        return len(self.nodes) - 1

    def entry(self, row: int, column: int) -> Optional[TableEntry]:
        if column > row or row > self.n:
            raise IndexError(f"表の外です: row={row}, column={column}")
        if column >= len(self.columns):
            return None
        return self.columns[column][row - column]


def check_separation(nodes: Sequence[complex], eps_sep: float) -> None:
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if pseudo_hyperbolic_distance(nodes[i], nodes[j]) <= eps_sep:
                raise DomainError(f"節点 {nodes[i]} と {nodes[j]} が近すぎます (eps_sep={eps_sep})")


def check_data(data: "InterpolationData", tol: Tolerances) -> None:
    """許容誤差に依存する前提 (補間値の大きさと節点の間隔) を確かめる"""
    for w in data.values:
        if abs(w) > 1.0 + tol.boundary:
            raise DomainError(f"補間値 {w} が閉単位円板の外にあります")
    check_separation(data.nodes, tol.separation)


def check_parameter(param: "SchurParameter", tol: Tolerances) -> None:
    for g in param.gamma:
        if abs(g) > 1.0 + tol.boundary:
            raise DomainError(f"gamma の成分 {g} が閉単位円板の外にあります")


def _classify(value: complex, tol: Tolerances) -> EntryStatus:
    return EntryStatus.BOUNDARY if abs(value) >= 1.0 - tol.boundary else EntryStatus.INTERIOR


def _next_entry(
    row: int, column: int, a: complex, b: complex, zj: complex, zk: complex, tol: Tolerances
) -> TableEntry:
    """Δ_j^k = [Δ_j^{k-1}, Δ_k^{k-1}] / [z_j, z_k] を規則どおりに決める"""
    on_circle = abs(a) >= 1.0 - tol.boundary and abs(b) >= 1.0 - tol.boundary
    if on_circle and abs(a - b) <= tol.boundary:
        return TableEntry(
            row=row, column=column, value=ExtendedComplex.finite(0j), status=EntryStatus.INTERIOR, exception=True
        )

    infinite = TableEntry(row=row, column=column, value=ExtendedComplex.infinity(), status=EntryStatus.INFINITE)
    numerator_den = 1 - b.conjugate() * a
    if abs(numerator_den) < tol.degeneracy:
        return infinite
    numerator = (a - b) / numerator_den
    denominator = (zj - zk) / (1 - zk.conjugate() * zj)
    if abs(numerator) > abs(denominator) * (1.0 + tol.boundary):
        return infinite

    value = numerator / denominator
    status = _classify(value, tol)
    if status is EntryStatus.BOUNDARY:
        value = unimodular(value)
    return TableEntry(row=row, column=column, value=ExtendedComplex.finite(value), status=status)


def build_table(data: InterpolationData, tolerances: Optional[Tolerances] = None) -> DifferenceTable:
    """補間データから双曲差分商の表を列ごとに作る。

    ∞ の成分が現れた列で計算を打ち切り、表を実行不能として印を付ける。
    """
    tol = tolerances or get_tolerances()
    nodes, values = data.nodes, data.values
    check_data(data, tol)

    columns = [[
        TableEntry(row=i, column=0, value=ExtendedComplex.finite(w), status=_classify(w, tol))
        for i, w in enumerate(values)
    ]]
    feasible = True
    for k in range(1, data.n + 1):
        previous = columns[k - 1]
        pivot = previous[0].value.value
        pivot_node = nodes[k - 1]
        column = [
            _next_entry(i, k, previous[i - k + 1].value.value, pivot, nodes[i], pivot_node, tol)
            for i in range(k, data.n + 1)
        ]
        columns.append(column)
        if any(e.status is EntryStatus.INFINITE for e in column):
            feasible = False
            logger.debug(f"列 {k} に ∞ が現れたため表を打ち切ります")
            break

    return DifferenceTable(nodes=nodes, values=values, columns=columns, feasible=feasible)


def table_diagonal(table: DifferenceTable) -> list[TableEntry]:
    """(Δ_1^0, Δ_2^1, ..., Δ_{n+1}^n)。計算されなかった位置は ∞ で埋める"""
    diagonal = []
    for k in range(table.n + 1):
        entry = table.entry(k, k)
        if entry is None:
            entry = TableEntry(row=k, column=k, value=ExtendedComplex.infinity(), status=EntryStatus.INFINITE)
        diagonal.append(entry)
    return diagonal


def classify_diagonal(
    values: Sequence[complex], tolerances: Optional[Tolerances] = None
) -> tuple[SolvabilityTag, Optional[int]]:
    """対角成分 (または γ) から解の個数の三分法を判定する。

    戻り値は (分類, 最初の単位円上の添字)。
    """
    tol = tolerances or get_tolerances()
    for j, v in enumerate(values):
        modulus = abs(v)
        if modulus > 1.0 + tol.boundary:
            return "no_solution", None
        if modulus >= 1.0 - tol.boundary:
            if all(abs(u) <= tol.zero for u in values[j + 1:]):
                return "unique_blaschke", j
            return "no_solution", j
    return "infinitely_many", None


def confluent_table(param: SchurParameter, tolerances: Optional[Tolerances] = None) -> DifferenceTable:
    """z_1 = ... = z_{n+1} = z0 の表。Δ_j^k = γ_k"""
    tol = tolerances or get_tolerances()
    check_parameter(param, tol)
    n = param.n
    columns = [
        [
            TableEntry(row=i, column=k, value=ExtendedComplex.finite(g), status=_classify(g, tol))
            for i in range(k, n + 1)
        ]
        for k, g in enumerate(param.gamma)
    ]
    tag, _ = classify_diagonal(param.gamma, tol)
    return DifferenceTable(
        nodes=[param.z0] * (n + 1),
        values=[param.gamma[0]] * (n + 1),
        columns=columns,
        feasible=tag != "no_solution",
        confluent=True,
    )


def estimate_center_value(func: SchurFunction, z0: complex, tolerances: Optional[Tolerances] = None) -> complex:
    """解析関数 func の z0 での値を、z0 を囲む 4 方向の平均と Richardson 外挿で求める。

    4 方向の平均は h^4, h^8, ... の項しか残さないので、半径 h, h/2, h/4 の
    2 段の外挿で h^12 の誤差まで落ちる。func は z0 では評価しない。
    """
    tol = tolerances or get_tolerances()
    h = tol.derivative_step * (1.0 - abs(z0))
    try:
        averages = [
            sum(func(z0 + r * w) for w in _DIRECTIONS) / len(_DIRECTIONS)
            for r in (h, h / 2, h / 4)
        ]
    except (ZeroDivisionError, OverflowError) as e:
        raise DerivativeEstimationError(f"z0={z0} の近傍で評価に失敗しました: {e}") from e

    coarse = (16 * averages[1] - averages[0]) / 15
    fine = (16 * averages[2] - averages[1]) / 15
    value = (256 * fine - coarse) / 255
    if not abs(value) < float("inf") or abs(value - fine) > tol.derivative_convergence:
        raise DerivativeEstimationError(
            f"z0={z0} での外挿が収束しません: |Δ|={abs(value - fine):.3e}"
        )
    return complex(value)


class DeltaQuotient(SchurFunction):
    """Δ_{z0} f(z) = [f(z), f(z0)] / [z, z0]、z = z0 では (1-|z0|^2) f'(z0) / (1-|f(z0)|^2)"""

    structure = "delta_quotient"

    def __init__(self, base: SchurFunction, center: complex, anchor: complex, tolerances: Tolerances):
        self.base = base
        self.center = complex(center)
        self.anchor = complex(anchor)
        self.tolerances = tolerances

    @cached_property
    def center_value(self) -> complex:
        slope = self.base.derivative(self.center)
        if slope is not None:
            return (1 - abs(self.center) ** 2) * slope / (1 - abs(self.anchor) ** 2)
        # 解析的な微分がない場合は中心差分 (4 点の円周平均) で極限を取る
        return estimate_center_value(self, self.center, self.tolerances)

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        if abs(z - self.center) <= _CENTER_TOL:
            return self.center_value
        fz = self.base(z)
        numerator = (fz - self.anchor) / (1 - self.anchor.conjugate() * fz)
        denominator = (z - self.center) / (1 - self.center.conjugate() * z)
        return numerator / denominator


def delta_operator(f: SchurFunction, z0: complex, tolerances: Optional[Tolerances] = None) -> SchurFunction:
    tol = tolerances or get_tolerances()
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise DomainError(f"z0={z0} が開単位円板の外にあります")
    anchor = f(z0)
    if abs(anchor) >= 1.0 - tol.boundary:
        # 最大値原理より f は単峰定数で、[f(z), f(z0)] = 0
        logger.debug(f"|f(z0)|=1 のため Δ_{{z0}} f を定数 0 とします (z0={z0})")
        return Constant(0j, degenerate=True)
    return DeltaQuotient(f, z0, anchor, tol)


def hyperbolic_derivative_estimate(
    f: SchurFunction, z0: complex, order: int, tolerances: Optional[Tolerances] = None
) -> complex:
    """H^order f(z0) を Δ_{z0} の反復と中心での極限で推定する"""
    if not 1 <= order <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"order は 1 以上 {MAX_DERIVATIVE_ORDER} 以下です: {order}")
    tol = tolerances or get_tolerances()
    g = f
    for _ in range(order):
        g = delta_operator(g, z0, tol)
    return complex(g(z0))


def hyperbolic_derivatives(
    f: SchurFunction, z0: complex, order: int, tolerances: Optional[Tolerances] = None
) -> list[complex]:
    """(f(z0), H^1 f(z0), ..., H^order f(z0)) を一度の反復でまとめて求める"""
    if not 0 <= order <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"order は 0 以上 {MAX_DERIVATIVE_ORDER} 以下です: {order}")
    tol = tolerances or get_tolerances()
    g = f
    values = [complex(f(z0))]
    for _ in range(order):
        g = delta_operator(g, z0, tol)
        values.append(complex(g(z0)))
    return values


def iterated_divided_difference(
    f: SchurFunction,
    z: complex,
    params: Sequence[complex],
    tolerances: Optional[Tolerances] = None,
) -> ExtendedComplex:
    """Δ^k f(z; z_k, ..., z_1) = (Δ_{z_k} ∘ ... ∘ Δ_{z_1}) f (z)"""
    tol = tolerances or get_tolerances()
    z = complex(z)
    points = [complex(p) for p in params]
    check_separation(points + [z], tol.separation)
    g = f
    for p in points:
        if abs(g(p)) > 1.0 + tol.boundary:
            return ExtendedComplex.infinity()
        g = delta_operator(g, p, tol)
    value = g(z)
    if abs(value) > 1.0 + tol.boundary:
        return ExtendedComplex.infinity()
    return ExtendedComplex.finite(value)
