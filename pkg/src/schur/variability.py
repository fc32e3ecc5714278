"""変動領域の計算と Schur 補間問題の分類

多点データ (z_j, w_j) と、一点 z0 での高階双曲微分 γ のどちらからでも、
f(z) の取り得る値の集合 (閉円板・一点・空集合) を求める。
"""
from typing import Literal, Optional, Union

from pydantic import model_validator

from ..config.tolerance import Tolerances, get_tolerances
from ..utils.logger import get_logger
from .chain import ChainConfig, evaluate_chain
from .differences import (
    EntryStatus,
    InterpolationData,
    SchurParameter,
    SolvabilityTag,
    build_table,
    check_parameter,
    classify_diagonal,
    hyperbolic_derivatives,
    table_diagonal,
)
from .errors import (
    BoundaryParameterError,
    ChainConsistencyError,
    ConditioningError,
    DomainError,
    InfeasibleProblemError,
    PoleError,
    VerificationError,
)
from .functions import Composition, Constant, NestedChain, SchurFunction, automorphism
from .hyperbolic import ClosedDisk, pseudo_hyperbolic_distance, unimodular
from .types import ComplexValue, DomainModel

logger = get_logger(__name__)

Problem = Union[InterpolationData, SchurParameter, ChainConfig]


class VariabilityRegion(DomainModel):
    kind: Literal["disk", "point", "empty"]
    disk: Optional[ClosedDisk] = None
    point: Optional[ComplexValue] = None
    provenance: str = ""

    @model_validator(mode="after")
    def _check(self) -> "VariabilityRegion":
        if (self.kind == "disk") != (self.disk is not None):
            raise ValueError("disk は kind='disk' のときだけ指定します")
        if (self.kind == "point") != (self.point is not None):
            raise ValueError("point は kind='point' のときだけ指定します")
        if self.disk is not None and self.disk.radius <= 0.0:
            raise ValueError("半径 0 の円板は point として表します")
        return self

    @classmethod
    def from_disk(cls, center: complex, radius: float, provenance: str) -> "VariabilityRegion":
        if radius <= 0.0:
            return cls(kind="point", point=center, provenance=provenance)
        return cls(kind="disk", disk=ClosedDisk(center=center, radius=radius), provenance=provenance)

    @classmethod
    def single(cls, value: complex, provenance: str) -> "VariabilityRegion":
        return cls(kind="point", point=value, provenance=provenance)

    @classmethod
    def empty(cls, provenance: str) -> "VariabilityRegion":
        return cls(kind="empty", provenance=provenance)

    @property
    def center(self) -> Optional[complex]:
        if self.kind == "disk":
            return self.disk.center
        return self.point

    @property
    def radius(self) -> Optional[float]:
        if self.kind == "disk":
            return self.disk.radius
        return 0.0 if self.kind == "point" else None

    def contains(self, w: complex, slack: float = 0.0) -> bool:
        if self.kind == "empty":
            return False
        return abs(w - self.center) <= self.radius + slack


class SolvabilityClass(DomainModel):
    kind: SolvabilityTag
    degree: Optional[int] = None
    # unique_blaschke のときの唯一の解
    function: Optional[SchurFunction] = None


def _check_query(z: complex) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"問い合わせ点 z={z} が開単位円板の外にあります")
    return z


def _disk_from_chain(config: ChainConfig, z: complex, tol: Tolerances, provenance: str) -> VariabilityRegion:
    ev = evaluate_chain(config, z, tol)
    a, a_tilde, b, b_tilde = ev.a[-1], ev.a_tilde[-1], ev.b[-1], ev.b_tilde[-1]
    t2 = abs(ev.t[-1]) ** 2
    denominator = abs(b) ** 2 - t2 * abs(a) ** 2
    if denominator < tol.conditioning:
        raise ConditioningError(f"領域の分母が小さすぎます: {denominator:.3e} (z={z})")
    center = (b.conjugate() * b_tilde - t2 * a.conjugate() * a_tilde) / denominator
    radius = abs(ev.prefix[-1]) * ev.weights[-1] / denominator
    return VariabilityRegion.from_disk(complex(center), float(radius), provenance)


def _unique_interpolant(nodes: list[complex], diagonal: list[complex], degree: int) -> SchurFunction:
    """最初の単位円上の対角成分が degree 番目にあるときの唯一の解 (次数 degree の Blaschke 積)"""
    last = unimodular(diagonal[degree])
    if degree == 0:
        return Constant(last)
    return NestedChain(nodes[:degree], diagonal[:degree], Constant(last))


def _degenerate_point(
    nodes: list[complex], diagonal: list[complex], degree: int, z: complex, tol: Tolerances
) -> complex:
    """唯一の解の z での値。入れ子の形と B̃_m/B_m (f_ε の ε=0) を突き合わせる"""
    nested = _unique_interpolant(nodes, diagonal, degree)(z)
    config = ChainConfig(
        mode="multipoint", nodes=nodes[: degree + 1], diagonal=diagonal[:degree] + [unimodular(diagonal[degree])]
    )
    ev = evaluate_chain(config, z, tol)
    limit = ev.b_tilde[-1] / ev.b[-1]
    if abs(nested - limit) > tol.consistency * (1.0 + abs(limit)):
        raise ChainConsistencyError(f"退化した点の 2 つの表し方が一致しません: {nested} != {limit}")
    return complex(limit)


def multipoint_region(
    data: InterpolationData, z: complex, tolerances: Optional[Tolerances] = None
) -> VariabilityRegion:
    tol = tolerances or get_tolerances()
    z = _check_query(z)
    table = build_table(data, tol)
    if not table.feasible:
        return VariabilityRegion.empty("infinite-entry")
    for node, value in zip(data.nodes, data.values):
        if pseudo_hyperbolic_distance(z, node) <= tol.separation:
            return VariabilityRegion.single(value, "node")

    diagonal = table_diagonal(table)
    values = [e.value.value for e in diagonal]
    degree = next((k for k, e in enumerate(diagonal) if e.status is EntryStatus.BOUNDARY), None)
    if degree is not None:
        point = _degenerate_point(list(data.nodes), values, degree, z, tol)
        return VariabilityRegion.single(point, f"unique-blaschke-{degree}")

    config = ChainConfig(mode="multipoint", nodes=data.nodes, diagonal=values)
    return _disk_from_chain(config, z, tol, "multipoint")


def hyperbolic_region(
    param: SchurParameter, z: complex, tolerances: Optional[Tolerances] = None
) -> VariabilityRegion:
    """z = z0 では半径 0 になり、一点 γ_0 を返す"""
    tol = tolerances or get_tolerances()
    z = _check_query(z)
    if any(abs(g) >= 1.0 - tol.boundary for g in param.gamma):
        raise BoundaryParameterError("単位円上の γ があります。schur_solvability を使ってください")
    return _disk_from_chain(ChainConfig.from_parameter(param, tolerances=tol), z, tol, "hyperbolic")


def schur_solvability(param: SchurParameter, tolerances: Optional[Tolerances] = None) -> SolvabilityClass:
    tol = tolerances or get_tolerances()
    check_parameter(param, tol)
    kind, degree = classify_diagonal(param.gamma, tol)
    if kind != "unique_blaschke":
        return SolvabilityClass(kind=kind)
    nodes = [param.z0] * (degree + 1)
    return SolvabilityClass(
        kind=kind, degree=degree, function=_unique_interpolant(nodes, list(param.gamma), degree)
    )


def data_solvability(data: InterpolationData, tolerances: Optional[Tolerances] = None) -> SolvabilityClass:
    """多点データに対する同じ三分法"""
    tol = tolerances or get_tolerances()
    table = build_table(data, tol)
    if not table.feasible:
        return SolvabilityClass(kind="no_solution")
    values = [e.value.value for e in table_diagonal(table)]
    kind, degree = classify_diagonal(values, tol)
    if kind != "unique_blaschke":
        return SolvabilityClass(kind=kind)
    return SolvabilityClass(
        kind=kind, degree=degree, function=_unique_interpolant(list(data.nodes), values, degree)
    )


def parameter_region(
    param: SchurParameter, z: complex, tolerances: Optional[Tolerances] = None
) -> VariabilityRegion:
    """γ が単位円上の成分を含んでもよい版の hyperbolic_region"""
    tol = tolerances or get_tolerances()
    z = _check_query(z)
    solvability = schur_solvability(param, tol)
    if solvability.kind == "infinitely_many":
        return hyperbolic_region(param, z, tol)
    if solvability.kind == "unique_blaschke":
        return VariabilityRegion.single(solvability.function(z), f"unique-blaschke-{solvability.degree}")
    return VariabilityRegion.empty("no-solution")


def interior_chain(problem: Problem, tolerances: Optional[Tolerances] = None) -> ChainConfig:
    """補間の自由度が残る (対角成分がすべて内部の) 問題の鎖"""
    tol = tolerances or get_tolerances()
    if isinstance(problem, ChainConfig):
        config = problem
    elif isinstance(problem, InterpolationData):
        table = build_table(problem, tol)
        if not table.feasible:
            raise InfeasibleProblemError("データを補間する Schur 関数はありません")
        config = ChainConfig.from_table(table)
    else:
        config = ChainConfig.from_parameter(problem, tolerances=tol)
    if abs(config.diagonal[-1]) >= 1.0 - tol.boundary:
        raise InfeasibleProblemError("解が一意に決まる問題です (対角成分が単位円上)")
    return config


def extremal_eval(
    problem: Problem, epsilon: complex, z: complex, tolerances: Optional[Tolerances] = None
) -> complex:
    """f_ε(z) を入れ子の Möbius 形と有理形の両方で求め、一致を確かめて有理形を返す"""
    tol = tolerances or get_tolerances()
    epsilon, z = complex(epsilon), complex(z)
    if abs(epsilon) > 1.0 + tol.boundary:
        raise DomainError(f"ε={epsilon} が閉単位円板の外にあります")
    config = interior_chain(problem, tol)
    ev = evaluate_chain(config, z, tol)

    st = epsilon * ev.t[-1]
    rational = complex((st * ev.a_tilde[-1] + ev.b_tilde[-1]) / (st * ev.a[-1] + ev.b[-1]))
    nested = NestedChain.extremal(config.nodes, config.diagonal, epsilon)(z)
    if abs(rational - nested) > tol.consistency * (1.0 + abs(rational)):
        raise ChainConsistencyError(f"f_ε の 2 つの形が一致しません: {nested} != {rational} (z={z})")
    return rational


def interpolant(problem: Problem, fstar: SchurFunction, tolerances: Optional[Tolerances] = None) -> SchurFunction:
    """自由パラメータ f* に対応する解を関数オブジェクトとして返す"""
    config = interior_chain(problem, tolerances)
    return NestedChain(config.nodes, config.diagonal, fstar)


def interpolant_eval(
    problem: Problem, fstar: SchurFunction, z: complex, tolerances: Optional[Tolerances] = None
) -> complex:
    tol = tolerances or get_tolerances()
    z = complex(z)
    ev = evaluate_chain(interior_chain(problem, tol), z, tol)
    st = fstar(z) * ev.t[-1]
    return complex((st * ev.a_tilde[-1] + ev.b_tilde[-1]) / (st * ev.a[-1] + ev.b[-1]))


def free_parameter_eval(
    problem: Problem, f_value: complex, z: complex, tolerances: Optional[Tolerances] = None
) -> complex:
    """解 f の z での値から f*(z) を逆算する。節点では定まらない"""
    tol = tolerances or get_tolerances()
    z, f_value = complex(z), complex(f_value)
    ev = evaluate_chain(interior_chain(problem, tol), z, tol)
    denominator = ev.t[-1] * (ev.a_tilde[-1] - ev.a[-1] * f_value)
    if abs(denominator) < tol.pole:
        raise PoleError(f"z={z} では自由パラメータを復元できません")
    return complex((ev.b[-1] * f_value - ev.b_tilde[-1]) / denominator)


def conjugate_to_origin(
    param: SchurParameter, f: SchurFunction, tolerances: Optional[Tolerances] = None
) -> SchurFunction:
    """g = f ∘ T_{z0} を返す。g の原点での双曲微分は f の z0 でのものと同じ"""
    tol = tolerances or get_tolerances()
    z0 = complex(param.z0)
    estimates = hyperbolic_derivatives(f, z0, param.n, tol)
    if abs(estimates[0] - param.gamma[0]) > tol.interpolation_check:
        raise DomainError(f"f(z0)={estimates[0]} が γ_0={param.gamma[0]} と一致しません")
    for j, (u, v) in enumerate(zip(estimates[1:], param.gamma[1:]), start=1):
        if abs(u - v) > tol.parameter_check:
            raise DomainError(f"H^{j} f(z0)={u} が γ_{j}={v} と一致しません")
    if z0 == 0:
        return f

    g = Composition(f, automorphism(z0))
    moved = hyperbolic_derivatives(g, 0j, param.n, tol)
    worst = max(abs(u - v) for u, v in zip(moved, estimates))
    if worst > tol.round_trip:
        raise VerificationError(f"原点へ移した後の双曲微分がずれています: {worst:.3e}")
    logger.debug(f"z0={z0} を原点へ移しました (差 {worst:.3e})")
    return g
