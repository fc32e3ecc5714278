"""総当たりの検証実験

所属判定 (正解関数の値が領域に入るか)、境界での極値性、巻き数、
多点の節点を一点に集めたときの収束を調べる。
"""
from collections.abc import Sequence
from typing import Optional

import numpy as np
from pydantic import Field

from ..config.tolerance import Tolerances, get_tolerances
from ..schur.differences import InterpolationData, SchurParameter, hyperbolic_derivatives
from ..schur.errors import ConditioningError, DomainError
from ..schur.functions import SchurFunction
from ..schur.types import DomainModel
from ..schur.variability import Problem, data_solvability, extremal_eval, hyperbolic_region, multipoint_region
from ..utils.logger import get_logger
from .sampling import MAX_RESAMPLE, RandomProblemSpec, random_disk_point, sample_problem

logger = get_logger(__name__)

MEMBERSHIP_SLACK = 1e-9
WINDING_SAMPLES = 256
DEFAULT_DELTAS = tuple(0.1 / 2 ** i for i in range(7))


class MembershipReport(DomainModel):
    trials: int = 0
    checks: int = 0
    violations: int = 0
    max_overhang: float = float("-inf")
    resampled: int = 0
    # はみ出しが最大だった点 (再現用)
    worst: Optional[dict] = None

    def combine(self, other: "MembershipReport") -> "MembershipReport":
        worst = self.worst if self.max_overhang >= other.max_overhang else other.worst
        return MembershipReport(
            trials=self.trials + other.trials,
            checks=self.checks + other.checks,
            violations=self.violations + other.violations,
            max_overhang=max(self.max_overhang, other.max_overhang),
            resampled=self.resampled + other.resampled,
            worst=worst,
        )


class ConfluenceReport(DomainModel):
    deltas: list[float]
    center_deviation: list[float]
    radius_deviation: list[float]
    parameter_error: float
    tolerance_scale: float = Field(ge=1.0)
    monotone: bool
    converged: bool


def boundary_epsilons(count: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(count) / count)


def epsilon_grid(m: int) -> np.ndarray:
    """[-1, 1]^2 の m×m 格子のうち閉単位円板に入る点"""
    if m <= 0:
        return np.empty(0, dtype=complex)
    axis = np.linspace(-1.0, 1.0, m)
    grid = (axis[None, :] + 1j * axis[:, None]).ravel()
    return grid[np.abs(grid) <= 1.0]


def winding_number(values: Sequence[complex], center: complex) -> int:
    """閉曲線 values が center の周りを回る回数"""
    shifted = np.asarray(values, dtype=complex) - center
    angles = np.unwrap(np.angle(np.append(shifted, shifted[0])))
    return int(round((angles[-1] - angles[0]) / (2 * np.pi)))


def membership_trial(
    spec: RandomProblemSpec,
    rng: np.random.Generator,
    queries: int = 20,
    tolerances: Optional[Tolerances] = None,
) -> MembershipReport:
    """1 回分の試行。実行不能なデータは引き直して数える"""
    tol = tolerances or get_tolerances()
    resampled = 0
    for _ in range(MAX_RESAMPLE):
        problem = sample_problem(spec, rng)
        if data_solvability(problem.data, tol).kind != "no_solution":
            break
        resampled += 1
        logger.warning("実行不能なデータを引いたため引き直します")
    else:
        raise DomainError(f"実行可能なデータを {MAX_RESAMPLE} 回以内に引けませんでした")

    checks, violations = 0, 0
    max_overhang, worst = float("-inf"), None
    for _ in range(queries):
        z = random_disk_point(rng, spec.r_max)
        try:
            region = multipoint_region(problem.data, z, tol)
        except ConditioningError:
            resampled += 1
            logger.warning(f"z={z} は条件が悪いため除外します")
            continue
        value = problem.truth(z)
        overhang = abs(value - region.center) - region.radius
        checks += 1
        if overhang > MEMBERSHIP_SLACK:
            violations += 1
        if overhang > max_overhang:
            max_overhang = overhang
            worst = {"z": z, "value": value, "nodes": list(problem.data.nodes), "values": list(problem.data.values)}

    return MembershipReport(
        trials=1, checks=checks, violations=violations, max_overhang=max_overhang, resampled=resampled, worst=worst
    )


def membership_test(
    spec: RandomProblemSpec,
    trials: int,
    queries: int = 20,
    tolerances: Optional[Tolerances] = None,
) -> MembershipReport:
    """正解関数 F から作ったデータの領域に F(z) が入ることを確かめる"""
    total = MembershipReport()
    for trial in range(trials):
        report = membership_trial(spec, np.random.default_rng([spec.seed, trial]), queries, tolerances)
        total = total.combine(report)
    return total


def boundary_extremality(
    problem: Problem, z: complex, samples: int = 64, tolerances: Optional[Tolerances] = None
) -> tuple[float, bool, int]:
    """(|ε|=1 での円周からのずれの最大値, f_0(z) が内部にあるか, 巻き数)"""
    tol = tolerances or get_tolerances()
    if isinstance(problem, InterpolationData):
        region = multipoint_region(problem, z, tol)
    elif isinstance(problem, SchurParameter):
        region = hyperbolic_region(problem, z, tol)
    else:
        raise DomainError("InterpolationData か SchurParameter が必要です")
    if region.kind != "disk":
        raise DomainError(f"z={z} で領域が円板になりません ({region.kind})")

    values = np.array([extremal_eval(problem, e, z, tol) for e in boundary_epsilons(samples)])
    deviation = float(np.max(np.abs(np.abs(values - region.center) - region.radius)))
    inside = abs(extremal_eval(problem, 0j, z, tol) - region.center) < region.radius

    loop = [extremal_eval(problem, e, z, tol) for e in boundary_epsilons(WINDING_SAMPLES)]
    return deviation, inside, winding_number(loop, region.center)


def confluent_nodes(z0: complex, n: int, delta: float) -> list[complex]:
    if n == 0:
        return [complex(z0)]
    roots = np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    return [complex(z0 + delta * w) for w in roots]


def confluence_experiment(
    z0: complex,
    gamma: Sequence[complex],
    truth: SchurFunction,
    z: complex,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    tolerances: Optional[Tolerances] = None,
) -> ConfluenceReport:
    """節点を z0 の周りに半径 δ で並べた多点の円板が、γ の円板に近づくかを調べる"""
    tol = tolerances or get_tolerances()
    if any(not 1e-4 <= d <= 1e-1 for d in deltas):
        raise DomainError("δ は [1e-4, 1e-1] の範囲で与えてください")
    param = SchurParameter(z0=z0, gamma=list(gamma))
    n = param.n

    estimates = hyperbolic_derivatives(truth, param.z0, n, tol)
    parameter_error = max(abs(u - v) for u, v in zip(estimates, param.gamma))
    if parameter_error > tol.round_trip:
        raise DomainError(f"正解関数の双曲微分が γ と一致しません: 差 {parameter_error:.3e}")

    target = hyperbolic_region(param, z, tol)
    centers, radii = [], []
    for delta in deltas:
        nodes = confluent_nodes(param.z0, n, delta)
        data = InterpolationData(nodes=nodes, values=[truth(x) for x in nodes])
        region = multipoint_region(data, z, tol)
        centers.append(abs(region.center - target.center))
        radii.append(abs(region.radius - target.radius))

    scale = max([1.0] + [1.0 / (1.0 - abs(g) ** 2) for g in param.gamma[1:]])
    combined = [max(c, r) for c, r in zip(centers, radii)]
    monotone = all(b <= 1.1 * a + 1e-12 for a, b in zip(combined, combined[1:]))
    converged = monotone and combined[-1] <= 1e-3 * scale
    if not converged:
        logger.warning(f"合流の実験が収束しません: 最終のずれ {combined[-1]:.3e}")
    return ConfluenceReport(
        deltas=list(deltas),
        center_deviation=centers,
        radius_deviation=radii,
        parameter_error=parameter_error,
        tolerance_scale=scale,
        monotone=monotone,
        converged=converged,
    )
