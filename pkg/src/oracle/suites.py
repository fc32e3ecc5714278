"""verify コマンドの性質テスト

各試行は (seed, スイート番号, 試行番号) から作った乱数で独立に動くので、
試行をどう分割して並列に走らせても同じレポートになる。
"""
from collections.abc import Callable
from typing import Literal, Optional, get_args

import numpy as np

from ..config.tolerance import Tolerances, get_tolerances
from ..schur.chain import (
    check_coefficient_gap,
    check_determinant_identity,
    check_neighbor_identities,
    check_reflection_identity,
    evaluate_chain,
)
from ..schur.differences import InterpolationData, SchurParameter, hyperbolic_derivatives
from ..schur.errors import SchurRegionError
from ..schur.functions import Constant
from ..schur.hyperbolic import pseudo_hyperbolic_distance
from ..schur.special_cases import rogosinski_pick_disk, schwarz_pick_disk, two_point_disk, two_point_origin_disk
from ..schur.types import DomainModel
from ..schur.variability import (
    VariabilityRegion,
    conjugate_to_origin,
    data_solvability,
    free_parameter_eval,
    hyperbolic_region,
    interpolant_eval,
    multipoint_region,
    parameter_region,
    schur_solvability,
)
from ..utils.logger import get_logger
from .experiments import boundary_extremality, confluence_experiment, membership_trial
from .sampling import (
    RandomProblemSpec,
    random_blaschke,
    random_chain_config,
    random_disk_point,
    random_extremal,
    random_unimodular,
    sample_nodes,
    sample_problem,
)

logger = get_logger(__name__)

SuiteName = Literal[
    "identities",
    "membership",
    "extremality",
    "interpolation",
    "confluence",
    "derivatives",
    "solvability",
    "closed_forms",
]
SUITES: tuple[SuiteName, ...] = get_args(SuiteName)

IDENTITY_TOL = 1e-11
REFLECTION_TOL = 1e-10
EXTREMALITY_TOL = 1e-10
INTERPOLATION_TOL = 1e-10
RECOVERY_TOL = 1e-9
CONFLUENCE_TOL = 1e-4
DERIVATIVE_TOL = 1e-6
CLOSED_FORM_TOL = 1e-9


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _pairs(zs) -> list[list[float]]:
    return [_pair(z) for z in zs]


class TrialOutcome(DomainModel):
    suite: SuiteName
    trial: int
    checks: int
    residual: float
    passed: bool
    case: dict


class SuiteReport(DomainModel):
    suite: SuiteName
    trials: int = 0
    checks: int = 0
    failures: int = 0
    max_residual: float = 0.0
    # 失敗した試行のうち残差が最大のもの (同じなら試行番号が小さいもの)
    failure: Optional[TrialOutcome] = None

    @classmethod
    def from_outcome(cls, outcome: TrialOutcome) -> "SuiteReport":
        return cls(
            suite=outcome.suite,
            trials=1,
            checks=outcome.checks,
            failures=0 if outcome.passed else 1,
            max_residual=outcome.residual,
            failure=None if outcome.passed else outcome,
        )

    def combine(self, other: "SuiteReport") -> "SuiteReport":
        candidates = [f for f in (self.failure, other.failure) if f is not None]
        failure = min(candidates, key=lambda f: (-f.residual, f.trial)) if candidates else None
        return SuiteReport(
            suite=self.suite,
            trials=self.trials + other.trials,
            checks=self.checks + other.checks,
            failures=self.failures + other.failures,
            max_residual=max(self.max_residual, other.max_residual),
            failure=failure,
        )

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _far_query(rng: np.random.Generator, nodes: list[complex], r_max: float = 0.9, gap: float = 0.1) -> complex:
    """どの節点からも擬双曲距離 gap 以上離れた問い合わせ点"""
    for _ in range(100):
        z = random_disk_point(rng, r_max)
        if all(pseudo_hyperbolic_distance(z, x) >= gap for x in nodes):
            return z
    return random_disk_point(rng, r_max)


def identities_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(0, 7))
    config = random_chain_config(rng, n)
    radius = np.sqrt(rng.uniform(0.0025, 1.0))
    if rng.uniform() < 0.25:
        radius = 1.0
    z = complex(radius * np.exp(2j * np.pi * rng.uniform()))

    ev = evaluate_chain(config, z, tol)
    determinant = check_determinant_identity(ev)
    neighbor = check_neighbor_identities(ev)
    reflection = check_reflection_identity(config, z, tol)
    gap = check_coefficient_gap(ev, tol)

    residual = max(determinant, neighbor, reflection, -gap, 0.0)
    passed = (
        determinant < IDENTITY_TOL
        and neighbor < IDENTITY_TOL
        and reflection < REFLECTION_TOL
        and gap >= -IDENTITY_TOL
    )
    case = {
        "mode": config.mode,
        "nodes": _pairs(config.nodes),
        "diagonal": _pairs(config.diagonal),
        "z": _pair(z),
        "determinant": determinant,
        "neighbor": neighbor,
        "reflection": reflection,
        "gap": gap,
    }
    return 4, residual, passed, case


def membership_suite_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(0, 5))
    family = ("blaschke", "scaled_blaschke", "constant")[int(rng.integers(0, 3))]
    spec = RandomProblemSpec(
        seed=0,
        n=n,
        family=family,
        degree=n + 1 + int(rng.integers(0, 3)),
        scale=float(rng.uniform(0.5, 1.0)),
    )
    report = membership_trial(spec, rng, tolerances=tol)
    case = {"n": n, "family": family, "resampled": report.resampled}
    if report.worst is not None:
        case.update(
            z=_pair(report.worst["z"]),
            value=_pair(report.worst["value"]),
            nodes=_pairs(report.worst["nodes"]),
            values=_pairs(report.worst["values"]),
        )
    return report.checks, max(report.max_overhang, 0.0), report.violations == 0, case


def extremality_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(0, 4))
    problem = sample_problem(RandomProblemSpec(seed=0, n=n), rng)
    z = _far_query(rng, problem.data.nodes)
    deviation, inside, winding = boundary_extremality(problem.data, z, tolerances=tol)
    case = {
        "nodes": _pairs(problem.data.nodes),
        "values": _pairs(problem.data.values),
        "z": _pair(z),
        "inside": inside,
        "winding": winding,
    }
    return 3, deviation, deviation <= EXTREMALITY_TOL and inside and winding == 1, case


def interpolation_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(0, 5))
    problem = sample_problem(RandomProblemSpec(seed=0, n=n), rng)
    data = problem.data
    if rng.uniform() < 0.5:
        fstar = random_blaschke(int(rng.integers(0, 4)), rng)
    else:
        fstar = Constant(random_disk_point(rng, 1.0))

    interpolation = max(abs(interpolant_eval(data, fstar, z, tol) - w) for z, w in zip(data.nodes, data.values))
    z = _far_query(rng, data.nodes)
    recovered = free_parameter_eval(data, interpolant_eval(data, fstar, z, tol), z, tol)
    recovery = abs(recovered - fstar(z))

    case = {"nodes": _pairs(data.nodes), "values": _pairs(data.values), "z": _pair(z)}
    passed = interpolation < INTERPOLATION_TOL and recovery < RECOVERY_TOL
    return len(data.nodes) + 1, max(interpolation, recovery), passed, case


def confluence_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(0, 3))
    z0 = random_disk_point(rng, 0.5)
    gamma, truth = random_extremal(rng, z0, n)
    z = _far_query(rng, [z0], gap=0.2)
    report = confluence_experiment(z0, gamma, truth, z, tolerances=tol)
    final = max(report.center_deviation[-1], report.radius_deviation[-1])
    case = {
        "z0": _pair(z0),
        "gamma": _pairs(gamma),
        "z": _pair(z),
        "center_deviation": report.center_deviation,
        "radius_deviation": report.radius_deviation,
    }
    passed = report.converged and final <= CONFLUENCE_TOL * report.tolerance_scale
    return len(report.deltas), final, passed, case


def derivatives_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(1, 4))
    z0 = random_disk_point(rng, 0.5)
    gamma, truth = random_extremal(rng, z0, n)
    estimates = hyperbolic_derivatives(truth, z0, n, tol)
    error = max(abs(u - v) for u, v in zip(estimates, gamma))

    moved = conjugate_to_origin(SchurParameter(z0=z0, gamma=gamma), truth, tol)
    at_origin = hyperbolic_derivatives(moved, 0j, n, tol)
    invariance = max(abs(u - v) for u, v in zip(at_origin, gamma))

    case = {"z0": _pair(z0), "gamma": _pairs(gamma), "estimates": _pairs(estimates)}
    return 2 * n, max(error, invariance), error <= DERIVATIVE_TOL and invariance <= tol.round_trip, case


def solvability_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    n = int(rng.integers(1, 5))
    z0 = random_disk_point(rng, 0.5)
    gamma = [random_disk_point(rng, 0.9) for _ in range(n + 1)]
    expected = ("infinitely_many", "unique_blaschke", "no_solution")[int(rng.integers(0, 3))]
    degree = None
    if expected != "infinitely_many":
        degree = int(rng.integers(0, n))
        gamma[degree] = random_unimodular(rng)
        for k in range(degree + 1, n + 1):
            gamma[k] = 0j
        if expected == "no_solution":
            gamma[n] = (0.1 + 0.8 * rng.uniform()) * random_unimodular(rng)

    param = SchurParameter(z0=z0, gamma=gamma)
    result = schur_solvability(param, tol)
    z = _far_query(rng, [z0])
    region = parameter_region(param, z, tol)
    checks, residual = 2, 0.0
    passed = result.kind == expected

    if expected == "no_solution":
        passed = passed and region.kind == "empty"
    elif expected == "unique_blaschke":
        passed = passed and result.degree == degree
        unique = result.function
        residual = abs(region.point - unique(z)) if region.kind == "point" else 1.0
        # 唯一の解の値を n+1 点で取ったデータも同じ次数で一意に決まる
        nodes = sample_nodes(rng, n + 1)
        data = InterpolationData(nodes=nodes, values=[unique(x) for x in nodes])
        from_data = data_solvability(data, tol)
        residual = max(residual, abs(unique(z0) - gamma[0]))
        checks += 1
        passed = passed and residual <= INTERPOLATION_TOL and from_data.kind == "unique_blaschke"
        passed = passed and from_data.degree == degree
    else:
        passed = passed and region.kind == "disk"

    case = {"z0": _pair(z0), "gamma": _pairs(gamma), "expected": expected, "got": result.kind}
    return checks, residual, passed, case


def _region_gap(general: VariabilityRegion, closed: VariabilityRegion) -> float:
    if general.kind != closed.kind:
        return float("inf")
    if general.kind == "empty":
        return 0.0
    return abs(general.center - closed.center) + abs(general.radius - closed.radius)


def closed_forms_trial(rng: np.random.Generator, tol: Tolerances) -> tuple[int, float, bool, dict]:
    """一般の鎖による領域を、独立に書いた閉じた式と突き合わせる"""
    form = ("schwarz_pick", "two_point", "two_point_origin", "rogosinski_pick")[int(rng.integers(0, 4))]
    if form == "schwarz_pick":
        z1, w1 = random_disk_point(rng), random_disk_point(rng)
        z = _far_query(rng, [z1])
        general = multipoint_region(InterpolationData(nodes=[z1], values=[w1]), z, tol)
        closed = schwarz_pick_disk(z1, w1, z, tol)
        case = {"nodes": _pairs([z1]), "values": _pairs([w1])}
    elif form == "two_point":
        data = sample_problem(RandomProblemSpec(seed=0, n=1), rng).data
        z = _far_query(rng, data.nodes)
        general = multipoint_region(data, z, tol)
        closed = two_point_disk(*data.nodes, *data.values, z, tol)
        case = {"nodes": _pairs(data.nodes), "values": _pairs(data.values)}
    elif form == "two_point_origin":
        (z2,) = sample_nodes(rng, 1)
        while abs(z2) < 0.1:
            (z2,) = sample_nodes(rng, 1)
        w2 = z2 * random_disk_point(rng)
        z = _far_query(rng, [0j, z2])
        general = multipoint_region(InterpolationData(nodes=[0j, z2], values=[0j, w2]), z, tol)
        closed = two_point_origin_disk(z2, w2, z)
        case = {"nodes": _pairs([0j, z2]), "values": _pairs([0j, w2])}
    else:
        z0, gamma1 = random_disk_point(rng, 0.5), random_disk_point(rng)
        z = _far_query(rng, [z0])
        general = hyperbolic_region(SchurParameter(z0=z0, gamma=[0j, gamma1]), z, tol)
        closed = rogosinski_pick_disk(z0, gamma1, z, tol)
        case = {"z0": _pair(z0), "gamma": _pairs([0j, gamma1])}

    residual = _region_gap(general, closed)
    case.update(form=form, z=_pair(z), general=general.kind, closed=closed.kind)
    return 1, residual, residual <= CLOSED_FORM_TOL, case


TRIALS: dict[SuiteName, Callable[[np.random.Generator, Tolerances], tuple[int, float, bool, dict]]] = {
    "identities": identities_trial,
    "membership": membership_suite_trial,
    "extremality": extremality_trial,
    "interpolation": interpolation_trial,
    "confluence": confluence_trial,
    "derivatives": derivatives_trial,
    "solvability": solvability_trial,
    "closed_forms": closed_forms_trial,
}


def run_trial(suite: SuiteName, seed: int, trial: int, tolerances: Optional[Tolerances] = None) -> TrialOutcome:
    tol = tolerances or get_tolerances()
    rng = np.random.default_rng([seed, SUITES.index(suite), trial])
    try:
        checks, residual, passed, case = TRIALS[suite](rng, tol)
    except SchurRegionError as e:
        logger.warning(f"{suite} の試行 {trial} が例外で失敗しました: {e}")
        checks, residual, passed, case = 1, float("inf"), False, {"error": f"{type(e).__name__}: {e}"}
    case = {"seed": seed, "suite": suite, "trial": trial, **case}
    return TrialOutcome(suite=suite, trial=trial, checks=checks, residual=residual, passed=passed, case=case)


def run_batch(
    suite: SuiteName, seed: int, start: int, stop: int, tolerances: Optional[Tolerances] = None
) -> SuiteReport:
    report = SuiteReport(suite=suite)
    for trial in range(start, stop):
        report = report.combine(SuiteReport.from_outcome(run_trial(suite, seed, trial, tolerances)))
    return report
