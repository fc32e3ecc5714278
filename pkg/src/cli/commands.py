"""サブコマンドの本体。どれも終了コードを返す"""
from argparse import Namespace
from enum import IntEnum

from ..config.config import SCHUR_REGIONS_THREADS
from ..config.tolerance import Tolerances
from ..graph.builder import create_graph
from ..oracle.experiments import boundary_epsilons, epsilon_grid
from ..oracle.suites import SUITES
from ..schur.differences import build_table, confluent_table
from ..schur.variability import (
    VariabilityRegion,
    data_solvability,
    extremal_eval,
    multipoint_region,
    parameter_region,
    schur_solvability,
)
from ..utils.concurrency import gather_in_threads
from ..utils.logger import get_logger
from .plot import QueryFigure, render_svg
from .problem import ProblemFile, load_problem, resolve_tolerances
from .serialize import (
    dumps,
    pair,
    region_to_json,
    render_table_text,
    solvability_to_json,
    suite_report_to_json,
    table_to_json,
    write_output,
)

logger = get_logger(__name__)

VERIFY_BATCH_SIZE = 25


class ExitCode(IntEnum):
    OK = 0
    MALFORMED = 1
    INFEASIBLE = 2
    VIOLATION = 3


def _load(args: Namespace) -> tuple[ProblemFile, Tolerances]:
    problem = load_problem(args.input)
    tolerances = resolve_tolerances(problem, args.tol_boundary, args.tol_sep)
    problem.check(tolerances)
    return problem, tolerances


def _region(problem: ProblemFile, z: complex, tolerances: Tolerances) -> VariabilityRegion:
    if problem.mode == "multipoint":
        return multipoint_region(problem.to_data(), z, tolerances)
    return parameter_region(problem.to_parameter(), z, tolerances)


async def cmd_region(args: Namespace) -> ExitCode:
    problem, tolerances = _load(args)
    regions = await gather_in_threads(lambda z: _region(problem, z, tolerances), problem.queries)

    results = [{"z": pair(z), "region": region_to_json(r)} for z, r in zip(problem.queries, regions)]
    write_output(dumps({"mode": problem.mode, "results": results}, args.pretty), args.output)

    infeasible = any(r.kind == "empty" for r in regions)
    logger.info(f"{len(regions)} 点の領域を計算しました" + (" (実行不能)" if infeasible else ""))
    return ExitCode.INFEASIBLE if infeasible else ExitCode.OK


async def cmd_table(args: Namespace) -> ExitCode:
    problem, tolerances = _load(args)
    if problem.mode == "multipoint":
        table = build_table(problem.to_data(), tolerances)
    else:
        table = confluent_table(problem.to_parameter(), tolerances)

    text = render_table_text(table) if args.pretty else dumps(table_to_json(table))
    write_output(text, args.output)
    return ExitCode.OK if table.feasible else ExitCode.INFEASIBLE


async def cmd_solvability(args: Namespace) -> ExitCode:
    problem, tolerances = _load(args)
    if problem.mode == "multipoint":
        result = data_solvability(problem.to_data(), tolerances)
    else:
        result = schur_solvability(problem.to_parameter(), tolerances)

    write_output(dumps(solvability_to_json(result), args.pretty), args.output)
    return ExitCode.INFEASIBLE if result.kind == "no_solution" else ExitCode.OK


def _figure(problem: ProblemFile, z: complex, samples: int, grid: int, tolerances: Tolerances) -> QueryFigure:
    region = _region(problem, z, tolerances)
    if region.kind != "disk":
        return QueryFigure(z=z, region=region)
    source = problem.to_problem()
    return QueryFigure(
        z=z,
        region=region,
        boundary_samples=[extremal_eval(source, e, z, tolerances) for e in boundary_epsilons(samples)],
        grid_samples=[extremal_eval(source, e, z, tolerances) for e in epsilon_grid(grid)],
    )


async def cmd_plot(args: Namespace) -> ExitCode:
    problem, tolerances = _load(args)
    samples = args.epsilon_samples if args.epsilon_samples is not None else (problem.epsilon_samples or 0)
    figures = await gather_in_threads(
        lambda z: _figure(problem, z, samples, args.grid, tolerances), problem.queries
    )

    write_output(render_svg(problem.marked_points, figures), args.output)
    infeasible = any(f.region.kind == "empty" for f in figures)
    return ExitCode.INFEASIBLE if infeasible else ExitCode.OK


async def cmd_verify(args: Namespace) -> ExitCode:
    tolerances = resolve_tolerances(None, args.tol_boundary, args.tol_sep)
    suites = list(SUITES) if args.suite == "all" else [args.suite]

    app = create_graph()
    initial_state = {
        "seed": args.seed,
        "trials": args.trials,
        "suites": suites,
        "batch_size": VERIFY_BATCH_SIZE,
        "tolerances": tolerances.model_dump(),
        "reports": {},
        "passed": None,
    }
    result = await app.ainvoke(initial_state, config={"max_concurrency": SCHUR_REGIONS_THREADS})

    reports = result["reports"]
    report = {
        "seed": args.seed,
        "trials": args.trials,
        "passed": bool(result["passed"]),
        "suites": {suite: suite_report_to_json(reports[suite]) for suite in suites if suite in reports},
    }
    write_output(dumps(report, args.pretty), args.output)
    return ExitCode.OK if result["passed"] else ExitCode.VIOLATION
