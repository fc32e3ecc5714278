import asyncio

from langgraph.graph import END
from langgraph.types import Command, Send

from ..config.tolerance import Tolerances
from ..oracle.suites import SuiteReport, run_batch
from ..state.state import VerifyState
from ..utils.logger import get_logger
from .state import BatchState

logger = get_logger(__name__)


async def plan_batches(state: VerifyState) -> Command:
    """各スイートの試行を batch_size ごとに分けて並列に流すノード"""

    trials = state.get("trials", 0)
    suites = state.get("suites", [])
    batch_size = max(1, state.get("batch_size", 1))

    try:
        empty = {suite: SuiteReport(suite=suite) for suite in suites}
        sends = [
            Send(
                "run_batch",
                {
                    "suite": suite,
                    "seed": state["seed"],
                    "start": start,
                    "stop": min(start + batch_size, trials),
                    "tolerances": state.get("tolerances", {}),
                },
            )
            for suite in suites
            for start in range(0, trials, batch_size)
        ]

        if not sends:
            logger.info("実行する試行がありません")
            return Command(update={"reports": empty}, goto="summarize")

        logger.info(f"{len(suites)} スイート x {trials} 試行を {len(sends)} バッチに分けました")
        return Command(update={"reports": empty}, goto=sends)
    except Exception as e:
        logger.error(f"plan_batchesでエラーが発生しました: {str(e)}", exc_info=True)
        raise


async def run_batch_node(arg: BatchState) -> dict:
    """1 バッチ分の試行をワーカースレッドで実行するノード"""

    suite = arg["suite"]
    try:
        tolerances = Tolerances(**arg.get("tolerances", {}))
        report = await asyncio.to_thread(run_batch, suite, arg["seed"], arg["start"], arg["stop"], tolerances)
        if not report.passed:
            logger.warning(f"{suite} の試行 {arg['start']}..{arg['stop'] - 1} で {report.failures} 件失敗しました")
        return {"reports": {suite: report}}
    except Exception as e:
        logger.error(f"run_batchでエラーが発生しました: {str(e)}", exc_info=True)
        raise


async def summarize(state: VerifyState) -> Command:
    """全スイートの結果から合否を決める"""

    reports = state.get("reports", {})
    passed = all(report.passed for report in reports.values())
    for suite, report in sorted(reports.items()):
        logger.info(
            f"{suite}: {report.trials} 試行, {report.checks} 検査, 失敗 {report.failures}, "
            f"最大残差 {report.max_residual:.3e}"
        )

    return Command(update={"passed": passed}, goto=END)
