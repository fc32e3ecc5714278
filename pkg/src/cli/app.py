import argparse
import asyncio
import json
import sys
from typing import Optional

from pydantic import ValidationError

from ..oracle.suites import SUITES
from ..schur.errors import SchurRegionError
from ..utils.logger import get_logger
from .commands import ExitCode, cmd_plot, cmd_region, cmd_solvability, cmd_table, cmd_verify

logger = get_logger(__name__)

class ArgumentParser(argparse.ArgumentParser):
    """引数の誤りも入力不正 (終了コード 1) として扱う"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.MALFORMED, f"error: {message}\n")


COMMANDS = {
    "region": cmd_region,
    "table": cmd_table,
    "solvability": cmd_solvability,
    "plot": cmd_plot,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--input", default=None, help="問題ファイル (省略時は標準入力)")
    common.add_argument("--output", default=None, help="出力先 (省略時は標準出力)")
    common.add_argument("--tol-boundary", type=float, default=None, help="単位円上とみなす許容誤差")
    common.add_argument("--tol-sep", type=float, default=None, help="節点間の最小擬双曲距離")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true", help="JSON を整形する (table では階段状のテキスト)")

    parser = ArgumentParser(prog="schur-regions", description="Schur 族の関数値の変動領域を計算する")
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("region", parents=[common], help="各問い合わせ点での変動領域")
    subparsers.add_parser("table", parents=[common], help="双曲差分商の表")
    subparsers.add_parser("solvability", parents=[common], help="Schur 補間問題の解の個数")

    plot = subparsers.add_parser("plot", parents=[common], help="変動領域の SVG")
    plot.add_argument("--epsilon-samples", type=int, default=None, help="|ε|=1 の標本数")
    plot.add_argument("--grid", type=int, default=0, help="ε の M×M 格子")

    verify = subparsers.add_parser("verify", parents=[common], help="性質テストを乱数で実行する")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    return parser


async def run(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("epsilon_samples", "grid", "trials"):
        if (getattr(args, name, None) or 0) < 0:
            print(f"error: --{name.replace('_', '-')} は 0 以上です", file=sys.stderr)
            return ExitCode.MALFORMED

    try:
        return int(await COMMANDS[args.command](args))
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(p) for p in error["loc"]) or "problem"
        print(f"error: {location}: {error['msg']}", file=sys.stderr)
    except json.JSONDecodeError as e:
        print(f"error: JSON を読めません: {e}", file=sys.stderr)
    except (OSError, SchurRegionError) as e:
        print(f"error: {e}", file=sys.stderr)
    except Exception as e:
        logger.error(f"{args.command}でエラーが発生しました: {str(e)}", exc_info=True)
        raise
    return ExitCode.MALFORMED


def main() -> None:
    sys.exit(asyncio.run(run()))
