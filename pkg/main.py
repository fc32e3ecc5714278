import asyncio
import sys

from src.cli.app import run


async def main() -> int:
    try:
        return await run()
    except Exception as e:
        print(f"\n実行中にエラーが発生しました: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
