import asyncio
from collections.abc import Callable, Iterable
from typing import Optional, TypeVar

from ..config.config import SCHUR_REGIONS_THREADS

T = TypeVar("T")
R = TypeVar("R")


async def gather_in_threads(func: Callable[[T], R], items: Iterable[T], limit: Optional[int] = None) -> list[R]:
    """func を items の各要素にワーカースレッドで適用する。結果は入力順"""
    semaphore = asyncio.Semaphore(limit or SCHUR_REGIONS_THREADS)

    async def run(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(func, item)

    return await asyncio.gather(*(run(item) for item in items))
