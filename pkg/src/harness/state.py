from typing import TypedDict


class BatchState(TypedDict):
    suite: str
    seed: int
    start: int
    stop: int
    tolerances: dict
