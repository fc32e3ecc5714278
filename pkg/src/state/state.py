from typing import Annotated, Optional, TypedDict

from ..oracle.suites import SuiteReport


def merge_reports(
    existing: dict[str, SuiteReport] | None, new: dict[str, SuiteReport] | None
) -> dict[str, SuiteReport]:
    """スイートごとのレポートを合算するリデューサー (順序に依存しない)"""
    if not new:
        return existing or {}

    merged = dict(existing or {})
    for suite, report in new.items():
        merged[suite] = merged[suite].combine(report) if suite in merged else report

    return merged


class VerifyState(TypedDict):
    seed: int
    trials: int
    suites: list[str]
    batch_size: int
    tolerances: dict
    reports: Annotated[dict[str, SuiteReport], merge_reports]
    passed: Optional[bool]
