"""JSON とテキストへの書き出し

複素数は [re, im] の組で出す。浮動小数点数は Python の最短表現 (repr) のままで、
読み戻すと同じ double になる。
"""
import json
import math
import os
import sys
import tempfile
from typing import Any, Optional

from ..oracle.suites import SuiteReport
from ..schur.differences import DifferenceTable, EntryStatus, TableEntry
from ..schur.variability import SolvabilityClass, VariabilityRegion


def pair(z: complex) -> list[float]:
    z = complex(z)
    # -0.0 は 0.0 にそろえる
    return [z.real + 0.0, z.imag + 0.0]


def from_pair(value: list[float]) -> complex:
    return complex(value[0], value[1])


def region_to_json(region: VariabilityRegion) -> dict:
    if region.kind == "empty":
        return {"type": "empty"}
    return {"type": region.kind, "center": pair(region.center), "radius": float(region.radius)}


def region_from_json(value: dict) -> VariabilityRegion:
    if value["type"] == "empty":
        return VariabilityRegion.empty("")
    if value["type"] == "point":
        return VariabilityRegion.single(from_pair(value["center"]), "")
    return VariabilityRegion.from_disk(from_pair(value["center"]), value["radius"], "")


def _entry_to_json(entry: TableEntry) -> dict:
    result = {
        "j": entry.row + 1,
        "k": entry.column,
        "value": pair(entry.value.value) if entry.value.is_finite else None,
        "status": entry.status.value,
    }
    if entry.exception:
        result["note"] = "boundary-exception"
    return result


def table_to_json(table: DifferenceTable) -> dict:
    entries = [_entry_to_json(e) for column in table.columns for e in column]
    diagonal = []
    for k in range(table.n + 1):
        entry = table.entry(k, k)
        diagonal.append(pair(entry.value.value) if entry is not None and entry.value.is_finite else None)
    return {
        "n": table.n,
        "confluent": table.confluent,
        "feasible": table.feasible,
        "entries": entries,
        "diagonal": diagonal,
    }


def _cell(entry: Optional[TableEntry]) -> str:
    if entry is None or entry.status is EntryStatus.INFINITE:
        return "∞"
    z = entry.value.value
    text = f"{z.real:.6f}{z.imag:+.6f}i"
    return text + " *" if entry.exception else text


def render_table_text(table: DifferenceTable, width: int = 26) -> str:
    """表を階段状に並べる。Δ_j^k (0 始まりの行 i = j-1) は 2i - k 行目の k 列目"""
    n = table.n
    lines = [[" " * width for _ in range(n + 1)] for _ in range(2 * n + 1)]
    for i in range(n + 1):
        for k in range(i + 1):
            if k < len(table.columns):
                entry = table.entry(i, k)
            else:
                entry = None
            label = f"Δ_{i + 1}^{k} = {_cell(entry)}"
            lines[2 * i - k][k] = label.ljust(width)

    header = ["feasible" if table.feasible else "infeasible"]
    body = ["".join(cells).rstrip() for cells in lines]
    return "\n".join(header + body) + "\n"


def solvability_to_json(result: SolvabilityClass) -> dict:
    if result.kind == "unique_blaschke":
        return {"class": result.kind, "degree": result.degree}
    return {"class": result.kind}


def _finite(value: Any) -> Any:
    """JSON に出せない inf / nan を null にする"""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_finite(v) for v in value]
    return value


def suite_report_to_json(report: SuiteReport) -> dict:
    result = {
        "trials": report.trials,
        "checks": report.checks,
        "failures": report.failures,
        "max_residual": report.max_residual,
        "passed": report.passed,
    }
    if report.failure is not None:
        result["failing_case"] = {"residual": report.failure.residual, **report.failure.case}
    return _finite(result)


def dumps(value: Any, pretty: bool = False) -> str:
    return json.dumps(value, indent=2 if pretty else None, ensure_ascii=False, allow_nan=False) + "\n"


def write_output(text: str, path: Optional[str]) -> None:
    """一時ファイルに書いてから置き換える。path が None なら標準出力"""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".schur-regions-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
