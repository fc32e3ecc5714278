"""問題ファイル (JSON) の読み込み"""
import json
import sys
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..config.tolerance import Tolerances, get_tolerances
from ..schur.differences import InterpolationData, SchurParameter, check_data, check_parameter
from ..schur.types import ComplexValue


def _validate(model: type[BaseModel], **fields) -> None:
    try:
        model(**fields)
    except ValidationError as e:
        raise ValueError(e.errors()[0]["msg"]) from e


class ToleranceOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    boundary: Optional[float] = Field(default=None, gt=0)
    separation: Optional[float] = Field(default=None, gt=0)


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: Literal["multipoint", "hyperbolic"]
    nodes: Optional[list[ComplexValue]] = None
    values: Optional[list[ComplexValue]] = None
    z0: Optional[ComplexValue] = None
    gamma: Optional[list[ComplexValue]] = None
    queries: list[ComplexValue] = Field(default_factory=list)
    epsilon_samples: Optional[int] = Field(default=None, ge=0)
    tolerances: Optional[ToleranceOverrides] = None

    @model_validator(mode="after")
    def _check_mode(self) -> "ProblemFile":
        if self.mode == "multipoint":
            if self.nodes is None or self.values is None:
                raise ValueError("multipoint には nodes と values が必要です")
            if self.z0 is not None or self.gamma is not None:
                raise ValueError("multipoint では z0 と gamma は指定できません")
            _validate(InterpolationData, nodes=self.nodes, values=self.values)
        else:
            if self.z0 is None or self.gamma is None:
                raise ValueError("hyperbolic には z0 と gamma が必要です")
            if self.nodes is not None or self.values is not None:
                raise ValueError("hyperbolic では nodes と values は指定できません")
            _validate(SchurParameter, z0=self.z0, gamma=self.gamma)
        for z in self.queries:
            if abs(z) >= 1.0:
                raise ValueError(f"問い合わせ点 {z} が開単位円板の外にあります")
        return self

    def to_data(self) -> InterpolationData:
        return InterpolationData(nodes=self.nodes, values=self.values)

    def to_parameter(self) -> SchurParameter:
        return SchurParameter(z0=self.z0, gamma=self.gamma)

    def to_problem(self) -> InterpolationData | SchurParameter:
        return self.to_data() if self.mode == "multipoint" else self.to_parameter()

    def check(self, tolerances: Tolerances) -> None:
        """許容誤差に依存する前提を解決済みの許容誤差で確かめる"""
        if self.mode == "multipoint":
            check_data(self.to_data(), tolerances)
        else:
            check_parameter(self.to_parameter(), tolerances)

    @property
    def marked_points(self) -> list[complex]:
        return list(self.nodes) if self.mode == "multipoint" else [self.z0]


def load_problem(path: Optional[str]) -> ProblemFile:
    """path が None か "-" なら標準入力から読む"""
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return ProblemFile.model_validate(json.loads(text))


def resolve_tolerances(
    problem: Optional[ProblemFile], boundary: Optional[float], separation: Optional[float]
) -> Tolerances:
    """フラグ > 問題ファイル > 環境変数 の順に優先する"""
    overrides = problem.tolerances if problem is not None and problem.tolerances else ToleranceOverrides()
    return get_tolerances(
        boundary=boundary if boundary is not None else overrides.boundary,
        separation=separation if separation is not None else overrides.separation,
    )
