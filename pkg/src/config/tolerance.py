from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import SCHUR_REGIONS_EPS_BOUNDARY, SCHUR_REGIONS_EPS_SEP


class Tolerances(BaseModel):
    """数値判定に使う許容誤差の一式"""

    model_config = ConfigDict(frozen=True)

    boundary: float = Field(default=1e-9, gt=0, description="|w| >= 1 - boundary を単位円上とみなす")
    separation: float = Field(default=1e-8, gt=0, description="節点間の最小擬双曲距離")
    degeneracy: float = Field(default=1e-12, gt=0, description="|1 - conj(w) z| がこれ未満なら [z,w] = ∞")
    zero: float = Field(default=1e-12, gt=0, description="末尾のゼロ判定")
    conditioning: float = Field(default=1e-13, gt=0, description="領域の分母の下限")
    pole: float = Field(default=1e-13, gt=0, description="1/conj(z) での極の判定")
    consistency: float = Field(default=1e-11, gt=0, description="入れ子形と有理形の一致判定")
    derivative_step: float = Field(default=0.2, gt=0, lt=1, description="微分推定の基準半径 (1-|z0| に対する比)")
    derivative_convergence: float = Field(default=1e-5, gt=0)
    interpolation_check: float = Field(default=1e-8, gt=0)
    # 微分の推定は 2 階以上で 1e-8 までは届かない
    parameter_check: float = Field(default=1e-6, gt=0, description="H^j f(z0) と γ_j (j >= 1) の一致判定")
    round_trip: float = Field(default=1e-5, gt=0)


def get_tolerances(boundary: Optional[float] = None, separation: Optional[float] = None) -> Tolerances:
    return Tolerances(
        boundary=SCHUR_REGIONS_EPS_BOUNDARY if boundary is None else boundary,
        separation=SCHUR_REGIONS_EPS_SEP if separation is None else separation,
    )
