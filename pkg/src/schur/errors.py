class SchurRegionError(Exception):
    """このパッケージが送出する例外の基底クラス"""


class DomainError(SchurRegionError, ValueError):
    """引数が定義域 (単位円板など) の外にある"""


class DegenerateError(SchurRegionError):
    """公式が退化して値が定まらない"""


class ConditioningError(SchurRegionError):
    """分母が小さすぎて結果を信頼できない"""


class InfeasibleProblemError(SchurRegionError):
    """内部解を持つ問題を要求する操作に、そうでない問題が渡された"""


class BoundaryParameterError(InfeasibleProblemError):
    """Schur パラメータに単位円上の成分がある (schur_solvability を使う)"""


class DerivativeEstimationError(SchurRegionError):
    """双曲微分の推定が収束しない"""


class ChainConsistencyError(SchurRegionError):
    """入れ子の Möbius 形と有理形が一致しない"""


class PoleError(SchurRegionError):
    """有理関数を極の近くで評価しようとした"""


class VerificationError(SchurRegionError):
    """結果の検算に失敗した"""
