"""Schur アルゴリズムの有理関数列 A_k, Ã_k, B_k, B̃_k

各段の値は 2x2 行列の漸化式

    [A_{k+1}  Ã_{k+1}]   [t_k          conj(d_{k+1})] [A_k  Ã_k]
    [B_{k+1}  B̃_{k+1}] = [d_{k+1} t_k  1            ] [B_k  B̃_k]

で問い合わせ点ごとに数値的に求める。t_k = T_{-z_{k+1}}(z)、d_k は表の対角成分
(合流の場合は γ_k)、初期値は A_0 = conj(d_0), Ã_0 = 1, B_0 = 1, B̃_0 = d_0。
"""
from typing import Literal, Optional

import numpy as np
from pydantic import model_validator

from ..config.tolerance import Tolerances, get_tolerances
from ..utils.logger import get_logger
from .differences import (
    DifferenceTable,
    EntryStatus,
    InterpolationData,
    SchurParameter,
    build_table,
    check_parameter,
    table_diagonal,
)
from .errors import ChainConsistencyError, DomainError, InfeasibleProblemError, PoleError
from .types import ComplexValue, DomainModel

logger = get_logger(__name__)


class ChainConfig(DomainModel):
    mode: Literal["multipoint", "confluent"]
    nodes: list[ComplexValue]
    diagonal: list[ComplexValue]

    @model_validator(mode="after")
    def _check(self) -> "ChainConfig":
        if not self.nodes or len(self.nodes) != len(self.diagonal):
            raise ValueError("nodes と diagonal は同じ長さ (1 以上) が必要です")
        if any(abs(z) >= 1.0 for z in self.nodes):
            raise ValueError("節点は開単位円板内に必要です")
        if any(abs(d) >= 1.0 for d in self.diagonal[:-1]):
            raise ValueError("最後以外の対角成分は開単位円板の内部に必要です")
        if self.mode == "confluent" and len(set(self.nodes)) != 1:
            raise ValueError("合流モードでは節点はすべて z0 です")
        return self

    @property
    def n(self) -> int:
        return len(self.nodes) - 1

    @classmethod
    def from_table(cls, table: DifferenceTable, depth: Optional[int] = None) -> "ChainConfig":
        """表の対角成分から鎖を作る。depth を与えると先頭 depth 段だけを使う"""
        diagonal = table_diagonal(table)
        if depth is not None:
            diagonal = diagonal[:depth]
        if any(e.status is EntryStatus.INFINITE for e in diagonal):
            raise InfeasibleProblemError("表に ∞ の成分があり鎖を作れません")
        if any(e.status is EntryStatus.BOUNDARY for e in diagonal[:-1]):
            raise InfeasibleProblemError("最後以外の対角成分が単位円上にあります")
        mode = "confluent" if table.confluent else "multipoint"
        return cls(
            mode=mode,
            nodes=table.nodes[: len(diagonal)],
            diagonal=[e.value.value for e in diagonal],
        )

    @classmethod
    def from_data(cls, data: InterpolationData, tolerances: Optional[Tolerances] = None) -> "ChainConfig":
        return cls.from_table(build_table(data, tolerances))

    @classmethod
    def from_parameter(
        cls,
        param: SchurParameter,
        depth: Optional[int] = None,
        tolerances: Optional[Tolerances] = None,
    ) -> "ChainConfig":
        tol = tolerances or get_tolerances()
        check_parameter(param, tol)
        gamma = param.gamma if depth is None else param.gamma[:depth]
        if any(abs(g) >= 1.0 - tol.boundary for g in gamma[:-1]):
            raise InfeasibleProblemError("最後以外の γ が単位円上にあります")
        return cls(mode="confluent", nodes=[param.z0] * len(gamma), diagonal=list(gamma))


class ChainEvaluation(DomainModel):
    """問い合わせ点 z での各段 k = 0..n の値"""

    z: complex
    a: np.ndarray
    a_tilde: np.ndarray
    b: np.ndarray
    b_tilde: np.ndarray
    # t[k] = T_{-z_{k+1}}(z)
    t: np.ndarray
    # prefix[k] = t[0] ... t[k-1] (prefix[0] = 1、長さ n+2)
    prefix: np.ndarray
    # weights[k] = prod_{l<=k} (1 - |d_l|^2)
    weights: np.ndarray
    diagonal: np.ndarray

    @property
    def n(self) -> int:
        return len(self.a) - 1


def _transfer_factor(node: complex, z: complex, pole: Optional[float]) -> complex:
    """T_{-node}(z) を z の範囲を問わずに評価する"""
    denominator = 1 - node.conjugate() * z
    if pole is not None and abs(denominator) < pole:
        raise PoleError(f"T_{{-{node}}} を極の近くで評価しました: z={z}")
    return (z - node) / denominator


def _run_chain(config: ChainConfig, z: complex, pole: Optional[float] = None) -> ChainEvaluation:
    """漸化式をそのまま回す。円板の外 (1/conj(z) など) でも代数的に評価する"""
    nodes = np.asarray(config.nodes, dtype=complex)
    diagonal = np.asarray(config.diagonal, dtype=complex)
    size = len(nodes)

    t = np.array([_transfer_factor(complex(node), z, pole) for node in nodes], dtype=complex)
    a = np.empty(size, dtype=complex)
    a_tilde = np.empty(size, dtype=complex)
    b = np.empty(size, dtype=complex)
    b_tilde = np.empty(size, dtype=complex)
    a[0], a_tilde[0], b[0], b_tilde[0] = np.conj(diagonal[0]), 1.0, 1.0, diagonal[0]
    for k in range(size - 1):
        d = diagonal[k + 1]
        a[k + 1] = t[k] * a[k] + np.conj(d) * b[k]
        a_tilde[k + 1] = t[k] * a_tilde[k] + np.conj(d) * b_tilde[k]
        b[k + 1] = d * t[k] * a[k] + b[k]
        b_tilde[k + 1] = d * t[k] * a_tilde[k] + b_tilde[k]

    return ChainEvaluation(
        z=z,
        a=a,
        a_tilde=a_tilde,
        b=b,
        b_tilde=b_tilde,
        t=t,
        prefix=np.concatenate(([1.0 + 0j], np.cumprod(t))),
        weights=np.cumprod(1.0 - np.abs(diagonal) ** 2),
        diagonal=diagonal,
    )


def evaluate_chain(config: ChainConfig, z: complex, tolerances: Optional[Tolerances] = None) -> ChainEvaluation:
    tol = tolerances or get_tolerances()
    z = complex(z)
    if abs(z) > 1.0 + tol.boundary:
        raise DomainError(f"z={z} が閉単位円板の外にあります")
    ev = _run_chain(config, z)
    if np.any(ev.b == 0):
        raise ChainConsistencyError(f"B_k(z) が 0 になりました: z={z}")
    return ev


def chain_matrix(config: ChainConfig, z: complex) -> np.ndarray:
    """因子行列の積 F_{n-1} ... F_0 M_0 を一度に計算する (段ごとの値は持たない)"""
    z = complex(z)
    diagonal = [complex(d) for d in config.diagonal]
    matrix = np.array([[diagonal[0].conjugate(), 1.0], [1.0, diagonal[0]]], dtype=complex)
    for k in range(config.n):
        t = _transfer_factor(complex(config.nodes[k]), z, None)
        d = diagonal[k + 1]
        factor = np.array([[t, d.conjugate()], [d * t, 1.0]], dtype=complex)
        matrix = factor @ matrix
    return matrix


def check_determinant_identity(ev: ChainEvaluation) -> float:
    """Ã_k B_k - A_k B̃_k = (t_0 ... t_{k-1}) prod_{l<=k}(1-|d_l|^2) の最大相対残差"""
    lhs = ev.a_tilde * ev.b - ev.a * ev.b_tilde
    rhs = ev.prefix[:-1] * ev.weights
    scale = 1.0 + np.abs(ev.a_tilde * ev.b) + np.abs(ev.a * ev.b_tilde)
    return float(np.max(np.abs(lhs - rhs) / scale))


def check_neighbor_identities(ev: ChainEvaluation) -> float:
    """隣り合う段の 2 つの恒等式

    Ã_k A_{k+1} - A_k Ã_{k+1} = conj(d_{k+1}) P_k W_k
    B_k B̃_{k+1} - B̃_k B_{k+1} = d_{k+1} P_{k+1} W_k

    (P_k は t の先頭 k 個の積、W_k は weights[k])
    """
    if ev.n < 1:
        return 0.0
    k = np.arange(ev.n)
    d_next = ev.diagonal[k + 1]

    lhs_a = ev.a_tilde[k] * ev.a[k + 1] - ev.a[k] * ev.a_tilde[k + 1]
    rhs_a = np.conj(d_next) * ev.prefix[k] * ev.weights[k]
    scale_a = 1.0 + np.abs(ev.a_tilde[k] * ev.a[k + 1]) + np.abs(ev.a[k] * ev.a_tilde[k + 1])

    lhs_b = ev.b[k] * ev.b_tilde[k + 1] - ev.b_tilde[k] * ev.b[k + 1]
    rhs_b = d_next * ev.prefix[k + 1] * ev.weights[k]
    scale_b = 1.0 + np.abs(ev.b[k] * ev.b_tilde[k + 1]) + np.abs(ev.b_tilde[k] * ev.b[k + 1])

    return float(max(np.max(np.abs(lhs_a - rhs_a) / scale_a), np.max(np.abs(lhs_b - rhs_b) / scale_b)))


def check_reflection_identity(
    config: ChainConfig, z: complex, tolerances: Optional[Tolerances] = None
) -> float:
    """z と 1/conj(z) での値を結ぶ 4 つの鏡映公式の最大相対残差

    Ã_k(z) = conj(B_k(1/conj z)) P_k(z),  B̃_k(z) = conj(A_k(1/conj z)) P_k(z),
    A_k(z) = conj(B̃_k(1/conj z)) P_k(z), B_k(z) = conj(Ã_k(1/conj z)) P_k(z)
    """
    tol = tolerances or get_tolerances()
    z = complex(z)
    if abs(z) < tol.pole:
        raise PoleError("z = 0 では 1/conj(z) を評価できません")
    inside = _run_chain(config, z, tol.pole)
    outside = _run_chain(config, 1.0 / z.conjugate(), tol.pole)
    p = inside.prefix[:-1]

    pairs = (
        (inside.a_tilde, outside.b),
        (inside.b_tilde, outside.a),
        (inside.a, outside.b_tilde),
        (inside.b, outside.a_tilde),
    )
    residual = 0.0
    for lhs, reflected in pairs:
        rhs = np.conj(reflected) * p
        scale = 1.0 + np.abs(lhs) + np.abs(reflected) * np.abs(p)
        residual = max(residual, float(np.max(np.abs(lhs - rhs) / scale)))
    return residual


def check_coefficient_gap(ev: ChainEvaluation, tolerances: Optional[Tolerances] = None) -> float:
    """min_k (|B_k|^2 - |A_k|^2 - W_k)。|B̃_k| < |B_k| も確かめる"""
    tol = tolerances or get_tolerances()
    modulus_b = np.abs(ev.b)
    slack = modulus_b ** 2 - np.abs(ev.a) ** 2 - ev.weights
    strict = ev.weights > tol.conditioning
    if np.any(np.abs(ev.b_tilde)[strict] >= modulus_b[strict]):
        raise ChainConsistencyError(f"|B̃_k(z)| < |B_k(z)| が成り立ちません: z={ev.z}")
    return float(np.min(slack))
