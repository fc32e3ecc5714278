"""乱数による問題と正解関数の生成

同じ seed からは常に同じ問題が得られる。乱数は numpy の Generator だけを使う。
"""
from typing import Literal, Optional, Union

import numpy as np
from pydantic import Field

from ..schur.chain import ChainConfig
from ..schur.differences import InterpolationData
from ..schur.errors import DomainError
from ..schur.functions import Constant, FiniteBlaschke, NestedChain, ScaledBlaschke, SchurFunction
from ..schur.hyperbolic import pseudo_hyperbolic_distance
from ..schur.types import DomainModel

MAX_BLASCHKE_DEGREE = 32
MAX_RESAMPLE = 100
MIN_NODE_SEPARATION = 0.1

Seed = Union[int, np.random.Generator]


class RandomProblemSpec(DomainModel):
    seed: int
    n: int = Field(ge=0)
    r_max: float = Field(default=0.9, gt=0, lt=1)
    family: Literal["blaschke", "scaled_blaschke", "constant"] = "blaschke"
    # None なら n + 1
    degree: Optional[int] = Field(default=None, ge=0, le=MAX_BLASCHKE_DEGREE)
    scale: float = Field(default=0.8, gt=0, le=1)


class SampledProblem(DomainModel):
    data: InterpolationData
    truth: SchurFunction


def _rng(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_disk_point(rng: np.random.Generator, r_max: float = 0.9) -> complex:
    """|z| <= r_max の円板上の一様分布"""
    radius = r_max * np.sqrt(rng.uniform())
    return complex(radius * np.exp(2j * np.pi * rng.uniform()))


def random_unimodular(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def random_blaschke(degree: int, seed: Seed, r_max: float = 0.9) -> FiniteBlaschke:
    if not 0 <= degree <= MAX_BLASCHKE_DEGREE:
        raise DomainError(f"次数は 0 以上 {MAX_BLASCHKE_DEGREE} 以下です: {degree}")
    rng = _rng(seed)
    zeros = [random_disk_point(rng, r_max) for _ in range(degree)]
    return FiniteBlaschke(zeros, random_unimodular(rng))


def sample_nodes(
    rng: np.random.Generator,
    count: int,
    r_max: float = 0.9,
    min_separation: float = MIN_NODE_SEPARATION,
) -> list[complex]:
    """擬双曲距離で min_separation 以上離れた節点"""
    nodes: list[complex] = []
    for _ in range(count):
        for _ in range(MAX_RESAMPLE):
            candidate = random_disk_point(rng, r_max)
            if all(pseudo_hyperbolic_distance(candidate, z) >= min_separation for z in nodes):
                nodes.append(candidate)
                break
        else:
            raise DomainError(f"{count} 個の離れた節点を取れませんでした")
    return nodes


def sample_ground_truth(spec: RandomProblemSpec, rng: np.random.Generator) -> SchurFunction:
    degree = spec.n + 1 if spec.degree is None else spec.degree
    if spec.family == "constant":
        return Constant(random_disk_point(rng, spec.r_max))
    blaschke = random_blaschke(degree, rng, spec.r_max)
    if spec.family == "scaled_blaschke":
        return ScaledBlaschke(spec.scale, blaschke)
    return blaschke


def sample_problem(spec: RandomProblemSpec, rng: Optional[np.random.Generator] = None) -> SampledProblem:
    rng = rng or np.random.default_rng(spec.seed)
    truth = sample_ground_truth(spec, rng)
    nodes = sample_nodes(rng, spec.n + 1, spec.r_max)
    return SampledProblem(data=InterpolationData(nodes=nodes, values=[truth(z) for z in nodes]), truth=truth)


def random_parameter(rng: np.random.Generator, n: int, bound: float = 0.95) -> list[complex]:
    return [random_disk_point(rng, bound) for _ in range(n + 1)]


def random_chain_config(rng: np.random.Generator, n: int, bound: float = 0.95) -> ChainConfig:
    """多点と合流を半々で選ぶ"""
    diagonal = random_parameter(rng, n, bound)
    if rng.uniform() < 0.5:
        return ChainConfig(mode="multipoint", nodes=sample_nodes(rng, n + 1), diagonal=diagonal)
    z0 = random_disk_point(rng)
    return ChainConfig(mode="confluent", nodes=[z0] * (n + 1), diagonal=diagonal)


def random_extremal(
    rng: np.random.Generator, z0: complex, n: int, bound: float = 0.7, epsilon_bound: float = 0.9
) -> tuple[list[complex], NestedChain]:
    """Schur パラメータ γ と、z0 で γ を持つ f_{γ,ε}"""
    gamma = random_parameter(rng, n, bound)
    epsilon = random_disk_point(rng, epsilon_bound)
    return gamma, NestedChain.extremal([z0] * (n + 1), gamma, epsilon)
