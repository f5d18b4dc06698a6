#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
弥散、本征态、认知可达性，以及观测量的相容/不相容/互补分类
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from .config import EIGEN_RELATIVE_TOL, resolve_threads
from .core import DynamicalMap, EpistemicState, Observable, SampleSpace
from .errors import EmptyState, SpaceMismatch, SpecValidationError
from .partition import (
    GENERATING,
    Binning,
    Partition,
    RefinementResult,
    common_coarsening,
    dynamic_refinement,
    induce,
    is_union_of_cells,
    threshold_partition,
)
from .systems import oscillator_map

logger = logging.getLogger(__name__)

COMPATIBLE = "compatible"
INCOMPATIBLE = "incompatible"
COMPLEMENTARY = "complementary"
EQUIVALENT_NON_GENERATING = "equivalent-non-generating"


@dataclass(frozen=True)
class ClassificationReport:
    """两个划分在给定动力学下的分类结论及全部证据"""

    verdict: str
    generating_F: str
    generating_G: str
    refinement_equal: bool
    coarsening_trivial: bool
    horizon: int
    refinement_F: Optional[RefinementResult] = field(default=None, repr=False)
    refinement_G: Optional[RefinementResult] = field(default=None, repr=False)
    # 分类补充了第四种结论 equivalent-non-generating
    extension: bool = False

    def to_dict(self) -> dict:
        payload = {
            "verdict": self.verdict,
            "generating_F": self.generating_F,
            "generating_G": self.generating_G,
            "refinement_equal": self.refinement_equal,
            "coarsening_trivial": self.coarsening_trivial,
            "horizon": self.horizon,
            "extension": self.extension,
        }
        if self.refinement_F is not None:
            payload["refinement_F"] = self.refinement_F.to_dict()
        if self.refinement_G is not None:
            payload["refinement_G"] = self.refinement_G.to_dict()
        return payload


def _state_values(obs: Observable, S: EpistemicState, space: SampleSpace):
    if S.is_empty():
        raise EmptyState("认知状态为空集")
    S.mask(space.size)
    values = obs(space.points[S.members])
    weights = space.weights[S.members]
    total = weights.sum()
    weights = weights / total if total > 0 else np.full(weights.size, 1.0 / weights.size)
    return values, weights


def dispersion(obs: Observable, S: EpistemicState, space: SampleSpace) -> float:
    """观测量在认知状态上的测度加权方差(权重在 S 内归一化)"""
    values, weights = _state_values(obs, S, space)
    if np.ptp(values) == 0.0:
        return 0.0
    mean = float(np.dot(weights, values))
    return max(0.0, float(np.dot(weights, (values - mean) ** 2)))


def default_tolerance(obs: Observable, space: SampleSpace) -> float:
    values = obs.values(space)
    return EIGEN_RELATIVE_TOL * float(np.ptp(values)) ** 2


def is_eigenstate(obs: Observable, S: EpistemicState, space: SampleSpace, tol: float = None) -> bool:
    """弥散不超过容差即为本征态；默认容差与观测量值域宽度的平方成正比"""
    if tol is None:
        tol = default_tolerance(obs, space)
    return dispersion(obs, S, space) <= tol


def accessible(S: EpistemicState, R: Union[RefinementResult, Partition]) -> bool:
    """S 是最细细化若干格子之并时认知可达"""
    refined = R.refined if isinstance(R, RefinementResult) else R
    return is_union_of_cells(refined, S)


def common_eigenstates(f: Observable, g: Observable, R: Union[RefinementResult, Partition],
                       tol_f: float = None, tol_g: float = None) -> List[int]:
    """细化格子中同时是 f 与 g 本征态的格子编号"""
    refined = R.refined if isinstance(R, RefinementResult) else R
    space = refined.space
    tol_f = default_tolerance(f, space) if tol_f is None else tol_f
    tol_g = default_tolerance(g, space) if tol_g is None else tol_g
    shared = []
    for cell in range(refined.n_cells):
        state = EpistemicState(refined.members(cell))
        if dispersion(f, state, space) <= tol_f and dispersion(g, state, space) <= tol_g:
            shared.append(cell)
    return shared


def _refine_pair(F: Partition, G: Partition, dynamics: DynamicalMap, horizon: int, threads: int):
    # 先建好像索引缓存，两个细化线程共享
    F.space.image_indices(dynamics)
    if dynamics.invertible:
        F.space.image_indices(dynamics, backward=True)
    if threads < 2:
        return dynamic_refinement(F, dynamics, horizon), dynamic_refinement(G, dynamics, horizon)
    with ThreadPoolExecutor(max_workers=2) as executor:
        future_F = executor.submit(dynamic_refinement, F, dynamics, horizon)
        future_G = executor.submit(dynamic_refinement, G, dynamics, horizon)
        return future_F.result(), future_G.result()


def classify(F: Partition, G: Partition, dynamics: DynamicalMap, horizon: int,
             threads: int = None) -> ClassificationReport:
    """
    分类两个划分

    都生成 → compatible；细化的公共粗化平凡 → complementary；
    细化不同 → incompatible；细化相同但不生成 → equivalent-non-generating
    """
    if F.space is not G.space:
        raise SpaceMismatch("两个划分不在同一个样本空间上")
    R_F, R_G = _refine_pair(F, G, dynamics, horizon, resolve_threads(threads))
    refinement_equal = R_F.refined.same_cells(R_G.refined)
    coarsening_trivial = common_coarsening(R_F.refined, R_G.refined).is_trivial()

    extension = False
    if R_F.verdict == GENERATING and R_G.verdict == GENERATING:
        verdict = COMPATIBLE
    elif coarsening_trivial:
        verdict = COMPLEMENTARY
    elif not refinement_equal:
        verdict = INCOMPATIBLE
    else:
        verdict = EQUIVALENT_NON_GENERATING
        extension = True
        logger.warning("⚠️ 两个划分的细化相同但都不生成，结论为 equivalent-non-generating")

    logger.info(f"分类结论: {verdict} (F: {R_F.verdict}, G: {R_G.verdict})")
    return ClassificationReport(
        verdict=verdict,
        generating_F=R_F.verdict,
        generating_G=R_G.verdict,
        refinement_equal=refinement_equal,
        coarsening_trivial=coarsening_trivial,
        horizon=horizon,
        refinement_F=R_F,
        refinement_G=R_G,
        extension=extension,
    )


def observable_partition_classify(f: Observable, g: Observable, space: SampleSpace,
                                  dynamics: DynamicalMap, horizon: int,
                                  binning: Binning = "exact", threads: int = None) -> ClassificationReport:
    """直接对两个观测量分类: 先诱导划分再 classify"""
    return classify(induce(f, space, binning), induce(g, space, binning), dynamics, horizon, threads)


def strip_partitions(space: SampleSpace, grid_cells: int):
    """位置条带(竖直)与动量条带(水平)"""
    cuts = np.arange(1, grid_cells) / grid_cells
    return threshold_partition(space, cuts, axis=0), threshold_partition(space, cuts, axis=1)


def epistemic_quantization_demo(space: SampleSpace, angle: float, grid_cells: int,
                                horizon: int = 12, threads: int = None) -> ClassificationReport:
    """
    谐振子的认知量子化: 时间离散(每步转 angle 圈)加空间粗粒化(grid_cells 条带)

    位置条带与动量条带在相流下分类。
    """
    if not 0.0 <= angle < 1.0:
        raise SpecValidationError(f"angle 必须位于 [0, 1)，当前 {angle}")
    if grid_cells < 2:
        raise SpecValidationError(f"grid_cells 必须 ≥ 2，当前 {grid_cells}")
    if space.dimension != 2:
        raise SpecValidationError("谐振子演示需要二维相空间样本")
    dynamics = oscillator_map(angle)
    position, momentum = strip_partitions(space, grid_cells)
    logger.info(f"谐振子演示: angle={angle:g}, {grid_cells} 条带, 时域 {horizon}")
    return classify(position, momentum, dynamics, horizon, threads)
