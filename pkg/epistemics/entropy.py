#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
熵诊断: 块熵、划分的动力学熵、KS熵估计、经验马尔可夫转移矩阵

熵一律以奈特(自然对数)为单位，测度为样本权重。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import linalg, stats
from tqdm import tqdm

from .config import ENTROPY_TAIL, ROW_SUM_TOL, SATURATION_FRACTION, resolve_threads
from .core import DynamicalMap, SampleSpace
from .errors import SpaceMismatch, SpecValidationError, ZeroMeasureCell
from .partition import Partition, refinement_step, threshold_partition

logger = logging.getLogger(__name__)

PartitionFamily = Union[Dict[str, Partition], Sequence[Tuple[str, Partition]]]


def _check_space(P: Partition, space: SampleSpace):
    if P.space is not space:
        raise SpaceMismatch("划分不在给定的样本空间上")


def block_entropy(P: Partition, space: SampleSpace = None) -> float:
    """香农熵 -Σ μ(A) ln μ(A)，约定 0·ln0 = 0"""
    if space is not None:
        _check_space(P, space)
    measures = P.measures
    measures = measures[measures > 0]
    if measures.size <= 1:
        return 0.0
    return float(stats.entropy(measures))


@dataclass(frozen=True)
class EntropyReport:
    partition_name: str
    horizon: int
    block_entropy_series: List[float]
    rate_series_quotient: List[float]
    rate_series_difference: List[float]
    estimate: float
    saturation_flag: bool
    cell_count_series: List[int] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        """每行 n, H_n, H_n/n, H_{n+1}-H_n(最后一行无差分)"""
        n = len(self.block_entropy_series)
        differences = list(self.rate_series_difference) + [np.nan] * (n - len(self.rate_series_difference))
        return pd.DataFrame({
            "n": range(1, n + 1),
            "H_n": self.block_entropy_series,
            "H_n_over_n": self.rate_series_quotient,
            "H_next_minus_H_n": differences,
            "cell_count": self.cell_count_series or [np.nan] * n,
        })

    def to_dict(self) -> dict:
        return {
            "partition_name": self.partition_name,
            "horizon": self.horizon,
            "block_entropy_series": list(self.block_entropy_series),
            "rate_series_quotient": list(self.rate_series_quotient),
            "rate_series_difference": list(self.rate_series_difference),
            "estimate": self.estimate,
            "saturation_flag": self.saturation_flag,
            "cell_count_series": list(self.cell_count_series),
        }


def dynamical_entropy(P: Partition, dynamics: DynamicalMap, space: SampleSpace, horizon: int,
                      name: str = "P") -> EntropyReport:
    """
    H_n = H(⋁_{t=0}^{n-1} Φ^{-t}P)，n = 1..horizon

    估计值为差分序列最后 ENTROPY_TAIL 项的均值；细化格子数超过样本数的 10% 时标记为饱和。
    """
    _check_space(P, space)
    if horizon < 2:
        raise SpecValidationError(f"熵估计的时域必须 ≥ 2，当前 {horizon}")

    current = P
    entropies = [block_entropy(P)]
    counts = [P.n_cells]
    fixed = False
    for n in range(2, horizon + 1):
        if not fixed:
            refined = refinement_step(current, dynamics, two_sided=False)
            fixed = refined.n_cells == current.n_cells
            current = refined
        entropies.append(entropies[-1] if fixed else block_entropy(current))
        counts.append(current.n_cells)

    quotient = [h / n for n, h in enumerate(entropies, start=1)]
    difference = list(np.diff(entropies))
    estimate = float(np.mean(difference[-ENTROPY_TAIL:]))
    saturated = current.n_cells > SATURATION_FRACTION * space.size
    if saturated:
        logger.warning(f"⚠️ 划分 {name} 细化到 {current.n_cells} 个格子 (样本 {space.size})，熵估计不可靠")
    logger.debug(f"动力学熵 {name}: 估计 {estimate:.6f} nats")
    return EntropyReport(
        partition_name=name,
        horizon=horizon,
        block_entropy_series=entropies,
        rate_series_quotient=quotient,
        rate_series_difference=[float(d) for d in difference],
        estimate=estimate,
        saturation_flag=bool(saturated),
        cell_count_series=counts,
    )


def _family_items(family: PartitionFamily) -> List[Tuple[str, Partition]]:
    items = list(family.items()) if isinstance(family, dict) else [tuple(item) for item in family]
    if not items:
        raise SpecValidationError("划分族不能为空")
    return items


def entropy_reports(dynamics: DynamicalMap, space: SampleSpace, family: PartitionFamily,
                    horizon: int, threads: int = None) -> List[EntropyReport]:
    """对划分族逐个计算动力学熵，结果按输入顺序排列"""
    items = _family_items(family)
    space.image_indices(dynamics)
    workers = min(resolve_threads(threads), len(items))
    progress = tqdm(total=len(items), desc="动力学熵", disable=None, leave=False)
    try:
        if workers < 2:
            reports = []
            for name, P in items:
                reports.append(dynamical_entropy(P, dynamics, space, horizon, name=name))
                progress.update(1)
            return reports
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(dynamical_entropy, P, dynamics, space, horizon, name)
                       for name, P in items]
            reports = []
            for future in futures:
                reports.append(future.result())
                progress.update(1)
            return reports
    finally:
        progress.close()


def ks_estimate(dynamics: DynamicalMap, space: SampleSpace, family: PartitionFamily, horizon: int,
                threads: int = None) -> Tuple[float, str, List[EntropyReport]]:
    """
    KS熵估计: 划分族上动力学熵估计的最大值

    饱和的报告不参与取最大；全部饱和时退回到全体并给出警告。
    """
    reports = entropy_reports(dynamics, space, family, horizon, threads)
    candidates = [r for r in reports if not r.saturation_flag]
    if not candidates:
        logger.warning("⚠️ 所有划分的熵估计都已饱和，取最大值仅供参考")
        candidates = reports
    best = max(candidates, key=lambda r: r.estimate)
    logger.info(f"KS熵估计: {best.estimate:.6f} nats (划分 {best.partition_name})")
    return best.estimate, best.partition_name, reports


@dataclass(frozen=True)
class TransitionMatrix:
    """经验转移矩阵 T_ij = μ(A_i ∩ Φ^{-1}A_j) / μ(A_i)"""

    cells: List[str]
    rows: np.ndarray
    measures: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.rows.shape[0]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, index=self.cells, columns=self.cells)

    def to_dict(self) -> dict:
        return {"cells": list(self.cells), "rows": self.rows.tolist()}


def transition_matrix(P: Partition, dynamics: DynamicalMap, space: SampleSpace) -> TransitionMatrix:
    _check_space(P, space)
    n = P.n_cells
    measures = P.measures
    empty = np.flatnonzero(measures <= 0)
    if empty.size:
        raise ZeroMeasureCell(f"格子 {P.label(int(empty[0]))} 的测度为零")
    images = space.image_indices(dynamics)
    joint = np.bincount(P.labels * n + P.labels[images], weights=space.weights,
                        minlength=n * n).reshape(n, n)
    rows = joint / measures[:, None]
    drift = np.abs(rows.sum(axis=1) - 1.0).max()
    if drift > ROW_SUM_TOL:
        logger.warning(f"⚠️ 转移矩阵行和偏离1达 {drift:.3g}")
    return TransitionMatrix([P.label(c) for c in range(n)], rows, measures.copy())


def stationary_distribution(T: TransitionMatrix) -> np.ndarray:
    """特征值1对应的左特征向量，归一化为概率分布"""
    values, vectors = linalg.eig(T.rows.T)
    index = int(np.argmin(np.abs(values - 1.0)))
    distribution = np.abs(np.real(vectors[:, index]))
    return distribution / distribution.sum()


def markov_entropy_rate(T: TransitionMatrix, distribution: np.ndarray = None) -> float:
    """
    转移矩阵诱导的马尔可夫链熵率 Σ_i π_i H(T_i·)

    默认 π 取格子测度；划分为马尔可夫划分时等于动力学熵。
    """
    if distribution is None:
        distribution = T.measures if T.measures is not None else stationary_distribution(T)
    rates = np.array([stats.entropy(row[row > 0]) if np.count_nonzero(row) > 1 else 0.0
                      for row in T.rows])
    return float(np.dot(distribution, rates))


def boundary_sweep(dynamics: DynamicalMap, space: SampleSpace, boundaries: Sequence[float],
                   horizon: int, axis: int = 0, threads: int = None) -> pd.DataFrame:
    """二元划分 {x < b, x ≥ b} 的熵估计随分界点 b 的变化"""
    family = [(f"b={b:g}", threshold_partition(space, [b], axis=axis)) for b in boundaries]
    reports = entropy_reports(dynamics, space, family, horizon, threads)
    rows = []
    for b, (_, P), report in zip(boundaries, family, reports):
        rate = markov_entropy_rate(transition_matrix(P, dynamics, space)) if P.n_cells > 1 else 0.0
        rows.append({
            "boundary": float(b),
            "estimate": report.estimate,
            "quotient": report.rate_series_quotient[-1],
            "markov_rate": rate,
            "cells": report.cell_count_series[-1],
            "saturated": report.saturation_flag,
        })
    return pd.DataFrame(rows)
