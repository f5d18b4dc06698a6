#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
划分演算

划分以规范标签数组存储: 每个样本点一个格子编号，编号按首次出现的顺序从0开始。
两个划分的格子集合相同当且仅当规范标签数组相同。
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property, reduce
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .config import GEN_FACTOR, LABEL_LIMIT, N_ALG, STALL_TOLERANCE, STALL_WINDOW
from .core import CIRCLE, DynamicalMap, EpistemicState, Observable, SampleSpace
from .errors import SpaceMismatch, SpecValidationError, TooManyCells

logger = logging.getLogger(__name__)

# 生成性判定
GENERATING = "generating-numerically"
NON_GENERATING = "non-generating-numerically"
INCONCLUSIVE = "inconclusive"

# 划分比较结果
EQUAL = "equal"
FIRST_REFINES = "P-refines-Q"
SECOND_REFINES = "Q-refines-P"
INCOMPARABLE = "incomparable"

Binning = Union[str, int]


class Cell(NamedTuple):
    id: int
    members: np.ndarray
    label: Optional[str]


def canonical_labels(raw: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    把任意标签数组规约为首次出现顺序的 0..k-1 编号

    Returns:
    --------
    (labels, representatives): representatives[c] 为格子 c 首次出现的点索引
    """
    raw = np.asarray(raw)
    if raw.ndim > 1:
        _, first, inverse = np.unique(raw, axis=0, return_index=True, return_inverse=True)
    else:
        _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(first, kind="stable")
    rank = np.empty(order.size, dtype=np.int64)
    rank[order] = np.arange(order.size, dtype=np.int64)
    return rank[inverse], first[order]


@dataclass(frozen=True, eq=False)
class Partition:
    """样本空间的划分: 格子两两不交、并为全空间、不含空格子"""

    space: SampleSpace
    labels: np.ndarray
    names: Optional[Tuple[str, ...]] = None
    note: Optional[str] = None

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.shape != (self.space.size,):
            raise SpaceMismatch(f"标签个数 {labels.size} 与样本规模 {self.space.size} 不一致")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_labels(cls, space: SampleSpace, raw, namer=None, note: str = None) -> "Partition":
        """
        由任意标签构造划分

        namer: 可选，接收首次出现的点索引、返回该格子的可读标签
        """
        labels, representatives = canonical_labels(raw)
        names = None
        if namer is not None and representatives.size <= LABEL_LIMIT:
            names = tuple(namer(int(i)) for i in representatives)
        return cls(space, labels, names, note)

    @classmethod
    def from_cells(cls, space: SampleSpace, cells: Sequence[Iterable[int]],
                   names: Sequence[str] = None) -> "Partition":
        """由显式格子(点索引集合)构造，校验互斥与穷尽"""
        raw = np.full(space.size, -1, dtype=np.int64)
        for cell_id, members in enumerate(cells):
            members = np.asarray(list(members), dtype=np.int64)
            if members.size == 0:
                raise SpecValidationError(f"格子 {cell_id} 为空")
            if np.any(raw[members] >= 0):
                raise SpecValidationError(f"格子 {cell_id} 与之前的格子相交")
            raw[members] = cell_id
        if np.any(raw < 0):
            raise SpecValidationError("格子的并不是整个样本空间")
        namer = (lambda i: names[raw[i]]) if names is not None else None
        return cls.from_labels(space, raw, namer)

    @classmethod
    def trivial(cls, space: SampleSpace, note: str = None) -> "Partition":
        return cls(space, np.zeros(space.size, dtype=np.int64), ("X",), note)

    @classmethod
    def identity(cls, space: SampleSpace) -> "Partition":
        names = tuple(space.label(i) for i in range(space.size)) if space.size <= LABEL_LIMIT else None
        return cls(space, np.arange(space.size, dtype=np.int64), names)

    @cached_property
    def n_cells(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def __len__(self) -> int:
        return self.n_cells

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_cells)

    @cached_property
    def measures(self) -> np.ndarray:
        return np.bincount(self.labels, weights=self.space.weights, minlength=self.n_cells)

    @cached_property
    def _members(self) -> List[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        return np.split(order, np.cumsum(self.sizes)[:-1])

    def members(self, cell: int) -> np.ndarray:
        return self._members[cell]

    def label(self, cell: int) -> str:
        if self.names is not None:
            return self.names[cell]
        return str(cell)

    @property
    def cells(self) -> List[Cell]:
        return [Cell(c, self._members[c], self.names[c] if self.names else None)
                for c in range(self.n_cells)]

    def cell_of(self, index: int) -> int:
        return int(self.labels[index])

    def is_trivial(self) -> bool:
        return self.n_cells == 1

    def is_identity(self) -> bool:
        return self.n_cells == self.space.size

    def same_cells(self, other: "Partition") -> bool:
        """格子集合相等(忽略标签文字)"""
        _check_space(self, other)
        return np.array_equal(self.labels, other.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.space is other.space and np.array_equal(self.labels, other.labels)

    __hash__ = object.__hash__

    @cached_property
    def diameters(self) -> np.ndarray:
        """
        每个格子的直径: 各坐标跨度的最大值加上采样间距

        直线坐标取 max-min，圆周坐标取覆盖格子点的最短弧长。
        """
        frame = pd.DataFrame(self.space.points)
        frame["cell"] = self.labels
        extents = np.zeros((self.n_cells, self.space.dimension))
        grouped = frame.groupby("cell")
        for axis, kind in enumerate(self.space.topology):
            if kind == CIRCLE:
                extents[:, axis] = _circular_extent(self.labels, self.space.points[:, axis], self.n_cells)
            else:
                column = grouped[axis]
                extents[:, axis] = (column.max() - column.min()).reindex(range(self.n_cells)).to_numpy()
        return extents.max(axis=1) + self.space.spacing

    @property
    def max_diameter(self) -> float:
        return float(self.diameters.max())

    def to_dict(self) -> dict:
        return {
            "cells": [{"id": c, "label": self.label(c), "members": self._members[c].tolist()}
                      for c in range(self.n_cells)],
            "space_size": self.space.size,
        }

    def __repr__(self) -> str:
        return f"Partition({self.n_cells} cells over {self.space.size} points)"


def _circular_extent(labels: np.ndarray, values: np.ndarray, n_cells: int) -> np.ndarray:
    """每个格子在圆周上的最短覆盖弧长 = 1 - 最大空隙"""
    order = np.lexsort((values, labels))
    xs = values[order]
    ls = labels[order]
    same = ls[1:] == ls[:-1]
    gaps = pd.Series(np.diff(xs)[same]).groupby(ls[1:][same]).max()
    inner = gaps.reindex(range(n_cells), fill_value=0.0).to_numpy()
    frame = pd.DataFrame({"cell": ls, "x": xs}).groupby("cell")["x"]
    wrap = (frame.min() + 1.0 - frame.max()).reindex(range(n_cells)).to_numpy()
    return 1.0 - np.maximum(inner, wrap)


def _check_space(*partitions: Partition):
    space = partitions[0].space
    for other in partitions[1:]:
        if other.space is not space:
            raise SpaceMismatch("划分不在同一个样本空间上")


# ==================== 由观测量诱导 ====================

def induce(obs: Observable, space: SampleSpace, binning: Binning = "exact") -> Partition:
    """
    观测量诱导的划分

    binning="exact": f(x)=f(y) 的点在同一格子
    binning=k (int): [min f, max f] 上的 k 个左闭右开等宽区间，最大值归入最后一格
    """
    values = obs.values(space)
    if binning == "exact":
        return Partition.from_labels(space, values, lambda i: f"{obs.name}={values[i]:g}")

    if isinstance(binning, bool) or not isinstance(binning, (int, np.integer)):
        raise SpecValidationError(f"未知的分箱方式: {binning!r}")
    bins = int(binning)
    if bins < 1:
        raise SpecValidationError(f"分箱数必须 ≥ 1，当前 {bins}")
    low, high = float(values.min()), float(values.max())
    if high - low == 0.0 or bins == 1:
        if bins > 1:
            logger.info(f"观测量 {obs.name} 取常值，{bins} 个分箱退化为平凡划分")
        return Partition.trivial(space)
    width = (high - low) / bins
    index = np.minimum(np.floor((values - low) / width).astype(np.int64), bins - 1)
    return Partition.from_labels(
        space, index,
        lambda i: f"{obs.name}∈[{low + index[i] * width:g},{low + (index[i] + 1) * width:g})")


def induce_family(observables: Sequence[Observable], space: SampleSpace,
                  binning: Binning = "exact") -> Partition:
    """观测空间 Y = (f1, …, fm)(X) 的划分: 各观测量诱导划分的乘积"""
    if not observables:
        return Partition.trivial(space)
    return reduce(product, (induce(obs, space, binning) for obs in observables))


def threshold_partition(space: SampleSpace, boundaries: Sequence[float], axis: int = 0) -> Partition:
    """按给定分界点切分坐标 axis，格子标签为符号 "0", "1", …"""
    if axis < 0 or axis >= space.dimension:
        raise SpecValidationError(f"坐标轴 {axis} 超出维数 {space.dimension}")
    cuts = np.sort(np.asarray(boundaries, dtype=np.float64))
    symbols = np.searchsorted(cuts, space.points[:, axis], side="right")
    return Partition.from_labels(space, symbols, lambda i: str(int(symbols[i])))


def proposition_partition(obs: Observable, a: float, tol: float, space: SampleSpace) -> Partition:
    """
    命题 "f(x) = a" 诱导的二元划分 {S, X∖S}，S = {x : |f(x) - a| ≤ tol}

    S 为空或为全空间时返回平凡划分，并在 note 上标记。
    """
    if tol < 0:
        raise SpecValidationError(f"容差必须非负，当前 {tol}")
    values = obs.values(space)
    inside = np.abs(values - a) <= tol
    if not inside.any() or inside.all():
        note = "empty-proposition" if not inside.any() else "full-proposition"
        logger.warning(f"⚠️ 命题 {obs.name}={a:g} 在样本上{'恒假' if note == 'empty-proposition' else '恒真'}，返回平凡划分")
        return Partition.trivial(space, note=note)
    name = f"{obs.name}={a:g}"
    return Partition.from_labels(space, inside, lambda i: name if inside[i] else f"¬({name})")


# ==================== 乘积、比较、原像 ====================

def product(P: Partition, Q: Partition) -> Partition:
    """乘积划分 P ∨ Q: 所有非空交集 A_i ∩ B_j"""
    _check_space(P, Q)
    key = P.labels * Q.n_cells + Q.labels
    namer = None
    if P.names is not None and Q.names is not None:
        namer = lambda i: _join_names(P.label(P.labels[i]), Q.label(Q.labels[i]))
    return Partition.from_labels(P.space, key, namer)


def _join_names(a: str, b: str) -> str:
    if a == "X":
        return b
    if b == "X" or a == b:
        return a
    return f"{a}∩{b}"


def compare(P: Partition, Q: Partition) -> str:
    """细化序比较: P 的每个格子都含于 Q 的某个格子时 P 细化 Q"""
    _check_space(P, Q)
    pairs = np.unique(P.labels * Q.n_cells + Q.labels).size
    p_refines = pairs == P.n_cells
    q_refines = pairs == Q.n_cells
    if p_refines and q_refines:
        return EQUAL
    if p_refines:
        return FIRST_REFINES
    if q_refines:
        return SECOND_REFINES
    return INCOMPARABLE


def refines(P: Partition, Q: Partition) -> bool:
    """P 细于或等于 Q"""
    return compare(P, Q) in (EQUAL, FIRST_REFINES)


def preimage(P: Partition, dynamics: DynamicalMap, backward: bool = False) -> Partition:
    """
    原像划分 Φ^{-1}(P): x 与 Φ(x) 所在的 P 格子同号

    Φ(x) 不是样本点时取最近样本点所在的格子。backward=True 时用逆映射，得到像划分 Φ(P)。
    """
    indices = P.space.image_indices(dynamics, backward=backward)
    raw = P.labels[indices]
    prefix = "Φ" if backward else "Φ⁻¹"
    namer = (lambda i: f"{prefix}({P.label(raw[i])})") if P.names is not None else None
    return Partition.from_labels(P.space, raw, namer)


# ==================== 动力学细化 ====================

@dataclass(frozen=True)
class RefinementResult:
    """有限时域的最细细化，以及逐步的格子数与最大直径"""

    refined: Partition
    horizon: int
    cell_count_series: List[int]
    max_diameter_series: List[float]
    verdict: str = INCONCLUSIVE
    base: Optional[Partition] = None
    two_sided: bool = False
    saturated_at: Optional[int] = None
    epsilon: float = 0.0

    @property
    def space(self) -> SampleSpace:
        return self.refined.space

    def series_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "step": range(self.horizon + 1),
            "cell_count": self.cell_count_series,
            "max_diameter": self.max_diameter_series,
        })

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "two_sided": self.two_sided,
            "verdict": self.verdict,
            "epsilon": self.epsilon,
            "saturated_at": self.saturated_at,
            "cell_count_series": list(self.cell_count_series),
            "max_diameter_series": list(self.max_diameter_series),
            "refined_cells": self.refined.n_cells,
        }


def refinement_step(current: Partition, dynamics: DynamicalMap, two_sided: bool) -> Partition:
    """R ↦ R ∨ Φ^{-1}(R)，双向时再并上 Φ(R)"""
    step = product(current, preimage(current, dynamics))
    if two_sided:
        step = product(step, preimage(current, dynamics, backward=True))
    return step


def dynamic_refinement(P: Partition, dynamics: DynamicalMap, horizon: int,
                       two_sided: bool = None) -> RefinementResult:
    """
    有限时域最细细化

    不可逆映射: ⋁_{t=0}^{horizon} Φ^{-t}(P)
    可逆映射:   ⋁_{t=-horizon}^{horizon} Φ^{t}(P)
    某一步格子数不变即到达不动点，之后各步相同。
    """
    if horizon < 1:
        raise SpecValidationError(f"时域必须 ≥ 1，当前 {horizon}")
    if two_sided is None:
        two_sided = dynamics.invertible
    elif two_sided and not dynamics.invertible:
        raise SpecValidationError(f"映射 {dynamics.name} 不可逆，不能做双向细化")

    current = P
    counts = [P.n_cells]
    diameters = [P.max_diameter]
    saturated_at = None
    for t in range(1, horizon + 1):
        if saturated_at is None:
            refined = refinement_step(current, dynamics, two_sided)
            if refined.n_cells == current.n_cells:
                saturated_at = t
                logger.debug(f"细化在第 {t} 步到达不动点 ({current.n_cells} 个格子)")
            else:
                current = refined
                if current.n_cells == P.space.size:
                    logger.debug(f"第 {t} 步已细化到单点格子")
        counts.append(current.n_cells)
        diameters.append(current.max_diameter)
        logger.debug(f"细化第 {t} 步: {current.n_cells} 个格子, 最大直径 {diameters[-1]:.6g}")

    result = RefinementResult(
        refined=current, horizon=horizon, cell_count_series=counts,
        max_diameter_series=diameters, base=P, two_sided=two_sided,
        saturated_at=saturated_at, epsilon=GEN_FACTOR * P.space.spacing,
    )
    return replace(result, verdict=generating_diagnostic(result, P.space))


def generating_diagnostic(R: RefinementResult, space: SampleSpace) -> str:
    """
    数值生成性判定

    最大直径 ≤ ε_gen 或每个格子至多一个点 → generating-numerically (有限状态空间只看后者)
    到达不动点，或最后 STALL_WINDOW 步直径相对变化都小于 STALL_TOLERANCE → non-generating-numerically
    其余 → inconclusive
    """
    if R.refined.n_cells == space.size:
        return GENERATING
    epsilon = GEN_FACTOR * space.spacing
    if space.kind != "finite" and R.max_diameter_series[-1] <= epsilon:
        return GENERATING
    if R.saturated_at is not None:
        return NON_GENERATING
    series = np.asarray(R.max_diameter_series, dtype=np.float64)
    if series.size > STALL_WINDOW:
        tail = series[-(STALL_WINDOW + 1):]
        relative = np.abs(np.diff(tail)) / tail[:-1]
        if np.all(relative < STALL_TOLERANCE):
            return NON_GENERATING
    return INCONCLUSIVE


def itinerary(P: Partition, dynamics: DynamicalMap, index: int, steps: int) -> "Itinerary":
    """
    扩展测量: 样本点轨道依次访问的格子，以及与之相容的细化格子 A_{i0} ∩ Φ^{-1}A_{i1} ∩ …
    """
    if steps < 0:
        raise SpecValidationError(f"步数必须非负，当前 {steps}")
    images = P.space.image_indices(dynamics) if steps else None
    visits = [int(index)]
    for _ in range(steps):
        visits.append(int(images[visits[-1]]))
    symbols = [P.cell_of(v) for v in visits]

    current = np.arange(P.space.size)
    consistent = np.ones(P.space.size, dtype=bool)
    for t, symbol in enumerate(symbols):
        consistent &= P.labels[current] == symbol
        if t < steps:
            current = images[current]
    return Itinerary(index=int(index), visits=visits,
                     symbols=[P.label(s) for s in symbols],
                     cell=EpistemicState.from_mask(consistent))


@dataclass(frozen=True)
class Itinerary:
    index: int
    visits: List[int]
    symbols: List[str]
    cell: EpistemicState


# ==================== 划分代数 ====================

def union_mask(P: Partition, state: EpistemicState) -> Optional[int]:
    """认知状态是 P 若干格子之并时返回格子位集，否则返回 None"""
    mask = state.mask(P.space.size)
    hits = np.bincount(P.labels[mask], minlength=P.n_cells)
    if np.any((hits > 0) & (hits < P.sizes)):
        return None
    return int(sum(1 << int(c) for c in np.flatnonzero(hits)))


def is_union_of_cells(P: Partition, state: EpistemicState) -> bool:
    mask = state.mask(P.space.size)
    hits = np.bincount(P.labels[mask], minlength=P.n_cells)
    return not np.any((hits > 0) & (hits < P.sizes))


@dataclass(frozen=True, eq=False)
class PartitionAlgebra:
    """
    划分代数 A(P): 基本格子的所有并，元素以格子位集寻址

    位 c 置1表示包含格子 c；0 为空集，(1<<n)-1 为全空间。
    """

    base: Partition

    @property
    def n_atoms(self) -> int:
        return self.base.n_cells

    @property
    def size(self) -> int:
        return 1 << self.n_atoms

    def __len__(self) -> int:
        return self.size

    @property
    def top(self) -> int:
        return self.size - 1

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def contains(self, state: EpistemicState) -> bool:
        return is_union_of_cells(self.base, state)

    def __contains__(self, state: EpistemicState) -> bool:
        return self.contains(state)

    def bitset(self, state: EpistemicState) -> Optional[int]:
        return union_mask(self.base, state)

    def state(self, bits: int) -> EpistemicState:
        """位集对应的点集"""
        self._check(bits)
        chosen = np.array([(bits >> c) & 1 for c in range(self.n_atoms)], dtype=bool)
        return EpistemicState.from_mask(chosen[self.base.labels])

    def complement(self, bits: int) -> int:
        self._check(bits)
        return self.top & ~bits

    def union(self, a: int, b: int) -> int:
        return a | b

    def intersection(self, a: int, b: int) -> int:
        return a & b

    def measure(self, bits: int) -> float:
        self._check(bits)
        return float(sum(self.base.measures[c] for c in range(self.n_atoms) if (bits >> c) & 1))

    def describe(self, bits: int) -> str:
        """可读标签: 0, 1, 单个格子, ¬格子, 或格子标签的 ∨ 连接"""
        self._check(bits)
        if bits == 0:
            return "0"
        if bits == self.top:
            return "1"
        chosen = [c for c in range(self.n_atoms) if (bits >> c) & 1]
        if len(chosen) == 1:
            return self.base.label(chosen[0])
        missing = [c for c in range(self.n_atoms) if not (bits >> c) & 1]
        if len(missing) == 1:
            return f"¬{self.base.label(missing[0])}"
        return "∨".join(self.base.label(c) for c in chosen)

    def _check(self, bits: int):
        if bits < 0 or bits > self.top:
            raise SpecValidationError(f"位集 {bits} 不是该代数的元素")


def algebra(P: Partition) -> PartitionAlgebra:
    if P.n_cells > N_ALG:
        raise TooManyCells(f"划分有 {P.n_cells} 个格子，超过显式代数上限 {N_ALG}")
    return PartitionAlgebra(P)


# ==================== 公共粗化 ====================

class DisjointSet:
    """并查集: 路径压缩 + 按秩合并"""

    def __init__(self, size: int):
        self.parent = np.arange(size, dtype=np.int64)
        self.rank = np.zeros(size, dtype=np.int64)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return int(root)

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        return True

    def roots(self) -> np.ndarray:
        return np.array([self.find(i) for i in range(self.parent.size)], dtype=np.int64)


def common_coarsening(P: Partition, Q: Partition) -> Partition:
    """
    最细的公共粗化: 其代数等于 A(P) ∩ A(Q)

    在二部重叠图上做并查集，A_i 与 B_j 相交即合并。
    """
    _check_space(P, Q)
    pairs = np.unique(P.labels * Q.n_cells + Q.labels)
    components = DisjointSet(P.n_cells + Q.n_cells)
    for key in pairs:
        components.union(int(key // Q.n_cells), P.n_cells + int(key % Q.n_cells))
    roots = components.roots()[:P.n_cells]
    raw = roots[P.labels]
    namer = None
    if P.names is not None:
        groups = {}
        for c in range(P.n_cells):
            groups.setdefault(int(roots[c]), []).append(P.label(c))
        namer = lambda i: "∨".join(groups[int(raw[i])]) if len(groups) > 1 else "X"
    return Partition.from_labels(P.space, raw, namer)
