#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
状态空间、本体状态、动力学、观测量与测度

连续状态空间 X 用有限样本 SampleSpace 代替，所有划分与熵的结论都相对于该样本成立。
点以 numpy 数组表示，映射与观测量均按批量 (n, d) 数组求值。
"""

import logging
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph
from scipy.spatial import cKDTree

from .config import EPS_SPACE, ESCAPE_FACTOR
from .errors import (
    ComputationError,
    ImageEscape,
    MissingMap,
    NegativeTimeOnNonInvertible,
    SizeTooSmall,
    SpaceMismatch,
    SpecValidationError,
)

logger = logging.getLogger(__name__)

# 单个本体状态: 形状为 (d,) 的实数向量
Point = np.ndarray

LINE = "line"
CIRCLE = "circle"

SAMPLE_KINDS = ("grid", "trajectory", "uniform-random", "finite")


def wrap_unit(values: np.ndarray) -> np.ndarray:
    """把圆周坐标规约到 [0, 1)"""
    wrapped = np.mod(values, 1.0)
    # np.mod 对极小负数可能返回 1.0
    wrapped[wrapped >= 1.0] = 0.0
    return wrapped


def _normalize(points: np.ndarray, topology: Sequence[str]) -> np.ndarray:
    points = np.array(points, dtype=np.float64, copy=True)
    for axis, kind in enumerate(topology):
        if kind == CIRCLE:
            points[:, axis] = wrap_unit(points[:, axis])
    return points


def _as_batch(points, dimension: int = None) -> np.ndarray:
    batch = np.asarray(points, dtype=np.float64)
    if batch.ndim == 0:
        batch = batch.reshape(1, 1)
    elif batch.ndim == 1:
        if dimension is not None and dimension > 1 and batch.shape[0] == dimension:
            batch = batch.reshape(1, dimension)
        elif dimension == 1 or dimension is None:
            batch = batch.reshape(-1, 1)
        else:
            batch = batch.reshape(1, -1)
    return batch


@dataclass(frozen=True, eq=False)
class SampleSpace:
    """有限样本空间: 点列、经验测度与逐坐标拓扑"""

    points: np.ndarray
    weights: np.ndarray
    topology: Tuple[str, ...]
    kind: str = "grid"
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        weights = np.asarray(self.weights, dtype=np.float64)
        topology = tuple(self.topology)

        if points.shape[0] < 1:
            raise SizeTooSmall("样本空间至少需要一个点")
        if not np.all(np.isfinite(points)):
            raise SpecValidationError("样本点坐标必须全部有限")
        if len(topology) != points.shape[1]:
            raise SpecValidationError(f"拓扑标记数 {len(topology)} 与维数 {points.shape[1]} 不一致")
        if any(kind not in (LINE, CIRCLE) for kind in topology):
            raise SpecValidationError(f"未知的坐标拓扑: {topology}")
        if weights.shape != (points.shape[0],):
            raise SpecValidationError("权重个数必须与样本点个数相同")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise SpecValidationError(f"权重必须非负且和为1 (当前和 {weights.sum():.15f})")
        for axis, kind in enumerate(topology):
            column = points[:, axis]
            if kind == CIRCLE and (np.any(column < 0.0) or np.any(column >= 1.0)):
                raise SpecValidationError(f"圆周坐标 {axis} 必须位于 [0, 1)")
        if self.names is not None and len(self.names) != points.shape[0]:
            raise SpecValidationError("点名称个数必须与样本点个数相同")

        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "topology", topology)

        if points.shape[0] > 1 and self.nn_distances.min() <= EPS_SPACE:
            raise SpecValidationError(f"样本点在分辨率 {EPS_SPACE} 内必须两两不同")

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.size

    def point(self, index: int) -> Point:
        return self.points[index]

    def label(self, index: int) -> str:
        """点的可读名称"""
        if self.names is not None:
            return self.names[index]
        if self.dimension == 1:
            return f"{self.points[index, 0]:g}"
        return "(" + ", ".join(f"{v:g}" for v in self.points[index]) + ")"

    @cached_property
    def _box(self) -> np.ndarray:
        return np.array([1.0 if kind == CIRCLE else 0.0 for kind in self.topology])

    @cached_property
    def _sorted(self) -> Tuple[np.ndarray, np.ndarray]:
        order = np.argsort(self.points[:, 0], kind="stable")
        return order, self.points[order, 0]

    @cached_property
    def _tree(self) -> cKDTree:
        if self._box.any():
            return cKDTree(self.points, boxsize=self._box)
        return cKDTree(self.points)

    @cached_property
    def nn_distances(self) -> np.ndarray:
        """每个点到最近其它点的距离(切比雪夫度量，圆周坐标回绕)"""
        if self.size < 2:
            return np.zeros(self.size)
        if self.dimension == 1:
            order, xs = self._sorted
            gaps = np.diff(xs)
            if self.topology[0] == CIRCLE:
                wrap_gap = xs[0] + 1.0 - xs[-1]
                left = np.concatenate(([wrap_gap], gaps))
                right = np.concatenate((gaps, [wrap_gap]))
            else:
                left = np.concatenate(([np.inf], gaps))
                right = np.concatenate((gaps, [np.inf]))
            nearest = np.empty(self.size)
            nearest[order] = np.minimum(left, right)
            return nearest
        distances, _ = self._tree.query(self.points, k=2, p=np.inf)
        return distances[:, 1]

    @cached_property
    def spacing(self) -> float:
        """采样间距: 最近邻距离的最大值"""
        if self.size < 2:
            return 0.0
        return float(self.nn_distances.max())

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """逐行切比雪夫距离，圆周坐标取回绕距离"""
        a = _as_batch(a, self.dimension)
        b = _as_batch(b, self.dimension)
        delta = np.abs(a - b)
        for axis, kind in enumerate(self.topology):
            if kind == CIRCLE:
                delta[:, axis] = np.minimum(delta[:, axis], 1.0 - delta[:, axis])
        return delta.max(axis=1)

    def nearest(self, coords: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """查找每个坐标的最近样本点，返回 (索引, 距离)"""
        query = _normalize(_as_batch(coords, self.dimension), self.topology)
        if self.dimension == 1:
            order, xs = self._sorted
            q = query[:, 0]
            pos = np.searchsorted(xs, q)
            n = self.size
            left = np.clip(pos - 1, 0, n - 1)
            right = np.clip(pos, 0, n - 1)
            if self.topology[0] == CIRCLE:
                left = np.where(pos == 0, n - 1, left)
                right = np.where(pos == n, 0, right)
                d_left = np.abs(q - xs[left])
                d_left = np.minimum(d_left, 1.0 - d_left)
                d_right = np.abs(xs[right] - q)
                d_right = np.minimum(d_right, 1.0 - d_right)
            else:
                d_left = np.abs(q - xs[left])
                d_right = np.abs(xs[right] - q)
            take_left = d_left <= d_right
            chosen = np.where(take_left, left, right)
            return order[chosen], np.where(take_left, d_left, d_right)
        distances, indices = self._tree.query(query, k=1, p=np.inf)
        return indices.astype(np.int64), distances

    def measure(self, mask: np.ndarray) -> float:
        """点集(布尔掩码)的经验测度"""
        return float(self.weights[mask].sum())

    @cached_property
    def _images(self) -> weakref.WeakKeyDictionary:
        # 映射被回收后对应的像索引随之释放
        return weakref.WeakKeyDictionary()

    def image_indices(self, dynamics: "DynamicalMap", backward: bool = False) -> np.ndarray:
        """
        每个样本点的像 Φ(x)(或 Φ^{-1}(x))对应的最近样本点索引

        同一 (映射, 方向) 只计算一次。距离超过 ESCAPE_FACTOR × 采样间距时抛出 ImageEscape。
        """
        by_direction = self._images.get(dynamics)
        if by_direction is not None and backward in by_direction:
            return by_direction[backward]

        if dynamics.dimension != self.dimension:
            raise SpaceMismatch(f"映射 {dynamics.name} 的维数 {dynamics.dimension} 与样本维数 {self.dimension} 不一致")
        images = dynamics.backward(self.points) if backward else dynamics(self.points)
        indices, distances = self.nearest(images)
        tolerance = ESCAPE_FACTOR * self.spacing
        worst = int(np.argmax(distances))
        if distances[worst] > tolerance:
            raise ImageEscape(
                f"点 {self.label(worst)} 的像离开采样区域 (距离 {distances[worst]:.3g} > 容差 {tolerance:.3g})",
                index=worst, distance=float(distances[worst]))
        indices.setflags(write=False)
        self._images.setdefault(dynamics, {})[backward] = indices
        logger.debug(f"像索引已缓存: {dynamics.describe()} {'逆向' if backward else '正向'}, 最大偏差 {distances[worst]:.3g}")
        return indices


@dataclass(frozen=True, eq=False)
class DynamicalMap:
    """离散时间动力学 Φ: 批量点求值器，可选逆映射"""

    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    inverse: Optional[Callable[[np.ndarray], np.ndarray]] = None
    params: Dict[str, float] = field(default_factory=dict)
    dimension: int = 1
    topology: Tuple[str, ...] = (LINE,)
    domain: Optional[Callable[[np.ndarray], np.ndarray]] = None
    orbit_sampler: Optional[Callable[[np.random.Generator, int], np.ndarray]] = None

    @property
    def invertible(self) -> bool:
        return self.inverse is not None

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return _normalize(self.forward(_as_batch(points, self.dimension)), self.topology)

    def backward(self, points: np.ndarray) -> np.ndarray:
        if self.inverse is None:
            raise NegativeTimeOnNonInvertible(f"映射 {self.name} 不可逆")
        return _normalize(self.inverse(_as_batch(points, self.dimension)), self.topology)

    def inverse_error(self, space: SampleSpace) -> float:
        """逆映射往返误差 max |Φ^{-1}(Φ(x)) - x|"""
        if self.inverse is None:
            raise NegativeTimeOnNonInvertible(f"映射 {self.name} 不可逆")
        roundtrip = self.backward(self(space.points))
        return float(space.distance(roundtrip, space.points).max())

    def describe(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{key}={value:g}" for key, value in sorted(self.params.items()))
        return f"{self.name}({args})"


@dataclass(frozen=True)
class Observable:
    """实值观测量 f: X → R"""

    name: str
    evaluator: Callable[[np.ndarray], np.ndarray]

    def __call__(self, points: np.ndarray) -> np.ndarray:
        values = np.asarray(self.evaluator(_as_batch(points)), dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise ComputationError(f"观测量 {self.name} 存在未定义的取值")
        return values

    def values(self, space: SampleSpace) -> np.ndarray:
        return self(space.points)


@dataclass(frozen=True, eq=False)
class EpistemicState:
    """认知状态: 样本点索引的集合(允许空集与全集)"""

    members: np.ndarray

    def __post_init__(self):
        members = np.unique(np.asarray(self.members, dtype=np.int64).reshape(-1))
        if members.size and members[0] < 0:
            raise SpecValidationError("认知状态的索引必须非负")
        members.setflags(write=False)
        object.__setattr__(self, "members", members)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "EpistemicState":
        return cls(np.flatnonzero(mask))

    @classmethod
    def full(cls, space: SampleSpace) -> "EpistemicState":
        return cls(np.arange(space.size))

    @classmethod
    def empty(cls) -> "EpistemicState":
        return cls(np.array([], dtype=np.int64))

    @property
    def size(self) -> int:
        return int(self.members.size)

    def __len__(self) -> int:
        return self.size

    def is_empty(self) -> bool:
        return self.members.size == 0

    def mask(self, size: int) -> np.ndarray:
        if self.members.size and self.members[-1] >= size:
            raise SpaceMismatch(f"认知状态索引 {int(self.members[-1])} 超出样本规模 {size}")
        result = np.zeros(size, dtype=bool)
        result[self.members] = True
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpistemicState):
            return NotImplemented
        return np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash(self.members.tobytes())


# ==================== 观测量工厂 ====================

def coordinate_observable(axis: int = 0) -> Observable:
    return Observable(f"x{axis}", lambda points: points[:, axis])


def constant_observable(value: float = 0.0) -> Observable:
    return Observable(f"const({value:g})", lambda points: np.full(points.shape[0], float(value)))


def indicator_observable(threshold: float, axis: int = 0) -> Observable:
    """指示函数 [x_axis ≥ threshold]"""
    return Observable(f"[x{axis}>={threshold:g}]",
                      lambda points: (points[:, axis] >= threshold).astype(np.float64))


def parity_observable(axis: int = 0) -> Observable:
    """整数坐标的奇偶性(用于有限空间)"""
    return Observable(f"parity(x{axis})", lambda points: np.mod(np.rint(points[:, axis]), 2.0))


def floor_observable(divisor: float, axis: int = 0) -> Observable:
    return Observable(f"floor(x{axis}/{divisor:g})",
                      lambda points: np.floor(points[:, axis] / divisor))


def quadrant_observable() -> Observable:
    """二维单位方块的象限编号 2·[x≥½] + [y≥½]"""
    return Observable("quadrant",
                      lambda points: 2.0 * (points[:, 0] >= 0.5) + 1.0 * (points[:, 1] >= 0.5))


def is_ontic(obs: Observable, space: SampleSpace) -> bool:
    """观测量在样本上单射时为本体观测量，否则为认知观测量"""
    values = obs.values(space)
    return np.unique(values).size == space.size


# ==================== 迭代与轨道 ====================

def iterate(dynamics: DynamicalMap, x0, t: int) -> Point:
    """返回 Φ^t(x0)，负时间要求映射可逆"""
    if t < 0 and not dynamics.invertible:
        raise NegativeTimeOnNonInvertible(f"映射 {dynamics.name} 不可逆，无法迭代 t={t}")
    single = np.ndim(x0) <= 1
    state = _normalize(_as_batch(x0, dynamics.dimension), dynamics.topology)
    step = dynamics.__call__ if t >= 0 else dynamics.backward
    for _ in range(abs(t)):
        state = step(state)
    return state[0] if single else state


def trajectory(dynamics: DynamicalMap, x0, n: int) -> np.ndarray:
    """轨道 [x0, Φ(x0), …, Φ^{n-1}(x0)]，形状 (n, d)"""
    if n < 1:
        raise SpecValidationError(f"轨道长度必须 ≥ 1，当前 {n}")
    state = _normalize(_as_batch(x0, dynamics.dimension), dynamics.topology)[:1]
    orbit = np.empty((n, state.shape[1]))
    orbit[0] = state[0]
    for t in range(1, n):
        state = dynamics(state)
        orbit[t] = state[0]
    return orbit


# ==================== 样本构造 ====================

def finite_space(size: int, names: Sequence[str] = None) -> SampleSpace:
    """有限状态空间 {0, 1, …, size-1}，均匀测度"""
    if size < 2:
        raise SizeTooSmall(f"样本规模必须 ≥ 2，当前 {size}")
    points = np.arange(size, dtype=np.float64).reshape(-1, 1)
    weights = np.full(size, 1.0 / size)
    return SampleSpace(points, weights, (LINE,), kind="finite",
                       names=tuple(names) if names is not None else None)


def _uniform_weights(count: int) -> np.ndarray:
    return np.full(count, 1.0 / count)


def _apply_domain(dynamics: Optional[DynamicalMap], points: np.ndarray) -> np.ndarray:
    if dynamics is None or dynamics.domain is None:
        return points
    return points[dynamics.domain(points)]


def _grid_points(size: int, dimension: int) -> np.ndarray:
    per_axis = int(round(size ** (1.0 / dimension)))
    if per_axis ** dimension != size:
        per_axis = int(np.floor(size ** (1.0 / dimension) + 1e-9))
        logger.warning(f"⚠️ 网格规模 {size} 不是 {dimension} 次方数，改用每轴 {per_axis} 个点")
    axis = np.arange(per_axis, dtype=np.float64) / per_axis
    if dimension == 1:
        return axis.reshape(-1, 1)
    mesh = np.meshgrid(*([axis] * dimension), indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _random_points(rng: np.random.Generator, size: int, dimension: int,
                   dynamics: Optional[DynamicalMap]) -> np.ndarray:
    if dynamics is None or dynamics.domain is None:
        return rng.random((size, dimension))
    collected = []
    remaining = size
    while remaining > 0:
        batch = rng.random((max(2 * remaining, 16), dimension))
        batch = batch[dynamics.domain(batch)][:remaining]
        collected.append(batch)
        remaining -= batch.shape[0]
    return np.concatenate(collected, axis=0)


def _merge_visits(orbit: np.ndarray, topology: Sequence[str]) -> Tuple[np.ndarray, np.ndarray]:
    """合并分辨率 EPS_SPACE 内重复访问的点，权重为访问频率，保持首次访问顺序"""
    distinct, inverse = np.unique(orbit, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    box = np.array([1.0 if kind == CIRCLE else 0.0 for kind in topology])
    tree = cKDTree(distinct, boxsize=box) if box.any() else cKDTree(distinct)
    pairs = tree.query_pairs(EPS_SPACE, p=np.inf, output_type="ndarray")
    adjacency = sparse.coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])),
                                  shape=(distinct.shape[0], distinct.shape[0]))
    _, component = csgraph.connected_components(adjacency, directed=False)
    visit_group = component[inverse]

    _, group_first, counts = np.unique(visit_group, return_index=True, return_counts=True)
    order = np.argsort(group_first, kind="stable")
    points = orbit[group_first[order]]
    weights = counts[order] / orbit.shape[0]
    return points, weights


def build_sample(kind: str, size: int, dynamics: DynamicalMap = None, seed: int = 0,
                 dimension: int = None, x0=None) -> SampleSpace:
    """
    构造有限样本空间

    Parameters:
    -----------
    kind : str
        grid(等距网格) | trajectory(单条轨道的访问点) | uniform-random(随机点) | finite
    size : int
        样本点个数(网格为总点数)
    dynamics : DynamicalMap, optional
        轨道采样必需；其维数、拓扑与定义域也用于其它采样方式
    seed : int
        随机种子，相同参数两次调用得到相同点列
    """
    if kind not in SAMPLE_KINDS:
        raise SpecValidationError(f"未知的采样方式: {kind}")
    if size < 2:
        raise SizeTooSmall(f"样本规模必须 ≥ 2，当前 {size}")
    if kind == "finite":
        return finite_space(size)

    if dimension is None:
        dimension = dynamics.dimension if dynamics is not None else 1
    topology = tuple(dynamics.topology) if dynamics is not None else (LINE,) * dimension

    if kind == "grid":
        points = _apply_domain(dynamics, _grid_points(size, dimension))
        weights = _uniform_weights(points.shape[0])
    elif kind == "uniform-random":
        rng = np.random.default_rng(seed)
        points = _random_points(rng, size, dimension, dynamics)
        weights = _uniform_weights(points.shape[0])
    else:
        if dynamics is None:
            raise MissingMap("轨道采样需要提供动力学映射")
        rng = np.random.default_rng(seed)
        if dynamics.orbit_sampler is not None and x0 is None:
            orbit = dynamics.orbit_sampler(rng, size)
        else:
            start = x0 if x0 is not None else _random_points(rng, 1, dimension, dynamics)[0]
            orbit = trajectory(dynamics, start, size)
        orbit = _normalize(orbit, topology)
        points, weights = _merge_visits(orbit, topology)
        if points.shape[0] < 2:
            raise SizeTooSmall(f"映射 {dynamics.name} 的轨道只访问了 {points.shape[0]} 个不同的点")
        if points.shape[0] < orbit.shape[0]:
            logger.info(f"轨道共 {orbit.shape[0]} 步，合并为 {points.shape[0]} 个不同的点")

    logger.debug(f"构造样本: {kind}, {points.shape[0]} 个点, 维数 {dimension}")
    return SampleSpace(points, weights, topology, kind=kind)
