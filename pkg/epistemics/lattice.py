#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限命题格

划分代数给出布尔格；两个划分代数按公共元素粘合得到划分逻辑，一般不再是布尔格。
格以显式偏序矩阵存储，交/并表在构造时算出，定律检查全部穷举。
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .config import MAX_LATTICE_ELEMENTS
from .core import EpistemicState, SampleSpace, finite_space
from .errors import (
    BadIdentification,
    ComputationError,
    NotALattice,
    SpaceMismatch,
    TooLarge,
    TooManyCells,
)
from .partition import Partition, algebra, product

logger = logging.getLogger(__name__)

# 显式布尔格的最大基本格子数: 2^12 = MAX_LATTICE_ELEMENTS
MAX_BOOLEAN_CELLS = int(np.log2(MAX_LATTICE_ELEMENTS))


def _bounds(rel: np.ndarray, a: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    rel[x, y] 表示 x 在 y 的"下方"。对固定 a 与全部 b 求最大公共下界。

    Returns: (候选元素, 是否确为最大下界)
    """
    common = rel[:, a][:, None] & rel
    reach = rel.sum(axis=0)
    score = np.where(common, reach[:, None], -1)
    candidate = score.argmax(axis=0)
    cols = np.arange(rel.shape[0])
    valid = common[candidate, cols] & ~np.any(common & ~rel[:, candidate], axis=0)
    return candidate, valid


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """有限格: 元素标签、偏序矩阵 leq[a, b] = (a ≤ b)、可选正交补"""

    labels: Tuple[str, ...]
    leq: np.ndarray
    ortho: Optional[np.ndarray] = None
    realizations: Optional[Tuple[EpistemicState, ...]] = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        leq = np.asarray(self.leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n) or len(self.labels) != n:
            raise ComputationError("偏序矩阵与元素个数不一致")
        if n > MAX_LATTICE_ELEMENTS:
            raise TooLarge(f"格有 {n} 个元素，超过上限 {MAX_LATTICE_ELEMENTS}")
        if n == 0:
            raise NotALattice("空偏序集不是格")
        if not leq.diagonal().all():
            raise NotALattice("关系不自反")
        if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
            raise NotALattice("关系不反对称")
        closure = (leq.astype(np.float32) @ leq.astype(np.float32)) > 0
        if np.any(closure & ~leq):
            raise NotALattice("关系不传递")
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "labels", tuple(self.labels))

        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            meet[a], ok_meet = _bounds(leq, a)
            join[a], ok_join = _bounds(leq.T, a)
            bad = np.flatnonzero(~(ok_meet & ok_join))
            if bad.size:
                b = int(bad[0])
                missing = "交" if not ok_meet[b] else "并"
                raise NotALattice(f"元素 {self.labels[a]} 与 {self.labels[b]} 没有唯一的{missing}", pair=(a, b))
        meet.setflags(write=False)
        join.setflags(write=False)
        object.__setattr__(self, "meet", meet)
        object.__setattr__(self, "join", join)

        if self.ortho is not None:
            ortho = np.asarray(self.ortho, dtype=np.int64)
            object.__setattr__(self, "ortho", ortho)
            self._check_ortho()

    def _check_ortho(self):
        n = self.size
        ortho = self.ortho
        ids = np.arange(n)
        if ortho.shape != (n,) or np.any(ortho < 0) or np.any(ortho >= n):
            raise ComputationError("正交补映射不完整")
        if np.any(ortho[ortho] != ids):
            raise ComputationError("正交补不是对合")
        if np.any(self.leq & ~self.leq[np.ix_(ortho, ortho)].T):
            raise ComputationError("正交补不反转序")
        if np.any(self.meet[ids, ortho] != self.bottom) or np.any(self.join[ids, ortho] != self.top):
            raise ComputationError("正交补不满足互补律")

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def __len__(self) -> int:
        return self.size

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"格中没有元素 {label}") from None

    def covers(self) -> List[Tuple[int, int]]:
        """覆盖关系 (a, b): a < b 且之间没有其它元素"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        below, above = np.nonzero(self.leq & ~np.eye(self.size, dtype=bool))
        graph.add_edges_from(zip(below.tolist(), above.tolist()))
        return sorted(nx.transitive_reduction(graph).edges())

    @cached_property
    def ranks(self) -> np.ndarray:
        """每个元素到底元的最长链长度"""
        rank = np.zeros(self.size, dtype=np.int64)
        order = np.argsort(self.leq.sum(axis=0), kind="stable")
        for b in order:
            lower = np.flatnonzero(self.leq[:, b])
            lower = lower[lower != b]
            if lower.size:
                rank[b] = rank[lower].max() + 1
        return rank

    def to_dict(self) -> dict:
        elements = []
        for i, label in enumerate(self.labels):
            entry = {"id": i, "label": label}
            if self.realizations is not None:
                entry["members"] = self.realizations[i].members.tolist()
            elements.append(entry)
        payload = {"elements": elements, "leq": self.leq.tolist()}
        if self.ortho is not None:
            payload["ortho"] = self.ortho.tolist()
        return payload


# ==================== 由划分构造 ====================

def _atom_masks(base: Partition, coarse: Partition) -> List[int]:
    """coarse 每个格子包含的 base 原子位集"""
    masks = [0] * coarse.n_cells
    for atom in range(base.n_cells):
        owner = coarse.cell_of(int(base.members(atom)[0]))
        masks[owner] |= 1 << atom
    return masks


def _realize(base: Partition, bits: int) -> EpistemicState:
    chosen = np.array([(bits >> c) & 1 for c in range(base.n_cells)], dtype=bool)
    return EpistemicState.from_mask(chosen[base.labels])


def _lattice_from_sets(sets: Sequence[int], labels: Sequence[str], universe: int,
                       base: Partition, name: str) -> FiniteLattice:
    """以原子位集实现的集合族构造格，序为包含，正交补为集合补"""
    n = len(sets)
    if n > MAX_LATTICE_ELEMENTS:
        raise TooLarge(f"格有 {n} 个元素，超过上限 {MAX_LATTICE_ELEMENTS}")
    position = {bits: i for i, bits in enumerate(sets)}
    leq = np.array([[(a & b) == a for b in sets] for a in sets], dtype=bool)
    ortho = np.array([position[universe & ~bits] for bits in sets], dtype=np.int64)
    realizations = tuple(_realize(base, bits) for bits in sets)
    return FiniteLattice(tuple(labels), leq, ortho, realizations, name)


def boolean_from_partition(P: Partition) -> FiniteLattice:
    """划分代数的布尔格: 格子之并按包含排序，正交补为集合补"""
    if P.n_cells > MAX_BOOLEAN_CELLS:
        raise TooManyCells(f"划分有 {P.n_cells} 个格子，显式布尔格最多 {MAX_BOOLEAN_CELLS} 个")
    alg = algebra(P)
    sets = list(alg.elements())
    labels = [alg.describe(bits) for bits in sets]
    return _lattice_from_sets(sets, labels, alg.top, P, name="boolean")


def partition_logic(F: Partition, G: Partition) -> FiniteLattice:
    """
    划分逻辑: A(F) ∪ A(G) 作为样本空间的具体子集，相同的集合视为同一元素

    元素顺序为 A(F) 的位集顺序，其后是 A(G) 中新出现的元素。
    """
    if F.space is not G.space:
        raise SpaceMismatch("两个划分不在同一个样本空间上")
    alg_F, alg_G = algebra(F), algebra(G)
    if alg_F.size + alg_G.size > 2 * MAX_LATTICE_ELEMENTS:
        raise TooLarge(f"划分逻辑元素过多: |A(F)|={alg_F.size}, |A(G)|={alg_G.size}")
    atoms = product(F, G)
    masks_F = _atom_masks(atoms, F)
    masks_G = _atom_masks(atoms, G)
    universe = (1 << atoms.n_cells) - 1

    def to_atoms(bits: int, masks: List[int]) -> int:
        result = 0
        for c, mask in enumerate(masks):
            if (bits >> c) & 1:
                result |= mask
        return result

    sets, labels, seen = [], [], set()
    for alg, masks in ((alg_F, masks_F), (alg_G, masks_G)):
        for bits in alg.elements():
            realized = to_atoms(bits, masks)
            if realized in seen:
                continue
            seen.add(realized)
            sets.append(realized)
            labels.append(alg.describe(bits))
    logger.info(f"划分逻辑: |A(F)|={alg_F.size}, |A(G)|={alg_G.size}, 合并后 {len(sets)} 个元素")
    return _lattice_from_sets(sets, labels, universe, atoms, name="partition-logic")


# ==================== 定律检查 ====================

@dataclass
class LawReport:
    is_lattice: bool
    distributive: bool
    distributive_witness: Optional[Tuple[int, int, int]]
    orthocomplemented: bool
    orthomodular: Optional[bool]
    orthomodular_witness: Optional[Tuple[int, int]]
    modular: bool
    modular_witness: Optional[Tuple[int, int, int]]
    boolean_blocks: List[List[int]] = field(default_factory=list)

    def to_dict(self, lattice: FiniteLattice = None) -> dict:
        def named(ids):
            if ids is None or lattice is None:
                return list(ids) if ids is not None else None
            return [lattice.labels[i] for i in ids]

        return {
            "is_lattice": self.is_lattice,
            "distributive": self.distributive,
            "distributive_witness": named(self.distributive_witness),
            "orthocomplemented": self.orthocomplemented,
            "orthomodular": self.orthomodular,
            "orthomodular_witness": named(self.orthomodular_witness),
            "modular": self.modular,
            "modular_witness": named(self.modular_witness),
            "boolean_blocks": [named(block) for block in self.boolean_blocks],
        }


def violates_distributivity(L: FiniteLattice, a: int, b: int, c: int) -> bool:
    return L.meet[a, L.join[b, c]] != L.join[L.meet[a, b], L.meet[a, c]]


def violates_orthomodularity(L: FiniteLattice, a: int, b: int) -> bool:
    return bool(L.leq[a, b]) and L.join[a, L.meet[L.ortho[a], b]] != b


def violates_modularity(L: FiniteLattice, a: int, b: int, c: int) -> bool:
    return bool(L.leq[a, c]) and L.join[a, L.meet[b, c]] != L.meet[L.join[a, b], c]


def _distributive_witness(L: FiniteLattice, elements: np.ndarray = None) -> Optional[Tuple[int, int, int]]:
    """
    全部三元组检查分配律

    有正交补时优先返回 b ≤ c⊥ 的三元组，其次是元素顺序下的第一个反例。
    """
    ids = np.arange(L.size) if elements is None else np.asarray(elements)
    sub_meet = L.meet[np.ix_(ids, ids)]
    sub_join = L.join[np.ix_(ids, ids)]
    orthogonal = None
    if L.ortho is not None:
        orthogonal = L.leq[np.ix_(ids, L.ortho[ids])]
    first = None
    for a in ids:
        lhs = L.meet[a][sub_join]
        row = L.meet[a, ids]
        rhs = L.join[row[:, None], row[None, :]]
        violated = lhs != rhs
        if not violated.any():
            continue
        if orthogonal is not None and np.any(violated & orthogonal):
            b, c = np.argwhere(violated & orthogonal)[0]
            return int(a), int(ids[b]), int(ids[c])
        if first is None:
            b, c = np.argwhere(violated)[0]
            first = (int(a), int(ids[b]), int(ids[c]))
    return first


def _orthomodular_witness(L: FiniteLattice) -> Optional[Tuple[int, int]]:
    ids = np.arange(L.size)
    for a in ids:
        lhs = L.join[a][L.meet[L.ortho[a]]]
        violated = (lhs != ids) & L.leq[a]
        if violated.any():
            return int(a), int(np.flatnonzero(violated)[0])
    return None


def _modular_witness(L: FiniteLattice) -> Optional[Tuple[int, int, int]]:
    ids = np.arange(L.size)
    for a in ids:
        lhs = L.join[a][L.meet]
        rhs = L.meet[L.join[a][:, None], ids[None, :]]
        violated = (lhs != rhs) & L.leq[a][None, :]
        if violated.any():
            b, c = np.argwhere(violated)[0]
            return int(a), int(b), int(c)
    return None


def commutes(L: FiniteLattice, a: int, b: int) -> bool:
    """a 与 b 可交换: a = (a∧b) ∨ (a∧b⊥)"""
    if L.ortho is None:
        raise ComputationError("可交换性需要正交补")
    return L.join[L.meet[a, b], L.meet[a, L.ortho[b]]] == a


def _commute_matrix(L: FiniteLattice) -> np.ndarray:
    ids = np.arange(L.size)
    matrix = L.join[L.meet, L.meet[:, L.ortho]] == ids[:, None]
    return matrix & matrix.T


def _close(L: FiniteLattice, members: set) -> set:
    """在交、并、正交补下的闭包"""
    closed = set(members)
    while True:
        current = np.array(sorted(closed))
        grown = set(L.meet[np.ix_(current, current)].ravel().tolist())
        grown |= set(L.join[np.ix_(current, current)].ravel().tolist())
        grown |= set(L.ortho[current].tolist())
        grown |= closed
        if grown == closed:
            return closed
        closed = grown


def boolean_blocks(L: FiniteLattice) -> List[List[int]]:
    """
    极大布尔子格

    从每对可交换元素出发，按元素顺序贪心加入与已选元素都可交换的元素，
    取闭包后保留满足分配律的集合，去重并只保留极大者。
    """
    if L.ortho is None:
        return []
    commuting = _commute_matrix(L)
    n = L.size
    found: List[frozenset] = []
    covered = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            if not commuting[a, b] or covered[a, b]:
                continue
            chosen = [a, b]
            for x in range(n):
                if x not in chosen and commuting[x, chosen].all():
                    chosen.append(x)
            block = _close(L, set(chosen))
            if _distributive_witness(L, np.array(sorted(block))) is not None:
                continue
            block = frozenset(block)
            members = np.array(sorted(block))
            covered[np.ix_(members, members)] = True
            if block not in found:
                found.append(block)
    maximal = [block for block in found if not any(block < other for other in found)]
    return [sorted(block) for block in maximal]


def _confirm(L: FiniteLattice, law: str, violates, witness):
    """向量化搜索给出的反例须能被逐点定义复核"""
    if witness is not None and not violates(L, *witness):
        labels = tuple(L.labels[i] for i in witness)
        raise ComputationError(f"{law}反例 {labels} 复核失败")


def laws(L: FiniteLattice) -> LawReport:
    """穷举检查分配律、模律、正交模律，并找出布尔块"""
    if L.size > MAX_LATTICE_ELEMENTS:
        raise TooLarge(f"格有 {L.size} 个元素，超过穷举上限 {MAX_LATTICE_ELEMENTS}")
    logger.debug(f"定律检查: {L.size} 个元素")
    distributive_witness = _distributive_witness(L)
    modular_witness = _modular_witness(L)
    orthocomplemented = L.ortho is not None
    orthomodular_witness = _orthomodular_witness(L) if orthocomplemented else None
    _confirm(L, "分配律", violates_distributivity, distributive_witness)
    _confirm(L, "模律", violates_modularity, modular_witness)
    _confirm(L, "正交模律", violates_orthomodularity, orthomodular_witness)
    report = LawReport(
        is_lattice=True,
        distributive=distributive_witness is None,
        distributive_witness=distributive_witness,
        orthocomplemented=orthocomplemented,
        orthomodular=(orthomodular_witness is None) if orthocomplemented else None,
        orthomodular_witness=orthomodular_witness,
        modular=modular_witness is None,
        modular_witness=modular_witness,
        boolean_blocks=boolean_blocks(L),
    )
    if not report.distributive:
        a, b, c = distributive_witness
        logger.info(f"分配律不成立: ({L.labels[a]}, {L.labels[b]}, {L.labels[c]})")
    return report


# ==================== 粘合与同构 ====================

def _transitive_closure(relation: np.ndarray) -> np.ndarray:
    closure = relation.copy()
    while True:
        step = closure | ((closure.astype(np.float32) @ closure.astype(np.float32)) > 0)
        if np.array_equal(step, closure):
            return closure
        closure = step


def paste(L1: FiniteLattice, L2: FiniteLattice, identify: Sequence[Tuple[int, int]]) -> FiniteLattice:
    """
    沿公共子正交格粘合: 不交并按等同关系取商，序取两边序之并的传递闭包

    identify 必须是包含上下界的序同构(两边都有正交补时还须保持正交补)。
    """
    pairs = [(int(i), int(j)) for i, j in identify]
    forward = dict(pairs)
    backward = {j: i for i, j in pairs}
    if len(forward) != len(pairs) or len(backward) != len(pairs):
        raise BadIdentification("等同关系不是单射")
    if forward.get(L1.bottom) != L2.bottom or forward.get(L1.top) != L2.top:
        raise BadIdentification("等同关系必须包含上下界")
    left = np.array([i for i, _ in pairs])
    right = np.array([j for _, j in pairs])
    if not np.array_equal(L1.leq[np.ix_(left, left)], L2.leq[np.ix_(right, right)]):
        raise BadIdentification("等同关系不保持序")
    with_ortho = L1.ortho is not None and L2.ortho is not None
    if with_ortho and any(forward.get(int(L1.ortho[i])) != int(L2.ortho[j]) for i, j in pairs):
        raise BadIdentification("等同关系不保持正交补")

    position = np.empty(L2.size, dtype=np.int64)
    extra = [j for j in range(L2.size) if j not in backward]
    for j in range(L2.size):
        position[j] = backward[j] if j in backward else L1.size + extra.index(j)
    n = L1.size + len(extra)

    relation = np.zeros((n, n), dtype=bool)
    relation[:L1.size, :L1.size] = L1.leq
    relation[np.ix_(position, position)] |= L2.leq
    leq = _transitive_closure(relation)

    labels = list(L1.labels) + [L2.labels[j] for j in extra]
    ortho = None
    if with_ortho:
        ortho = np.empty(n, dtype=np.int64)
        ortho[:L1.size] = L1.ortho
        ortho[position] = position[L2.ortho]
    realizations = None
    if L1.realizations is not None and L2.realizations is not None:
        realizations = tuple(L1.realizations) + tuple(L2.realizations[j] for j in extra)
    return FiniteLattice(tuple(labels), leq, ortho, realizations, name="pasting")


def identify_by_label(L1: FiniteLattice, L2: FiniteLattice,
                      labels: Sequence[str] = None) -> List[Tuple[int, int]]:
    """按标签配对两个格的元素；不给出标签时取全部公共标签"""
    if labels is None:
        labels = [label for label in L1.labels if label in L2.labels]
    return [(L1.index(label), L2.index(label)) for label in labels]


def isomorphism(L1: FiniteLattice, L2: FiniteLattice) -> Optional[Dict[int, int]]:
    """回溯搜索序同构(两边都有正交补时同时保持正交补)，找不到返回 None"""
    if L1.size != L2.size:
        return None
    signature1 = list(zip(L1.leq.sum(axis=0), L1.leq.sum(axis=1)))
    signature2 = list(zip(L2.leq.sum(axis=0), L2.leq.sum(axis=1)))
    if sorted(signature1) != sorted(signature2):
        return None
    with_ortho = L1.ortho is not None and L2.ortho is not None
    order = sorted(range(L1.size), key=lambda i: signature1[i])
    mapping: Dict[int, int] = {}
    used = set()

    def consistent(i: int, j: int) -> bool:
        for k, l in mapping.items():
            if L1.leq[i, k] != L2.leq[j, l] or L1.leq[k, i] != L2.leq[l, j]:
                return False
        if with_ortho:
            oi, oj = int(L1.ortho[i]), int(L2.ortho[j])
            if oi in mapping and mapping[oi] != oj:
                return False
            if oj in used and mapping.get(oi) != oj:
                return False
        return True

    def search(position: int) -> bool:
        if position == len(order):
            return True
        i = order[position]
        for j in range(L2.size):
            if j in used or signature2[j] != signature1[i] or not consistent(i, j):
                continue
            mapping[i] = j
            used.add(j)
            if search(position + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    return dict(mapping) if search(0) else None


# ==================== 图示 ====================

def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(L: FiniteLattice) -> str:
    """覆盖关系的 DOT 有向图，节点按 (秩, 标签) 排序"""
    order = sorted(range(L.size), key=lambda i: (int(L.ranks[i]), L.labels[i], i))
    lines = [f"digraph {_quote(L.name or 'lattice')} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i in order:
        lines.append(f"  n{i} [label={_quote(L.labels[i])}];")
    position = {node: k for k, node in enumerate(order)}
    for a, b in sorted(L.covers(), key=lambda edge: (position[edge[0]], position[edge[1]])):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ==================== 内置格 ====================

def boolean_lattice(n: int) -> FiniteLattice:
    """n 个原子 p0, p1, … 的布尔格 2^n"""
    if n < 0 or n > MAX_BOOLEAN_CELLS:
        raise TooManyCells(f"布尔格原子数必须位于 0..{MAX_BOOLEAN_CELLS}")
    sets = list(range(1 << n))
    top = (1 << n) - 1
    atoms = [f"p{i}" for i in range(n)]

    def describe(bits: int) -> str:
        if bits == 0:
            return "0"
        if bits == top:
            return "1"
        return "∨".join(atoms[i] for i in range(n) if (bits >> i) & 1)

    leq = np.array([[(a & b) == a for b in sets] for a in sets], dtype=bool)
    ortho = np.array([top & ~bits for bits in sets], dtype=np.int64)
    return FiniteLattice(tuple(describe(bits) for bits in sets), leq, ortho, name=f"boolean-{n}")


def _from_covers(labels: Sequence[str], covers: Sequence[Tuple[str, str]],
                 complements: Sequence[Tuple[str, str]], name: str) -> FiniteLattice:
    index = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    relation = np.eye(n, dtype=bool)
    for low, high in covers:
        relation[index[low], index[high]] = True
    ortho = np.arange(n)
    for a, b in complements:
        ortho[index[a]], ortho[index[b]] = index[b], index[a]
    return FiniteLattice(tuple(labels), _transitive_closure(relation), ortho, name=name)


def o6() -> FiniteLattice:
    """苯环格: 0 < a < b < 1 与 0 < ¬b < ¬a < 1 两条链，正交但不正交模"""
    return _from_covers(
        ["0", "a", "b", "¬b", "¬a", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "¬b"), ("¬b", "¬a"), ("¬a", "1")],
        [("0", "1"), ("a", "¬a"), ("b", "¬b")],
        name="O6",
    )


def mo2() -> FiniteLattice:
    """两个布尔块 {0, a, ¬a, 1} 与 {0, b, ¬b, 1} 的水平和"""
    atoms = ["a", "¬a", "b", "¬b"]
    return _from_covers(
        ["0"] + atoms + ["1"],
        [("0", atom) for atom in atoms] + [(atom, "1") for atom in atoms],
        [("0", "1"), ("a", "¬a"), ("b", "¬b")],
        name="MO2",
    )


FIREFLY_POINTS = ("LF", "LB", "RF", "RB", "dark")


def firefly_space() -> SampleSpace:
    """萤火虫盒子: 萤火虫在左/右、前/后发光，或不发光"""
    return finite_space(len(FIREFLY_POINTS), names=FIREFLY_POINTS)


def firefly_partitions(space: SampleSpace = None) -> Tuple[Partition, Partition]:
    """正面窗口看到 L/R/N，侧面窗口看到 F/B/N"""
    space = space if space is not None else firefly_space()
    front = Partition.from_cells(space, [[0, 1], [2, 3], [4]], names=["L", "R", "N"])
    side = Partition.from_cells(space, [[0, 2], [1, 3], [4]], names=["F", "B", "N"])
    return front, side


def firefly_lattice() -> FiniteLattice:
    front, side = firefly_partitions()
    return partition_logic(front, side)


FIXTURES = {
    "boolean-1": lambda: boolean_lattice(1),
    "boolean-2": lambda: boolean_lattice(2),
    "boolean-3": lambda: boolean_lattice(3),
    "boolean-4": lambda: boolean_lattice(4),
    "O6": o6,
    "MO2": mo2,
    "firefly": firefly_lattice,
}
