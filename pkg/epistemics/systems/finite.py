#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限状态空间上的查表映射
"""

from typing import Sequence

import numpy as np

from ..core import LINE, DynamicalMap, SampleSpace, finite_space
from ..errors import ComputationError, SpecValidationError


def table_map(space: SampleSpace, table: Sequence[int], name: str = "table") -> DynamicalMap:
    """
    由索引表定义的映射 i ↦ table[i]

    表是双射时同时提供逆映射。
    """
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (space.size,):
        raise SpecValidationError(f"映射表长度 {table.size} 与空间规模 {space.size} 不一致")
    if table.size and (table.min() < 0 or table.max() >= space.size):
        raise SpecValidationError("映射表的取值必须是合法的点索引")

    def lookup(points, mapping):
        indices, distances = space.nearest(points)
        if np.any(distances > 0.5):
            raise ComputationError(f"映射 {name} 只定义在有限空间的点上")
        return space.points[mapping[indices]]

    inverse = None
    if np.unique(table).size == table.size:
        inverse_table = np.empty_like(table)
        inverse_table[table] = np.arange(table.size)
        inverse = lambda points: lookup(points, inverse_table)

    return DynamicalMap(
        name=name,
        forward=lambda points: lookup(points, table),
        inverse=inverse,
        params={"size": float(space.size)},
        dimension=space.dimension,
        topology=tuple(space.topology),
    )


def cycle_map(size: int) -> DynamicalMap:
    """有限循环 i ↦ i+1 (mod size)"""
    space = finite_space(size)
    return table_map(space, (np.arange(size) + 1) % size, name="cycle")
