#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一维扩张映射: 倍增映射、帐篷映射、逻辑斯蒂映射

浮点迭代倍增/帐篷映射每步丢失一位尾数，约53步后轨道塌缩到0。
轨道采样器因此直接由随机二进制展开构造访问点。
"""

import numpy as np

from ..core import DynamicalMap, LINE

# 双精度尾数位数
MANTISSA_BITS = 53


def _bit_windows(bits: np.ndarray, start: int, count: int, reverse: bool = False) -> np.ndarray:
    """
    把随机比特串的滑动窗口解释为 [0, 1) 中的二进制小数

    正向: 第 t 个值的比特为 bits[start+t : start+t+53] (高位在前)
    反向: 第 t 个值的比特为 bits[start+t-1], bits[start+t-2], … (高位在前)
    """
    value = np.zeros(count, dtype=np.uint64)
    for k in range(MANTISSA_BITS):
        offset = start - 1 - k if reverse else start + k
        value = (value << np.uint64(1)) | bits[offset:offset + count].astype(np.uint64)
    return value


def _to_unit(value: np.ndarray) -> np.ndarray:
    return value.astype(np.float64) / float(2 ** MANTISSA_BITS)


def doubling_orbit(rng: np.random.Generator, count: int) -> np.ndarray:
    bits = rng.integers(0, 2, size=count + MANTISSA_BITS, dtype=np.uint8)
    return _to_unit(_bit_windows(bits, 0, count)).reshape(-1, 1)


def tent_orbit(rng: np.random.Generator, count: int) -> np.ndarray:
    """帐篷映射的第 t 个点: 窗口比特与前一位异或，前一位为1时取补"""
    bits = rng.integers(0, 2, size=count + MANTISSA_BITS, dtype=np.uint8)
    window = _bit_windows(bits, 0, count)
    flip = np.concatenate(([0], bits[:count - 1])).astype(bool)
    full = np.uint64(2 ** MANTISSA_BITS - 1)
    window = np.where(flip, full - window, window)
    return _to_unit(window).reshape(-1, 1)


def doubling_map() -> DynamicalMap:
    return DynamicalMap(
        name="doubling",
        forward=lambda points: np.mod(2.0 * points, 1.0),
        dimension=1,
        topology=(LINE,),
        orbit_sampler=doubling_orbit,
    )


def tent_map(s: float = 2.0) -> DynamicalMap:
    """帐篷映射 x ↦ s·min(x, 1-x)，仅 s=2 时提供精确轨道采样"""
    s = float(s)

    def forward(points):
        return s * np.minimum(points, 1.0 - points)

    return DynamicalMap(
        name="tent",
        forward=forward,
        params={"s": s},
        dimension=1,
        topology=(LINE,),
        orbit_sampler=tent_orbit if s == 2.0 else None,
    )


def logistic_map(r: float = 4.0) -> DynamicalMap:
    r = float(r)
    return DynamicalMap(
        name="logistic",
        forward=lambda points: r * points * (1.0 - points),
        params={"r": r},
        dimension=1,
        topology=(LINE,),
    )
