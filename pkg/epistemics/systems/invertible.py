#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
可逆系统: 面包师映射、圆周旋转、谐振子相流、恒等映射
"""

import numpy as np

from ..core import CIRCLE, LINE, DynamicalMap
from .expanding import MANTISSA_BITS, _bit_windows, _to_unit

# 谐振子相空间: 以 (½, ½) 为心、半径 ½ 的圆盘
CENTER = 0.5
RADIUS = 0.5


def baker_orbit(rng: np.random.Generator, count: int) -> np.ndarray:
    """x 取正向比特窗口，y 取反向比特窗口，两者共享同一条双边比特序列"""
    bits = rng.integers(0, 2, size=count + 2 * MANTISSA_BITS, dtype=np.uint8)
    x = _to_unit(_bit_windows(bits, MANTISSA_BITS, count))
    y = _to_unit(_bit_windows(bits, MANTISSA_BITS, count, reverse=True))
    return np.stack([x, y], axis=1)


def _baker_forward(points):
    x, y = points[:, 0], points[:, 1]
    digit = np.floor(2.0 * x)
    return np.stack([2.0 * x - digit, (y + digit) / 2.0], axis=1)


def _baker_inverse(points):
    x, y = points[:, 0], points[:, 1]
    digit = np.floor(2.0 * y)
    return np.stack([(x + digit) / 2.0, 2.0 * y - digit], axis=1)


def baker_map() -> DynamicalMap:
    """
    面包师映射 (x, y) ↦ (2x - d, (y + d)/2)，d = ⌊2x⌋

    逆映射逐位精确。正向每步把 x 的一位推进 y，一般浮点点 t 步后往返误差可达 2^(t-53)；
    每轴 2^k 个点的二进网格在 k + |t| ≤ 53 时往返逐位精确。
    """
    return DynamicalMap(
        name="baker",
        forward=_baker_forward,
        inverse=_baker_inverse,
        dimension=2,
        topology=(LINE, LINE),
        orbit_sampler=baker_orbit,
    )


def rotation_map(alpha: float = 0.5 ** 0.5) -> DynamicalMap:
    """圆周旋转 x ↦ x + α (mod 1)"""
    alpha = float(alpha)
    return DynamicalMap(
        name="rotation",
        forward=lambda points: points + alpha,
        inverse=lambda points: points - alpha,
        params={"alpha": alpha},
        dimension=1,
        topology=(CIRCLE,),
    )


def in_disk(points: np.ndarray) -> np.ndarray:
    return (points[:, 0] - CENTER) ** 2 + (points[:, 1] - CENTER) ** 2 <= RADIUS ** 2


def _phase_rotation(angle: float):
    theta = 2.0 * np.pi * angle
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    def rotate(points):
        q = points[:, 0] - CENTER
        p = points[:, 1] - CENTER
        return np.stack([CENTER + cos_t * q + sin_t * p,
                         CENTER - sin_t * q + cos_t * p], axis=1)

    return rotate


def oscillator_map(angle: float = 0.25) -> DynamicalMap:
    """
    谐振子相流的时间-τ映射: (q, p) 绕中心顺时针旋转 angle 圈

    单位频率下 angle = τ/2π。
    """
    angle = float(angle)
    return DynamicalMap(
        name="oscillator",
        forward=_phase_rotation(angle),
        inverse=_phase_rotation(-angle),
        params={"angle": angle},
        dimension=2,
        topology=(LINE, LINE),
        domain=in_disk,
    )


def identity_map(dimension: int = 1) -> DynamicalMap:
    dimension = int(dimension)
    return DynamicalMap(
        name="identity",
        forward=lambda points: points.copy(),
        inverse=lambda points: points.copy(),
        params={"dimension": float(dimension)},
        dimension=dimension,
        topology=(LINE,) * dimension,
    )
