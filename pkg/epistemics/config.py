#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
全局数值常量与环境配置

所有模块共享的阈值集中在这里，便于统一调整。
"""

import os
import logging

logger = logging.getLogger(__name__)

TOOL_NAME = "epistemics"
TOOL_VERSION = "0.3.0"

# 点的同一性 / 逆映射往返检查的绝对容差(逐坐标)
EPS_SPACE = 1e-12

# 显式划分代数的最大基本格子数 (2^20 个元素可用位集寻址)
N_ALG = 20

# 显式有限格的最大元素数，定律检查是元素数的三次方
MAX_LATTICE_ELEMENTS = 4096

# 生成性诊断: 停滞窗口与相对变化阈值
STALL_WINDOW = 3
STALL_TOLERANCE = 0.01

# ε_gen = GEN_FACTOR × 采样间距
GEN_FACTOR = 2.0

# 像点与最近采样点距离超过 ESCAPE_FACTOR × 采样间距即视为逃逸
ESCAPE_FACTOR = 2.0

# 本征态默认容差: EIGEN_RELATIVE_TOL × 观测量值域宽度²
EIGEN_RELATIVE_TOL = 1e-9

# 熵估计: 细化格子数超过样本数的该比例时标记为不可靠
SATURATION_FRACTION = 0.10

# 熵估计取差分序列最后几项的均值
ENTROPY_TAIL = 3

# 转移矩阵行和容差
ROW_SUM_TOL = 1e-9

# 超过该格子数的派生划分不再合成可读标签
LABEL_LIMIT = 4096

# 线程上限的环境变量
THREADS_ENV = "EPISTEMICS_THREADS"


def resolve_threads(requested: int = None) -> int:
    """解析工作线程数: 命令行参数优先，其次环境变量，默认1"""
    if requested is not None and requested > 0:
        return requested

    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            threads = int(env_value)
            if threads > 0:
                return threads
        except ValueError:
            pass
        logger.warning(f"⚠️ 环境变量 {THREADS_ENV}={env_value!r} 无效，使用单线程")
    return 1
