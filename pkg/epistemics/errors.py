#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常体系

SpecError 类异常对应命令行退出码 2(规格/校验错误)，
ComputationError 类异常对应退出码 3(计算错误)。
"""


class EpistemicsError(Exception):
    """工具包所有异常的基类"""


class SpecError(EpistemicsError):
    """输入规格或参数校验失败"""


class ComputationError(EpistemicsError):
    """计算过程中的错误"""


class SpecValidationError(SpecError):
    """RunSpec 结构或取值不合法"""


class SizeTooSmall(SpecError):
    """样本规模小于2"""


class MissingMap(SpecError):
    """轨道采样缺少动力学映射"""


class UnknownSystem(SpecError):
    """注册表中不存在的系统名称"""


class NegativeTimeOnNonInvertible(ComputationError):
    """对不可逆映射请求负时间迭代"""


class SpaceMismatch(ComputationError):
    """参与运算的对象不在同一个样本空间上"""


class ImageEscape(ComputationError):
    """像点离开采样区域超出容差"""

    def __init__(self, message: str, index: int = None, distance: float = None):
        super().__init__(message)
        self.index = index
        self.distance = distance


class TooManyCells(ComputationError):
    """划分格子数超过显式代数/格的上限"""


class EmptyState(ComputationError):
    """认知状态为空集"""


class NotALattice(ComputationError):
    """偏序集缺少唯一的交或并"""

    def __init__(self, message: str, pair: tuple = None):
        super().__init__(message)
        self.pair = pair


class BadIdentification(ComputationError):
    """粘合时的等同关系不是序/正交同构"""


class TooLarge(ComputationError):
    """格元素数超过穷举定律检查上限"""


class ZeroMeasureCell(ComputationError):
    """存在测度为零的格子，无法归一化转移矩阵行"""
