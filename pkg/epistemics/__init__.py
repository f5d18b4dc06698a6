"""
认知划分计算模块

动力学系统上的可观测量划分、动力学细化、相容性分类、命题格与熵诊断。
"""

from .core import DynamicalMap, EpistemicState, Observable, SampleSpace, build_sample
from .partition import Partition, dynamic_refinement, induce, threshold_partition
from .epistemic import classify
from .lattice import FiniteLattice, laws, partition_logic
from .entropy import dynamical_entropy, ks_estimate
from .router import RunRouter
from .systems import get_system
from . import cli

__all__ = [
    'DynamicalMap', 'EpistemicState', 'Observable', 'SampleSpace', 'build_sample',
    'Partition', 'dynamic_refinement', 'induce', 'threshold_partition',
    'classify',
    'FiniteLattice', 'laws', 'partition_logic',
    'dynamical_entropy', 'ks_estimate',
    'RunRouter', 'get_system', 'cli',
]
