#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys
import os

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from epistemics.core import build_sample, finite_space
from epistemics.lattice import firefly_space
from epistemics.partition import Partition
from epistemics.systems import get_system

# 2^20 个二进制网格点，倍增映射的像仍是网格点
DYADIC_SIZE = 2 ** 20


@pytest.fixture(scope="session")
def doubling():
    return get_system("doubling")


@pytest.fixture(scope="session")
def dyadic_grid(doubling):
    return build_sample("grid", DYADIC_SIZE, doubling)


@pytest.fixture(scope="session")
def small_grid(doubling):
    return build_sample("grid", 2 ** 12, doubling)


@pytest.fixture
def firefly():
    return firefly_space()


@pytest.fixture
def four_points():
    """X = {1, 2, 3, 4}，按值分 {1,2},{3,4}，按奇偶分 {1,3},{2,4}"""
    space = finite_space(4, names=["1", "2", "3", "4"])
    value = Partition.from_cells(space, [[0, 1], [2, 3]], names=["small", "large"])
    parity = Partition.from_cells(space, [[0, 2], [1, 3]], names=["odd", "even"])
    return space, value, parity
