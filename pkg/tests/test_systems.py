#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from epistemics.config import EPS_SPACE
from epistemics.core import build_sample, finite_space, iterate
from epistemics.errors import SpecValidationError, UnknownSystem
from epistemics.systems import SYSTEMS, get_system, list_systems, table_map
from epistemics.systems.expanding import doubling_orbit, tent_orbit
from epistemics.systems.invertible import baker_orbit


def test_registry_lists_every_system():
    names = [entry["name"] for entry in list_systems()]
    assert names == sorted(SYSTEMS)
    assert {"doubling", "tent", "logistic", "baker", "rotation", "oscillator"} <= set(names)


def test_unknown_system():
    with pytest.raises(UnknownSystem):
        get_system("henon")


def test_unknown_parameter():
    with pytest.raises(SpecValidationError):
        get_system("doubling", r=3.0)


def test_defaults_and_overrides():
    assert get_system("tent").params == {"s": 2.0}
    assert get_system("logistic", r=3.5).describe() == "logistic(r=3.5)"
    assert get_system("doubling").describe() == "doubling"


@pytest.mark.parametrize("name", ["baker", "rotation", "oscillator", "identity"])
def test_invertible_round_trip(name):
    dynamics = get_system(name)
    space = build_sample("uniform-random", 2000, dynamics, seed=3)
    assert dynamics.inverse_error(space) <= 1e-12


@pytest.mark.parametrize("t", [1, 5, 16, 32, -1, -5, -16, -32])
def test_baker_round_trip_on_dyadic_grid(t):
    # 网格坐标只有 6 位二进制小数，|t| ≤ 32 步后仍在 53 位尾数以内
    baker = get_system("baker")
    space = build_sample("grid", 64 * 64, baker)
    back = iterate(baker, iterate(baker, space.points, t), -t)
    assert space.distance(back, space.points).max() <= EPS_SPACE
    assert np.array_equal(back, space.points)


@pytest.mark.parametrize("t", [8, 16, 32])
def test_baker_round_trip_precision_on_random_floats(t):
    # 一般浮点点每步在 y 的末位舍入一次，反向时逐步加倍: 误差 < 2^(t-53)
    baker = get_system("baker")
    points = np.random.default_rng(t).random((500, 2))
    back = iterate(baker, iterate(baker, points, t), -t)
    assert np.array_equal(back[:, 0], points[:, 0])
    assert np.abs(back[:, 1] - points[:, 1]).max() <= 2.0 ** (t - 52)


@pytest.mark.parametrize("kind", ["grid", "uniform-random"])
@pytest.mark.parametrize("t", [1, 7, 32, -32])
def test_rotation_round_trip(kind, t):
    rotation = get_system("rotation")
    space = build_sample(kind, 1024, rotation, seed=5)
    back = iterate(rotation, iterate(rotation, space.points, t), -t)
    assert space.distance(back, space.points).max() <= EPS_SPACE


@pytest.mark.parametrize("angle", [0.25, (5 ** 0.5 - 1) / 2])
@pytest.mark.parametrize("t", [1, 7, 32, -32])
def test_oscillator_round_trip(angle, t):
    oscillator = get_system("oscillator", angle=angle)
    space = build_sample("uniform-random", 1000, oscillator, seed=5)
    back = iterate(oscillator, iterate(oscillator, space.points, t), -t)
    assert space.distance(back, space.points).max() <= EPS_SPACE


def test_doubling_orbit_follows_the_map():
    rng = np.random.default_rng(0)
    orbit = doubling_orbit(rng, 1000)[:, 0]
    assert np.allclose(np.mod(2 * orbit[:-1], 1.0), orbit[1:], atol=2 ** -52)


def test_tent_orbit_follows_the_map():
    rng = np.random.default_rng(0)
    orbit = tent_orbit(rng, 1000)[:, 0]
    assert np.allclose(2 * np.minimum(orbit[:-1], 1 - orbit[:-1]), orbit[1:], atol=2 ** -51)


def test_baker_orbit_follows_the_map():
    rng = np.random.default_rng(0)
    baker = get_system("baker")
    orbit = baker_orbit(rng, 500)
    assert np.allclose(baker(orbit[:-1]), orbit[1:], atol=2 ** -51)


def test_oscillator_preserves_radius():
    oscillator = get_system("oscillator", angle=0.1)
    points = np.array([[0.5, 0.9], [0.2, 0.5]])
    image = oscillator(points)
    before = np.hypot(points[:, 0] - 0.5, points[:, 1] - 0.5)
    after = np.hypot(image[:, 0] - 0.5, image[:, 1] - 0.5)
    assert np.allclose(before, after)


def test_oscillator_quarter_turn_is_clockwise():
    oscillator = get_system("oscillator", angle=0.25)
    # 位置最大处 (q=½) 四分之一周期后动量最小
    assert np.allclose(oscillator(np.array([[1.0, 0.5]])), [[0.5, 0.0]])


def test_table_map_and_inverse():
    space = finite_space(4)
    swap = table_map(space, [1, 0, 3, 2])
    assert swap.invertible
    assert space.image_indices(swap).tolist() == [1, 0, 3, 2]
    collapse = table_map(space, [0, 0, 1, 1])
    assert not collapse.invertible


def test_table_map_validates_entries():
    space = finite_space(3)
    with pytest.raises(SpecValidationError):
        table_map(space, [0, 1])
    with pytest.raises(SpecValidationError):
        table_map(space, [0, 1, 3])


def test_cycle_map():
    cycle = get_system("cycle", size=3)
    space = finite_space(3)
    assert space.image_indices(cycle).tolist() == [1, 2, 0]
