#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import gc

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epistemics.core import (
    CIRCLE,
    LINE,
    EpistemicState,
    Observable,
    SampleSpace,
    build_sample,
    constant_observable,
    coordinate_observable,
    finite_space,
    is_ontic,
    iterate,
    parity_observable,
    trajectory,
)
from epistemics.errors import (
    ComputationError,
    ImageEscape,
    MissingMap,
    NegativeTimeOnNonInvertible,
    SizeTooSmall,
    SpaceMismatch,
    SpecValidationError,
)
from epistemics.systems import get_system


class TestSampleSpace:
    def test_grid_is_evenly_spaced(self, small_grid):
        assert small_grid.size == 4096
        assert small_grid.spacing == pytest.approx(1 / 4096)
        assert np.allclose(small_grid.weights, 1 / 4096)

    def test_rejects_duplicate_points(self):
        with pytest.raises(SpecValidationError):
            SampleSpace(np.array([[0.1], [0.1]]), np.array([0.5, 0.5]), (LINE,))

    def test_rejects_bad_weights(self):
        with pytest.raises(SpecValidationError):
            SampleSpace(np.array([[0.1], [0.2]]), np.array([0.5, 0.6]), (LINE,))

    def test_circle_coordinates_must_be_wrapped(self):
        with pytest.raises(SpecValidationError):
            SampleSpace(np.array([[0.5], [1.0]]), np.array([0.5, 0.5]), (CIRCLE,))

    def test_circle_distance_wraps(self):
        space = SampleSpace(np.array([[0.05], [0.5], [0.95]]), np.full(3, 1 / 3), (CIRCLE,))
        assert space.distance(np.array([0.05]), np.array([0.95]))[0] == pytest.approx(0.1)
        assert space.nn_distances[0] == pytest.approx(0.1)

    def test_nearest_on_circle(self):
        space = SampleSpace(np.array([[0.0], [0.25], [0.5], [0.75]]), np.full(4, 0.25), (CIRCLE,))
        indices, distances = space.nearest(np.array([0.99, 0.26]))
        assert indices.tolist() == [0, 1]
        assert distances[0] == pytest.approx(0.01)

    def test_measure(self, small_grid):
        mask = small_grid.points[:, 0] < 0.25
        assert small_grid.measure(mask) == pytest.approx(0.25)

    def test_image_indices_are_cached(self, small_grid, doubling):
        first = small_grid.image_indices(doubling)
        assert small_grid.image_indices(doubling) is first
        assert first[1] == 2

    def test_image_cache_releases_collected_maps(self):
        space = build_sample("grid", 256, get_system("rotation", alpha=0.25))
        rotation = get_system("rotation", alpha=0.25)
        forward = space.image_indices(rotation)
        backward = space.image_indices(rotation, backward=True)
        assert space.image_indices(rotation) is forward
        assert space.image_indices(rotation, backward=True) is backward
        assert len(space._images) == 1
        del rotation
        gc.collect()
        assert len(space._images) == 0

    def test_image_escape(self):
        line = SampleSpace(np.array([[0.0], [0.1], [0.2]]), np.full(3, 1 / 3), (LINE,))
        assert line.image_indices(get_system("identity")).tolist() == [0, 1, 2]
        with pytest.raises(ImageEscape) as info:
            line.image_indices(get_system("rotation", alpha=0.5))
        assert info.value.distance > 0.2

    def test_dimension_mismatch(self):
        with pytest.raises(SpaceMismatch):
            finite_space(3).image_indices(get_system("baker"))


class TestEpistemicState:
    def test_members_are_sorted_and_unique(self):
        state = EpistemicState([3, 1, 3, 0])
        assert state.members.tolist() == [0, 1, 3]
        assert len(state) == 3

    def test_empty_and_full(self):
        space = finite_space(4)
        assert EpistemicState.empty().is_empty()
        assert EpistemicState.full(space).mask(4).all()

    def test_mask_outside_space(self):
        with pytest.raises(SpaceMismatch):
            EpistemicState([5]).mask(4)

    def test_equality_and_hash(self):
        assert EpistemicState([1, 2]) == EpistemicState.from_mask(np.array([False, True, True]))
        assert len({EpistemicState([1, 2]), EpistemicState([2, 1])}) == 1


class TestObservables:
    def test_ontic_and_epistemic(self, small_grid):
        assert is_ontic(coordinate_observable(0), small_grid)
        assert not is_ontic(constant_observable(1.0), small_grid)

    def test_parity(self):
        space = finite_space(4)
        assert parity_observable().values(space).tolist() == [0.0, 1.0, 0.0, 1.0]

    def test_undefined_values_raise(self):
        broken = Observable("log", lambda points: np.log(points[:, 0] - 1.0))
        with pytest.raises(ComputationError):
            broken.values(finite_space(2))


class TestIteration:
    def test_iterate_doubling(self, doubling):
        assert iterate(doubling, 0.375, 2)[0] == pytest.approx(0.5)

    def test_iterate_rotation_backwards(self):
        rotation = get_system("rotation", alpha=0.25)
        assert iterate(rotation, 0.1, -1)[0] == pytest.approx(0.85)

    def test_negative_time_needs_inverse(self, doubling):
        with pytest.raises(NegativeTimeOnNonInvertible):
            iterate(doubling, 0.3, -1)

    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(["doubling", "tent", "logistic", "rotation", "baker", "oscillator"]),
           st.floats(min_value=0.0, max_value=1.0, exclude_max=True),
           st.floats(min_value=0.0, max_value=1.0, exclude_max=True),
           st.integers(min_value=0, max_value=20),
           st.integers(min_value=0, max_value=20))
    def test_iterate_composes(self, name, x, y, s, t):
        dynamics = get_system(name)
        x0 = [x, y] if dynamics.dimension == 2 else x
        direct = iterate(dynamics, x0, s + t)
        stepped = iterate(dynamics, iterate(dynamics, x0, s), t)
        assert np.array_equal(direct, stepped)

    def test_trajectory_shape(self, doubling):
        orbit = trajectory(doubling, 0.125, 4)
        assert orbit[:, 0].tolist() == [0.125, 0.25, 0.5, 0.0]


class TestBuildSample:
    def test_size_too_small(self):
        with pytest.raises(SizeTooSmall):
            build_sample("grid", 1)

    def test_unknown_kind(self):
        with pytest.raises(SpecValidationError):
            build_sample("lattice", 10)

    def test_trajectory_needs_map(self):
        with pytest.raises(MissingMap):
            build_sample("trajectory", 10)

    def test_random_is_reproducible(self, doubling):
        a = build_sample("uniform-random", 100, doubling, seed=7)
        b = build_sample("uniform-random", 100, doubling, seed=7)
        assert np.array_equal(a.points, b.points)

    @pytest.mark.parametrize("system", ["doubling", "logistic", "rotation", "baker"])
    def test_trajectory_sample_is_deterministic(self, system):
        dynamics = get_system(system)
        a = build_sample("trajectory", 2000, dynamics, seed=11)
        b = build_sample("trajectory", 2000, dynamics, seed=11)
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(a.weights, b.weights)

    def test_grid_restricted_to_domain(self):
        oscillator = get_system("oscillator")
        space = build_sample("grid", 32 * 32, oscillator)
        radius = np.hypot(space.points[:, 0] - 0.5, space.points[:, 1] - 0.5)
        assert space.size < 32 * 32
        assert np.all(radius <= 0.5)

    def test_doubling_orbit_does_not_collapse(self, doubling):
        space = build_sample("trajectory", 5000, doubling, seed=1)
        assert space.size == 5000
        assert space.weights.sum() == pytest.approx(1.0)

    def test_trajectory_merges_repeated_visits(self):
        rotation = get_system("rotation", alpha=0.25)
        space = build_sample("trajectory", 100, rotation, x0=0.0)
        assert space.size == 4
        assert np.allclose(space.weights, 0.25)

    def test_finite_space_names(self):
        space = finite_space(3, names=["a", "b", "c"])
        assert space.label(1) == "b"
        assert space.kind == "finite"
