#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from epistemics.core import (
    EpistemicState,
    build_sample,
    constant_observable,
    coordinate_observable,
    finite_space,
    floor_observable,
    parity_observable,
    quadrant_observable,
)
from epistemics.errors import SpaceMismatch, SpecValidationError, TooManyCells
from epistemics.partition import (
    EQUAL,
    FIRST_REFINES,
    GENERATING,
    INCOMPARABLE,
    INCONCLUSIVE,
    NON_GENERATING,
    SECOND_REFINES,
    Partition,
    algebra,
    canonical_labels,
    common_coarsening,
    compare,
    dynamic_refinement,
    induce,
    induce_family,
    itinerary,
    preimage,
    product,
    proposition_partition,
    threshold_partition,
)
from epistemics.systems import get_system


class TestConstruction:
    def test_canonical_labels_first_occurrence(self):
        labels, first = canonical_labels(np.array([7, 3, 7, 1, 3]))
        assert labels.tolist() == [0, 1, 0, 2, 1]
        assert first.tolist() == [0, 1, 3]

    def test_from_cells_validates(self):
        space = finite_space(4)
        with pytest.raises(SpecValidationError):
            Partition.from_cells(space, [[0, 1], [1, 2, 3]])
        with pytest.raises(SpecValidationError):
            Partition.from_cells(space, [[0, 1], [2]])
        with pytest.raises(SpecValidationError):
            Partition.from_cells(space, [[0, 1, 2, 3], []])

    def test_trivial_and_identity(self):
        space = finite_space(5)
        assert Partition.trivial(space).is_trivial()
        assert Partition.identity(space).is_identity()
        assert Partition.identity(space).n_cells == 5

    def test_cells_and_measures(self, four_points):
        _, value, _ = four_points
        assert [cell.label for cell in value.cells] == ["small", "large"]
        assert value.members(1).tolist() == [2, 3]
        assert value.measures.tolist() == [0.5, 0.5]
        assert value.cell_of(2) == 1

    def test_labels_must_match_space(self):
        with pytest.raises(SpaceMismatch):
            Partition(finite_space(3), np.array([0, 1]))


class TestInduce:
    def test_exact_binning(self):
        space = finite_space(6)
        P = induce(parity_observable(), space)
        assert P.n_cells == 2
        assert P.labels.tolist() == [0, 1, 0, 1, 0, 1]

    def test_uniform_bins(self, small_grid):
        P = induce(coordinate_observable(0), small_grid, 4)
        assert P.n_cells == 4
        assert P.sizes.tolist() == [1024, 1024, 1024, 1024]

    def test_constant_observable_with_bins_is_trivial(self, small_grid):
        assert induce(constant_observable(3.0), small_grid, 8).is_trivial()

    def test_bad_binning(self, small_grid):
        with pytest.raises(SpecValidationError):
            induce(coordinate_observable(0), small_grid, 0)
        with pytest.raises(SpecValidationError):
            induce(coordinate_observable(0), small_grid, "quantile")

    def test_coordinate_exact_is_identity(self, small_grid):
        assert induce(coordinate_observable(0), small_grid).is_identity()

    def test_family_is_product(self):
        space = finite_space(8)
        family = induce_family([parity_observable(), floor_observable(4)], space)
        assert family.n_cells == 4
        assert induce_family([], space).is_trivial()

    def test_threshold_symbols(self, small_grid):
        P = threshold_partition(small_grid, [0.5])
        assert P.names == ("0", "1")
        assert P.sizes.tolist() == [2048, 2048]
        with pytest.raises(SpecValidationError):
            threshold_partition(small_grid, [0.5], axis=1)

    def test_proposition(self):
        space = finite_space(4)
        P = proposition_partition(parity_observable(), 1.0, 0.0, space)
        assert P.n_cells == 2
        assert P.note is None
        empty = proposition_partition(parity_observable(), 5.0, 0.0, space)
        assert empty.is_trivial() and empty.note == "empty-proposition"
        full = proposition_partition(parity_observable(), 0.5, 1.0, space)
        assert full.is_trivial() and full.note == "full-proposition"


class TestProductAndCompare:
    def test_product_of_complementary_pair(self, four_points):
        _, value, parity = four_points
        joint = product(value, parity)
        assert joint.is_identity()
        assert joint.label(0) == "small∩odd"

    def test_product_with_trivial(self, four_points):
        space, value, _ = four_points
        assert product(value, Partition.trivial(space)).same_cells(value)

    def test_compare(self, four_points):
        space, value, parity = four_points
        identity = Partition.identity(space)
        assert compare(value, value) == EQUAL
        assert compare(identity, value) == FIRST_REFINES
        assert compare(value, identity) == SECOND_REFINES
        assert compare(value, parity) == INCOMPARABLE

    def test_space_mismatch(self, four_points):
        _, value, _ = four_points
        with pytest.raises(SpaceMismatch):
            product(value, Partition.trivial(finite_space(4)))

    def test_preimage_under_doubling(self, small_grid, doubling):
        P = threshold_partition(small_grid, [0.5])
        pulled = preimage(P, doubling)
        x = small_grid.points[:, 0]
        expected = ((x >= 0.25) & (x < 0.5)) | (x >= 0.75)
        assert np.array_equal(pulled.labels.astype(bool), expected)

    def test_preimage_under_quarter_rotation(self):
        rotation = get_system("rotation", alpha=0.25)
        space = build_sample("grid", 1024, rotation)
        pulled = preimage(threshold_partition(space, [0.5]), rotation)
        x = space.points[:, 0]
        expected = Partition.from_labels(space, (x >= 0.25) & (x < 0.75))
        assert pulled.same_cells(expected)
        assert pulled.n_cells == 2

    def test_common_coarsening(self, four_points):
        space, value, parity = four_points
        assert common_coarsening(value, parity).is_trivial()
        assert common_coarsening(value, Partition.identity(space)).same_cells(value)


class TestRefinement:
    def test_dyadic_landmark(self, dyadic_grid, doubling):
        P = threshold_partition(dyadic_grid, [0.5])
        result = dynamic_refinement(P, doubling, 10)
        assert result.cell_count_series == [2 ** (t + 1) for t in range(11)]
        assert result.max_diameter_series == [2.0 ** -(t + 1) for t in range(11)]
        assert not result.two_sided
        # 直径仍在减半，尚未达到 ε_gen = 2 × 2^-20
        assert result.verdict == INCONCLUSIVE

    def test_dyadic_landmark_long_horizon(self, dyadic_grid, doubling):
        result = dynamic_refinement(threshold_partition(dyadic_grid, [0.5]), doubling, 20)
        assert result.cell_count_series[19] == 2 ** 20
        assert result.saturated_at == 20
        assert result.verdict == GENERATING

    def test_dyadic_refinement_reaches_resolution(self, small_grid, doubling):
        P = threshold_partition(small_grid, [0.5])
        result = dynamic_refinement(P, doubling, 11)
        assert result.refined.is_identity()
        assert result.verdict == GENERATING

    def test_rotation_saturates(self):
        rotation = get_system("rotation", alpha=0.25)
        space = build_sample("grid", 1024, rotation)
        P = threshold_partition(space, [0.5])
        result = dynamic_refinement(P, rotation, 6)
        assert result.two_sided
        assert result.cell_count_series == [2, 4, 4, 4, 4, 4, 4]
        assert result.saturated_at == 2
        assert result.verdict == NON_GENERATING

    def test_identity_map_is_non_generating(self, four_points):
        _, value, _ = four_points
        result = dynamic_refinement(value, get_system("identity"), 1)
        assert result.saturated_at == 1
        assert result.verdict == NON_GENERATING

    def test_identity_partition_is_generating(self, four_points):
        space, _, _ = four_points
        result = dynamic_refinement(Partition.identity(space), get_system("identity"), 3)
        assert result.verdict == GENERATING

    def test_horizon_must_be_positive(self, small_grid, doubling):
        with pytest.raises(SpecValidationError):
            dynamic_refinement(threshold_partition(small_grid, [0.5]), doubling, 0)

    def test_two_sided_needs_inverse(self, small_grid, doubling):
        with pytest.raises(SpecValidationError):
            dynamic_refinement(threshold_partition(small_grid, [0.5]), doubling, 2, two_sided=True)

    def test_two_sided_baker_refinement_is_strictly_finer(self):
        baker = get_system("baker")
        space = build_sample("grid", 64 * 64, baker)
        quadrants = induce(quadrant_observable(), space)
        one_sided = dynamic_refinement(quadrants, baker, 2, two_sided=False)
        two_sided = dynamic_refinement(quadrants, baker, 2)
        assert two_sided.two_sided and not one_sided.two_sided
        assert compare(two_sided.refined, one_sided.refined) == FIRST_REFINES
        assert two_sided.refined.n_cells > one_sided.refined.n_cells

    def test_series_frame(self, small_grid, doubling):
        result = dynamic_refinement(threshold_partition(small_grid, [0.5]), doubling, 3)
        frame = result.series_frame()
        assert frame.columns.tolist() == ["step", "cell_count", "max_diameter"]
        assert frame["cell_count"].tolist() == [2, 4, 8, 16]


class TestItinerary:
    def test_itinerary_of_dyadic_point(self, small_grid, doubling):
        P = threshold_partition(small_grid, [0.5])
        # 5/8 = 0.101 (二进制)
        index = int(np.flatnonzero(small_grid.points[:, 0] == 0.625)[0])
        trip = itinerary(P, doubling, index, 2)
        assert trip.symbols == ["1", "0", "1"]
        members = small_grid.points[trip.cell.members, 0]
        assert members.min() == 0.625 and members.max() < 0.75


class TestAlgebra:
    def test_bitsets(self, four_points):
        space, value, _ = four_points
        alg = algebra(value)
        assert alg.size == 4
        assert alg.state(1) == EpistemicState([0, 1])
        assert alg.complement(1) == 2
        assert alg.describe(0) == "0" and alg.describe(3) == "1" and alg.describe(1) == "small"
        assert alg.measure(2) == pytest.approx(0.5)

    def test_membership(self, four_points):
        _, value, _ = four_points
        alg = algebra(value)
        assert EpistemicState([2, 3]) in alg
        assert EpistemicState([1, 2]) not in alg
        assert alg.bitset(EpistemicState([1, 2])) is None

    def test_too_many_cells(self):
        space = finite_space(21)
        with pytest.raises(TooManyCells):
            algebra(Partition.identity(space))
