#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epistemics.core import finite_space
from epistemics.errors import BadIdentification, NotALattice, TooLarge, TooManyCells
from epistemics.lattice import (
    FIXTURES,
    FiniteLattice,
    boolean_from_partition,
    boolean_lattice,
    commutes,
    firefly_lattice,
    firefly_partitions,
    hasse_dot,
    identify_by_label,
    isomorphism,
    laws,
    mo2,
    o6,
    partition_logic,
    paste,
    violates_distributivity,
    violates_modularity,
    violates_orthomodularity,
)
from epistemics.partition import Partition, common_coarsening

FIREFLY_LABELS = ("0", "L", "R", "¬N", "N", "¬R", "¬L", "1", "F", "B", "¬B", "¬F")


class TestFirefly:
    def test_twelve_elements(self):
        lattice = firefly_lattice()
        assert lattice.size == 12
        assert lattice.labels == FIREFLY_LABELS

    def test_orthomodular_not_distributive(self):
        lattice = firefly_lattice()
        report = laws(lattice).to_dict(lattice)
        assert report["orthomodular"] is True
        assert report["distributive"] is False
        assert report["distributive_witness"] == ["L", "F", "B"]

    def test_two_boolean_blocks(self):
        lattice = firefly_lattice()
        blocks = laws(lattice).boolean_blocks
        assert [len(block) for block in blocks] == [8, 8]
        shared = set(blocks[0]) & set(blocks[1])
        assert {lattice.labels[i] for i in shared} == {"0", "1", "N", "¬N"}

    def test_pasting_matches_partition_logic(self):
        front, side = firefly_partitions()
        left = boolean_from_partition(front)
        right = boolean_from_partition(side)
        pasted = paste(left, right, identify_by_label(left, right, ["0", "¬N", "N", "1"]))
        assert pasted.size == 12
        assert isomorphism(pasted, firefly_lattice()) is not None
        assert laws(pasted).orthomodular

    def test_realizations_are_point_sets(self):
        lattice = firefly_lattice()
        not_n = lattice.realizations[lattice.index("¬N")]
        assert not_n.members.tolist() == [0, 1, 2, 3]

    def test_commutes(self):
        lattice = firefly_lattice()
        L, F, N = (lattice.index(label) for label in ("L", "F", "N"))
        assert not commutes(lattice, L, F)
        assert commutes(lattice, L, N)

    def test_hasse_diagram(self):
        dot = hasse_dot(firefly_lattice())
        assert dot.startswith('digraph "partition-logic" {')
        assert dot.count("->") == 22
        assert dot == hasse_dot(firefly_lattice())


class TestFixtures:
    def test_o6_is_not_orthomodular(self):
        lattice = o6()
        report = laws(lattice)
        assert report.orthocomplemented
        assert report.orthomodular is False
        assert report.to_dict(lattice)["orthomodular_witness"] == ["a", "b"]
        assert not report.modular

    def test_mo2(self):
        lattice = mo2()
        report = laws(lattice)
        assert report.orthomodular
        assert report.modular
        assert not report.distributive
        assert sorted(len(block) for block in report.boolean_blocks) == [4, 4]

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_boolean_lattices(self, n):
        lattice = boolean_lattice(n)
        report = laws(lattice)
        assert lattice.size == 2 ** n
        assert report.distributive and report.orthomodular
        assert report.boolean_blocks == [list(range(2 ** n))]

    def test_fixture_registry(self):
        assert set(FIXTURES) == {"boolean-1", "boolean-2", "boolean-3", "boolean-4", "O6", "MO2", "firefly"}
        assert FIXTURES["O6"]().size == 6


class TestPartitionLattices:
    def test_parity_value_logic_is_mo2(self, four_points):
        _, value, parity = four_points
        lattice = partition_logic(value, parity)
        assert lattice.size == 6
        assert isomorphism(lattice, mo2()) is not None
        assert not laws(lattice).distributive

    def test_boolean_from_partition(self, four_points):
        _, value, _ = four_points
        lattice = boolean_from_partition(value)
        assert lattice.labels == ("0", "small", "large", "1")
        assert lattice.ortho.tolist() == [3, 2, 1, 0]

    def test_boolean_from_partition_limit(self):
        with pytest.raises(TooManyCells):
            boolean_from_partition(Partition.identity(finite_space(13)))

    def test_partition_logic_limit(self):
        space = finite_space(13)
        with pytest.raises(TooLarge):
            partition_logic(Partition.identity(space), Partition.trivial(space))

    def test_meet_and_join_tables(self):
        lattice = boolean_lattice(2)
        p0, p1 = lattice.index("p0"), lattice.index("p1")
        assert lattice.meet[p0, p1] == lattice.bottom
        assert lattice.join[p0, p1] == lattice.top


class TestNotALattice:
    def test_missing_join(self):
        labels = ("0", "a", "b", "c", "d", "1")
        leq = np.eye(6, dtype=bool)
        leq[0, :] = True
        leq[:, 5] = True
        for low in (1, 2):
            for high in (3, 4):
                leq[low, high] = True
        with pytest.raises(NotALattice) as info:
            FiniteLattice(labels, leq)
        assert info.value.pair == (1, 2)

    def test_not_antisymmetric(self):
        leq = np.ones((2, 2), dtype=bool)
        with pytest.raises(NotALattice):
            FiniteLattice(("x", "y"), leq)


class TestPaste:
    def test_identification_must_include_bounds(self):
        left, right = boolean_lattice(1), boolean_lattice(1)
        with pytest.raises(BadIdentification):
            paste(left, right, [(0, 0)])

    def test_identification_must_preserve_order(self):
        left, right = boolean_lattice(2), boolean_lattice(2)
        bottom, top = 0, 3
        with pytest.raises(BadIdentification):
            paste(left, right, [(bottom, top), (top, bottom)])

    def test_pasting_two_blocks_along_bounds_gives_mo2(self):
        left, right = boolean_lattice(1), boolean_lattice(1)
        pasted = paste(left, right, [(0, 0), (1, 1)])
        assert pasted.size == 2
        wider = paste(boolean_lattice(2), boolean_lattice(2), [(0, 0), (3, 3)])
        assert wider.size == 6
        assert isomorphism(wider, mo2()) is not None

    def test_isomorphism_rejects_different_lattices(self):
        assert isomorphism(o6(), mo2()) is None
        assert isomorphism(boolean_lattice(2), boolean_lattice(3)) is None


def pentagon():
    """N5: 0 < a < c < 1, 0 < b < 1，不满足模律"""
    labels = ("0", "a", "b", "c", "1")
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    leq[1, 3] = True
    return FiniteLattice(labels, leq, name="N5")


def assert_sub_ortholattice(L, block):
    members = set(block)
    assert {L.bottom, L.top} <= members
    for a in block:
        assert int(L.ortho[a]) in members
        for b in block:
            assert int(L.meet[a, b]) in members
            assert int(L.join[a, b]) in members


class TestWitnesses:
    def test_firefly_distributivity_witness(self):
        lattice = firefly_lattice()
        witness = laws(lattice).distributive_witness
        assert violates_distributivity(lattice, *witness)

    def test_o6_witnesses(self):
        lattice = o6()
        report = laws(lattice)
        assert violates_orthomodularity(lattice, *report.orthomodular_witness)
        assert violates_modularity(lattice, *report.modular_witness)

    def test_pentagon_is_not_modular(self):
        lattice = pentagon()
        report = laws(lattice)
        assert not report.modular
        assert violates_modularity(lattice, *report.modular_witness)
        assert report.orthocomplemented is False
        assert report.orthomodular is None

    def test_modular_lattices_have_no_witness(self):
        lattice = mo2()
        report = laws(lattice)
        assert report.modular_witness is None
        for a in range(lattice.size):
            for b in range(lattice.size):
                for c in range(lattice.size):
                    assert not violates_modularity(lattice, a, b, c)

    def test_boolean_triples_never_violate(self):
        lattice = boolean_lattice(3)
        for a in range(lattice.size):
            for b in range(lattice.size):
                assert not violates_orthomodularity(lattice, a, b)
                for c in range(lattice.size):
                    assert not violates_distributivity(lattice, a, b, c)


class TestLatticeStructure:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_partition_algebra_is_distributive(self, n):
        space = finite_space(max(n, 2))
        cells = [[i] for i in range(n - 1)] + [list(range(n - 1, space.size))]
        report = laws(boolean_from_partition(Partition.from_cells(space, cells)))
        assert report.distributive and report.modular and report.orthomodular
        assert len(report.boolean_blocks) == 1

    @pytest.mark.parametrize("factory", [firefly_lattice, mo2, lambda: boolean_lattice(3)])
    def test_blocks_are_sub_ortholattices(self, factory):
        lattice = factory()
        for block in laws(lattice).boolean_blocks:
            assert_sub_ortholattice(lattice, block)

    @pytest.mark.parametrize("factory", [firefly_lattice, mo2, o6, lambda: boolean_lattice(3)])
    def test_self_pasting_is_identity(self, factory):
        lattice = factory()
        pasted = paste(lattice, lattice, [(i, i) for i in range(lattice.size)])
        assert pasted.size == lattice.size
        assert isomorphism(pasted, lattice) is not None

    def test_hasse_chain(self):
        assert hasse_dot(boolean_lattice(1)) == (
            'digraph "boolean-1" {\n'
            "  rankdir=BT;\n"
            "  node [shape=plaintext];\n"
            '  n0 [label="0"];\n'
            '  n1 [label="1"];\n'
            "  n0 -> n1;\n"
            "}\n"
        )

    def test_hasse_diamond(self):
        assert hasse_dot(boolean_lattice(2)) == (
            'digraph "boolean-2" {\n'
            "  rankdir=BT;\n"
            "  node [shape=plaintext];\n"
            '  n0 [label="0"];\n'
            '  n1 [label="p0"];\n'
            '  n2 [label="p1"];\n'
            '  n3 [label="1"];\n'
            "  n0 -> n1;\n"
            "  n0 -> n2;\n"
            "  n1 -> n3;\n"
            "  n2 -> n3;\n"
            "}\n"
        )


@st.composite
def partition_pairs(draw):
    size = draw(st.integers(min_value=2, max_value=6))
    cells = st.lists(st.integers(min_value=0, max_value=3), min_size=size, max_size=size)
    space = finite_space(size)
    return Partition.from_labels(space, draw(cells)), Partition.from_labels(space, draw(cells))


@settings(max_examples=200, deadline=None)
@given(partition_pairs())
def test_partition_logic_size_and_blocks(pair):
    F, G = pair
    shared = common_coarsening(F, G)
    try:
        lattice = partition_logic(F, G)
    except NotALattice:
        # 两个代数之并可以不是格，此时不讨论元素数
        return
    assert lattice.size == 2 ** F.n_cells + 2 ** G.n_cells - 2 ** shared.n_cells
    for block in laws(lattice).boolean_blocks:
        assert_sub_ortholattice(lattice, block)
