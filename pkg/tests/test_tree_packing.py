#!/usr/bin/env python3
"""
Тесты tree_packing: стягивание G - M, упаковка остовов и конвейер n/2k
"""

import pytest

from errors import BridgedGraph, CyclicConnectivityTooLow, PackingInfeasible
from graph_core import Multigraph, generate_k4
from matching import perfect_matching
from postman import is_postman_set
from tree_packing import contract_cycles, edge_disjoint_spanning_trees, nash_williams_witness, pipeline_cyclically_2k

# двухвершинный граф с пятью параллельными рёбрами
FIVE_BOND = Multigraph(2, ((0, 1),) * 5)


class TestContraction:
    def test_prism_rungs(self, prism):
        contracted = contract_cycles(prism, {6, 7, 8})
        assert contracted.h.n == 2
        assert contracted.h.m == 3
        assert contracted.edge_corr == (6, 7, 8)
        assert contracted.loops == frozenset()
        assert contracted.component_of[0] != contracted.component_of[3]

    def test_petersen_spokes(self, petersen):
        contracted = contract_cycles(petersen, range(5, 10))
        assert (contracted.h.n, contracted.h.m) == (2, 5)

    def test_matching_inside_hamiltonian_cycle(self, prism):
        # G - M - гамильтонов цикл 0-1-4-3-5-2-0, все рёбра M становятся петлями
        contracted = contract_cycles(prism, {1, 4, 6})
        assert contracted.h.n == 1
        assert contracted.h.m == 0
        assert contracted.loops == frozenset({1, 4, 6})


class TestPacking:
    def test_two_trees_in_bond(self):
        trees = edge_disjoint_spanning_trees(FIVE_BOND, 2)
        assert len(trees) == 2
        assert not trees[0].edges & trees[1].edges
        assert all(t.size == 1 for t in trees)

    def test_k4_packs_two_trees(self):
        k4 = generate_k4()
        trees = edge_disjoint_spanning_trees(k4, 2)
        assert all(t.size == 3 for t in trees)
        assert not trees[0].edges & trees[1].edges

    def test_k4_cannot_pack_three(self):
        with pytest.raises(PackingInfeasible) as info:
            edge_disjoint_spanning_trees(generate_k4(), 3)
        partition, crossing = info.value.partition, info.value.crossing
        assert crossing < 3 * (len(partition) - 1)
        assert sorted(v for part in partition for v in part) == [0, 1, 2, 3]

    def test_bond_witness(self):
        assert nash_williams_witness(FIVE_BOND, 5) is None
        parts, crossing = nash_williams_witness(FIVE_BOND, 6)
        assert len(parts) == 2
        assert crossing == 5

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            edge_disjoint_spanning_trees(FIVE_BOND, 0)


class TestPipeline:
    def test_petersen(self, petersen):
        outcome = pipeline_cyclically_2k(petersen, 2)
        assert outcome.connectivity_checked
        assert outcome.smallest_tree.size == 1
        assert len(outcome.report.singular) <= 2
        assert is_postman_set(petersen, outcome.postman)
        assert outcome.postman <= outcome.spanning_tree.edges
        embedding, report = outcome
        assert embedding == outcome.embedding

    def test_g5(self, g5):
        outcome = pipeline_cyclically_2k(g5, 2)
        assert outcome.smallest_tree.size <= g5.n // 4
        assert len(outcome.report.singular) <= outcome.smallest_tree.size

    def test_given_matching(self, mobius8):
        m = perfect_matching(mobius8)
        assert pipeline_cyclically_2k(mobius8, 2, matching=m).matching == m

    def test_low_connectivity(self, prism):
        with pytest.raises(CyclicConnectivityTooLow):
            pipeline_cyclically_2k(prism, 2)
        assert len(pipeline_cyclically_2k(prism, 1).report.singular) <= 3

    def test_infinite_connectivity(self, k4):
        with pytest.raises(CyclicConnectivityTooLow):
            pipeline_cyclically_2k(k4, 2)

    def test_bridge(self, bridged):
        with pytest.raises(BridgedGraph):
            pipeline_cyclically_2k(bridged, 1)

    def test_unchecked_connectivity_warns(self, petersen):
        outcome = pipeline_cyclically_2k(petersen, 2, check_connectivity=False)
        assert not outcome.connectivity_checked
        assert outcome.warnings
