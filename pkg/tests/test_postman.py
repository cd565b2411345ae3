#!/usr/bin/env python3
"""
Тесты postman: остовы с обязательными рёбрами и почтальонские множества
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embedding import singular_edges, trace_facial_walks
from errors import RequiredEdgesCyclic
from graph_core import generate_random_cubic_bridgeless
from matching import perfect_matching, random_perfect_matching
from partial_cdc import extend_to_embedding, validate_partial_cdc, walks_are_faces
from postman import is_postman_set, partial_cdc_from_matching_postman, postman_from_tree, spanning_tree


class TestSpanningTree:
    def test_size_and_parents(self, petersen):
        t = spanning_tree(petersen)
        assert t.size == petersen.n - 1
        assert t.parent[0] == -1
        assert all(t.parent_edge[v] in t.edges for v in range(1, petersen.n))

    def test_required_edges_kept(self, petersen):
        t = spanning_tree(petersen, required_edges={5, 6, 7})
        assert {5, 6, 7} <= t.edges

    def test_required_cycle_rejected(self, k4):
        with pytest.raises(RequiredEdgesCyclic):
            spanning_tree(k4, required_edges={0, 1, 3})

    def test_avoided_edges_used_only_when_needed(self, prism):
        t = spanning_tree(prism, avoid_edges={6, 7, 8})
        assert len(t.edges & {6, 7, 8}) == 1

    def test_theta(self, theta):
        assert spanning_tree(theta).edges == frozenset({0})


class TestPostman:
    def test_subset_of_tree(self, petersen):
        t = spanning_tree(petersen)
        j = postman_from_tree(petersen, t)
        assert j <= t.edges
        assert is_postman_set(petersen, j)

    def test_is_postman_set(self, k4, theta):
        assert is_postman_set(k4, {0, 5})
        assert not is_postman_set(k4, {0})
        assert is_postman_set(theta, {0, 1, 2})

    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_random_trees(self, half, seed):
        g = generate_random_cubic_bridgeless(max(4, 2 * half), seed)
        t = spanning_tree(g)
        j = postman_from_tree(g, t)
        assert j <= t.edges
        assert is_postman_set(g, j)


class TestPartialCdc:
    @given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_matching_and_postman(self, half, seed):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        m = perfect_matching(g)
        j = postman_from_tree(g, spanning_tree(g))
        pcdc = partial_cdc_from_matching_postman(g, m, j)
        assert validate_partial_cdc(g, pcdc).ok
        faces = trace_facial_walks(g, extend_to_embedding(g, pcdc))
        assert walks_are_faces(faces, pcdc.walks) == []
        # непокрытыми остаются только рёбра M ∩ J
        assert singular_edges(faces) <= m & j


def _even_degrees(g, edge_ids) -> bool:
    degree = [0] * g.n
    for e in edge_ids:
        u, v = g.edges[e]
        degree[u] += 1
        degree[v] += 1
    return all(d % 2 == 0 for d in degree)


@pytest.mark.slow
class TestRandomTreesAndMatchings:
    def test_thousand_pairs(self, random_tree):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = 2 * int(rng.integers(2, 11))
            g = generate_random_cubic_bridgeless(n, int(rng.integers(0, 2**31)))
            t = spanning_tree(g, required_edges=random_tree(g, rng))
            m = random_perfect_matching(g, int(rng.integers(0, 2**31)))
            j = postman_from_tree(g, t)

            assert j <= t.edges
            assert is_postman_set(g, j)
            assert _even_degrees(g, set(range(g.m)) - j)
            assert _even_degrees(g, m ^ j)
            pcdc = partial_cdc_from_matching_postman(g, m, j)
            assert validate_partial_cdc(g, pcdc).ok
