#!/usr/bin/env python3
"""
Тесты partial_cdc: условия C1/C2, графы D_v и расширение до вложения
"""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from embedding import singular_edges, trace_facial_walks
from errors import AngleCoverageError, FaceMissing, InternalDegreeError, NotAWalk, PartialCdcViolation
from graph_core import generate_random_cubic_bridgeless
from matching import perfect_matching, random_perfect_matching
from partial_cdc import (
    ClosedWalk,
    PartialCdc,
    angle_coverage,
    circuits_of_even_subgraph,
    extend_to_embedding,
    link_graphs,
    require_walks_are_faces,
    validate_partial_cdc,
    walks_are_faces,
)
from postman import partial_cdc_from_matching_postman, postman_from_tree, spanning_tree

OUTER = ClosedWalk((0, 1, 2, 3, 4), (0, 1, 2, 3, 4))
PENTAGRAM = ClosedWalk((5, 7, 9, 6, 8), (10, 12, 14, 11, 13))


class TestClosedWalk:
    def test_from_sequence(self):
        walk = ClosedWalk.from_sequence([0, 0, 1, 1, 0])
        assert walk.vertices == (0, 1)
        assert walk.edges == (0, 1)
        assert walk.sequence() == [0, 0, 1, 1, 0]

    @pytest.mark.parametrize("sequence", [[0, 0, 1], [0, 0, 1, 1, 2], [0, 0, 1, 1]])
    def test_bad_sequence(self, sequence):
        with pytest.raises(NotAWalk):
            ClosedWalk.from_sequence(sequence)

    def test_walk_must_follow_edges(self, petersen):
        with pytest.raises(NotAWalk):
            validate_partial_cdc(petersen, [ClosedWalk((0, 1, 2), (0, 1, 5))])

    def test_key_ignores_direction(self):
        assert OUTER.key() == ClosedWalk((0, 4, 3, 2, 1), (4, 3, 2, 1, 0)).key()


class TestValidation:
    def test_petersen_two_circuits(self, petersen):
        assert validate_partial_cdc(petersen, [OUTER, PENTAGRAM]).ok

    def test_same_circuit_twice(self, petersen):
        verdict = validate_partial_cdc(petersen, [OUTER, OUTER])
        assert not verdict.ok
        assert verdict.condition == "C1"
        assert verdict.walks == (0, 1)

    def test_reversed_duplicate_is_same_walk(self, petersen):
        reversed_outer = ClosedWalk((0, 4, 3, 2, 1), (4, 3, 2, 1, 0))
        assert validate_partial_cdc(petersen, [OUTER, reversed_outer]).condition == "C1"

    def test_theta_two_digons(self, theta):
        walks = [ClosedWalk((0, 1), (0, 1)), ClosedWalk((0, 1), (1, 2))]
        assert validate_partial_cdc(theta, walks).ok

    def test_theta_three_digons(self, theta):
        walks = [ClosedWalk((0, 1), (0, 1)), ClosedWalk((0, 1), (1, 2)), ClosedWalk((0, 1), (0, 2))]
        assert validate_partial_cdc(theta, walks).ok

    def test_triple_cover(self, petersen):
        through_spoke_6 = ClosedWalk((0, 1, 6, 9, 4), (0, 6, 14, 9, 4))
        through_spoke_7 = ClosedWalk((0, 1, 2, 7, 5), (0, 1, 7, 10, 5))
        verdict = validate_partial_cdc(petersen, [OUTER, through_spoke_6, through_spoke_7])
        assert not verdict.ok
        assert verdict.condition == "C1"
        assert verdict.edge == 0
        assert verdict.walks == (0, 1, 2)

    def test_reversed_triangle(self, k4):
        walks = [ClosedWalk((0, 1, 2), (0, 3, 1)), ClosedWalk((0, 2, 1), (1, 3, 0))]
        verdict = validate_partial_cdc(k4, walks)
        assert not verdict.ok

    def test_angle_violation(self, k4):
        # 0-1-2-0 и 0-1-3-2-0 проходят угол в вершине 0 между рёбрами 0 и 1
        walks = [ClosedWalk((0, 1, 2), (0, 3, 1)), ClosedWalk((0, 1, 3, 2), (0, 4, 5, 1))]
        verdict = validate_partial_cdc(k4, walks)
        assert not verdict.ok
        assert verdict.condition == "C2"
        assert verdict.angle == (0, 0, 1)
        assert verdict.walks == (0, 1)

    def test_link_graphs(self, petersen):
        pcdc = PartialCdc.from_walks(petersen, [OUTER, PENTAGRAM])
        graphs = link_graphs(petersen, pcdc)
        assert all(len(link.links) == 1 for link in graphs)
        assert all(link.degree(node) <= 2 for link in graphs for node in link.nodes)


class TestExtension:
    def test_theta_digons(self, theta):
        walks = [ClosedWalk((0, 1), (0, 1)), ClosedWalk((0, 1), (1, 2))]
        pcdc = PartialCdc.from_walks(theta, walks)
        emb = extend_to_embedding(theta, pcdc)
        faces = trace_facial_walks(theta, emb)
        assert walks_are_faces(faces, walks) == []
        assert len(faces) == 3
        assert singular_edges(faces) == frozenset()

    def test_petersen_circuits_are_faces(self, petersen):
        pcdc = PartialCdc.from_walks(petersen, [OUTER, PENTAGRAM])
        emb = extend_to_embedding(petersen, pcdc)
        faces = trace_facial_walks(petersen, emb)
        assert walks_are_faces(faces, pcdc.walks) == []
        assert len(singular_edges(faces)) >= 1

    def test_empty_partial_cdc(self, prism):
        emb = extend_to_embedding(prism, PartialCdc.from_walks(prism, []))
        faces = trace_facial_walks(prism, emb)
        assert sum(face.length for face in faces) == 2 * prism.m

    def test_invalid_input_rejected(self, petersen):
        with pytest.raises(PartialCdcViolation):
            extend_to_embedding(petersen, PartialCdc.from_walks(petersen, [OUTER, OUTER]))

    def test_deterministic(self, petersen):
        pcdc = PartialCdc.from_walks(petersen, [OUTER, PENTAGRAM])
        assert extend_to_embedding(petersen, pcdc) == extend_to_embedding(petersen, pcdc)

    @given(st.integers(min_value=2, max_value=12), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_covered_edges_are_regular(self, half, seed):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        m = perfect_matching(g)
        walks = circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in m))
        pcdc = PartialCdc.from_walks(g, walks)
        faces = trace_facial_walks(g, extend_to_embedding(g, pcdc))
        assert walks_are_faces(faces, walks) == []
        assert not singular_edges(faces) & pcdc.covered_edges


class TestAngles:
    def test_planar_k4(self, k4, k4_planar):
        assert len(angle_coverage(k4, trace_facial_walks(k4, k4_planar))) == 12

    def test_theta(self, theta, theta_planar):
        assert len(angle_coverage(theta, trace_facial_walks(theta, theta_planar))) == 6

    def test_petersen_any_embedding(self, petersen):
        pcdc = PartialCdc.from_walks(petersen, [OUTER, PENTAGRAM])
        faces = trace_facial_walks(petersen, extend_to_embedding(petersen, pcdc))
        assert len(angle_coverage(petersen, faces)) == 30

    def test_missing_face_detected(self, k4, k4_planar):
        faces = trace_facial_walks(k4, k4_planar)
        with pytest.raises(AngleCoverageError):
            angle_coverage(k4, faces[1:])


class TestCircuits:
    def test_complement_of_matching(self, petersen):
        spokes = set(range(5, 10))
        circuits = circuits_of_even_subgraph(petersen, (e for e in range(15) if e not in spokes))
        assert sorted(c.length for c in circuits) == [5, 5]
        assert {c.key() for c in circuits} == {OUTER.key(), PENTAGRAM.key()}

    def test_odd_degree_rejected(self, k4):
        with pytest.raises(InternalDegreeError):
            circuits_of_even_subgraph(k4, [0, 1])


def _fundamental_cycles(g, tree_edges):
    """Рёбра фундаментальных циклов остова: по одному на каждое ребро вне остова"""
    tree = nx.Graph()
    tree.add_nodes_from(range(g.n))
    for e in tree_edges:
        tree.add_edge(*g.edges[e], edge=e)
    cycles = []
    for e in range(g.m):
        if e in tree_edges:
            continue
        path = nx.shortest_path(tree, *g.edges[e])
        cycles.append({tree[a][b]["edge"] for a, b in zip(path, path[1:])} | {e})
    return cycles


def _random_even_subgraph(cycles, rng):
    chosen = set()
    for cycle in cycles:
        if rng.random() < 0.5:
            chosen ^= cycle
    return chosen


@pytest.mark.slow
class TestRandomCollections:
    def test_thousand_collections(self, random_tree):
        rng = np.random.default_rng(7)
        accepted = 0
        for _ in range(1000):
            g = generate_random_cubic_bridgeless(2 * int(rng.integers(2, 11)), int(rng.integers(0, 2**31)))
            cycles = _fundamental_cycles(g, random_tree(g, rng))
            layers = int(rng.integers(1, 4))
            walks = []
            for _ in range(layers):
                walks.extend(circuits_of_even_subgraph(g, _random_even_subgraph(cycles, rng)))

            verdict = validate_partial_cdc(g, walks)
            if layers == 1:
                # окружности одного чётного подграфа не пересекаются по рёбрам
                assert verdict.ok
            if not verdict.ok:
                continue
            accepted += 1
            faces = trace_facial_walks(g, extend_to_embedding(g, PartialCdc.from_walks(g, walks)))
            assert walks_are_faces(faces, walks) == []
        assert accepted > 0

    def test_pipeline_collections(self, random_tree):
        rng = np.random.default_rng(11)
        for _ in range(200):
            g = generate_random_cubic_bridgeless(2 * int(rng.integers(2, 11)), int(rng.integers(0, 2**31)))
            m = random_perfect_matching(g, int(rng.integers(0, 2**31)))
            j = postman_from_tree(g, spanning_tree(g, required_edges=random_tree(g, rng)))
            for pcdc in (PartialCdc.from_walks(g, circuits_of_even_subgraph(g, set(range(g.m)) - m)),
                         partial_cdc_from_matching_postman(g, m, j)):
                faces = trace_facial_walks(g, extend_to_embedding(g, pcdc))
                assert walks_are_faces(faces, pcdc.walks) == []


class TestFaceCheck:
    def test_non_face_walk_raises(self, k4, k4_planar):
        # 4-цикл 0-1-2-3 не является гранью плоского K4
        square = PartialCdc.from_walks(k4, [ClosedWalk((0, 1, 2, 3), (0, 3, 5, 2))])
        with pytest.raises(FaceMissing):
            require_walks_are_faces(trace_facial_walks(k4, k4_planar), square)

    def test_faces_pass(self, k4, k4_planar):
        faces = trace_facial_walks(k4, k4_planar)
        triangle = PartialCdc.from_walks(k4, [ClosedWalk(faces[0].vertices, faces[0].edges)])
        require_walks_are_faces(faces, triangle)


class TestSkippedValidation:
    def test_same_embedding(self, petersen):
        pcdc = PartialCdc.from_walks(petersen, [OUTER, PENTAGRAM])
        assert extend_to_embedding(petersen, pcdc, validate=False) == extend_to_embedding(petersen, pcdc)

    def test_invalid_input_is_not_checked(self, petersen):
        # без проверки C1 дублированный маршрут проходит до сигнатур
        extend_to_embedding(petersen, PartialCdc.from_walks(petersen, [OUTER, OUTER]), validate=False)
