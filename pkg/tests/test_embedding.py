#!/usr/bin/env python3
"""
Тесты embedding: трассировка граней, сингулярные рёбра, характеристики поверхности
"""

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from embedding import (
    Embedding,
    TraversalState,
    bender_richmond_bound,
    canonical_walk_key,
    embedding_count,
    enumerate_embeddings,
    facial_walk_from,
    flip_vertex,
    is_orientable,
    planar_embedding,
    rotation_tables,
    singular_edges,
    surface_stats,
    trace_facial_walks,
    trivial_embedding,
    validate_embedding,
    verify_fdc,
)
from errors import EmbeddingFormatError, TooLarge
from graph_core import generate_random_cubic_bridgeless


def _keys(faces):
    return Counter(face.canonical_key for face in faces)


class TestCanonicalKey:
    def test_shift_and_reversal(self):
        key = canonical_walk_key((0, 1, 2), (10, 11, 12))
        assert canonical_walk_key((1, 2, 0), (11, 12, 10)) == key
        # обратный обход 0 -12- 2 -11- 1 -10- 0
        assert canonical_walk_key((0, 2, 1), (12, 11, 10)) == key

    def test_distinct_walks(self):
        assert canonical_walk_key((0, 1), (0, 1)) != canonical_walk_key((0, 1), (1, 2))


class TestTracing:
    def test_planar_k4(self, k4, k4_planar):
        faces = trace_facial_walks(k4, k4_planar)
        assert len(faces) == 4
        assert all(face.length == 3 for face in faces)
        assert singular_edges(faces) == frozenset()

    def test_planar_theta(self, theta, theta_planar):
        faces = trace_facial_walks(theta, theta_planar)
        assert sorted(face.length for face in faces) == [2, 2, 2]

    def test_trivial_embedding_k4_single_face(self, k4):
        faces = trace_facial_walks(k4, trivial_embedding(k4))
        assert sum(face.length for face in faces) == 12

    def test_bridge_is_always_singular(self, bridged):
        for emb in (trivial_embedding(bridged), flip_vertex(trivial_embedding(bridged), bridged, 4)):
            assert 14 in singular_edges(trace_facial_walks(bridged, emb))

    def test_planar_embedding_from_networkx(self, k4, prism, petersen, theta):
        for g in (k4, prism, theta):
            emb = planar_embedding(g)
            report = surface_stats(g, emb, trace_facial_walks(g, emb))
            assert report.euler_characteristic == 2
            assert report.singular == frozenset()
        assert planar_embedding(petersen) is None

    def test_validation(self, k4, k4_planar):
        with pytest.raises(EmbeddingFormatError):
            validate_embedding(k4, Embedding(k4_planar.pi[:3], k4_planar.signature))
        with pytest.raises(EmbeddingFormatError):
            validate_embedding(k4, Embedding(((0, 2, 6),) + k4_planar.pi[1:], k4_planar.signature))
        with pytest.raises(EmbeddingFormatError):
            validate_embedding(k4, Embedding(k4_planar.pi, (1, 1, 1, 1, 1, 0)))

    @given(st.integers(min_value=2, max_value=12), st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=0, max_value=2 ** 30))
    @settings(max_examples=40, deadline=None)
    def test_conservation_and_double_cover(self, half, seed, bits):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        base = trivial_embedding(g)
        signature = tuple(-1 if (bits >> e) & 1 else 1 for e in range(g.m))
        pi = tuple(darts if (bits >> (v % 30)) & 1 else tuple(reversed(darts)) for v, darts in enumerate(base.pi))
        emb = Embedding(pi, signature)
        faces = trace_facial_walks(g, emb)
        assert sum(face.length for face in faces) == 2 * g.m
        usage = Counter(e for face in faces for e in face.edges)
        assert all(usage[e] == 2 for e in range(g.m))
        assert verify_fdc(g, emb).ok

    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=0, max_value=15))
    @settings(max_examples=30, deadline=None)
    def test_flip_invariance(self, half, seed, vertex):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        emb = Embedding(trivial_embedding(g).pi, tuple(1 if e % 3 else -1 for e in range(g.m)))
        flipped = flip_vertex(emb, g, vertex % g.n)
        assert _keys(trace_facial_walks(g, emb)) == _keys(trace_facial_walks(g, flipped))


class TestTraversalState:
    def test_planar_k4_triangle(self, k4, k4_planar):
        face = facial_walk_from(k4, k4_planar, TraversalState.start(k4_planar, 0, 0, 1))
        assert face.length == 3
        assert face.canonical_key in _keys(trace_facial_walks(k4, k4_planar))

    def test_start_includes_first_signature(self, k4, k4_planar):
        emb = Embedding(k4_planar.pi, (-1, 1, 1, 1, 1, 1))
        assert TraversalState.start(emb, 0, 0, 1).side == -1
        assert TraversalState.start(emb, 0, 0, -1).side == 1

    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=0, max_value=2 ** 24))
    @settings(max_examples=30, deadline=None)
    def test_side_is_running_product(self, half, seed, bits):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        emb = Embedding(trivial_embedding(g).pi, tuple(-1 if (bits >> e) & 1 else 1 for e in range(g.m)))
        keys = _keys(trace_facial_walks(g, emb))
        for seed_sign in (1, -1):
            start = TraversalState.start(emb, g.edges[0][0], 0, seed_sign)
            face = facial_walk_from(g, emb, start)
            assert face.canonical_key in keys

            product = seed_sign
            state = start
            for e in face.edges:
                assert state.current_edge == e
                product *= emb.signature[e]
                assert state.side == product
                state = state.advance(g, emb, *rotation_tables(g, emb))
            assert state == start


class TestSurface:
    def test_planar_k4_report(self, k4, k4_planar):
        report = surface_stats(k4, k4_planar, trace_facial_walks(k4, k4_planar))
        assert report.euler_characteristic == 2
        assert report.orientable
        assert report.genus_like == 0
        assert report.bender_richmond_bound == 0
        assert report.surface_name == "sphere"

    def test_theta_report(self, theta, theta_planar):
        report = surface_stats(theta, theta_planar, trace_facial_walks(theta, theta_planar))
        assert report.euler_characteristic == 2

    def test_orientability(self, k4, k4_planar):
        assert is_orientable(k4, k4_planar)
        assert is_orientable(k4, flip_vertex(k4_planar, k4, 2))
        # один отрицательный знак на треугольнике 0-1-2
        assert not is_orientable(k4, Embedding(k4_planar.pi, (-1, 1, 1, 1, 1, 1)))

    def test_bender_richmond_cases(self):
        assert bender_richmond_bound(True, 0) == 0
        assert bender_richmond_bound(True, 2) == 9
        assert bender_richmond_bound(False, 1) == 1
        assert bender_richmond_bound(False, 3) == 6

    @given(st.integers(min_value=2, max_value=8), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_orientable_chi_is_even(self, half, seed):
        g = generate_random_cubic_bridgeless(2 * half, seed)
        emb = trivial_embedding(g)
        report = surface_stats(g, emb, trace_facial_walks(g, emb))
        assert report.orientable
        assert report.euler_characteristic % 2 == 0
        assert report.euler_characteristic <= 2


class TestEnumeration:
    def test_counts(self, k4, theta):
        assert embedding_count(k4) == 128
        assert sum(1 for _ in enumerate_embeddings(k4)) == 128
        assert sum(1 for _ in enumerate_embeddings(theta)) == 16

    def test_petersen_count(self, petersen):
        assert embedding_count(petersen) == 65536

    def test_prefix_partition(self, k4):
        whole = set(enumerate_embeddings(k4))
        parts = set(enumerate_embeddings(k4, rotation_prefix=(0,))) | set(enumerate_embeddings(k4, rotation_prefix=(1,)))
        assert parts == whole

    def test_guard(self, petersen):
        with pytest.raises(TooLarge):
            next(enumerate_embeddings(petersen, max_vertices=8))
