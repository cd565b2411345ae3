#!/usr/bin/env python3
"""
📮 Postman - Остовные деревья, почтальонские множества и частичный CDC

Почтальонское множество J кубического графа: каждая вершина инцидентна
нечётному числу (1 или 3) рёбер J. Для любого остова T найдётся J ⊆ T,
и тогда G - J и M △ J дают частичный CDC.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

from errors import DisconnectedGraph, RequiredEdgesCyclic
from graph_core import DisjointSet, Multigraph
from partial_cdc import PartialCdc, circuits_of_even_subgraph

logger = logging.getLogger(__name__)

PostmanSet = FrozenSet[int]


@dataclass(frozen=True)
class SpanningTree:
    """Остов: множество рёбер и массив родителей (корень 0, у корня -1)"""
    edges: FrozenSet[int]
    parent: Tuple[int, ...]
    parent_edge: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


def _tree_from_edges(g: Multigraph, tree_edges: Iterable[int], root: int = 0) -> SpanningTree:
    tree_edges = frozenset(tree_edges)
    adjacency: List[List[int]] = [[] for _ in range(g.n)]
    for e in sorted(tree_edges):
        u, v = g.edges[e]
        adjacency[u].append(e)
        adjacency[v].append(e)

    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    if g.n:
        seen = [False] * g.n
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for e in adjacency[v]:
                w = g.other_endpoint(e, v)
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    parent_edge[w] = e
                    queue.append(w)
        if not all(seen):
            raise DisconnectedGraph("рёбра не образуют остов: граф несвязен")
    return SpanningTree(tree_edges, tuple(parent), tuple(parent_edge))


def spanning_tree(g: Multigraph, required_edges: Iterable[int] = (),
                  avoid_edges: Optional[Iterable[int]] = None) -> SpanningTree:
    """
    Остов, содержащий required_edges, дополненный обходом в ширину от 0

    Рёбра из avoid_edges берутся только если без них остов не достроить.
    """
    required = sorted(set(required_edges))
    avoid = set(avoid_edges or ())
    ds = DisjointSet(g.n)
    chosen = set()
    for e in required:
        u, v = g.edges[e]
        if not ds.union(u, v):
            raise RequiredEdgesCyclic(f"обязательные рёбра содержат цикл (ребро {e})")
        chosen.add(e)

    # порядок обхода в ширину от 0 с рёбрами по возрастанию номеров
    order: List[int] = []
    if g.n:
        seen = [False] * g.n
        seen[0] = True
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for d in g.incidence[v]:
                e = d >> 1
                order.append(e)
                w = g.edges[e][1 - (d & 1)]
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)

    for allow_avoided in (False, True):
        for e in order:
            if (e in avoid) != allow_avoided or e in chosen:
                continue
            u, v = g.edges[e]
            if ds.union(u, v):
                chosen.add(e)

    return _tree_from_edges(g, chosen)


def postman_from_tree(g: Multigraph, t: SpanningTree) -> PostmanSet:
    """
    J ⊆ T отщеплением листьев: метка 1 у вершин нечётной степени;
    ребро листа входит в J при метке 1, метка соседа меняется
    """
    label = [g.degree(v) % 2 for v in range(g.n)]
    remaining = [0] * g.n
    for e in t.edges:
        u, v = g.edges[e]
        remaining[u] += 1
        remaining[v] += 1

    tree_adj: List[List[int]] = [[] for _ in range(g.n)]
    for e in t.edges:
        u, v = g.edges[e]
        tree_adj[u].append(e)
        tree_adj[v].append(e)

    removed = [False] * g.n
    used_edge = set()
    queue = deque(v for v in range(g.n) if remaining[v] == 1)
    j = set()
    while queue:
        leaf = queue.popleft()
        if removed[leaf] or remaining[leaf] != 1:
            continue
        e = next(f for f in tree_adj[leaf] if f not in used_edge)
        other = g.other_endpoint(e, leaf)
        removed[leaf] = True
        used_edge.add(e)
        remaining[leaf] -= 1
        remaining[other] -= 1
        if label[leaf] == 1:
            j.add(e)
            label[other] ^= 1
        if remaining[other] == 1:
            queue.append(other)

    logger.debug("📮 почтальонское множество: |J| = %d, |T| = %d", len(j), len(t.edges))
    return frozenset(j)


def is_postman_set(g: Multigraph, j: Iterable[int]) -> bool:
    count = [0] * g.n
    for e in j:
        u, v = g.edges[e]
        count[u] += 1
        count[v] += 1
    return all(count[v] % 2 == g.degree(v) % 2 for v in range(g.n))


def partial_cdc_from_matching_postman(g, m: Iterable[int], j: Iterable[int]) -> PartialCdc:
    """C₁ = G - J и C₂ = M △ J, разложенные на окружности"""
    m, j = set(m), set(j)
    first = circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in j))
    second = circuits_of_even_subgraph(g, m ^ j)
    return PartialCdc.from_walks(g, first + second)
