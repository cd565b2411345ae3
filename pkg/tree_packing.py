#!/usr/bin/env python3
"""
🌲 Tree Packing - Сжатие G - M и упаковка рёберно-непересекающихся остовов

Компоненты G - M стягиваются в вершины графа H, рёбра H соответствуют
рёбрам M. Упаковка k остовов в H строится объединением k графовых
матроидов (кратчайшие увеличивающие пути в графе обменов); при неудаче
возвращается разбиение Нэш-Вильямса как свидетельство.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from embedding import Embedding, FdcReport, surface_stats, trace_facial_walks
from errors import BoundViolated, BridgedGraph, CyclicConnectivityTooLow, PackingInfeasible
from graph_core import (
    INFINITE,
    CubicGraph,
    Multigraph,
    connected_components,
    cyclic_edge_connectivity,
    find_bridges,
    require_connected,
)
from matching import perfect_matching
from partial_cdc import PartialCdc, extend_to_embedding, require_walks_are_faces
from postman import SpanningTree, _tree_from_edges, partial_cdc_from_matching_postman, postman_from_tree, spanning_tree
from settings import load_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContractedMultigraph:
    """H = G / компоненты (G - M); edge_corr[h-ребро] = ребро M"""
    h: Multigraph
    component_of: Tuple[int, ...]
    edge_corr: Tuple[int, ...]
    loops: FrozenSet[int]


def contract_cycles(g: CubicGraph, m: Iterable[int]) -> ContractedMultigraph:
    """Стянуть каждую компоненту G - M в вершину; рёбра M внутри компоненты - петли, отбрасываются"""
    m = set(m)
    comps = connected_components(g, edge_ids=(e for e in range(g.m) if e not in m))
    component_of = [0] * g.n
    for index, comp in enumerate(comps):
        for v in comp:
            component_of[v] = index

    h_edges, corr, loops = [], [], set()
    for e in sorted(m):
        u, v = g.edges[e]
        cu, cv = component_of[u], component_of[v]
        if cu == cv:
            loops.add(e)
            continue
        h_edges.append((cu, cv))
        corr.append(e)

    h = Multigraph(len(comps), tuple(h_edges))
    logger.debug("🪢 H: %d вершин, %d рёбер, %d петель отброшено", h.n, h.m, len(loops))
    return ContractedMultigraph(h, tuple(component_of), tuple(corr), frozenset(loops))


class _ForestPacking:
    """k непересекающихся лесов и граф обменов объединения графовых матроидов"""

    def __init__(self, h: Multigraph, k: int):
        self.h = h
        self.k = k
        self.owner = [-1] * h.m
        self.adj: List[List[Set[int]]] = [[set() for _ in range(h.n)] for _ in range(k)]
        self.sizes = [0] * k

    def _add(self, e: int, i: int):
        u, v = self.h.edges[e]
        self.adj[i][u].add(e)
        self.adj[i][v].add(e)
        self.owner[e] = i
        self.sizes[i] += 1

    def _remove(self, e: int):
        i = self.owner[e]
        u, v = self.h.edges[e]
        self.adj[i][u].discard(e)
        self.adj[i][v].discard(e)
        self.owner[e] = -1
        self.sizes[i] -= 1

    def forest_path(self, i: int, u: int, v: int) -> Optional[List[int]]:
        """Рёбра пути u -> v в лесу i или None, если u и v в разных деревьях"""
        if u == v:
            return []
        via = {u: -1}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for e in self.adj[i][x]:
                y = self.h.other_endpoint(e, x)
                if y in via:
                    continue
                via[y] = e
                if y == v:
                    path = []
                    while y != u:
                        path.append(via[y])
                        y = self.h.other_endpoint(via[y], y)
                    return path
                queue.append(y)
        return None

    def _explore(self, sources: Iterable[int]):
        """Обход графа обменов в ширину: (ребро-сток, лес, предки) или (None, None, предки)"""
        prev: Dict[int, Tuple[Optional[int], Optional[int]]] = {}
        queue = deque()
        for s in sources:
            prev[s] = (None, None)
            queue.append(s)
        while queue:
            x = queue.popleft()
            u, v = self.h.edges[x]
            for i in range(self.k):
                if i == self.owner[x]:
                    continue
                path = self.forest_path(i, u, v)
                if path is None:
                    return x, i, prev
                for y in path:
                    if y not in prev:
                        prev[y] = (x, i)
                        queue.append(y)
        return None, None, prev

    def insert(self, e: int) -> bool:
        sink, forest, prev = self._explore([e])
        if sink is None:
            return False
        current, target = sink, forest
        while current is not None:
            if self.owner[current] >= 0:
                self._remove(current)
            self._add(current, target)
            current, target = prev[current]
        return True

    def complete(self) -> bool:
        return all(size == self.h.n - 1 for size in self.sizes)

    def witness(self, unplaced: List[int]) -> Tuple[List[List[int]], int]:
        """Разбиение по компонентам достижимых рёбер и число пересекающих его рёбер"""
        _, _, prev = self._explore(unplaced)
        parts = connected_components(self.h, edge_ids=prev.keys())
        part_of = {}
        for index, part in enumerate(parts):
            for v in part:
                part_of[v] = index
        crossing = sum(1 for u, v in self.h.edges if part_of[u] != part_of[v])
        return parts, crossing


def edge_disjoint_spanning_trees(h: Multigraph, k: int) -> List[SpanningTree]:
    """
    k попарно рёберно-непересекающихся остовов H

    Raises:
        PackingInfeasible: с разбиением P, которое пересекают меньше k(|P|-1) рёбер
    """
    if k < 1:
        raise ValueError(f"k должно быть >= 1, получено {k}")
    packing = _ForestPacking(h, k)
    unplaced = []
    for e in range(h.m):
        if packing.complete():
            break
        if not packing.insert(e):
            unplaced.append(e)

    if not packing.complete():
        parts, crossing = packing.witness(unplaced)
        raise PackingInfeasible(k, parts, crossing)

    trees = []
    for i in range(k):
        tree_edges = [e for e in range(h.m) if packing.owner[e] == i]
        trees.append(_tree_from_edges(h, tree_edges))
    logger.debug("🌲 упаковано %d остовов по %d рёбер", k, h.n - 1)
    return trees


def nash_williams_witness(h: Multigraph, k: int) -> Optional[Tuple[List[List[int]], int]]:
    """Разбиение, запрещающее упаковку k остовов, или None, если упаковка существует"""
    try:
        edge_disjoint_spanning_trees(h, k)
    except PackingInfeasible as e:
        return e.partition, e.crossing
    return None


@dataclass
class CyclicPackingResult:
    """Результат конвейера упаковки: вложение, отчёт и все промежуточные объекты"""
    embedding: Embedding
    report: FdcReport
    matching: FrozenSet[int]
    contracted: ContractedMultigraph
    trees: List[SpanningTree]
    smallest_tree: SpanningTree
    spanning_tree: SpanningTree
    postman: FrozenSet[int]
    pcdc: PartialCdc
    k: int
    connectivity_checked: bool
    warnings: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter((self.embedding, self.report))


def pipeline_cyclically_2k(g: CubicGraph, k: int, matching: Optional[Iterable[int]] = None,
                           check_connectivity: bool = True,
                           max_vertices: Optional[int] = None) -> CyclicPackingResult:
    """
    Вложение не более чем с n/2k сингулярными рёбрами для циклически
    2k-рёберно-связного графа: M, стягивание, k остовов в H, наименьший
    остов T_H, подъём до остова T_G, J ⊆ T_G, C₁ = G - J, C₂ = M △ J.
    """
    if k < 1:
        raise ValueError(f"k должно быть >= 1, получено {k}")
    require_connected(g)
    bridges = find_bridges(g)
    if bridges:
        raise BridgedGraph(bridges)

    warnings: List[str] = []
    checked = False
    limit = max_vertices if max_vertices is not None else load_settings().cyclic_search_max_vertices
    if check_connectivity and g.n <= limit:
        lam = cyclic_edge_connectivity(g, max_vertices=limit)
        checked = True
        if lam == INFINITE:
            raise CyclicConnectivityTooLow("циклическая связность бесконечна: теорема неприменима")
        if lam < 2 * k:
            raise CyclicConnectivityTooLow(f"циклическая связность {lam} < 2k = {2 * k}")
    else:
        note = f"циклическая {2 * k}-рёберная связность не проверена (n = {g.n}), принята на веру"
        warnings.append(note)
        logger.warning("⚠️ %s", note)

    m = frozenset(matching) if matching is not None else perfect_matching(g)
    contracted = contract_cycles(g, m)
    trees = edge_disjoint_spanning_trees(contracted.h, k)
    smallest = min(trees, key=lambda t: t.size)

    lifted = {contracted.edge_corr[e] for e in smallest.edges}
    tree_g = spanning_tree(g, lifted, avoid_edges=m - lifted)
    j = postman_from_tree(g, tree_g)
    pcdc = partial_cdc_from_matching_postman(g, m, j)
    emb = extend_to_embedding(g, pcdc, validate=False)
    faces = trace_facial_walks(g, emb)
    require_walks_are_faces(faces, pcdc)
    report = surface_stats(g, emb, faces)

    tree_size = smallest.size
    if tree_size > g.n // (2 * k):
        raise BoundViolated("|E(T_H)| <= n/2k", tree_size, g.n // (2 * k))
    if len(m & j) > tree_size:
        raise BoundViolated("|M ∩ J| <= |E(T_H)|", len(m & j), tree_size)
    if len(report.singular) > tree_size:
        raise BoundViolated("сингулярных <= |E(T_H)|", len(report.singular), tree_size)

    logger.info("🌲 упаковка k=%d: |T_H| = %d, сингулярных %d", k, tree_size, len(report.singular))
    return CyclicPackingResult(
        embedding=emb,
        report=report,
        matching=m,
        contracted=contracted,
        trees=trees,
        smallest_tree=smallest,
        spanning_tree=tree_g,
        postman=j,
        pcdc=pcdc,
        k=k,
        connectivity_checked=checked,
        warnings=warnings,
    )
