#!/usr/bin/env python3
"""
💞 Matching - Совершенные паросочетания кубических графов

Взвешенный алгоритм цветков (primal-dual, целочисленные двойственные
переменные) для совершенного паросочетания минимального веса, цикл
отсекающих плоскостей для паросочетания без 3-разрезов и второе
паросочетание с малым пересечением.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

import numpy as np

from errors import BoundViolated, CutAvoidanceFailed, NoPerfectMatching
from graph_core import CubicGraph, Multigraph, enumerate_3_edge_cuts
from settings import load_settings

logger = logging.getLogger(__name__)

Matching = FrozenSet[int]


class _Blossom:
    """Нетривиальный цветок: дочерние подцветки по кругу от базы и соединяющие их рёбра"""

    __slots__ = ("childs", "edges", "mybestedges")

    def __init__(self):
        self.childs: list = []
        self.edges: List[Tuple[int, int]] = []
        self.mybestedges: Optional[List[Tuple[int, int]]] = None

    def leaves(self):
        stack = list(self.childs)
        while stack:
            t = stack.pop()
            if isinstance(t, _Blossom):
                stack.extend(t.childs)
            else:
                yield t


class _BlossomMatcher:
    """
    Паросочетание максимального веса среди паросочетаний максимальной
    мощности (вершины 0..n-1, веса целые, двойственные переменные удвоены)
    """

    def __init__(self, n: int, weights: Mapping[Tuple[int, int], int],
                 initial: Optional[Mapping[int, int]] = None):
        self.n = n
        self.weight: Dict[Tuple[int, int], int] = {}
        self.neighbors: List[List[int]] = [[] for _ in range(n)]
        for (u, v), w in weights.items():
            if u == v:
                continue
            self.weight[(u, v)] = w
            self.weight[(v, u)] = w
            self.neighbors[u].append(v)
            self.neighbors[v].append(u)
        maxweight = max(weights.values(), default=0)

        # начальное паросочетание допустимо только при равных весах (все рёбра жёсткие)
        self.mate: Dict[int, int] = dict(initial or {})
        self.label: dict = {}
        self.labeledge: dict = {}
        self.inblossom: dict = {v: v for v in range(n)}
        self.blossomparent: dict = {v: None for v in range(n)}
        self.blossombase: dict = {v: v for v in range(n)}
        self.bestedge: dict = {}
        self.dualvar: Dict[int, int] = {v: maxweight for v in range(n)}
        self.blossomdual: dict = {}
        self.allowedge: Set[Tuple[int, int]] = set()
        self.queue: List[int] = []

    def slack(self, v: int, w: int) -> int:
        return self.dualvar[v] + self.dualvar[w] - 2 * self.weight[(v, w)]

    def assign_label(self, w: int, t: int, v: Optional[int]):
        while True:
            b = self.inblossom[w]
            self.label[w] = self.label[b] = t
            edge = (v, w) if v is not None else None
            self.labeledge[w] = self.labeledge[b] = edge
            self.bestedge[w] = self.bestedge[b] = None
            if t == 1:
                if isinstance(b, _Blossom):
                    self.queue.extend(b.leaves())
                else:
                    self.queue.append(b)
                return
            # T-цветок: метка S переходит к партнёру базы
            base = self.blossombase[b]
            w, t, v = self.mate[base], 1, base

    def scan_blossom(self, v: int, w: int):
        """Обратный проход от v и w: база нового цветка или None для увеличивающего пути"""
        path = []
        base = None
        current: Optional[int] = v
        other: Optional[int] = w
        while current is not None:
            b = self.inblossom[current]
            if self.label[b] & 4:
                base = self.blossombase[b]
                break
            path.append(b)
            self.label[b] = 5
            if self.labeledge[b] is None:
                current = None
            else:
                current = self.labeledge[b][0]
                b = self.inblossom[current]
                current = self.labeledge[b][0]
            if other is not None:
                current, other = other, current
        for b in path:
            self.label[b] = 1
        return base

    def add_blossom(self, base: int, v: int, w: int):
        bb = self.inblossom[base]
        bv = self.inblossom[v]
        bw = self.inblossom[w]
        b = _Blossom()
        self.blossombase[b] = base
        self.blossomparent[b] = None
        self.blossomparent[bb] = b
        path = b.childs
        edgs = b.edges
        edgs.append((v, w))
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            edgs.append(self.labeledge[bv])
            v = self.labeledge[bv][0]
            bv = self.inblossom[v]
        path.append(bb)
        path.reverse()
        edgs.reverse()
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            edgs.append((self.labeledge[bw][1], self.labeledge[bw][0]))
            w = self.labeledge[bw][0]
            bw = self.inblossom[w]
        self.label[b] = 1
        self.labeledge[b] = self.labeledge[bb]
        self.blossomdual[b] = 0
        for leaf in b.leaves():
            if self.label[self.inblossom[leaf]] == 2:
                self.queue.append(leaf)
            self.inblossom[leaf] = b

        bestedgeto: dict = {}
        for sub in path:
            if isinstance(sub, _Blossom):
                if sub.mybestedges is not None:
                    nblist = sub.mybestedges
                    sub.mybestedges = None
                else:
                    nblist = [(x, y) for x in sub.leaves() for y in self.neighbors[x]]
            else:
                nblist = [(sub, y) for y in self.neighbors[sub]]
            for i, j in nblist:
                if self.inblossom[j] == b:
                    i, j = j, i
                bj = self.inblossom[j]
                if (bj != b and self.label.get(bj) == 1
                        and (bj not in bestedgeto or self.slack(i, j) < self.slack(*bestedgeto[bj]))):
                    bestedgeto[bj] = (i, j)
            self.bestedge[sub] = None
        b.mybestedges = list(bestedgeto.values())
        best = None
        best_slack = None
        for k in b.mybestedges:
            k_slack = self.slack(*k)
            if best is None or k_slack < best_slack:
                best, best_slack = k, k_slack
        self.bestedge[b] = best

    def expand_blossom(self, b: _Blossom, endstage: bool):
        stack = [self._expand(b, endstage)]
        while stack:
            top = stack[-1]
            for sub in top:
                stack.append(self._expand(sub, endstage))
                break
            else:
                stack.pop()

    def _expand(self, b: _Blossom, endstage: bool):
        for s in b.childs:
            self.blossomparent[s] = None
            if isinstance(s, _Blossom):
                if endstage and self.blossomdual[s] == 0:
                    yield s
                else:
                    for leaf in s.leaves():
                        self.inblossom[leaf] = s
            else:
                self.inblossom[s] = s

        if not endstage and self.label.get(b) == 2:
            entrychild = self.inblossom[self.labeledge[b][1]]
            j = b.childs.index(entrychild)
            if j & 1:
                j -= len(b.childs)
                jstep = 1
            else:
                jstep = -1
            v, w = self.labeledge[b]
            while j != 0:
                if jstep == 1:
                    p, q = b.edges[j]
                else:
                    q, p = b.edges[j - 1]
                self.label[w] = None
                self.label[q] = None
                self.assign_label(w, 2, v)
                self.allowedge.add((p, q))
                self.allowedge.add((q, p))
                j += jstep
                if jstep == 1:
                    v, w = b.edges[j]
                else:
                    w, v = b.edges[j - 1]
                self.allowedge.add((v, w))
                self.allowedge.add((w, v))
                j += jstep
            bw = b.childs[j]
            self.label[w] = self.label[bw] = 2
            self.labeledge[w] = self.labeledge[bw] = (v, w)
            self.bestedge[bw] = None
            j += jstep
            while b.childs[j] != entrychild:
                bv = b.childs[j]
                if self.label.get(bv) == 1:
                    j += jstep
                    continue
                if isinstance(bv, _Blossom):
                    reached = None
                    for leaf in bv.leaves():
                        if self.label.get(leaf):
                            reached = leaf
                            break
                else:
                    reached = bv if self.label.get(bv) else None
                if reached is not None:
                    self.label[reached] = None
                    self.label[self.mate[self.blossombase[bv]]] = None
                    self.assign_label(reached, 2, self.labeledge[reached][0])
                j += jstep

        self.label.pop(b, None)
        self.labeledge.pop(b, None)
        self.bestedge.pop(b, None)
        del self.blossomparent[b]
        del self.blossombase[b]
        del self.blossomdual[b]

    def augment_blossom(self, b: _Blossom, v: int):
        stack = [self._augment(b, v)]
        while stack:
            top = stack[-1]
            for args in top:
                stack.append(self._augment(*args))
                break
            else:
                stack.pop()

    def _augment(self, b: _Blossom, v: int):
        t = v
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if isinstance(t, _Blossom):
            yield (t, v)
        i = j = b.childs.index(t)
        if i & 1:
            j -= len(b.childs)
            jstep = 1
        else:
            jstep = -1
        while j != 0:
            j += jstep
            t = b.childs[j]
            if jstep == 1:
                w, x = b.edges[j]
            else:
                x, w = b.edges[j - 1]
            if isinstance(t, _Blossom):
                yield (t, w)
            j += jstep
            t = b.childs[j]
            if isinstance(t, _Blossom):
                yield (t, x)
            self.mate[w] = x
            self.mate[x] = w
        b.childs = b.childs[i:] + b.childs[:i]
        b.edges = b.edges[i:] + b.edges[:i]
        self.blossombase[b] = self.blossombase[b.childs[0]]

    def augment_matching(self, v: int, w: int):
        for s, j in ((v, w), (w, v)):
            while True:
                bs = self.inblossom[s]
                if isinstance(bs, _Blossom):
                    self.augment_blossom(bs, s)
                self.mate[s] = j
                if self.labeledge[bs] is None:
                    break
                t = self.labeledge[bs][0]
                bt = self.inblossom[t]
                s, j = self.labeledge[bt]
                if isinstance(bt, _Blossom):
                    self.augment_blossom(bt, j)
                self.mate[j] = s

    def run(self) -> Dict[int, int]:
        stages = 0
        while True:
            stages += 1
            self.label.clear()
            self.labeledge.clear()
            self.bestedge.clear()
            for b in self.blossomdual:
                b.mybestedges = None
            self.allowedge.clear()
            self.queue.clear()

            for v in range(self.n):
                if v not in self.mate and self.label.get(self.inblossom[v]) is None:
                    self.assign_label(v, 1, None)

            augmented = False
            while True:
                while self.queue and not augmented:
                    v = self.queue.pop()
                    for w in self.neighbors[v]:
                        bv = self.inblossom[v]
                        bw = self.inblossom[w]
                        if bv == bw:
                            continue
                        k_slack = None
                        if (v, w) not in self.allowedge:
                            k_slack = self.slack(v, w)
                            if k_slack <= 0:
                                self.allowedge.add((v, w))
                                self.allowedge.add((w, v))
                        if (v, w) in self.allowedge:
                            if self.label.get(bw) is None:
                                self.assign_label(w, 2, v)
                            elif self.label.get(bw) == 1:
                                base = self.scan_blossom(v, w)
                                if base is not None:
                                    self.add_blossom(base, v, w)
                                else:
                                    self.augment_matching(v, w)
                                    augmented = True
                                    break
                            elif self.label.get(w) is None:
                                self.label[w] = 2
                                self.labeledge[w] = (v, w)
                        elif self.label.get(bw) == 1:
                            if self.bestedge.get(bv) is None or k_slack < self.slack(*self.bestedge[bv]):
                                self.bestedge[bv] = (v, w)
                        elif self.label.get(w) is None:
                            if self.bestedge.get(w) is None or k_slack < self.slack(*self.bestedge[w]):
                                self.bestedge[w] = (v, w)

                if augmented:
                    break

                # увеличивающего пути по жёстким рёбрам нет: сдвиг двойственных переменных
                deltatype = -1
                delta = None
                deltaedge = None
                deltablossom = None

                for v in range(self.n):
                    if self.label.get(self.inblossom[v]) is None and self.bestedge.get(v) is not None:
                        d = self.slack(*self.bestedge[v])
                        if deltatype == -1 or d < delta:
                            delta, deltatype, deltaedge = d, 2, self.bestedge[v]

                for b in list(self.blossomparent):
                    if (self.blossomparent[b] is None and self.label.get(b) == 1
                            and self.bestedge.get(b) is not None):
                        k_slack = self.slack(*self.bestedge[b])
                        d = k_slack // 2
                        if deltatype == -1 or d < delta:
                            delta, deltatype, deltaedge = d, 3, self.bestedge[b]

                for b in self.blossomdual:
                    if (self.blossomparent[b] is None and self.label.get(b) == 2
                            and (deltatype == -1 or self.blossomdual[b] < delta)):
                        delta, deltatype, deltablossom = self.blossomdual[b], 4, b

                if deltatype == -1:
                    # оптимум среди паросочетаний максимальной мощности
                    deltatype = 1
                    delta = max(0, min(self.dualvar.values(), default=0))

                for v in range(self.n):
                    top_label = self.label.get(self.inblossom[v])
                    if top_label == 1:
                        self.dualvar[v] -= delta
                    elif top_label == 2:
                        self.dualvar[v] += delta
                for b in self.blossomdual:
                    if self.blossomparent[b] is None:
                        if self.label.get(b) == 1:
                            self.blossomdual[b] += delta
                        elif self.label.get(b) == 2:
                            self.blossomdual[b] -= delta

                if deltatype == 1:
                    break
                if deltatype in (2, 3):
                    v, w = deltaedge
                    self.allowedge.add((v, w))
                    self.allowedge.add((w, v))
                    self.queue.append(v)
                else:
                    self.expand_blossom(deltablossom, False)

            if not augmented:
                break

            for b in list(self.blossomdual):
                if b not in self.blossomdual:
                    continue
                if self.blossomparent[b] is None and self.label.get(b) == 1 and self.blossomdual[b] == 0:
                    self.expand_blossom(b, True)

        logger.debug("🌸 алгоритм цветков: %d стадий, n=%d", stages, self.n)
        return self.mate


# --- Вспомогательные функции ---

def is_perfect_matching(g: Multigraph, m: Iterable[int]) -> bool:
    count = [0] * g.n
    for e in m:
        u, v = g.edges[e]
        count[u] += 1
        count[v] += 1
    return all(c == 1 for c in count)


def incidence_vector(g: Multigraph, m: Iterable[int]) -> Dict[int, int]:
    """χ_M как словарь весов ребро -> 0/1"""
    chosen = set(m)
    return {e: int(e in chosen) for e in range(g.m)}


def matching_weight(m: Iterable[int], w: Mapping[int, int]) -> int:
    return sum(w.get(e, 0) for e in m)


def _greedy_initial(g: Multigraph) -> Dict[int, int]:
    """Жадное начальное паросочетание: сначала вершины с одной свободной соседней"""
    mate: Dict[int, int] = {}
    free_degree = [len({g.edges[d >> 1][1 - (d & 1)] for d in g.incidence[v]}) for v in range(g.n)]
    adjacency = [sorted({g.edges[d >> 1][1 - (d & 1)] for d in g.incidence[v]}) for v in range(g.n)]

    def take(u: int, v: int, pending: List[int]):
        mate[u] = v
        mate[v] = u
        for x in (u, v):
            for y in adjacency[x]:
                if y not in mate:
                    free_degree[y] -= 1
                    if free_degree[y] == 1:
                        pending.append(y)

    pending = [v for v in range(g.n) if free_degree[v] == 1]
    cursor = 0
    while True:
        while pending:
            u = pending.pop()
            if u in mate:
                continue
            partner = next((y for y in adjacency[u] if y not in mate), None)
            if partner is not None:
                take(u, partner, pending)
        while cursor < g.n and cursor in mate:
            cursor += 1
        if cursor >= g.n:
            break
        u = cursor
        options = [y for y in adjacency[u] if y not in mate]
        if not options:
            cursor += 1
            continue
        partner = min(options, key=lambda y: (free_degree[y], y))
        take(u, partner, pending)
    return mate


def _edges_from_mate(g: Multigraph, mate: Mapping[int, int],
                     best_edge: Mapping[Tuple[int, int], int]) -> Matching:
    chosen = set()
    for u, v in mate.items():
        if u < v:
            chosen.add(best_edge[(u, v)])
    return frozenset(chosen)


def perfect_matching(g: CubicGraph) -> Matching:
    """
    Совершенное паросочетание (равные веса, жадный старт + увеличение по цветкам)

    Детерминировано; на графе с мостом может не существовать.
    """
    best_edge: Dict[Tuple[int, int], int] = {}
    for e, (u, v) in enumerate(g.edges):
        best_edge.setdefault((min(u, v), max(u, v)), e)

    initial = _greedy_initial(g)
    matched = len(initial) // 2
    matcher = _BlossomMatcher(g.n, {pair: 1 for pair in best_edge}, initial)
    mate = matcher.run()
    result = _edges_from_mate(g, mate, best_edge)
    logger.debug("💞 жадный старт покрыл %d из %d рёбер паросочетания", matched, g.n // 2)

    if len(result) * 2 != g.n:
        raise NoPerfectMatching(f"максимальное паросочетание имеет {len(result)} рёбер при n = {g.n}")
    return result


def min_weight_perfect_matching(g: Multigraph, w: Mapping[int, int]) -> Matching:
    """
    Совершенное паросочетание минимального веса Σ w(e)

    Равные по весу паросочетания различаются лексикографически по
    отсортированному набору номеров рёбер: вес W_e = (C - w_e)·2^m + 2^(m-1-e)
    точен в целых числах Python.
    """
    m = g.m
    cap = max((w.get(e, 0) for e in range(m)), default=0) + 1
    scale = 1 << m

    best_edge: Dict[Tuple[int, int], int] = {}
    big: Dict[Tuple[int, int], int] = {}
    for e, (u, v) in enumerate(g.edges):
        weight_e = w.get(e, 0)
        if weight_e < 0:
            raise ValueError(f"вес ребра {e} отрицателен: {weight_e}")
        pair = (min(u, v), max(u, v))
        value = (cap - weight_e) * scale + (1 << (m - 1 - e))
        if pair not in big or value > big[pair]:
            big[pair] = value
            best_edge[pair] = e

    mate = _BlossomMatcher(g.n, big).run()
    result = _edges_from_mate(g, mate, best_edge)
    if len(result) * 2 != g.n:
        raise NoPerfectMatching(f"совершенного паросочетания нет (найдено {len(result)} рёбер при n = {g.n})")
    return result


def random_perfect_matching(g: CubicGraph, seed: int) -> Matching:
    """Совершенное паросочетание минимального веса при случайных весах (воспроизводимо по seed)"""
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, max(g.m, 1), size=g.m)
    return min_weight_perfect_matching(g, {e: int(draws[e]) for e in range(g.m)})


def violated_cuts(cuts, m: Iterable[int]) -> list:
    chosen = set(m)
    return [cut for cut in cuts if cut.cut_edges <= chosen]


def cut_weights(cuts) -> Dict[int, int]:
    """Вес 1 на каждом ребре, входящем хотя бы в один разрез"""
    return {e: 1 for cut in cuts for e in cut.cut_edges}


def matching_avoiding_3cuts(g: CubicGraph, max_iterations: Optional[int] = None,
                            initial: Optional[Iterable[int]] = None) -> Matching:
    """
    Совершенное паросочетание M₁, не содержащее ни одного 3-разреза целиком

    Отсекающие плоскости: вес ребра 1, если оно входит хотя бы в один
    накопленный нарушенный разрез, иначе 0; паросочетание пересчитывается,
    пока нарушения есть.
    """
    cuts = enumerate_3_edge_cuts(g)
    cap = max_iterations or load_settings().cut_avoid_max_iterations or g.m

    current = frozenset(initial) if initial is not None else min_weight_perfect_matching(g, {})
    accumulated: List = []
    for iteration in range(1, cap + 1):
        bad = violated_cuts(cuts, current)
        if not bad:
            logger.debug("✂️ M₁ найдено за %d итераций (накоплено разрезов: %d)", iteration, len(accumulated))
            return current
        for cut in bad:
            if cut not in accumulated:
                accumulated.append(cut)
        logger.debug("✂️ итерация %d: нарушено %d разрезов", iteration, len(bad))
        current = min_weight_perfect_matching(g, cut_weights(accumulated))

    raise CutAvoidanceFailed(f"за {cap} итераций не найдено паросочетание без 3-разрезов")


def second_matching_kkn(g: CubicGraph, m1: Iterable[int]) -> Matching:
    """M₂ минимального веса χ_{M₁}; гарантируется |M₁ ∩ M₂| <= n/10"""
    m1 = frozenset(m1)
    m2 = min_weight_perfect_matching(g, incidence_vector(g, m1))
    overlap = len(m1 & m2)
    bound = g.n // 10
    if overlap > bound:
        raise BoundViolated("|M₁ ∩ M₂| <= n/10", overlap, bound)
    logger.debug("💞 |M₁ ∩ M₂| = %d (оценка %d)", overlap, bound)
    return m2


def union_covers_nine_tenths(g: CubicGraph, m1: Iterable[int], m2: Iterable[int]) -> bool:
    """|M₁ ∪ M₂| >= ⌈9n/10⌉"""
    return len(set(m1) | set(m2)) >= math.ceil(9 * g.n / 10)


@dataclass(frozen=True)
class FractionalPmPoint:
    """Точка f: 1/k на рёбрах M, (k-1)/(2k) вне M (точная рациональная арифметика)"""
    value: Dict[int, Fraction]
    k: int

    def __getitem__(self, edge: int) -> Fraction:
        return self.value[edge]

    def vertex_sum(self, g: Multigraph, v: int) -> Fraction:
        return sum((self.value[d >> 1] for d in g.incidence[v]), Fraction(0))

    def with_value(self, edge: int, value) -> "FractionalPmPoint":
        changed = dict(self.value)
        changed[edge] = Fraction(value)
        return FractionalPmPoint(changed, self.k)


def fractional_point(g: CubicGraph, m: Iterable[int], k: int) -> FractionalPmPoint:
    if k < 3:
        raise ValueError(f"k должно быть >= 3, получено {k}")
    chosen = set(m)
    on = Fraction(1, k)
    off = Fraction(k - 1, 2 * k)
    return FractionalPmPoint({e: (on if e in chosen else off) for e in range(g.m)}, k)
