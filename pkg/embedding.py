#!/usr/bin/env python3
"""
🧭 Embedding - Системы вращений, сигнатуры и лицевые обходы

Вложение (π, λ): π_v - циклический порядок трёх дротиков в вершине v,
λ(e) ∈ {-1, +1} - сигнатура ребра. Лицевые обходы строятся правилом
следования: пришли в v по ребру e с накопленным знаком μ, тогда следующее
ребро π_v(e) при μ = +1 и π_v^{-1}(e) при μ = -1.
"""

import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from errors import DisconnectedGraph, EmbeddingFormatError, TooLarge
from graph_core import CubicGraph, bfs_tree, is_connected
from settings import load_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Embedding:
    """Комбинаторное вложение: pi[v] - тройка дротиков, signature[e] - ±1"""
    pi: Tuple[Tuple[int, ...], ...]
    signature: Tuple[int, ...]

    def sign(self, edge: int) -> int:
        return self.signature[edge]


@dataclass(frozen=True)
class TraversalState:
    """
    Шаг обхода: ребро e_i, его начало v_i, сторона μ_i = ε·λ(e_0)···λ(e_i)
    и исходный знак ε
    """
    current_edge: int
    current_vertex: int
    side: int
    seed_sign: int

    @classmethod
    def start(cls, emb: Embedding, vertex: int, edge: int, seed_sign: int) -> "TraversalState":
        return cls(edge, vertex, seed_sign * emb.signature[edge], seed_sign)

    def advance(self, g: CubicGraph, emb: Embedding,
                succ: Sequence[int], pred: Sequence[int]) -> "TraversalState":
        """Следующее ребро: π_v(e) при μ = +1, π_v^{-1}(e) при μ = -1"""
        e = self.current_edge
        v = g.other_endpoint(e, self.current_vertex)
        arrival = 2 * e + (g.edges[e][0] != v)
        nxt = (succ[arrival] if self.side == 1 else pred[arrival]) >> 1
        return TraversalState(nxt, v, self.side * emb.signature[nxt], self.seed_sign)


@dataclass(frozen=True)
class FacialWalk:
    """
    Замкнутый обход (v0, e0, v1, ..., e_{t-1}, v0); vertices[i] - начало ребра edges[i]
    """
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    canonical_key: Tuple[Tuple[int, int], ...] = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.edges)

    def sequence(self) -> List[int]:
        """Чередующаяся последовательность v0 e0 v1 ... v0"""
        out: List[int] = []
        for v, e in zip(self.vertices, self.edges):
            out.extend((v, e))
        out.append(self.vertices[0])
        return out


@dataclass
class FdcReport:
    """Итог трассировки: грани, сингулярные рёбра и характеристики поверхности"""
    faces: List[FacialWalk]
    singular: FrozenSet[int]
    face_count: int
    euler_characteristic: int
    orientable: bool
    genus_like: int
    bender_richmond_bound: int

    @property
    def surface_name(self) -> str:
        if self.orientable:
            return "sphere" if self.genus_like == 0 else f"orientable genus {self.genus_like}"
        if self.genus_like == 1:
            return "projective plane"
        return f"nonorientable genus {self.genus_like}"


@dataclass
class FdcCheck:
    """Результат проверки двойного покрытия гранями (ok / первое нарушенное условие)"""
    ok: bool
    message: str
    report: Optional[FdcReport] = None


def canonical_walk_key(vertices: Sequence[int], edges: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    """
    Лексикографический минимум по циклическим сдвигам и обращению
    последовательности пар (вершина, ребро)
    """
    t = len(edges)
    forward = [(vertices[i], edges[i]) for i in range(t)]
    backward = [(vertices[0], edges[t - 1])]
    backward.extend((vertices[i], edges[i - 1]) for i in range(t - 1, 0, -1))

    best = None
    for pairs in (forward, backward):
        start = min(pairs)
        # пара (вершина, ребро) встречается в обходе не более двух раз
        for i, pair in enumerate(pairs):
            if pair != start:
                continue
            candidate = tuple(pairs[i:] + pairs[:i])
            if best is None or candidate < best:
                best = candidate
    return best


def make_facial_walk(vertices: Sequence[int], edges: Sequence[int]) -> FacialWalk:
    vertices = tuple(vertices)
    edges = tuple(edges)
    return FacialWalk(vertices, edges, canonical_walk_key(vertices, edges))


def validate_embedding(g: CubicGraph, emb: Embedding):
    """Проверка формы вложения: π_v - перестановка дротиков v, λ тотальна и ±1"""
    if len(emb.pi) != g.n:
        raise EmbeddingFormatError(f"вращения заданы для {len(emb.pi)} вершин, в графе {g.n}")
    if len(emb.signature) != g.m:
        raise EmbeddingFormatError(f"сигнатура задана для {len(emb.signature)} рёбер, в графе {g.m}")
    for v in range(g.n):
        if len(emb.pi[v]) != 3 or sorted(emb.pi[v]) != sorted(g.incidence[v]):
            raise EmbeddingFormatError(
                f"вращение вершины {v} {emb.pi[v]} не является циклом на её дротиках {g.incidence[v]}"
            )
    for e, s in enumerate(emb.signature):
        if s not in (-1, 1):
            raise EmbeddingFormatError(f"сигнатура ребра {e} равна {s}, ожидалось ±1")


def rotation_tables(g: CubicGraph, emb: Embedding) -> Tuple[List[int], List[int]]:
    succ = [0] * (2 * g.m)
    pred = [0] * (2 * g.m)
    for darts in emb.pi:
        k = len(darts)
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % k]
            pred[d] = darts[(i - 1) % k]
    return succ, pred


def trace_facial_walks(g: CubicGraph, emb: Embedding) -> List[FacialWalk]:
    """
    Все лицевые обходы вложения, по одному представителю на грань

    Состояние обхода - (дротик, знак): дротик d выходит из текущей вершины,
    знак - произведение ε и сигнатур уже пройденных рёбер. Отображение
    состояний биективно, каждая грань даёт две орбиты (прямую и обратную),
    обратная помечается посещённой сразу.
    """
    validate_embedding(g, emb)
    succ, pred = rotation_tables(g, emb)
    lam = emb.signature
    edges = g.edges

    visited = bytearray(4 * g.m)  # индекс состояния: 2 * d + (знак == -1)
    faces: List[FacialWalk] = []

    for d0 in range(2 * g.m):
        for s0 in (1, -1):
            if visited[2 * d0 + (s0 < 0)]:
                continue
            vertices: List[int] = []
            walk_edges: List[int] = []
            d, s = d0, s0
            while True:
                visited[2 * d + (s < 0)] = 1
                e = d >> 1
                s_next = s * lam[e]
                # обратное состояние: (d ^ 1, -s * λ(e))
                visited[2 * (d ^ 1) + (-s_next < 0)] = 1
                vertices.append(edges[e][d & 1])
                walk_edges.append(e)
                arrival = d ^ 1
                d = succ[arrival] if s_next == 1 else pred[arrival]
                s = s_next
                if d == d0 and s == s0:
                    break
            faces.append(make_facial_walk(vertices, walk_edges))

    logger.debug("🧵 трассировка: %d граней, %d рёбер", len(faces), g.m)
    return faces


def facial_walk_from(g: CubicGraph, emb: Embedding, start: TraversalState,
                     tables: Optional[Tuple[List[int], List[int]]] = None) -> FacialWalk:
    """Одна грань по правилу следования, шаг за шагом от состояния start"""
    succ, pred = tables or rotation_tables(g, emb)
    vertices: List[int] = []
    walk_edges: List[int] = []
    state = start
    while True:
        vertices.append(state.current_vertex)
        walk_edges.append(state.current_edge)
        state = state.advance(g, emb, succ, pred)
        if state == start:
            return make_facial_walk(vertices, walk_edges)


def singular_edges(faces: Sequence[FacialWalk]) -> FrozenSet[int]:
    """Рёбра, которые одна грань проходит дважды"""
    singular = set()
    for face in faces:
        counts = Counter(face.edges)
        singular.update(e for e, c in counts.items() if c >= 2)
    return frozenset(singular)


def is_orientable(g: CubicGraph, emb: Embedding) -> bool:
    """Можно ли сделать λ ≡ +1 переворотами вершин: s(u)·s(v) = λ(e) для всех рёбер"""
    flips = [0] * g.n
    for root in range(g.n):
        if flips[root]:
            continue
        flips[root] = 1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for d in g.incidence[v]:
                e = d >> 1
                w = g.edges[e][1 - (d & 1)]
                want = flips[v] * emb.signature[e]
                if not flips[w]:
                    flips[w] = want
                    queue.append(w)
                elif flips[w] != want:
                    return False
    return True


def bender_richmond_bound(orientable: bool, genus_like: int) -> int:
    """Оценка числа сингулярных рёбер по роду: сфера 0, проективная плоскость 1, иначе 6g-3 / 3g̃-3"""
    if orientable:
        return 0 if genus_like == 0 else 6 * genus_like - 3
    return 1 if genus_like == 1 else 3 * genus_like - 3


def surface_stats(g: CubicGraph, emb: Embedding, faces: Sequence[FacialWalk]) -> FdcReport:
    """Эйлерова характеристика, ориентируемость и род поверхности вложения"""
    if not is_connected(g):
        raise DisconnectedGraph("характеристики поверхности определены только для связного графа")

    face_count = len(faces)
    chi = g.n - g.m + face_count
    orientable = is_orientable(g, emb)
    genus_like = (2 - chi) // 2 if orientable else 2 - chi

    return FdcReport(
        faces=list(faces),
        singular=singular_edges(faces),
        face_count=face_count,
        euler_characteristic=chi,
        orientable=orientable,
        genus_like=genus_like,
        bender_richmond_bound=bender_richmond_bound(orientable, genus_like),
    )


def verify_fdc(g: CubicGraph, emb: Embedding) -> FdcCheck:
    """Перетрассировка вложения с проверкой сохранения длины и двойного покрытия"""
    faces = trace_facial_walks(g, emb)

    total = sum(face.length for face in faces)
    if total != 2 * g.m:
        return FdcCheck(False, f"сумма длин граней {total} != 2|E| = {2 * g.m}")

    usage = Counter(e for face in faces for e in face.edges)
    for e in range(g.m):
        if usage[e] != 2:
            return FdcCheck(False, f"ребро {e} покрыто гранями {usage[e]} раз(а) вместо 2")

    # пошаговый обход от первого ребра каждой грани с обоими ε даёт известные грани
    keys = {face.canonical_key for face in faces}
    tables = rotation_tables(g, emb)
    for index, face in enumerate(faces):
        for seed_sign in (1, -1):
            start = TraversalState.start(emb, face.vertices[0], face.edges[0], seed_sign)
            if facial_walk_from(g, emb, start, tables).canonical_key not in keys:
                return FdcCheck(False, f"пошаговый обход от грани {index} (ε = {seed_sign:+d}) дал новую грань")

    report = surface_stats(g, emb, faces)
    if report.euler_characteristic > 2:
        return FdcCheck(False, f"χ = {report.euler_characteristic} > 2", report)
    return FdcCheck(True, "✅ двойное покрытие гранями корректно", report)


# --- Построение вложений ---

def ascending_rotation(g: CubicGraph) -> Tuple[Tuple[int, ...], ...]:
    """Вращение, в котором дротики каждой вершины идут по возрастанию номера ребра"""
    return tuple(tuple(darts) for darts in g.incidence)


def trivial_embedding(g: CubicGraph) -> Embedding:
    return Embedding(ascending_rotation(g), (1,) * g.m)


def planar_embedding(g: CubicGraph) -> Optional[Embedding]:
    """
    Плоское вложение (λ ≡ +1) через проверку планарности networkx

    Каждое ребро подразделяется вспомогательной вершиной, так что
    параллельные рёбра тоже получают свой порядок. None для непланарного графа.
    """
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    for e, (u, v) in enumerate(g.edges):
        mid = ("edge", e)
        nxg.add_edge(u, mid)
        nxg.add_edge(mid, v)

    planar, layout = nx.check_planarity(nxg)
    if not planar:
        return None

    pi = []
    for v in range(g.n):
        dart_of = {d >> 1: d for d in g.incidence[v]}
        pi.append(tuple(dart_of[mid[1]] for mid in layout.neighbors_cw_order(v)))
    return Embedding(tuple(pi), (1,) * g.m)


def flip_vertex(emb: Embedding, g: CubicGraph, v: int) -> Embedding:
    """Эквивалентное вложение: обратить π_v и сменить знак λ на рёбрах при v"""
    pi = list(emb.pi)
    pi[v] = tuple(reversed(pi[v]))
    signature = list(emb.signature)
    for d in g.incidence[v]:
        signature[d >> 1] = -signature[d >> 1]
    return Embedding(tuple(pi), tuple(signature))


def embedding_count(g: CubicGraph) -> int:
    """Число нормализованных вложений: 2^n вращений × 2^(|E|-n+1) сигнатур"""
    return 2 ** g.n * 2 ** (g.m - g.n + 1)


def enumerate_embeddings(g: CubicGraph, max_vertices: Optional[int] = None,
                         rotation_prefix: Sequence[int] = ()) -> Iterator[Embedding]:
    """
    Все вложения с λ ≡ +1 на фиксированном остове обхода в ширину

    rotation_prefix фиксирует выбор вращения (0 - по возрастанию, 1 - обратное)
    для первых вершин: так перебор делится на независимые части.
    """
    limit = max_vertices if max_vertices is not None else load_settings().oracle_max_vertices
    if g.n > limit:
        raise TooLarge("перебор вложений", g.n, limit)
    if not is_connected(g):
        raise DisconnectedGraph("перебор вложений требует связного графа")

    _, parent_edge = bfs_tree(g)
    tree = {e for e in parent_edge if e >= 0}
    cotree = [e for e in range(g.m) if e not in tree]

    choices = [(darts, tuple(reversed(darts))) for darts in ascending_rotation(g)]
    prefix = tuple(rotation_prefix)
    free = range(len(prefix), g.n)

    for tail in itertools.product((0, 1), repeat=len(free)):
        bits = prefix + tail
        pi = tuple(choices[v][bits[v]] for v in range(g.n))
        for signs in itertools.product((1, -1), repeat=len(cotree)):
            signature = [1] * g.m
            for e, s in zip(cotree, signs):
                signature[e] = s
            yield Embedding(pi, tuple(signature))
