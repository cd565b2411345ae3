#!/usr/bin/env python3
"""
🔮 Oracle - Переборная истина для малых графов

Минимум сингулярных рёбер по всем вложениям, перечисление совершенных
паросочетаний, проверка точки многогранника паросочетаний по Эдмондсу,
точная циклическая связность битовыми масками и проверка того, что
частичный CDC из двух 5-окружностей Петерсена не продолжается до CDC.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from embedding import Embedding, enumerate_embeddings, singular_edges, trace_facial_walks
from errors import TooLarge
from graph_core import INFINITE, CubicGraph, DisjointSet, generate_petersen, require_connected
from matching import FractionalPmPoint
from partial_cdc import ClosedWalk, PartialCdc, extend_to_embedding, validate_partial_cdc
from settings import load_settings

logger = logging.getLogger(__name__)


def min_singular_exhaustive(g: CubicGraph, max_vertices: Optional[int] = None) -> Tuple[int, Embedding]:
    """Минимум |сингулярных| по всем нормализованным вложениям и вложение-свидетель"""
    best_count = None
    best_emb = None
    examined = 0
    for emb in enumerate_embeddings(g, max_vertices=max_vertices):
        examined += 1
        count = len(singular_edges(trace_facial_walks(g, emb)))
        if best_count is None or count < best_count:
            best_count, best_emb = count, emb
            if count == 0:
                break
    logger.debug("🔮 перебор вложений: просмотрено %d, минимум %s", examined, best_count)
    return best_count, best_emb


def enumerate_perfect_matchings(g: CubicGraph, max_vertices: Optional[int] = None) -> List[frozenset]:
    """Все совершенные паросочетания перебором с возвратом (по наименьшей свободной вершине)"""
    limit = max_vertices if max_vertices is not None else load_settings().pm_enum_max_vertices
    if g.n > limit:
        raise TooLarge("перечисление совершенных паросочетаний", g.n, limit)

    found: List[frozenset] = []
    covered = [False] * g.n
    chosen: List[int] = []

    def extend(start: int):
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            found.append(frozenset(chosen))
            return
        covered[v] = True
        for d in g.incidence[v]:
            e = d >> 1
            w = g.edges[e][1 - (d & 1)]
            if covered[w]:
                continue
            covered[w] = True
            chosen.append(e)
            extend(v + 1)
            chosen.pop()
            covered[w] = False
        covered[v] = False

    extend(0)
    return sorted(found, key=sorted)


@dataclass
class EdmondsCheck:
    """Результат проверки точки: ok или первое нарушенное ограничение"""
    ok: bool
    message: str
    constraint: Optional[str] = None
    witness: Optional[object] = None


def check_edmonds_point(g: CubicGraph, f: FractionalPmPoint,
                        max_vertices: Optional[int] = None) -> EdmondsCheck:
    """
    Неотрицательность, равенства в вершинах и x(δ(U)) >= 1 для всех нечётных U

    U и V - U задают один разрез, поэтому перебираются подмножества
    без последней вершины (2^(n-1) классов) векторно через numpy.
    """
    limit = max_vertices if max_vertices is not None else load_settings().pm_enum_max_vertices
    if g.n > limit:
        raise TooLarge("проверка точки многогранника", g.n, limit)

    for e in range(g.m):
        if f[e] < 0:
            return EdmondsCheck(False, f"f({e}) = {f[e]} < 0", "nonnegativity", e)
    for v in range(g.n):
        total = f.vertex_sum(g, v)
        if total != 1:
            return EdmondsCheck(False, f"сумма f в вершине {v} равна {total}, а не 1", "degree", v)

    # целочисленное масштабирование: x(δ(U)) >= 1  <=>  Σ scaled >= denominator
    denominator = math.lcm(*(f[e].denominator for e in range(g.m)))
    scaled = np.array([int(f[e] * denominator) for e in range(g.m)], dtype=np.int64)

    free = g.n - 1
    masks = np.arange(1 << free, dtype=np.int64)
    side = [((masks >> v) & 1).astype(bool) for v in range(free)]
    side.append(np.zeros(masks.shape, dtype=bool))
    parity = np.zeros(masks.shape, dtype=np.int64)
    for v in range(free):
        parity += side[v]
    odd = (parity % 2) == 1

    cut_value = np.zeros(masks.shape, dtype=np.int64)
    for e, (u, v) in enumerate(g.edges):
        cut_value += np.where(side[u] != side[v], scaled[e], 0)

    bad = np.nonzero(odd & (cut_value < denominator))[0]
    if bad.size:
        mask = int(bad[0])
        subset = [v for v in range(free) if (mask >> v) & 1]
        value = Fraction(int(cut_value[mask]), denominator)
        return EdmondsCheck(False, f"x(δ(U)) = {value} < 1 для нечётного U = {subset}", "odd-cut", subset)

    return EdmondsCheck(True, f"✅ точка удовлетворяет всем {int(odd.sum())} ограничениям нечётных разрезов")


def cyclic_edge_connectivity_exhaustive(g: CubicGraph, max_vertices: int = 16) -> float:
    """Эталон: минимум |δ(U)| по всем U, у которых обе стороны содержат цикл"""
    require_connected(g)
    if g.n > max_vertices:
        raise TooLarge("переборная циклическая связность", g.n, max_vertices)

    free = g.n - 1
    masks = np.arange(1, 1 << free, dtype=np.int64)
    side = [((masks >> v) & 1).astype(bool) for v in range(free)]
    side.append(np.zeros(masks.shape, dtype=bool))
    cut_size = np.zeros(masks.shape, dtype=np.int64)
    for u, v in g.edges:
        cut_size += side[u] != side[v]

    best = INFINITE
    for index in np.argsort(cut_size, kind="stable"):
        size = int(cut_size[index])
        if size >= best:
            break
        mask = int(masks[index])
        inside = {v for v in range(free) if (mask >> v) & 1}
        outside = set(range(g.n)) - inside
        if _contains_cycle(g, inside) and _contains_cycle(g, outside):
            best = size
    return best


def _contains_cycle(g: CubicGraph, vertices: Set[int]) -> bool:
    ds = DisjointSet(g.n)
    for u, v in g.edges:
        if u in vertices and v in vertices and not ds.union(u, v):
            return True
    return False


def circuit_lengths(g: CubicGraph) -> Set[int]:
    """Длины всех простых окружностей (перебор путей от наименьшей вершины)"""
    lengths: Set[int] = set()
    adjacency = [[(d >> 1, g.edges[d >> 1][1 - (d & 1)]) for d in g.incidence[v]] for v in range(g.n)]

    for start in range(g.n):
        on_path = {start}
        stack = [(start, -1, iter(adjacency[start]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e, w in it:
                if e == via:
                    continue
                if w == start and len(stack) >= 2:
                    lengths.add(len(stack))
                elif w > start and w not in on_path:
                    on_path.add(w)
                    stack.append((w, e, iter(adjacency[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                on_path.discard(v)
    return lengths


@dataclass
class PetersenExtensionReport:
    """Итог проверки непродолжаемости частичного CDC Петерсена"""
    mode: str
    extensions: int
    min_singular: int
    all_singular: bool
    face_lengths_divisible_by_4: bool
    circuit_lengths: List[int]
    partial_cdc_ok: bool
    singular_histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def no_4_or_12_circuit(self) -> bool:
        return 4 not in self.circuit_lengths and 12 not in self.circuit_lengths


def petersen_partial_cdc(g: Optional[CubicGraph] = None) -> Tuple[CubicGraph, PartialCdc, frozenset]:
    """Граф Петерсена, его две 5-окружности (внешняя и пентаграмма) и спицы"""
    g = g or generate_petersen()
    outer = ClosedWalk(tuple(range(5)), tuple(range(5)))
    # пентаграмма 5 -> 7 -> 9 -> 6 -> 8 -> 5 по рёбрам 10..14
    inner_vertices, inner_edges = [], []
    v = 5
    for _ in range(5):
        i = v - 5
        inner_vertices.append(v)
        inner_edges.append(10 + i)
        v = 5 + (i + 2) % 5
    inner = ClosedWalk(tuple(inner_vertices), tuple(inner_edges))
    spokes = frozenset(range(5, 10))
    return g, PartialCdc.from_walks(g, [outer, inner]), spokes


def _extension_embeddings(g: CubicGraph, pcdc: PartialCdc, spokes: frozenset):
    """
    Все вложения, где обе окружности - грани: вращения любые (в кубическом
    графе D_v всегда треугольник), сигнатура рёбер окружностей задана
    вращениями, знаки спиц нормализованы переворотами вершин
    """
    base = extend_to_embedding(g, pcdc)
    circuit_edges = sorted(set(range(g.m)) - spokes)
    choices = [(darts, tuple(reversed(darts))) for darts in base.pi]

    for bits in itertools.product((0, 1), repeat=g.n):
        pi = tuple(choices[v][bits[v]] for v in range(g.n))
        rot_next = {}
        for darts in pi:
            for i, d in enumerate(darts):
                rot_next[d] = darts[(i + 1) % 3]
        signature = [1] * g.m
        for walk in pcdc.walks:
            t = walk.length
            for i in range(t):
                f, e, h = walk.edges[i - 1], walk.edges[i], walk.edges[(i + 1) % t]
                u, w = walk.vertices[i], walk.vertices[(i + 1) % t]
                du_f, du_e = _dart(g, u, f), _dart(g, u, e)
                dw_e, dw_h = _dart(g, w, e), _dart(g, w, h)
                s1 = 1 if rot_next[du_f] == du_e else -1
                s2 = 1 if rot_next[dw_e] == dw_h else -1
                signature[e] = s1 * s2
        spoke_list = sorted(spokes)
        for signs in itertools.product((1, -1), repeat=len(spoke_list)):
            for e, s in zip(spoke_list, signs):
                signature[e] = s
            yield Embedding(pi, tuple(signature))


def _dart(g: CubicGraph, v: int, e: int) -> int:
    return 2 * e + (0 if g.edges[e][0] == v else 1)


def check_petersen_nonextension(mode: str = "constrained") -> PetersenExtensionReport:
    """
    Перебор всех вложений Петерсена, в которых обе 5-окружности - грани

    mode="constrained": вращения × знаки спиц (сигнатура окружностей вычисляется);
    mode="full-filter": все 65536 нормализованных вложений с отбором по граням.
    """
    g, pcdc, spokes = petersen_partial_cdc()
    verdict = validate_partial_cdc(g, pcdc)
    keys = [walk.key() for walk in pcdc.walks]

    if mode == "constrained":
        candidates = _extension_embeddings(g, pcdc, spokes)
    elif mode == "full-filter":
        candidates = enumerate_embeddings(g, max_vertices=g.n)
    else:
        raise ValueError(f"неизвестный режим: {mode}")

    extensions = 0
    histogram: Dict[int, int] = {}
    divisible = True
    seen_faces = set()
    for emb in candidates:
        faces = trace_facial_walks(g, emb)
        face_keys = {face.canonical_key for face in faces}
        if not all(key in face_keys for key in keys):
            continue
        extensions += 1
        count = len(singular_edges(faces))
        histogram[count] = histogram.get(count, 0) + 1
        for face in faces:
            if face.canonical_key in keys or face.canonical_key in seen_faces:
                continue
            seen_faces.add(face.canonical_key)
            if face.length % 4:
                divisible = False

    lengths = sorted(circuit_lengths(g))
    report = PetersenExtensionReport(
        mode=mode,
        extensions=extensions,
        min_singular=min(histogram) if histogram else -1,
        all_singular=bool(histogram) and min(histogram) >= 1,
        face_lengths_divisible_by_4=divisible,
        circuit_lengths=lengths,
        partial_cdc_ok=verdict.ok,
        singular_histogram=dict(sorted(histogram.items())),
    )
    logger.info("🔮 Петерсен (%s): продолжений %d, минимум сингулярных %d",
                mode, extensions, report.min_singular)
    return report
