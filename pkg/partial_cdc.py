#!/usr/bin/env python3
"""
🔗 Partial CDC - Замкнутые маршруты, условия C1/C2 и расширение до вложения

C1: каждое ребро покрыто не более одного раза, либо ровно дважды двумя
    разными маршрутами.
C2: каждый угол (вершина + пара инцидентных рёбер) используется
    не более чем одним проходом маршрута.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from embedding import Embedding, FacialWalk, ascending_rotation, canonical_walk_key
from errors import (
    AngleCoverageError,
    FaceMissing,
    InconsistentLambda,
    InternalDegreeError,
    NotAWalk,
    PartialCdcViolation,
)
from graph_core import CubicGraph

logger = logging.getLogger(__name__)

Angle = Tuple[int, int, int]  # (вершина, меньшее ребро, большее ребро)


def make_angle(v: int, e: int, f: int) -> Angle:
    return (v, e, f) if e <= f else (v, f, e)


@dataclass(frozen=True)
class ClosedWalk:
    """Замкнутый маршрут: vertices[i] - начало ребра edges[i], v_t = v_0 подразумевается"""
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @classmethod
    def from_sequence(cls, sequence: Sequence[int]) -> "ClosedWalk":
        """Из чередующейся последовательности v0 e0 v1 e1 ... v0"""
        seq = list(sequence)
        if len(seq) < 5 or len(seq) % 2 == 0:
            raise NotAWalk(f"последовательность {seq} не имеет вида v0 e0 v1 ... e_(t-1) v0 с t >= 2")
        if seq[0] != seq[-1]:
            raise NotAWalk(f"маршрут не замкнут: начинается в {seq[0]}, заканчивается в {seq[-1]}")
        return cls(tuple(seq[0:-1:2]), tuple(seq[1::2]))

    @property
    def length(self) -> int:
        return len(self.edges)

    def sequence(self) -> List[int]:
        out: List[int] = []
        for v, e in zip(self.vertices, self.edges):
            out.extend((v, e))
        out.append(self.vertices[0])
        return out

    def key(self) -> Tuple[Tuple[int, int], ...]:
        return canonical_walk_key(self.vertices, self.edges)

    def passages(self) -> Iterable[Tuple[int, int, int]]:
        """Проходы через вершины: (вершина, ребро входа, ребро выхода)"""
        t = len(self.edges)
        for i in range(t):
            yield self.vertices[i], self.edges[i - 1], self.edges[i]


def check_walk(g: CubicGraph, walk: ClosedWalk):
    """Каждое ребро e_i обязано соединять v_i и v_{i+1}"""
    t = walk.length
    if t < 2:
        raise NotAWalk(f"маршрут длины {t}: в кубическом графе без петель нужно t >= 2")
    for i in range(t):
        e = walk.edges[i]
        if not (0 <= e < g.m):
            raise NotAWalk(f"ребро {e} отсутствует в графе")
        v, w = walk.vertices[i], walk.vertices[(i + 1) % t]
        if {v, w} != set(g.edges[e]) or (v == w):
            raise NotAWalk(f"ребро {e} = {g.edges[e]} не соединяет {v} и {w}")


@dataclass
class PartialCdc:
    """Набор замкнутых маршрутов с учётом покрытия рёбер и углов"""
    walks: Tuple[ClosedWalk, ...]
    edge_usage: Dict[int, int] = field(default_factory=dict)
    angle_usage: Dict[Angle, int] = field(default_factory=dict)

    @classmethod
    def from_walks(cls, g: CubicGraph, walks: Iterable[ClosedWalk]) -> "PartialCdc":
        walks = tuple(walks)
        edge_usage: Dict[int, int] = defaultdict(int)
        angle_usage: Dict[Angle, int] = defaultdict(int)
        for walk in walks:
            check_walk(g, walk)
            for e in walk.edges:
                edge_usage[e] += 1
            for v, e, f in walk.passages():
                angle_usage[make_angle(v, e, f)] += 1
        return cls(walks, dict(edge_usage), dict(angle_usage))

    @property
    def covered_edges(self) -> Set[int]:
        return {e for e, c in self.edge_usage.items() if c > 0}


@dataclass
class CdcCheck:
    """Вердикт validate_partial_cdc: ok или нарушение с указанием места"""
    ok: bool
    message: str
    condition: Optional[str] = None
    edge: Optional[int] = None
    angle: Optional[Angle] = None
    walks: Tuple[int, ...] = ()


@dataclass
class LinkGraph:
    """Граф D_v: узлы - рёбра при v, связи - проходы маршрутов e, v, f"""
    vertex: int
    nodes: Tuple[int, ...]
    links: List[Tuple[int, int, int]] = field(default_factory=list)  # (e, f, номер маршрута)

    def degree(self, node: int) -> int:
        return sum((e == node) + (f == node) for e, f, _ in self.links)


def validate_partial_cdc(g: CubicGraph, walks) -> CdcCheck:
    """Проверка условий C1 и C2 для набора маршрутов (или готового PartialCdc)"""
    walks = tuple(walks.walks if isinstance(walks, PartialCdc) else walks)
    for walk in walks:
        check_walk(g, walk)

    # одинаковые с точностью до сдвига и обращения маршруты - один и тот же маршрут
    identity: List[int] = []
    first_with_key: Dict[tuple, int] = {}
    for i, walk in enumerate(walks):
        identity.append(first_with_key.setdefault(walk.key(), i))

    users: List[List[int]] = [[] for _ in range(g.m)]
    for i, walk in enumerate(walks):
        for e in walk.edges:
            users[e].append(i)
    for e, who in enumerate(users):
        if len(who) > 2:
            return CdcCheck(False, f"C1: ребро {e} покрыто {len(who)} раз", "C1", edge=e, walks=tuple(who))
        if len(who) == 2 and identity[who[0]] == identity[who[1]]:
            if who[0] == who[1]:
                message = f"C1: маршрут {who[0]} проходит ребро {e} дважды"
            else:
                message = f"C1: маршруты {who[0]} и {who[1]} - один и тот же маршрут через ребро {e}"
            return CdcCheck(False, message, "C1", edge=e, walks=tuple(who))

    angle_users: Dict[Angle, List[int]] = defaultdict(list)
    for i, walk in enumerate(walks):
        for v, e, f in walk.passages():
            if e == f:
                return CdcCheck(False, f"C2: маршрут {i} разворачивается по ребру {e} в вершине {v}",
                                "C2", edge=e, walks=(i,))
            angle_users[make_angle(v, e, f)].append(i)
    overused = [angle for angle, who in angle_users.items() if len(who) > 1]
    if overused:
        angle = min(overused)
        who = angle_users[angle]
        return CdcCheck(False, f"C2: угол {angle} используется {len(who)} проходами",
                        "C2", angle=angle, walks=tuple(who))

    return CdcCheck(True, "✅ частичный CDC корректен")


def link_graphs(g: CubicGraph, pcdc: PartialCdc) -> List[LinkGraph]:
    """Графы D_v для всех вершин"""
    graphs = [LinkGraph(v, g.incident_edges(v)) for v in range(g.n)]
    for i, walk in enumerate(pcdc.walks):
        for v, e, f in walk.passages():
            graphs[v].links.append((e, f, i))
    return graphs


def extend_to_embedding(g: CubicGraph, pcdc: PartialCdc, validate: bool = True) -> Embedding:
    """
    Вложение, в котором все маршруты pcdc - лицевые обходы

    D_v на трёх узлах всегда дополняется до треугольника, ориентация
    фиксирована: от наименьшего ребра к меньшему соседу, т.е. вращение
    по возрастанию номеров рёбер. Сигнатура прохода f, u, e, v, h:
    λ(e) = +1 тогда и только тогда, когда (π_u(f) = e) совпадает с (π_v(e) = h).

    validate=False пропускает проверку C1/C2; конвейеры сверяют свои
    маршруты с гранями после трассировки.
    """
    if validate:
        verdict = validate_partial_cdc(g, pcdc)
        if not verdict.ok:
            raise PartialCdcViolation(verdict.message)

        for link in link_graphs(g, pcdc):
            pairs = [frozenset((e, f)) for e, f, _ in link.links]
            if len(pairs) != len(set(pairs)) or any(link.degree(node) > 2 for node in link.nodes):
                raise PartialCdcViolation(f"D_{link.vertex} имеет двойную связь или узел степени > 2")

    pi = ascending_rotation(g)
    rot_next = [0] * (2 * g.m)
    for a, b, c in pi:
        rot_next[a], rot_next[b], rot_next[c] = b, c, a

    tails = [u for u, _ in g.edges]
    signature = [1] * g.m
    assigned_by = [-1] * g.m
    for index, walk in enumerate(pcdc.walks):
        vertices, walk_edges = walk.vertices, walk.edges
        t = len(walk_edges)
        for i in range(t):
            f, e, h = walk_edges[i - 1], walk_edges[i], walk_edges[(i + 1) % t]
            u, v = vertices[i], vertices[(i + 1) % t]
            # дротик ребра x при вершине w: 2x, если w - его первый конец, иначе 2x + 1
            du_e = 2 * e + (tails[e] != u)
            at_u = rot_next[2 * f + (tails[f] != u)] == du_e
            at_v = rot_next[du_e ^ 1] == 2 * h + (tails[h] != v)
            sign = 1 if at_u == at_v else -1
            if assigned_by[e] >= 0 and signature[e] != sign:
                raise InconsistentLambda(e, (assigned_by[e], index))
            signature[e] = sign
            assigned_by[e] = index

    logger.debug("🧩 расширение: %d маршрутов, %d рёбер с заданной сигнатурой",
                 len(pcdc.walks), sum(1 for owner in assigned_by if owner >= 0))
    return Embedding(pi, tuple(signature))


def walks_are_faces(faces: Sequence[FacialWalk], walks: Iterable[ClosedWalk]) -> List[int]:
    """Номера маршрутов, которые не встречаются среди граней (пустой список - все на месте)"""
    keys = {face.canonical_key for face in faces}
    return [i for i, walk in enumerate(walks) if walk.key() not in keys]


def require_walks_are_faces(faces: Sequence[FacialWalk], pcdc: PartialCdc):
    missing = walks_are_faces(faces, pcdc.walks)
    if missing:
        raise FaceMissing(f"маршруты {missing} не являются гранями построенного вложения")


def angle_coverage(g: CubicGraph, faces: Sequence[FacialWalk]) -> Dict[Angle, int]:
    """
    Номер грани для каждого угла; в кубическом графе каждая пара рёбер
    при вершине соседствует во вращении, поэтому углов ровно 3n
    """
    owner: Dict[Angle, int] = {}
    for index, face in enumerate(faces):
        t = face.length
        for i in range(t):
            angle = make_angle(face.vertices[i], face.edges[i - 1], face.edges[i])
            if angle in owner:
                raise AngleCoverageError(f"угол {angle} покрыт гранями {owner[angle]} и {index}")
            owner[angle] = index
    if len(owner) != 3 * g.n:
        raise AngleCoverageError(f"покрыто {len(owner)} углов из {3 * g.n}")
    return owner


def circuits_of_even_subgraph(g: CubicGraph, edge_ids: Iterable[int]) -> List[ClosedWalk]:
    """
    Разложение подграфа с чётными степенями на окружности

    В кубическом графе степени 0 или 2, окружности однозначны; обход
    начинается с наименьшего неиспользованного ребра из его конца edges[e][0].
    """
    chosen = sorted(set(edge_ids))
    at_vertex: Dict[int, List[int]] = defaultdict(list)
    for e in chosen:
        u, v = g.edges[e]
        at_vertex[u].append(e)
        at_vertex[v].append(e)
    for v, incident in at_vertex.items():
        if len(incident) % 2:
            raise InternalDegreeError(f"вершина {v} имеет нечётную степень {len(incident)} в подграфе")

    used: Set[int] = set()
    circuits = []
    for e0 in chosen:
        if e0 in used:
            continue
        start = g.edges[e0][0]
        vertices, walk_edges = [], []
        v, e = start, e0
        while True:
            used.add(e)
            vertices.append(v)
            walk_edges.append(e)
            v = g.other_endpoint(e, v)
            nxt = [f for f in at_vertex[v] if f not in used]
            if not nxt:
                break
            e = min(nxt)
        if v != start:
            raise InternalDegreeError(f"обход от ребра {e0} не замкнулся")
        circuits.append(ClosedWalk(tuple(vertices), tuple(walk_edges)))
    return circuits
