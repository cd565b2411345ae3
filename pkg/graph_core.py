#!/usr/bin/env python3
"""
🔷 Graph Core - Мультиграфы, кубические графы, форматы, генераторы и связность

Рёбра нумеруются по порядку ввода, каждое ребро e даёт два дротика
(dart) 2e и 2e+1: дротик 2e + end лежит в вершине edges[e][end].
Все множества рёбер в системе - множества номеров рёбер, поэтому
параллельные рёбра различимы.
"""

import itertools
import logging
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from errors import (
    DegenerateExpansion,
    DisconnectedGraph,
    GenerationFailure,
    InvalidGraphParameter,
    LoopEdge,
    MalformedInput,
    NotCubic,
    NotThreeEdgeConnected,
    TooLarge,
)
from settings import load_settings

logger = logging.getLogger(__name__)

INFINITE = math.inf

GRAPH_FORMATS = ("graph6", "edge_list")


def dart_edge(d: int) -> int:
    return d >> 1


def dart_end(d: int) -> int:
    return d & 1


def make_dart(edge: int, end: int) -> int:
    return 2 * edge + end


class DisjointSet:
    """Система непересекающихся множеств (сжатие путей + объединение по рангу)"""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.count = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True


@dataclass(frozen=True)
class Multigraph:
    """
    Неориентированный мультиграф без петель.

    Используется как сжатый граф H в упаковке остовов; кубический граф -
    его частный случай.
    """
    n: int
    edges: Tuple[Tuple[int, int], ...]
    incidence: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise MalformedInput(f"отрицательное число вершин: {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)

        incidence: List[List[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MalformedInput(f"ребро {e} = ({u}, {v}) выходит за пределы 0..{self.n - 1}")
            if u == v:
                raise LoopEdge(e, u)
            incidence[u].append(make_dart(e, 0))
            incidence[v].append(make_dart(e, 1))
        object.__setattr__(self, "incidence", tuple(tuple(darts) for darts in incidence))
        self._validate()

    def _validate(self):
        pass

    @property
    def m(self) -> int:
        return len(self.edges)

    def other_endpoint(self, edge: int, v: int) -> int:
        a, b = self.edges[edge]
        return b if a == v else a

    def incident_edges(self, v: int) -> Tuple[int, ...]:
        return tuple(d >> 1 for d in self.incidence[v])

    def degree(self, v: int) -> int:
        return len(self.incidence[v])


@dataclass(frozen=True)
class CubicGraph(Multigraph):
    """Мультиграф, в котором каждая вершина имеет степень ровно 3"""

    def _validate(self):
        for v, darts in enumerate(self.incidence):
            if len(darts) != 3:
                raise NotCubic(v, len(darts))


@dataclass(frozen=True)
class EdgeCut:
    """Рёберный разрез δ(U): side = U, cut_edges = рёбра с одним концом в U"""
    side: FrozenSet[int]
    cut_edges: FrozenSet[int]
    cyclic: bool = False

    @property
    def trivial(self) -> bool:
        return len(self.side) == 1


def edge_cut(g: Multigraph, side: Iterable[int]) -> FrozenSet[int]:
    """Рёбра δ(U) для множества вершин U"""
    inside = set(side)
    return frozenset(e for e, (u, v) in enumerate(g.edges) if (u in inside) != (v in inside))


# --- Форматы ---

def _as_text(text: Union[bytes, str]) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("ascii")
        except UnicodeDecodeError as e:
            raise MalformedInput(f"вход не является ASCII: {e}") from e
    return text


def _parse_edge_list(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedInput("пустой edge_list")

    header = lines[0].split()
    if len(header) != 2:
        raise MalformedInput(f"заголовок edge_list должен быть 'n m', получено: {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as e:
        raise MalformedInput(f"заголовок edge_list не числовой: {lines[0]!r}") from e
    if n < 0 or m < 0:
        raise MalformedInput(f"отрицательные размеры в заголовке: {lines[0]!r}")

    body = lines[1:]
    if len(body) != m:
        raise MalformedInput(f"ожидалось {m} строк рёбер, получено {len(body)}")

    edges = []
    for lineno, line in enumerate(body, 2):
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise MalformedInput(f"строка {lineno}: ожидалось 'u v', получено {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise MalformedInput(f"строка {lineno}: вершина вне диапазона 0..{n - 1}")
        edges.append((u, v))
    return n, edges


def _parse_graph6(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise MalformedInput("пустой graph6")
    if len(lines) > 1:
        raise MalformedInput(f"ожидался один граф graph6, получено строк: {len(lines)}")

    s = lines[0]
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if any(not (63 <= ord(ch) <= 126) for ch in s):
        raise MalformedInput(f"недопустимый символ в graph6: {s!r}")
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError) as e:
        raise MalformedInput(f"не удалось разобрать graph6 {s!r}: {e}") from e

    # Порядок битов graph6: для v = 1..n-1, для u = 0..v-1
    edges = sorted(((min(u, v), max(u, v)) for u, v in nxg.edges()), key=lambda p: (p[1], p[0]))
    return nxg.number_of_nodes(), edges


def parse_graph(text: Union[bytes, str], format: str = "edge_list") -> CubicGraph:
    """
    Разбор кубического графа из graph6 или edge_list

    Args:
        text: Содержимое файла
        format: "graph6" или "edge_list"

    Returns:
        CubicGraph с вершинами 0..n-1 и рёбрами в порядке ввода
    """
    text = _as_text(text)
    if format == "edge_list":
        n, edges = _parse_edge_list(text)
    elif format == "graph6":
        n, edges = _parse_graph6(text)
    else:
        raise MalformedInput(f"неизвестный формат: {format}")
    return CubicGraph(n, tuple(edges))


def serialize_graph(g: Multigraph, format: str = "edge_list") -> str:
    """Обратная к parse_graph запись графа"""
    if format == "edge_list":
        lines = [f"{g.n} {g.m}"]
        lines.extend(f"{u} {v}" for u, v in g.edges)
        return "\n".join(lines) + "\n"
    if format == "graph6":
        pairs = {(min(u, v), max(u, v)) for u, v in g.edges}
        if len(pairs) != g.m:
            raise InvalidGraphParameter("graph6 не допускает параллельных рёбер")
        nxg = nx.Graph()
        nxg.add_nodes_from(range(g.n))
        nxg.add_edges_from(g.edges)
        return nx.to_graph6_bytes(nxg, header=False).decode("ascii")
    raise MalformedInput(f"неизвестный формат: {format}")


def to_networkx(g: Multigraph) -> nx.MultiGraph:
    """Копия графа в networkx (ключ ребра = номер ребра)"""
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(range(g.n))
    for e, (u, v) in enumerate(g.edges):
        nxg.add_edge(u, v, key=e)
    return nxg


# --- Генераторы ---

def generate_petersen() -> CubicGraph:
    """Граф Петерсена: внешний 5-цикл 0-4, пентаграмма 5-9, спицы i - i+5"""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph(10, tuple(outer + spokes + inner))


def generate_k4() -> CubicGraph:
    return CubicGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def generate_theta() -> CubicGraph:
    """Две вершины, три параллельных ребра"""
    return CubicGraph(2, ((0, 1), (0, 1), (0, 1)))


def generate_k33() -> CubicGraph:
    return CubicGraph(6, tuple((a, b) for a in range(3) for b in range(3, 6)))


def generate_prism(m: int = 3) -> CubicGraph:
    """Призма C_m x K_2: внешний цикл 0..m-1, внутренний m..2m-1, перекладины i - m+i"""
    if m < 3:
        raise InvalidGraphParameter(f"призма требует m >= 3, получено {m}")
    outer = [(i, (i + 1) % m) for i in range(m)]
    inner = [(m + i, m + (i + 1) % m) for i in range(m)]
    rungs = [(i, m + i) for i in range(m)]
    return CubicGraph(2 * m, tuple(outer + inner + rungs))


def generate_mobius_ladder(m: int) -> CubicGraph:
    """Лестница Мёбиуса: цикл на 2m вершинах и хорды i - i+m"""
    if m < 2:
        raise InvalidGraphParameter(f"лестница Мёбиуса требует m >= 2, получено {m}")
    rim = [(i, (i + 1) % (2 * m)) for i in range(2 * m)]
    chords = [(i, i + m) for i in range(m)]
    return CubicGraph(2 * m, tuple(rim + chords))


def generate_bridged_example() -> CubicGraph:
    """
    Наименьший кубический граф с мостом: два K4 с подразделённым ребром,
    вершины подразделения соединены мостом (ребро 14).
    """
    block = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]
    edges = block + [(u + 5, v + 5) for u, v in block] + [(4, 9)]
    return CubicGraph(10, tuple(edges))


def generate_gn(n: int, seed: Optional[int] = 0) -> CubicGraph:
    """
    G_n: каждая вершина K_n заменяется циклом C_{n-1}

    i-я вершина цикла несёт ребро K_n к i-му соседу в порядке,
    который задаёт перемешивание возрастающего списка соседей зерном seed;
    seed=None оставляет соседей по возрастанию.
    """
    if n < 3:
        raise InvalidGraphParameter(f"G_n требует n >= 3, получено {n}")
    if n == 3:
        raise DegenerateExpansion("G_3: цикл C_2 является дигоном, конструкция не определена")

    rng = np.random.default_rng(seed) if seed is not None else None
    size = n - 1
    slot_of: Dict[Tuple[int, int], int] = {}
    edges: List[Tuple[int, int]] = []

    for i in range(n):
        neighbors = [j for j in range(n) if j != i]
        order = neighbors if rng is None else [neighbors[int(k)] for k in rng.permutation(size)]
        for slot, j in enumerate(order):
            slot_of[(i, j)] = i * size + slot
        for slot in range(size):
            edges.append((i * size + slot, i * size + (slot + 1) % size))

    for i, j in itertools.combinations(range(n), 2):
        edges.append((slot_of[(i, j)], slot_of[(j, i)]))

    return CubicGraph(n * size, tuple(edges))


def generate_random_cubic_bridgeless(n: int, seed: int = 0,
                                     max_retries: Optional[int] = None) -> CubicGraph:
    """
    Случайный связный кубический простой граф без мостов (модель спариваний
    с отбрасыванием). Детерминирован для фиксированного seed.
    """
    if n < 4 or n % 2:
        raise InvalidGraphParameter(f"кубический граф требует чётное n >= 4, получено {n}")
    retries = max_retries if max_retries is not None else load_settings().random_max_retries

    rng = np.random.default_rng(seed)
    for attempt in range(1, retries + 1):
        points = rng.permutation(3 * n) // 3
        seen = set()
        simple = True
        for k in range(0, 3 * n, 2):
            a, b = int(points[k]), int(points[k + 1])
            pair = (a, b) if a < b else (b, a)
            if a == b or pair in seen:
                simple = False
                break
            seen.add(pair)
        if not simple:
            continue

        g = CubicGraph(n, tuple(sorted(seen)))
        if not is_connected(g) or find_bridges(g):
            continue
        logger.debug("🎲 случайный кубический граф n=%d получен с попытки %d", n, attempt)
        return g

    raise GenerationFailure(
        f"не удалось сгенерировать связный кубический граф без мостов на {n} вершинах "
        f"за {retries} попыток"
    )


# --- Связность ---

def connected_components(g: Multigraph, edge_ids: Optional[Iterable[int]] = None,
                         vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
    """Компоненты подграфа (по умолчанию всего графа), упорядочены по минимальной вершине"""
    vertex_list = list(range(g.n)) if vertices is None else sorted(set(vertices))
    allowed = None if vertices is None else set(vertex_list)
    ds = DisjointSet(g.n)
    for e in (range(g.m) if edge_ids is None else edge_ids):
        u, v = g.edges[e]
        if allowed is None or (u in allowed and v in allowed):
            ds.union(u, v)
    groups: Dict[int, List[int]] = {}
    for v in vertex_list:
        groups.setdefault(ds.find(v), []).append(v)
    return sorted(groups.values(), key=lambda comp: comp[0])


def is_connected(g: Multigraph) -> bool:
    return g.n == 0 or len(connected_components(g)) == 1


def require_connected(g: Multigraph):
    if not is_connected(g):
        raise DisconnectedGraph(f"граф на {g.n} вершинах несвязен")


def find_bridges(g: Multigraph) -> FrozenSet[int]:
    """Мосты за один обход в глубину (low-link), параллельные рёбра учитываются по номерам"""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = set()
    timer = 0

    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            advanced = False
            for d in it:
                e = d >> 1
                if e == parent_edge:
                    continue
                w = g.edges[e][1 - (d & 1)]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, iter(g.incidence[w])))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] > disc[u]:
                    bridges.add(parent_edge)
    return frozenset(bridges)


def bfs_tree(g: Multigraph, root: int = 0) -> Tuple[List[int], List[int]]:
    """
    Дерево обхода в ширину (рёбра в порядке номеров)

    Returns:
        (порядок обхода, parent_edge) где parent_edge[root] = -1
    """
    parent_edge = [-1] * g.n
    seen = [False] * g.n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in g.incidence[v]:
            e = d >> 1
            w = g.edges[e][1 - (d & 1)]
            if not seen[w]:
                seen[w] = True
                parent_edge[w] = e
                order.append(w)
                queue.append(w)
    return order, parent_edge


def girth(g: Multigraph) -> float:
    """Длина кратчайшего цикла (2 для параллельных рёбер), INFINITE для леса"""
    best = INFINITE
    for s in range(g.n):
        dist = [-1] * g.n
        via = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for d in g.incidence[u]:
                e = d >> 1
                if e == via[u]:
                    continue
                w = g.edges[e][1 - (d & 1)]
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    via[w] = e
                    queue.append(w)
                else:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# --- Разрезы через метки пространства разрезов ---

def _cut_space_labels(g: Multigraph, seed: int = 0) -> List[int]:
    """
    Случайные метки рёбер: множество рёбер F является элементом пространства
    разрезов тогда и только тогда, когда XOR меток по F равен нулю
    (ложные срабатывания возможны и отсеиваются точной проверкой).
    """
    order, parent_edge = bfs_tree(g)
    tree = {e for e in parent_edge if e >= 0}
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, 2 ** 62, size=max(g.m, 1))

    labels = [0] * g.m
    acc = [0] * g.n
    for e, (u, v) in enumerate(g.edges):
        if e not in tree:
            r = int(draws[e])
            labels[e] = r
            acc[u] ^= r
            acc[v] ^= r
    for v in reversed(order):
        pe = parent_edge[v]
        if pe >= 0:
            labels[pe] = acc[v]
            acc[g.other_endpoint(pe, v)] ^= acc[v]
    return labels


def _zero_xor_subsets(labels: Sequence[int], size: int) -> Iterator[Tuple[int, ...]]:
    """Все возрастающие наборы рёбер заданного размера с нулевым XOR меток (встреча посередине)"""
    m = len(labels)
    if size <= 0 or size > m:
        return
    if size == 1:
        for e in range(m):
            if labels[e] == 0:
                yield (e,)
        return

    head = (size + 1) // 2
    tail = size - head
    table: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for combo in itertools.combinations(range(m), tail):
        x = 0
        for e in combo:
            x ^= labels[e]
        table[x].append(combo)
    for combo in itertools.combinations(range(m), head):
        x = 0
        for e in combo:
            x ^= labels[e]
        for other in table.get(x, ()):
            if other[0] > combo[-1]:
                yield combo + other


def _bond_sides(g: Multigraph, cut: Iterable[int]) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Если G - cut распадается ровно на две части и cut = δ(части), вернуть обе стороны"""
    cut = set(cut)
    comps = connected_components(g, edge_ids=(e for e in range(g.m) if e not in cut))
    if len(comps) != 2:
        return None
    side = set(comps[0])
    for e in cut:
        u, v = g.edges[e]
        if (u in side) == (v in side):
            return None
    return frozenset(comps[0]), frozenset(comps[1])


def _has_cycle(g: Multigraph, vertices: Iterable[int]) -> bool:
    inside = set(vertices)
    ds = DisjointSet(g.n)
    for u, v in g.edges:
        if u in inside and v in inside and not ds.union(u, v):
            return True
    return False


def _short_cycle_upper_bound(g: Multigraph) -> float:
    """Верхняя оценка циклической связности по разрезам вокруг кратчайших циклов через каждое ребро"""
    best = INFINITE
    checked = set()
    for e, (s, t) in enumerate(g.edges):
        # кратчайший путь s -> t в G - e
        via = {s: -1}
        queue = deque([s])
        while queue and t not in via:
            u = queue.popleft()
            for d in g.incidence[u]:
                f = d >> 1
                if f == e:
                    continue
                w = g.edges[f][1 - (d & 1)]
                if w not in via:
                    via[w] = f
                    queue.append(w)
        if t not in via:
            continue
        cycle = {t}
        w = t
        while w != s:
            w = g.other_endpoint(via[w], w)
            cycle.add(w)
        key = frozenset(cycle)
        if key in checked:
            continue
        checked.add(key)
        rest = set(range(g.n)) - cycle
        if _has_cycle(g, rest):
            best = min(best, len(edge_cut(g, cycle)))
    return best


def cyclic_edge_connectivity(g: CubicGraph, max_vertices: Optional[int] = None) -> float:
    """
    Циклическая рёберная связность

    Returns:
        минимальный размер разреза, обе стороны которого содержат цикл,
        или INFINITE, если двух вершинно-непересекающихся циклов нет
    """
    require_connected(g)
    limit = max_vertices if max_vertices is not None else load_settings().cyclic_search_max_vertices
    if g.n > limit:
        raise TooLarge("точная циклическая связность", g.n, limit)

    if find_bridges(g):
        return 1

    upper = _short_cycle_upper_bound(g)
    top = g.m if upper == INFINITE else int(upper) - 1
    labels = _cut_space_labels(g)
    for size in range(2, top + 1):
        for cut in _zero_xor_subsets(labels, size):
            sides = _bond_sides(g, cut)
            if sides and _has_cycle(g, sides[0]) and _has_cycle(g, sides[1]):
                logger.debug("🔪 циклический разрез размера %d: %s", size, cut)
                return size
    return upper


def enumerate_3_edge_cuts(g: CubicGraph) -> List[EdgeCut]:
    """
    Все 3-рёберные разрезы 3-рёберно-связного кубического графа,
    включая тривиальные δ(v); циклические разрезы помечены cyclic=True.
    """
    require_connected(g)
    bridges = find_bridges(g)
    if bridges:
        raise NotThreeEdgeConnected([min(bridges)])

    labels = _cut_space_labels(g)
    for pair in _zero_xor_subsets(labels, 2):
        if _bond_sides(g, pair):
            raise NotThreeEdgeConnected(pair)

    cuts = []
    for triple in _zero_xor_subsets(labels, 3):
        sides = _bond_sides(g, triple)
        if sides is None:
            continue
        s, t = sides
        side = s if len(s) < len(t) or (len(s) == len(t) and 0 in s) else t
        # стороны 3-разреза связны, поэтому цикл есть ровно при |стороны| >= 3
        cyclic = min(len(s), len(t)) >= 3
        cuts.append(EdgeCut(side, frozenset(triple), cyclic))

    cuts.sort(key=lambda c: (len(c.side), sorted(c.side), sorted(c.cut_edges)))
    return cuts


def is_three_edge_connected(g: CubicGraph) -> bool:
    return not edge_connectivity_at_most(g, 2)


def edge_connectivity_at_most(g: Multigraph, k: int) -> bool:
    """Есть ли в графе разрез из не более чем k рёбер (несвязный граф - разрез из 0 рёбер)"""
    if not is_connected(g):
        return True
    labels = _cut_space_labels(g)
    for size in range(1, k + 1):
        for cut in _zero_xor_subsets(labels, size):
            if _bond_sides(g, cut):
                return True
    return False
