#!/usr/bin/env python3
"""
🏭 Pipelines - Построение вложений с гарантированно малым числом сингулярных рёбер

Каждая стратегия строит частичный CDC из паросочетаний / почтальонских
множеств, расширяет его до вложения и проверяет заявленную оценку:
    half_n    - одно совершенное паросочетание, оценка n/2
    tenth_n   - M₁ без 3-разрезов и M₂ с малым пересечением, оценка n/10
    over_2k   - циклически k-связный граф, M и M' = min χ_M, оценка n/2k
    cyclic_2k - упаковка k остовов в стянутом графе, оценка n/2k
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from embedding import Embedding, FdcReport, bender_richmond_bound, surface_stats, trace_facial_walks
from errors import (
    BoundViolated,
    BridgedGraph,
    CdcError,
    CyclicConnectivityTooLow,
    InvalidGraphParameter,
    NoPerfectMatching,
    TooLarge,
)
from graph_core import (
    INFINITE,
    CubicGraph,
    cyclic_edge_connectivity,
    find_bridges,
    is_three_edge_connected,
    require_connected,
)
from matching import (
    incidence_vector,
    is_perfect_matching,
    matching_avoiding_3cuts,
    min_weight_perfect_matching,
    perfect_matching,
    random_perfect_matching,
    second_matching_kkn,
    union_covers_nine_tenths,
)
from partial_cdc import (
    ClosedWalk,
    PartialCdc,
    circuits_of_even_subgraph,
    extend_to_embedding,
    require_walks_are_faces,
)
from settings import load_settings
from tree_packing import pipeline_cyclically_2k

logger = logging.getLogger(__name__)

STRATEGIES = ("half-n", "tenth-n", "over-2k", "cyclic-2k")

BOUND_NAMES = {
    "half-n": "half_n",
    "tenth-n": "tenth_n",
    "over-2k": "over_2k",
    "cyclic-2k": "cyclic_2k",
}


@dataclass
class PipelineResult:
    """Вложение, отчёт и свидетели (паросочетания, J, остовы), использованные стратегией"""
    embedding: Embedding
    report: FdcReport
    bound_claimed: Fraction
    bound_name: str
    covered_edges: FrozenSet[int]
    witness: Dict[str, object] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    walks: Tuple[ClosedWalk, ...] = ()

    @property
    def singular_count(self) -> int:
        return len(self.report.singular)

    @property
    def integer_bound(self) -> int:
        return math.floor(self.bound_claimed)


@dataclass
class BenderRichmondComparison:
    our_singular_count: int
    our_bound: int
    br_bound: int
    surface: str
    smaller: str


def _require_bridgeless(g: CubicGraph):
    require_connected(g)
    bridges = find_bridges(g)
    if bridges:
        raise BridgedGraph(bridges)


def _finish(g: CubicGraph, pcdc: PartialCdc, bound: Fraction, bound_name: str,
            witness: Dict[str, object], allowed_singular: FrozenSet[int],
            warnings: Optional[List[str]] = None) -> PipelineResult:
    """Расширение, трассировка и проверка оценки и покрытия"""
    emb = extend_to_embedding(g, pcdc, validate=False)
    faces = trace_facial_walks(g, emb)
    require_walks_are_faces(faces, pcdc)
    report = surface_stats(g, emb, faces)

    covered = frozenset(pcdc.covered_edges)
    singular = report.singular
    if singular & covered:
        raise BoundViolated("сингулярные рёбра вне покрытия", sorted(singular & covered), "∅")
    if not singular <= allowed_singular:
        raise BoundViolated(f"{bound_name}: сингулярные ⊆ непокрытых", sorted(singular - allowed_singular), "∅")
    if len(singular) > math.floor(bound):
        raise BoundViolated(bound_name, len(singular), math.floor(bound))

    logger.info("🏁 %s: n=%d, сингулярных %d (оценка %s)", bound_name, g.n, len(singular), bound)
    return PipelineResult(emb, report, bound, bound_name, covered, witness,
                          list(warnings or []), tuple(pcdc.walks))


def _start_matching(g: CubicGraph, matching: Optional[Iterable[int]]) -> FrozenSet[int]:
    if matching is None:
        return perfect_matching(g)
    m = frozenset(matching)
    if not is_perfect_matching(g, m):
        raise NoPerfectMatching(f"заданное множество рёбер {sorted(m)} не является совершенным паросочетанием")
    return m


def embed_half_n(g: CubicGraph, matching: Optional[Iterable[int]] = None) -> PipelineResult:
    """Окружности G - M как частичный CDC: сингулярные ⊆ M, не более n/2"""
    _require_bridgeless(g)
    m = _start_matching(g, matching)
    pcdc = PartialCdc.from_walks(g, circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in m)))
    return _finish(g, pcdc, Fraction(g.n, 2), "half_n", {"M": m}, m)


def embed_tenth_n(g: CubicGraph, matching: Optional[Iterable[int]] = None) -> PipelineResult:
    """C₁ = G - M₁, C₂ = M₁ △ M₂: сингулярные ⊆ M₁ ∩ M₂, не более n/10"""
    _require_bridgeless(g)
    initial = _start_matching(g, matching) if matching is not None else None
    m1 = matching_avoiding_3cuts(g, initial=initial)
    m2 = second_matching_kkn(g, m1)
    if not union_covers_nine_tenths(g, m1, m2):
        raise BoundViolated("|M₁ ∪ M₂| >= ⌈9n/10⌉", len(m1 | m2), math.ceil(9 * g.n / 10))

    walks = circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in m1))
    walks += circuits_of_even_subgraph(g, m1 ^ m2)
    pcdc = PartialCdc.from_walks(g, walks)
    return _finish(g, pcdc, Fraction(g.n, 10), "tenth_n", {"M1": m1, "M2": m2}, m1 & m2)


def resolve_k(g: CubicGraph, k: Optional[int] = None, max_vertices: Optional[int] = None) -> int:
    """
    k для оценки n/2k: точная циклическая связность, если k не задан;
    заданный k проверяется, когда граф укладывается в лимит перебора
    """
    limit = max_vertices if max_vertices is not None else load_settings().cyclic_search_max_vertices
    if k is None:
        try:
            lam = cyclic_edge_connectivity(g, max_vertices=limit)
        except TooLarge as e:
            raise CyclicConnectivityTooLow(f"задайте k явно: {e}") from e
        if lam == INFINITE:
            raise CyclicConnectivityTooLow("циклическая связность бесконечна: теорема неприменима")
        if lam < 3:
            raise CyclicConnectivityTooLow(f"циклическая связность {lam} < 3")
        return int(lam)

    if k < 3:
        raise CyclicConnectivityTooLow(f"k = {k} < 3")
    if g.n <= limit:
        lam = cyclic_edge_connectivity(g, max_vertices=limit)
        if lam == INFINITE:
            raise CyclicConnectivityTooLow("циклическая связность бесконечна: теорема неприменима")
        if lam < k:
            raise CyclicConnectivityTooLow(f"граф не циклически {k}-рёберно-связен (λ_c = {lam})")
    return k


def embed_over_2k(g: CubicGraph, k: Optional[int] = None,
                  matching: Optional[Iterable[int]] = None) -> PipelineResult:
    """C₁ = G - M, C₂ = M △ M' с M' минимального веса χ_M: не более n/2k сингулярных"""
    _require_bridgeless(g)
    warnings = []
    limit = load_settings().cyclic_search_max_vertices
    k = resolve_k(g, k, limit)
    if g.n > limit:
        warnings.append(f"циклическая {k}-рёберная связность не проверена (n = {g.n}), принята на веру")
        logger.warning("⚠️ %s", warnings[-1])

    m = _start_matching(g, matching)
    m_prime = min_weight_perfect_matching(g, incidence_vector(g, m))
    walks = circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in m))
    walks += circuits_of_even_subgraph(g, m ^ m_prime)
    pcdc = PartialCdc.from_walks(g, walks)
    witness = {"M": m, "M'": m_prime, "k": k, "edmonds_check": g.n <= load_settings().pm_enum_max_vertices}
    return _finish(g, pcdc, Fraction(g.n, 2 * k), "over_2k", witness, m & m_prime, warnings)


def embed_cyclic_2k(g: CubicGraph, k: int = 2, matching=None, check_connectivity: bool = True) -> PipelineResult:
    """Обёртка конвейера упаковки остовов в PipelineResult"""
    if matching is not None:
        matching = _start_matching(g, matching)
    outcome = pipeline_cyclically_2k(g, k, matching=matching, check_connectivity=check_connectivity)
    witness = {
        "M": outcome.matching,
        "J": outcome.postman,
        "T_H": frozenset(outcome.contracted.edge_corr[e] for e in outcome.smallest_tree.edges),
        "T_G": outcome.spanning_tree.edges,
        "k": k,
    }
    return PipelineResult(
        embedding=outcome.embedding,
        report=outcome.report,
        bound_claimed=Fraction(g.n, 2 * k),
        bound_name="cyclic_2k",
        covered_edges=frozenset(outcome.pcdc.covered_edges),
        witness=witness,
        warnings=outcome.warnings,
        walks=tuple(outcome.pcdc.walks),
    )


def compare_bender_richmond(result: PipelineResult) -> BenderRichmondComparison:
    """Сравнение нашей оценки с оценкой по роду полученного вложения"""
    report = result.report
    ours = result.integer_bound
    br = bender_richmond_bound(report.orientable, report.genus_like)
    if ours < br:
        smaller = "ours"
    elif br < ours:
        smaller = "bender_richmond"
    else:
        smaller = "equal"
    return BenderRichmondComparison(len(report.singular), ours, br, report.surface_name, smaller)


@dataclass
class GnGenusBounds:
    """
    Оценки рода G_n через минор K_n и что из них следует для оценки по роду

    nonorientable_genus и br_nonorientable равны None при n < 5 и n = 7.
    """
    n: int
    vertices: int
    orientable_genus: int
    nonorientable_genus: Optional[int]
    br_orientable: int
    br_nonorientable: Optional[int]
    tenth_n: int

    def report_lines(self) -> Dict[str, object]:
        """Поля для заголовка отчёта embed --gn"""
        nonorientable = "n/a" if self.nonorientable_genus is None else self.nonorientable_genus
        br_nonorientable = "n/a" if self.br_nonorientable is None else self.br_nonorientable
        return {
            "gn_genus_lower_bound": self.orientable_genus,
            "gn_nonorientable_genus_lower_bound": nonorientable,
            "gn_br_orientable": self.br_orientable,
            "gn_br_nonorientable": br_nonorientable,
            "gn_tenth_n": self.tenth_n,
        }


def gn_genus_lower_bound(n: int) -> int:
    """⌈(n-3)(n-4)/12⌉ - род K_n, нижняя оценка рода вложений G_n (справочно)"""
    if n < 3:
        raise InvalidGraphParameter(f"G_n определён при n >= 3, получено {n}")
    return -(-((n - 3) * (n - 4)) // 12)


def gn_nonorientable_genus_lower_bound(n: int) -> Optional[int]:
    """⌈(n-3)(n-4)/6⌉ - неориентируемый род K_n при n >= 5, n != 7; иначе None"""
    if n < 3:
        raise InvalidGraphParameter(f"G_n определён при n >= 3, получено {n}")
    if n < 5 or n == 7:
        return None
    return -(-((n - 3) * (n - 4)) // 6)


def gn_genus_bounds(n: int) -> GnGenusBounds:
    """
    Обе оценки рода G_n и наименьшие значения 6g-3 / 3g̃-3, которые оценка
    по роду может дать на любом вложении G_n; для сравнения - n(n-1)/10
    """
    orientable = gn_genus_lower_bound(n)
    nonorientable = gn_nonorientable_genus_lower_bound(n)
    return GnGenusBounds(
        n=n,
        vertices=n * (n - 1),
        orientable_genus=orientable,
        nonorientable_genus=nonorientable,
        br_orientable=bender_richmond_bound(True, orientable),
        br_nonorientable=None if nonorientable is None else bender_richmond_bound(False, nonorientable),
        tenth_n=n * (n - 1) // 10,
    )


def applicable_strategies(g: CubicGraph) -> List[str]:
    """Стратегии, предусловия которых выполнены (связность проверяется точно в пределах лимита)"""
    if find_bridges(g):
        return []
    strategies = ["half-n"]
    if is_three_edge_connected(g):
        strategies.append("tenth-n")
    try:
        lam = cyclic_edge_connectivity(g)
    except TooLarge:
        return strategies
    if lam != INFINITE and lam >= 3:
        strategies.append("over-2k")
    if lam != INFINITE and lam >= 4:
        strategies.append("cyclic-2k")
    return strategies


def run_strategy(g: CubicGraph, name: str, k: Optional[int] = None,
                 seed: Optional[int] = None,
                 matching: Optional[Iterable[int]] = None) -> PipelineResult:
    """
    Диспетчер стратегий для CLI и bench (имена через дефис)

    Стартовое совершенное паросочетание: matching, если задано; иначе при
    seed - минимум при случайных весах; иначе детерминированное perfect_matching.
    """
    if matching is not None:
        matching = frozenset(matching)
    elif seed is not None and name in STRATEGIES:
        _require_bridgeless(g)
        matching = random_perfect_matching(g, seed)
    if name == "half-n":
        return embed_half_n(g, matching)
    if name == "tenth-n":
        return embed_tenth_n(g, matching)
    if name == "over-2k":
        return embed_over_2k(g, k, matching)
    if name == "cyclic-2k":
        if k is None:
            lam = cyclic_edge_connectivity(g)
            if lam == INFINITE:
                raise CyclicConnectivityTooLow("циклическая связность бесконечна: теорема неприменима")
            k = max(1, int(lam) // 2)
        return embed_cyclic_2k(g, k, matching)
    raise CdcError(f"неизвестная стратегия: {name}")
