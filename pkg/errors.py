#!/usr/bin/env python3
"""
🧯 Errors - Иерархия исключений CDC-Assistant

Три семейства ошибок соответствуют кодам выхода CLI:
    InputFormatError  -> 2 (не удалось разобрать вход)
    PreconditionError -> 3 (вход разобран, но не подходит алгоритму)
    SoundnessError    -> 4 (нарушена гарантия, которая обязана выполняться)
"""

from typing import Iterable, Optional


class CdcError(Exception):
    """Базовая ошибка системы"""

    exit_code = 1


# --- Ошибки формата входных данных (exit 2) ---

class InputFormatError(CdcError):
    """Вход не соответствует заявленному формату"""

    exit_code = 2


class MalformedInput(InputFormatError):
    """Неверный заголовок или символ в graph6 / edge_list"""


class NotCubic(InputFormatError):
    """Вершина степени != 3"""

    def __init__(self, vertex: int, degree: int):
        super().__init__(f"вершина {vertex} имеет степень {degree}, ожидалось 3")
        self.vertex = vertex
        self.degree = degree


class LoopEdge(InputFormatError):
    """Петля во входном графе"""

    def __init__(self, edge: int, vertex: int):
        super().__init__(f"ребро {edge} является петлёй в вершине {vertex}")
        self.edge = edge
        self.vertex = vertex


class EmbeddingFormatError(InputFormatError):
    """Повреждённый файл вложения"""


class WalkFormatError(InputFormatError):
    """Повреждённый файл замкнутых маршрутов / паросочетания"""


# --- Нарушенные предусловия (exit 3) ---

class PreconditionError(CdcError):
    """Граф или параметры не удовлетворяют условиям теоремы"""

    exit_code = 3


class BridgedGraph(PreconditionError):
    """Граф содержит мосты"""

    def __init__(self, bridges: Iterable[int]):
        self.bridges = sorted(bridges)
        super().__init__(f"граф содержит мосты: {' '.join(map(str, self.bridges))}")


class DisconnectedGraph(PreconditionError):
    """Граф несвязен"""


class NotThreeEdgeConnected(PreconditionError):
    """Граф не является 3-рёберно-связным"""

    def __init__(self, cut_edges: Iterable[int]):
        self.cut_edges = sorted(cut_edges)
        super().__init__(
            f"найден разрез из {len(self.cut_edges)} рёбер: "
            f"{' '.join(map(str, self.cut_edges))}"
        )


class DegenerateExpansion(PreconditionError):
    """G_n при n = 3 вырождается в дигоны"""


class InvalidGraphParameter(PreconditionError):
    """Недопустимый параметр генератора (например, нечётное n)"""


class GenerationFailure(PreconditionError):
    """Генератор не уложился в лимит попыток"""


class TooLarge(PreconditionError):
    """Переборный режим запрещён для такого размера графа"""

    def __init__(self, what: str, n: int, limit: int):
        super().__init__(
            f"{what}: n = {n} превышает лимит {limit} "
            f"(поднимите лимит явно, если перебор действительно нужен)"
        )
        self.n = n
        self.limit = limit


class NotAWalk(PreconditionError):
    """Последовательность не является замкнутым маршрутом в графе"""


class PartialCdcViolation(PreconditionError):
    """Набор маршрутов нарушает условие C1 или C2"""


class NoPerfectMatching(PreconditionError):
    """Совершенное паросочетание не найдено"""


class CutAvoidanceFailed(PreconditionError):
    """Цикл отсекающих плоскостей не сошёлся за отведённое число итераций"""


class RequiredEdgesCyclic(PreconditionError):
    """Обязательные рёбра остова содержат цикл"""


class CyclicConnectivityTooLow(PreconditionError):
    """Циклическая рёберная связность меньше требуемой (или бесконечна)"""


class PackingInfeasible(PreconditionError):
    """k рёберно-непересекающихся остовов не существует"""

    def __init__(self, k: int, partition: list, crossing: int):
        self.k = k
        self.partition = partition
        self.crossing = crossing
        super().__init__(
            f"упаковка {k} остовов невозможна: разбиение на {len(partition)} частей "
            f"пересекают {crossing} < {k * (len(partition) - 1)} рёбер"
        )


# --- Нарушения корректности (exit 4) ---

class SoundnessError(CdcError):
    """Гарантия алгоритма нарушена: это ошибка реализации, а не входа"""

    exit_code = 4


class InconsistentLambda(SoundnessError):
    """Два маршрута через общее ребро требуют разную сигнатуру"""

    def __init__(self, edge: int, walks: Optional[tuple] = None):
        self.edge = edge
        self.walks = walks
        super().__init__(f"противоречивая сигнатура ребра {edge} (маршруты {walks})")


class BoundViolated(SoundnessError):
    """Число сингулярных рёбер превысило доказанную оценку"""

    def __init__(self, name: str, actual, bound):
        self.name = name
        self.actual = actual
        self.bound = bound
        super().__init__(f"оценка {name} нарушена: {actual} > {bound}")


class InternalDegreeError(SoundnessError):
    """Подграф, который обязан быть циклом, имеет вершину нечётной степени"""


class AngleCoverageError(SoundnessError):
    """Угол покрыт гранями не ровно один раз"""


class FaceMissing(SoundnessError):
    """Маршрут частичного CDC не оказался лицевым обходом построенного вложения"""
