#!/usr/bin/env python3
"""
📄 Formats - Текстовые форматы обмена CLI

    вложение:      "rotation v: e.end e.end e.end" на вершину,
                   затем "signature e: +1|-1" на ребро
    маршруты:      одна строка "v0 e0 v1 e1 ... v0" на маршрут
    паросочетание: одна строка номеров рёбер через пробел
    отчёт:         заголовок "ключ: значение", затем секции "# embedding",
                   "# witness" и "# walks" (частичный CDC в формате маршрутов)
    bench CSV:     name,n,strategy,bound,singular,chi,orientable,br_bound,wall_ms

Строки, начинающиеся с '#', и пустые строки игнорируются при чтении.
Все форматы используют LF.
"""

import csv
import io
import re
from typing import Dict, Iterable, List, Optional, Sequence

from embedding import Embedding
from errors import EmbeddingFormatError, WalkFormatError
from partial_cdc import ClosedWalk

BENCH_COLUMNS = ("name", "n", "strategy", "bound", "singular", "chi", "orientable", "br_bound", "wall_ms")

_ROTATION_RE = re.compile(r"^rotation\s+(\d+)\s*:\s*(.*)$")
_SIGNATURE_RE = re.compile(r"^signature\s+(\d+)\s*:\s*([+-]?1)$")
_DART_RE = re.compile(r"^(\d+)\.([01])$")


def _content_lines(text: str) -> Iterable[tuple]:
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


# --- Вложение ---

def format_dart(d: int) -> str:
    return f"{d >> 1}.{d & 1}"


def serialize_embedding(emb: Embedding) -> str:
    lines = []
    for v, darts in enumerate(emb.pi):
        lines.append(f"rotation {v}: " + " ".join(format_dart(d) for d in darts))
    for e, s in enumerate(emb.signature):
        lines.append(f"signature {e}: {'+1' if s > 0 else '-1'}")
    return "\n".join(lines) + "\n"


def parse_embedding(text: str) -> Embedding:
    """
    Разбор текста вложения. Проверяется только синтаксис и полнота нумерации;
    соответствие конкретному графу проверяет validate_embedding.
    """
    rotations: Dict[int, tuple] = {}
    signs: Dict[int, int] = {}
    for number, line in _content_lines(text):
        match = _ROTATION_RE.match(line)
        if match:
            v = int(match.group(1))
            darts = []
            for token in match.group(2).split():
                dart = _DART_RE.match(token)
                if not dart:
                    raise EmbeddingFormatError(f"строка {number}: дротик '{token}' не имеет вида ребро.конец")
                darts.append(2 * int(dart.group(1)) + int(dart.group(2)))
            if v in rotations:
                raise EmbeddingFormatError(f"строка {number}: повторное вращение вершины {v}")
            rotations[v] = tuple(darts)
            continue
        match = _SIGNATURE_RE.match(line)
        if match:
            e = int(match.group(1))
            if e in signs:
                raise EmbeddingFormatError(f"строка {number}: повторная сигнатура ребра {e}")
            signs[e] = int(match.group(2))
            continue
        raise EmbeddingFormatError(f"строка {number}: не удалось разобрать '{line}'")

    if sorted(rotations) != list(range(len(rotations))):
        raise EmbeddingFormatError("вращения заданы не для вершин 0..n-1")
    if sorted(signs) != list(range(len(signs))):
        raise EmbeddingFormatError("сигнатуры заданы не для рёбер 0..m-1")
    return Embedding(
        tuple(rotations[v] for v in range(len(rotations))),
        tuple(signs[e] for e in range(len(signs))),
    )


# --- Маршруты и паросочетания ---

def _int_tokens(line: str, number: int) -> List[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError as e:
        raise WalkFormatError(f"строка {number}: ожидались целые числа: '{line}'") from e


def serialize_walks(walks: Sequence[ClosedWalk]) -> str:
    return "".join(" ".join(str(x) for x in walk.sequence()) + "\n" for walk in walks)


def parse_walks(text: str) -> List[ClosedWalk]:
    walks = []
    for number, line in _content_lines(text):
        tokens = _int_tokens(line, number)
        if len(tokens) < 5 or len(tokens) % 2 == 0 or tokens[0] != tokens[-1]:
            raise WalkFormatError(f"строка {number}: маршрут должен иметь вид v0 e0 v1 ... v0")
        walks.append(ClosedWalk.from_sequence(tokens))
    return walks


def serialize_matching(m: Iterable[int]) -> str:
    return " ".join(str(e) for e in sorted(m)) + "\n"


def parse_matching(text: str) -> frozenset:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise WalkFormatError(f"паросочетание занимает одну строку, найдено {len(lines)}")
    number, line = lines[0]
    return frozenset(_int_tokens(line, number))


# --- Отчёт ---

def _witness_value(value) -> str:
    if isinstance(value, (set, frozenset, list, tuple)):
        return " ".join(str(x) for x in sorted(value))
    return str(value)


def serialize_report(result, comparison=None, extra: Optional[Dict[str, object]] = None) -> str:
    """Отчёт стратегии: заголовок, вложение и свидетели (ключи по алфавиту)"""
    report = result.report
    header = [
        f"bound: {result.bound_name}",
        f"n: {len(result.embedding.pi)}",
        f"bound_value: {result.bound_claimed}",
        f"bound_floor: {result.integer_bound}",
        f"singular: {result.singular_count}",
        f"singular_edges: {_witness_value(report.singular)}",
        f"chi: {report.euler_characteristic}",
        f"orientable: {'yes' if report.orientable else 'no'}",
        f"surface: {report.surface_name}",
        f"faces: {report.face_count}",
        f"br_bound: {report.bender_richmond_bound}",
    ]
    if comparison is not None:
        header.append(f"smaller_bound: {comparison.smaller}")
    for key, value in (extra or {}).items():
        header.append(f"{key}: {value}")
    for note in result.warnings:
        header.append(f"warning: {note}")

    witness = [f"{key}: {_witness_value(result.witness[key])}" for key in sorted(result.witness)]
    return (
        "\n".join(header)
        + "\n# embedding\n"
        + serialize_embedding(result.embedding)
        + "# witness\n"
        + "".join(line + "\n" for line in witness)
        + "# walks\n"
        + serialize_walks(result.walks)
    )


REPORT_SECTIONS = ("# embedding", "# witness", "# walks")


def _report_section(report_text: str, name: str) -> Optional[str]:
    """Строки от заголовка секции до следующего заголовка; None, если секции нет"""
    inside = False
    lines = []
    for raw in report_text.splitlines():
        marker = raw.strip()
        if marker in REPORT_SECTIONS:
            if inside:
                break
            inside = marker == name
            continue
        if inside:
            lines.append(raw)
    if not inside:
        return None
    return "".join(line + "\n" for line in lines)


def embedding_section(report_text: str) -> str:
    """Вырезать вложение из отчёта"""
    section = _report_section(report_text, "# embedding")
    if section is None:
        raise EmbeddingFormatError("в отчёте нет секции '# embedding'")
    return section


def walks_section(report_text: str) -> str:
    """Маршруты частичного CDC из отчёта embed"""
    section = _report_section(report_text, "# walks")
    if section is None:
        raise WalkFormatError("в отчёте нет секции '# walks'")
    return section


# --- Bench CSV ---

def bench_csv(rows: Iterable[Dict[str, object]]) -> str:
    """CSV с фиксированными колонками; строки сортируются по (name, strategy)"""
    ordered = sorted(rows, key=lambda row: (str(row["name"]), str(row["strategy"])))
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in ordered:
        writer.writerow({column: row[column] for column in BENCH_COLUMNS})
    return buffer.getvalue()
