#!/usr/bin/env python3
"""
Тесты formats: текст вложения, маршруты, паросочетания, отчёт и CSV
"""

import pytest

from errors import EmbeddingFormatError, WalkFormatError
from formats import (
    BENCH_COLUMNS,
    bench_csv,
    embedding_section,
    format_dart,
    parse_embedding,
    parse_matching,
    parse_walks,
    serialize_embedding,
    serialize_matching,
    serialize_report,
    serialize_walks,
    walks_section,
)
from pipelines import compare_bender_richmond, embed_half_n


class TestEmbeddingText:
    def test_layout(self, theta_planar):
        text = serialize_embedding(theta_planar)
        assert text.splitlines()[0] == "rotation 0: 0.0 1.0 2.0"
        assert text.splitlines()[2] == "signature 0: +1"
        assert parse_embedding("# комментарий\n\n" + text) == theta_planar

    def test_format_dart(self):
        assert format_dart(7) == "3.1"

    @pytest.mark.parametrize("text", [
        "rotation 0: 0.2 1.0 2.0\n",
        "rotation 0: 0.0 1.0 2.0\nrotation 0: 0.1 1.1 2.1\n",
        "rotation 1: 0.0 1.0 2.0\n",
        "signature 0: +2\n",
        "vertex 0\n",
    ])
    def test_rejected(self, text):
        with pytest.raises(EmbeddingFormatError):
            parse_embedding(text)


class TestWalkText:
    def test_walks(self):
        walks = parse_walks("0 0 1 1 0\n# второй\n0 1 1 2 0\n")
        assert [w.edges for w in walks] == [(0, 1), (1, 2)]
        assert serialize_walks(walks) == "0 0 1 1 0\n0 1 1 2 0\n"

    def test_bad_walk(self):
        with pytest.raises(WalkFormatError):
            parse_walks("0 0 1 1\n")
        with pytest.raises(WalkFormatError):
            parse_walks("0 a 1 1 0\n")

    def test_matching(self):
        assert parse_matching("8 6 7\n") == frozenset({6, 7, 8})
        assert serialize_matching({8, 6, 7}) == "6 7 8\n"
        with pytest.raises(WalkFormatError):
            parse_matching("1 2\n3\n")


class TestReport:
    def test_sections(self, prism):
        result = embed_half_n(prism)
        text = serialize_report(result, compare_bender_richmond(result), {"seed": 1})
        lines = text.splitlines()
        assert lines[0] == "bound: half_n"
        assert "seed: 1" in lines
        assert any(line.startswith("smaller_bound: ") for line in lines)
        assert lines.index("# embedding") < lines.index("# witness")
        assert parse_embedding(embedding_section(text)) == result.embedding

    def test_walks_section(self, prism):
        result = embed_half_n(prism)
        text = serialize_report(result)
        lines = text.splitlines()
        assert lines.index("# witness") < lines.index("# walks")
        walks = parse_walks(walks_section(text))
        assert [w.key() for w in walks] == [w.key() for w in result.walks]
        # секция маршрутов не захватывает вложение
        assert "rotation" not in walks_section(text)

    def test_missing_section(self):
        with pytest.raises(EmbeddingFormatError):
            embedding_section("bound: half_n\n")
        with pytest.raises(WalkFormatError):
            walks_section("bound: half_n\n# embedding\nrotation 0: 0.0 1.0 2.0\n")


class TestBenchCsv:
    def test_sorted_rows(self):
        row = dict.fromkeys(BENCH_COLUMNS, 0)
        rows = [dict(row, name="b", strategy="half-n"), dict(row, name="a", strategy="tenth-n"),
                dict(row, name="a", strategy="half-n")]
        lines = bench_csv(rows).splitlines()
        assert lines[0] == ",".join(BENCH_COLUMNS)
        assert [line.split(",")[:3:2] for line in lines[1:]] == [["a", "half-n"], ["a", "tenth-n"], ["b", "half-n"]]
