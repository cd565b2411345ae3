"""
Общие фикстуры: корень репозитория в sys.path (модули плоские, как main.py),
маркер slow и графы корпуса.
"""

import sys
from pathlib import Path

import networkx as nx
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from embedding import Embedding  # noqa: E402
from graph_core import (  # noqa: E402
    generate_bridged_example,
    generate_gn,
    generate_k4,
    generate_k33,
    generate_mobius_ladder,
    generate_petersen,
    generate_prism,
    generate_theta,
    parse_graph,
)

CORPUS_DIR = ROOT / "data" / "corpus"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: долгие приёмочные проверки (запускаются по умолчанию)")


def load_corpus(name: str):
    return parse_graph((CORPUS_DIR / f"{name}.txt").read_text(encoding="utf-8"))


def corpus_names():
    """Имена графов корпуса (файлы data/corpus/*.txt) по алфавиту"""
    return sorted(path.stem for path in CORPUS_DIR.glob("*.txt"))


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def corpus():
    """Загрузка графа корпуса по имени файла без расширения"""
    return load_corpus


@pytest.fixture
def k4():
    return generate_k4()


@pytest.fixture
def theta():
    return generate_theta()


@pytest.fixture
def prism():
    return generate_prism(3)


@pytest.fixture
def k33():
    return generate_k33()


@pytest.fixture
def mobius8():
    return generate_mobius_ladder(4)


@pytest.fixture
def prism5():
    return generate_prism(5)


@pytest.fixture
def petersen():
    return generate_petersen()


@pytest.fixture
def g4():
    return generate_gn(4, seed=None)


@pytest.fixture
def g5():
    return generate_gn(5, seed=None)


@pytest.fixture
def bridged():
    return generate_bridged_example()


@pytest.fixture
def k4_planar():
    """Плоское вложение K4: четыре треугольные грани"""
    return Embedding(((0, 2, 4), (6, 1, 8), (10, 3, 7), (9, 5, 11)), (1,) * 6)


@pytest.fixture
def theta_planar():
    return Embedding(((0, 2, 4), (5, 3, 1)), (1, 1, 1))


def random_tree_edges(g, rng):
    """Рёбра случайного остова: минимальный остов networkx при случайных весах"""
    multi = nx.MultiGraph()
    multi.add_nodes_from(range(g.n))
    weights = rng.permutation(g.m)
    for e, (u, v) in enumerate(g.edges):
        multi.add_edge(u, v, key=e, weight=int(weights[e]))
    return frozenset(key for _, _, key in nx.minimum_spanning_edges(multi, keys=True, data=False))


@pytest.fixture
def random_tree():
    return random_tree_edges
