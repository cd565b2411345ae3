#!/usr/bin/env python3
"""
corpus_builder.py
Сборщик тестового корпуса кубических графов в формате edge_list

Использование:
    python3 utils/corpus_builder.py
    python3 utils/corpus_builder.py --output data/corpus
    python3 utils/corpus_builder.py --check
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from graph_core import (  # noqa: E402
    CubicGraph,
    generate_bridged_example,
    generate_gn,
    generate_k4,
    generate_k33,
    generate_mobius_ladder,
    generate_petersen,
    generate_prism,
    generate_theta,
    serialize_graph,
)

# G_n строятся без перемешивания соседей (seed=None): файлы не зависят от версии numpy
CORPUS: Dict[str, Callable[[], CubicGraph]] = {
    "k4": generate_k4,
    "theta": generate_theta,
    "prism": lambda: generate_prism(3),
    "k33": generate_k33,
    "mobius8": lambda: generate_mobius_ladder(4),
    "prism5": lambda: generate_prism(5),
    "petersen": generate_petersen,
    "g4": lambda: generate_gn(4, seed=None),
    "g5": lambda: generate_gn(5, seed=None),
    "bridged10": generate_bridged_example,
}


class CorpusBuilder:
    """Запись и сверка файлов корпуса"""

    def __init__(self, output: str = "data/corpus"):
        self.output = Path(output)

    def build(self) -> int:
        self.output.mkdir(parents=True, exist_ok=True)
        for name, factory in CORPUS.items():
            g = factory()
            path = self.output / f"{name}.txt"
            path.write_text(serialize_graph(g), encoding="utf-8")
            print(f"✅ {path}: n = {g.n}, |E| = {g.m}")
        print(f"📊 Всего графов: {len(CORPUS)}")
        return 0

    def check(self) -> int:
        """Файлы совпадают с генераторами побайтно"""
        stale = []
        for name, factory in CORPUS.items():
            path = self.output / f"{name}.txt"
            if not path.exists() or path.read_text(encoding="utf-8") != serialize_graph(factory()):
                stale.append(name)
        if stale:
            print(f"❌ Устарели: {', '.join(stale)}")
            return 1
        print("✅ Корпус актуален")
        return 0


def main():
    """Главная функция"""
    parser = argparse.ArgumentParser(
        description='Сборщик корпуса кубических графов',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры:
  # Записать корпус в data/corpus
  python3 utils/corpus_builder.py

  # Проверить, что файлы совпадают с генераторами
  python3 utils/corpus_builder.py --check
        """
    )
    parser.add_argument(
        '--output',
        type=str,
        default='data/corpus',
        help='Каталог корпуса (по умолчанию: data/corpus)'
    )
    parser.add_argument(
        '--check',
        action='store_true',
        help='Только сверить существующие файлы'
    )
    args = parser.parse_args()

    builder = CorpusBuilder(args.output)
    sys.exit(builder.check() if args.check else builder.build())


if __name__ == "__main__":
    main()
