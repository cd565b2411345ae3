#!/usr/bin/env python3
"""
scale_check.py
Замер времени конвейера half_n на больших случайных кубических графах

Использование:
    python3 utils/scale_check.py
    python3 utils/scale_check.py --n 10000 --runs 5 --seed 1
"""

import argparse
import gc
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from embedding import surface_stats, trace_facial_walks, verify_fdc  # noqa: E402
from graph_core import CubicGraph, generate_random_cubic_bridgeless  # noqa: E402
from matching import perfect_matching  # noqa: E402
from partial_cdc import PartialCdc, circuits_of_even_subgraph, extend_to_embedding  # noqa: E402


@dataclass
class ScaleSample:
    """Время этапов одного прогона в секундах"""
    n: int
    matching: float
    extension: float
    tracing: float
    verification: float

    @property
    def total(self) -> float:
        return self.matching + self.extension + self.tracing + self.verification


def measure(g: CubicGraph) -> ScaleSample:
    """Один прогон half_n по этапам; сборщик мусора на время замера выключен"""
    gc.collect()
    gc.disable()
    try:
        return _timed_run(g)
    finally:
        gc.enable()


def _timed_run(g: CubicGraph) -> ScaleSample:
    t0 = time.perf_counter()
    m = perfect_matching(g)
    t1 = time.perf_counter()
    pcdc = PartialCdc.from_walks(g, circuits_of_even_subgraph(g, (e for e in range(g.m) if e not in m)))
    emb = extend_to_embedding(g, pcdc, validate=False)
    t2 = time.perf_counter()
    faces = trace_facial_walks(g, emb)
    report = surface_stats(g, emb, faces)
    t3 = time.perf_counter()
    check = verify_fdc(g, emb)
    t4 = time.perf_counter()
    if not check.ok or len(report.singular) > g.n // 2:
        raise RuntimeError(f"n = {g.n}: {check.message}")
    return ScaleSample(g.n, t1 - t0, t2 - t1, t3 - t2, t4 - t3)


def run(n: int, runs: int, seed: int) -> List[ScaleSample]:
    g = generate_random_cubic_bridgeless(n, seed=seed)
    return [measure(g) for _ in range(runs)]


def doubling_ratio(n: int, runs: int = 5, seed: int = 1) -> Tuple[float, List[ScaleSample]]:
    """
    Во сколько раз растёт медиана расширения + трассировки при переходе
    от n/2 к n; второе значение - прогоны на n
    """
    half = n // 2 + (n // 2) % 2
    small = run(half, runs, seed)
    large = run(n, runs, seed)
    linear_small = statistics.median(s.extension + s.tracing for s in small)
    linear_large = statistics.median(s.extension + s.tracing for s in large)
    return (linear_large / linear_small if linear_small > 0 else 0.0), large


def main():
    """Главная функция"""
    parser = argparse.ArgumentParser(
        description='Замер времени half_n на случайных кубических графах',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры:
  # n = 10^4, медиана 5 прогонов, плюс n/2 для оценки роста
  python3 utils/scale_check.py

  # Другой размер и зерно
  python3 utils/scale_check.py --n 20000 --seed 7
        """
    )
    parser.add_argument('--n', type=int, default=10000, help='Число вершин (по умолчанию: 10000)')
    parser.add_argument('--runs', type=int, default=5, help='Прогонов на размер (по умолчанию: 5)')
    parser.add_argument('--seed', type=int, default=1, help='Зерно генератора (по умолчанию: 1)')
    parser.add_argument('--limit', type=float, default=10.0, help='Допустимое время полного прогона, с')
    args = parser.parse_args()

    half = args.n // 2 + (args.n // 2) % 2
    ratio, large = doubling_ratio(args.n, args.runs, args.seed)
    total = statistics.median(s.total for s in large)

    print(f"📏 n = {args.n}: медиана полного прогона {total:.3f}с")
    print(f"   паросочетание {statistics.median(s.matching for s in large):.3f}с, "
          f"расширение {statistics.median(s.extension for s in large):.3f}с, "
          f"трассировка {statistics.median(s.tracing for s in large):.3f}с, "
          f"проверка {statistics.median(s.verification for s in large):.3f}с")
    print(f"📈 расширение + трассировка: n = {half} → {args.n}, рост в {ratio:.2f} раза")

    ok = total < args.limit and ratio <= 2.0
    print("✅ Масштабирование в норме" if ok else "⚠️ Масштабирование хуже ожидаемого")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
