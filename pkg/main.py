#!/usr/bin/env python3
"""
🚀 CDC-Assistant - Вложения кубических графов с малым числом сингулярных рёбер
INPUT → граф → паросочетания / почтальонские множества → частичный CDC → вложение → проверка
"""

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Dict, List, Optional

from embedding import surface_stats, trace_facial_walks, verify_fdc
from errors import CdcError, EmbeddingFormatError, InvalidGraphParameter
from formats import (
    bench_csv,
    embedding_section,
    parse_embedding,
    parse_matching,
    parse_walks,
    serialize_embedding,
    serialize_matching,
    serialize_report,
    serialize_walks,
    walks_section,
)
from graph_core import (
    INFINITE,
    CubicGraph,
    cyclic_edge_connectivity,
    generate_bridged_example,
    generate_gn,
    generate_k4,
    generate_k33,
    generate_mobius_ladder,
    generate_petersen,
    generate_prism,
    generate_random_cubic_bridgeless,
    generate_theta,
    parse_graph,
    serialize_graph,
)
from oracle import check_petersen_nonextension, min_singular_exhaustive
from partial_cdc import PartialCdc, extend_to_embedding, require_walks_are_faces
from pipelines import STRATEGIES, applicable_strategies, compare_bender_richmond, gn_genus_bounds, run_strategy
from settings import load_settings

GRAPH_SUFFIXES = {".txt": "edge_list", ".edges": "edge_list", ".g6": "graph6"}


def say(message: str = ""):
    """Сообщения для человека идут в stderr, stdout остаётся для отчётов и CSV"""
    print(message, file=sys.stderr)


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def load_graph(path: str, fmt: Optional[str] = None) -> CubicGraph:
    fmt = fmt or GRAPH_SUFFIXES.get(Path(path).suffix, "edge_list")
    return parse_graph(read_text(path), fmt)


class CdcAssistant:
    """
    Главное приложение: каждая команда возвращает код выхода
    """

    def cmd_embed(self, args) -> int:
        g = load_graph(args.input, args.format)
        say(f"🎯 Граф: n = {g.n}, |E| = {g.m}, стратегия {args.strategy}")

        matching = parse_matching(read_text(args.matching)) if args.matching else None
        started = time.perf_counter()
        result = run_strategy(g, args.strategy, k=args.k, seed=args.seed, matching=matching)
        elapsed = time.perf_counter() - started

        comparison = compare_bender_richmond(result)
        extra: Dict[str, object] = {}
        if matching is not None:
            extra["matching_file"] = args.matching
        elif args.seed is not None:
            extra["seed"] = args.seed
        if args.gn is not None:
            extra.update(gn_genus_bounds(args.gn).report_lines())
        write_text(None, serialize_report(result, comparison, extra))
        if args.out:
            write_text(args.out, serialize_embedding(result.embedding))
            say(f"💾 Вложение сохранено: {args.out}")
        if args.walks_out:
            write_text(args.walks_out, serialize_walks(result.walks))
            say(f"💾 Маршруты частичного CDC: {args.walks_out}")
        if args.matching_out:
            key = "M" if "M" in result.witness else "M1"
            write_text(args.matching_out, serialize_matching(result.witness[key]))
            say(f"💾 Паросочетание {key}: {args.matching_out}")

        say(f"✅ Сингулярных рёбер: {result.singular_count} (оценка {result.bound_name}: ≤ {result.integer_bound})")
        say(f"🌐 Поверхность: {result.report.surface_name}, χ = {result.report.euler_characteristic}")
        say(f"📐 Оценка по роду: ≤ {comparison.br_bound}, меньше: {comparison.smaller}")
        self._mention_alternative(g, args.strategy)
        for note in result.warnings:
            say(f"⚠️ {note}")
        say(f"⚡ Время: {elapsed:.3f}с")
        return 0

    def _mention_alternative(self, g: CubicGraph, strategy: str):
        """Для n/10 и n/2k показать обе оценки: это альтернативы с разной ценой"""
        if strategy not in ("tenth-n", "over-2k") or g.n > load_settings().cyclic_search_max_vertices:
            return
        try:
            lam = cyclic_edge_connectivity(g)
        except CdcError:
            return
        if lam == INFINITE or lam < 3:
            return
        say(f"📊 Сравнение: n/10 → ≤ {g.n // 10}, n/2k при k = {lam} → ≤ {g.n // (2 * int(lam))}")

    def cmd_verify(self, args) -> int:
        g = load_graph(args.graph, args.format)
        text = read_text(args.embedding)
        if "# embedding" in text:
            text = embedding_section(text)
        emb = parse_embedding(text)

        try:
            check = verify_fdc(g, emb)
        except EmbeddingFormatError as e:
            say(f"❌ Вложение не соответствует графу: {e}")
            return 1
        if not check.ok:
            say(f"❌ {check.message}")
            return 1

        report = check.report
        lines = [f"face {i}: " + " ".join(str(x) for x in face.sequence()) for i, face in enumerate(report.faces)]
        lines += [
            f"singular: {len(report.singular)}",
            "singular_edges: " + " ".join(str(e) for e in sorted(report.singular)),
            f"chi: {report.euler_characteristic}",
            f"orientable: {'yes' if report.orientable else 'no'}",
            f"surface: {report.surface_name}",
        ]
        write_text(None, "\n".join(lines) + "\n")
        say(check.message)
        return 0

    def cmd_extend(self, args) -> int:
        """Частичный CDC из файла маршрутов (или секции '# walks' отчёта) → вложение"""
        g = load_graph(args.graph, args.format)
        text = read_text(args.walks)
        if "# walks" in text.splitlines():
            text = walks_section(text)
        pcdc = PartialCdc.from_walks(g, parse_walks(text))
        say(f"🔗 Маршрутов: {len(pcdc.walks)}, покрыто рёбер: {len(pcdc.covered_edges)} из {g.m}")

        emb = extend_to_embedding(g, pcdc)
        faces = trace_facial_walks(g, emb)
        require_walks_are_faces(faces, pcdc)
        report = surface_stats(g, emb, faces)

        lines = [
            f"walks: {len(pcdc.walks)}",
            f"singular: {len(report.singular)}",
            "singular_edges: " + " ".join(str(e) for e in sorted(report.singular)),
            f"chi: {report.euler_characteristic}",
            f"orientable: {'yes' if report.orientable else 'no'}",
            f"surface: {report.surface_name}",
            "# embedding",
        ]
        write_text(None, "\n".join(lines) + "\n" + serialize_embedding(emb))
        if args.out:
            write_text(args.out, serialize_embedding(emb))
            say(f"💾 Вложение сохранено: {args.out}")
        say(f"✅ Все маршруты - грани, сингулярных рёбер: {len(report.singular)}")
        return 0

    def cmd_oracle(self, args) -> int:
        if args.task == "min-singular":
            if not args.input:
                raise InvalidGraphParameter("для min-singular нужен --input")
            g = load_graph(args.input, args.format)
            count, emb = min_singular_exhaustive(g, max_vertices=args.max_vertices)
            write_text(None, f"min_singular: {count}\n# embedding\n" + serialize_embedding(emb))
            say(f"🔮 Минимум сингулярных рёбер по всем вложениям: {count}")
            return 0

        report = check_petersen_nonextension(mode=args.mode)
        lines = [
            f"mode: {report.mode}",
            f"partial_cdc_ok: {report.partial_cdc_ok}",
            f"extensions: {report.extensions}",
            f"min_singular: {report.min_singular}",
            f"all_singular: {report.all_singular}",
            f"face_lengths_divisible_by_4: {report.face_lengths_divisible_by_4}",
            "circuit_lengths: " + " ".join(str(x) for x in report.circuit_lengths),
            f"no_4_or_12_circuit: {report.no_4_or_12_circuit}",
        ]
        lines += [f"singular_histogram {count}: {total}" for count, total in report.singular_histogram.items()]
        write_text(None, "\n".join(lines) + "\n")
        if report.all_singular and report.no_4_or_12_circuit:
            say("✅ Частичный CDC Петерсена не продолжается до CDC")
            return 0
        say("❌ Найдено продолжение без сингулярных рёбер")
        return 1

    def cmd_gen(self, args) -> int:
        g = generate_graph(args.family, args.params)
        write_text(args.out, serialize_graph(g, args.format))
        say(f"🎲 {args.family}: n = {g.n}, |E| = {g.m}")
        return 0

    def cmd_bench(self, args) -> int:
        directory = Path(args.directory)
        paths = sorted(p for p in directory.iterdir() if p.suffix in GRAPH_SUFFIXES)
        if not paths:
            say(f"📂 Нет графов в {directory}")
            return 0
        say(f"📋 Графов: {len(paths)}, процессов: {args.jobs}")

        rows: List[Dict[str, object]] = []
        run_one = partial(bench_graph, seed=args.seed)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for chunk in pool.map(run_one, [str(p) for p in paths]):
                    rows.extend(chunk)
        else:
            for p in paths:
                rows.extend(run_one(str(p)))

        write_text(args.out, bench_csv(rows))
        say(f"✅ Строк: {len(rows)}")
        return 0


def generate_graph(family: str, params: List[int]) -> CubicGraph:
    """Генератор по имени семейства и числовым параметрам команды gen"""
    def param(index: int, default: Optional[int] = None) -> int:
        if index < len(params):
            return params[index]
        if default is None:
            raise InvalidGraphParameter(f"{family}: не хватает параметра #{index + 1}")
        return default

    if family == "petersen":
        return generate_petersen()
    if family == "gn":
        return generate_gn(param(0), seed=param(1, 0))
    if family == "prism":
        return generate_prism(param(0, 3))
    if family == "random":
        return generate_random_cubic_bridgeless(param(0), seed=param(1))
    if family == "k4":
        return generate_k4()
    if family == "theta":
        return generate_theta()
    if family == "k33":
        return generate_k33()
    if family == "mobius":
        return generate_mobius_ladder(param(0))
    if family == "bridged":
        return generate_bridged_example()
    raise InvalidGraphParameter(f"неизвестное семейство: {family}")


def bench_graph(path: str, seed: Optional[int] = None) -> List[Dict[str, object]]:
    """Все применимые стратегии на одном графе; ошибки графа не прерывают bench"""
    name = Path(path).stem
    try:
        g = load_graph(path)
        strategies = applicable_strategies(g)
    except CdcError as e:
        say(f"⚠️ {name}: пропущен ({e})")
        return []

    rows = []
    for strategy in strategies:
        started = time.perf_counter()
        try:
            result = run_strategy(g, strategy, seed=seed)
        except CdcError as e:
            say(f"⚠️ {name} / {strategy}: {e}")
            continue
        wall_ms = round((time.perf_counter() - started) * 1000, 1)
        rows.append({
            "name": name,
            "n": g.n,
            "strategy": strategy,
            "bound": result.integer_bound,
            "singular": result.singular_count,
            "chi": result.report.euler_characteristic,
            "orientable": int(result.report.orientable),
            "br_bound": result.report.bender_richmond_bound,
            "wall_ms": wall_ms,
        })
    return rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description='🚀 CDC-Assistant - вложения кубических графов с малым числом сингулярных рёбер',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Примеры использования:

  # Сгенерировать граф Петерсена
  python3 main.py gen petersen --out data/petersen.txt

  # Вложение с не более чем n/10 сингулярными рёбрами
  python3 main.py embed --input data/corpus/petersen.txt --strategy tenth-n --out petersen.emb

  # Проверить вложение
  python3 main.py verify --graph data/corpus/petersen.txt --embedding petersen.emb

  # Продолжить свой частичный CDC до вложения
  python3 main.py embed -i data/corpus/petersen.txt --walks-out petersen.walks
  python3 main.py extend --graph data/corpus/petersen.txt --walks petersen.walks

  # Точный минимум сингулярных рёбер перебором
  python3 main.py oracle min-singular --input data/corpus/prism.txt

  # Частичный CDC Петерсена не продолжается
  python3 main.py oracle petersen-extension

  # Прогон корпуса в CSV
  python3 main.py bench data/corpus --jobs 4

Коды выхода: 0 успех, 1 проверка не пройдена, 2 ошибка формата,
3 не выполнено предусловие, 4 нарушена гарантия.
        """
    )
    parser.add_argument('--verbose', '-v', action='count', default=0,
                        help='Подробный лог в stderr (-v info, -vv debug)')
    sub = parser.add_subparsers(dest='command', required=True)

    embed = sub.add_parser('embed', help='Построить вложение выбранной стратегией')
    embed.add_argument('--input', '-i', required=True, help="Файл графа ('-' для stdin)")
    embed.add_argument('--format', choices=['edge_list', 'graph6'], help='Формат графа (по умолчанию по расширению)')
    embed.add_argument('--strategy', '-s', choices=STRATEGIES, default='half-n', help='Стратегия (по умолчанию half-n)')
    embed.add_argument('--k', type=int, help='k для over-2k / cyclic-2k (по умолчанию из циклической связности)')
    embed.add_argument('--seed', type=int, default=0,
                       help='Зерно стартового совершенного паросочетания (по умолчанию: 0)')
    embed.add_argument('--matching', '-m', help='Файл стартового совершенного паросочетания (вместо --seed)')
    embed.add_argument('--gn', type=int, metavar='N', help='Граф получен как G_N: добавить в отчёт оценку рода K_N')
    embed.add_argument('--out', '-o', help='Сохранить вложение в файл')
    embed.add_argument('--walks-out', help='Сохранить маршруты частичного CDC в файл')
    embed.add_argument('--matching-out', help='Сохранить паросочетание M (M₁ для tenth-n) в файл')

    extend = sub.add_parser('extend', help='Продолжить частичный CDC из файла маршрутов до вложения')
    extend.add_argument('--graph', '-g', required=True, help='Файл графа')
    extend.add_argument('--walks', '-w', required=True, help="Файл маршрутов или отчёт embed ('-' для stdin)")
    extend.add_argument('--format', choices=['edge_list', 'graph6'], help='Формат графа')
    extend.add_argument('--out', '-o', help='Сохранить вложение в файл')

    verify = sub.add_parser('verify', help='Проверить вложение трассировкой граней')
    verify.add_argument('--graph', '-g', required=True, help='Файл графа')
    verify.add_argument('--embedding', '-e', required=True, help='Файл вложения или отчёт embed')
    verify.add_argument('--format', choices=['edge_list', 'graph6'], help='Формат графа')

    oracle = sub.add_parser('oracle', help='Переборные проверки для малых графов')
    oracle.add_argument('task', choices=['min-singular', 'petersen-extension'])
    oracle.add_argument('--input', '-i', help='Файл графа (для min-singular)')
    oracle.add_argument('--format', choices=['edge_list', 'graph6'], help='Формат графа')
    oracle.add_argument('--mode', choices=['constrained', 'full-filter'], default='constrained',
                        help='Режим перебора для petersen-extension')
    oracle.add_argument('--max-vertices', type=int, help='Лимит перебора (по умолчанию CDC_ORACLE_MAX_VERTICES)')

    gen = sub.add_parser('gen', help='Сгенерировать граф')
    gen.add_argument('family', choices=['petersen', 'gn', 'prism', 'random', 'k4', 'theta', 'k33', 'mobius', 'bridged'])
    gen.add_argument('params', nargs='*', type=int, help='gn N [SEED] | prism [M] | random N SEED | mobius M')
    gen.add_argument('--format', choices=['edge_list', 'graph6'], default='edge_list')
    gen.add_argument('--out', '-o', help='Файл вывода (по умолчанию stdout)')

    bench = sub.add_parser('bench', help='Все применимые стратегии на каталоге графов, CSV в stdout')
    bench.add_argument('directory', help='Каталог с *.txt / *.edges (edge_list) и *.g6 (graph6)')
    bench.add_argument('--jobs', '-j', type=int, default=1, help='Число процессов')
    bench.add_argument('--seed', type=int, default=0, help='Зерно стартового паросочетания (по умолчанию: 0)')
    bench.add_argument('--out', '-o', help='Файл CSV (по умолчанию stdout)')
    return parser


def configure_logging(verbose: int):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, load_settings().log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Главная функция"""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    app = CdcAssistant()
    handlers = {
        'embed': app.cmd_embed,
        'verify': app.cmd_verify,
        'extend': app.cmd_extend,
        'oracle': app.cmd_oracle,
        'gen': app.cmd_gen,
        'bench': app.cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except CdcError as e:
        say(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        say(f"❌ Ошибка чтения/записи: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
