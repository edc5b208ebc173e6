"""Command-line interface: mine, cost, compress/decompress, generate, bench.

Mined structures are emitted as JSON lines (one per bi-clique) so they can
be streamed into downstream analysis; run summaries are single JSON
documents.  All randomness flows from one --seed flag.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import codec, synth
from .cost import Universe, relative_cost, total_cost
from .driver import DEFAULT_DECAY, DEFAULT_ITERATIONS, DriverConfig, MiningReport, mine_report
from .graph import NearBiclique, ObjectSubset, TemporalGraph, load_edge_list


def _fail(message: str) -> SystemExit:
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def _read_graph(path: str) -> TemporalGraph:
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return load_edge_list(fp)
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc.strerror}") from exc


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _float_json(value: float):
    if math.isinf(value):
        return "inf"
    return value


def _biclique_json(b: NearBiclique) -> str:
    return json.dumps(
        {
            "sources": list(b.objects.sources),
            "destinations": list(b.objects.destinations),
            "timestamps": list(b.objects.timestamps),
            "edge_count": b.edge_count,
            "missing_count": b.missing_count,
            "acceptance_saving": b.acceptance_saving,
            "density": b.density,
        }
    )


def _report_json(report: MiningReport) -> dict:
    cfg = report.config
    return {
        "algorithm": report.algorithm,
        "num_bicliques": len(report.bicliques),
        "relative_cost": report.relative_cost,
        "cost": {
            "preciseness_bits": report.breakdown.preciseness_bits,
            "exhaustiveness_bits": report.breakdown.exhaustiveness_bits,
            "conciseness_bits": report.breakdown.conciseness_bits,
            "total_bits": report.breakdown.total_bits,
        },
        "total_edges": report.total_edges,
        "residual_edges": report.residual_edges,
        "runtime_sec": report.runtime_sec,
        "config": {
            "iterations": cfg.max_iterations,
            "alpha": cfg.threshold_decay,
            "seed": cfg.seed,
            "parallel": cfg.parallel,
        },
        "iteration_stats": [
            {
                "iteration": it.iteration,
                "theta": _float_json(it.theta),
                "accepted": it.accepted,
                "removed_edges": it.removed_edges,
            }
            for it in report.iteration_stats
        ],
    }


def _load_bicliques_jsonl(path: str) -> list[ObjectSubset]:
    subsets = []
    with open(path, "r", encoding="utf-8") as fp:
        for line in fp:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            subsets.append(
                ObjectSubset(
                    tuple(rec["sources"]),
                    tuple(rec["destinations"]),
                    tuple(rec["timestamps"]),
                )
            )
    return subsets


def _cmd_mine(args) -> int:
    graph = _read_graph(args.input)
    config = DriverConfig(
        max_iterations=args.iters,
        threshold_decay=args.alpha,
        seed=args.seed,
        parallel=args.parallel,
    )
    report = mine_report(graph, config, algorithm=args.algorithm)
    out, close = _open_out(args.output)
    try:
        for b in report.bicliques:
            out.write(_biclique_json(b) + "\n")
    finally:
        if close:
            out.close()
    summary = json.dumps(_report_json(report), indent=2)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fp:
            fp.write(summary + "\n")
    else:
        print(summary, file=sys.stderr)
    return 0


def _cmd_cost(args) -> int:
    graph = _read_graph(args.input)
    subsets = _load_bicliques_jsonl(args.bicliques)
    universe = Universe.from_graph(graph)
    breakdown = total_cost(graph, subsets, universe)
    print(
        json.dumps(
            {
                "num_bicliques": len(subsets),
                "preciseness_bits": breakdown.preciseness_bits,
                "exhaustiveness_bits": breakdown.exhaustiveness_bits,
                "conciseness_bits": breakdown.conciseness_bits,
                "total_bits": breakdown.total_bits,
                "relative_cost": relative_cost(breakdown, universe),
            },
            indent=2,
        )
    )
    return 0


def _cmd_compress(args) -> int:
    graph = _read_graph(args.input)
    config = DriverConfig(
        max_iterations=args.iters, threshold_decay=args.alpha, seed=args.seed
    )
    report = mine_report(graph, config, algorithm=args.algorithm)
    subsets = [b.objects for b in report.bicliques]
    stream = codec.encode(graph, subsets)
    with open(args.output, "w", encoding="utf-8") as fp:
        codec.dump(stream, fp)
    comp = codec.compression_report(graph, subsets)
    print(
        json.dumps(
            {
                "num_bicliques": len(subsets),
                "relative_cost": comp.relative_cost,
                "compression_rate_percent": 100.0 * comp.relative_cost,
                "stream_bytes": comp.stream_bytes,
                "edge_list_bytes": comp.edge_list_bytes,
            },
            indent=2,
        ),
        file=sys.stderr,
    )
    return 0


def _cmd_decompress(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as fp:
            stream = codec.load(fp)
    except OSError as exc:
        raise _fail(f"cannot read {args.input}: {exc.strerror}") from exc
    graph = codec.decode(stream)
    out, close = _open_out(args.output)
    try:
        for line in codec.canonical_edge_lines(graph):
            out.write(line + "\n")
    finally:
        if close:
            out.close()
    return 0


def _parse_plants(text: str) -> list[synth.PlantSpec]:
    specs = []
    for item in text.split(","):
        dims, _, fill = item.partition(":")
        ws, wd, wt = (int(v) for v in dims.lower().split("x"))
        specs.append(synth.PlantSpec(ws, wd, wt, float(fill) if fill else 1.0))
    return specs


def _cmd_generate(args) -> int:
    if args.er_edges is not None:
        graph = synth.gen_er(args.er_edges, args.seed)
        truth: list[ObjectSubset] = []
    elif args.plant:
        specs = _parse_plants(args.plant)
        if args.universe:
            counts = tuple(int(v) for v in args.universe.lower().split("x"))
        else:
            counts = (
                sum(s.width_s for s in specs),
                sum(s.width_d for s in specs),
                sum(s.width_t for s in specs),
            )
        graph, truth = synth.plant(counts, specs, args.seed)
        if args.noise:
            graph = synth.add_noise(graph, args.noise, args.seed + 1)
    else:
        raise _fail("pass --er-edges or --plant")
    out, close = _open_out(args.output)
    try:
        for s, d, t in graph.edge_triples():
            out.write(f"{s}\t{d}\t{t}\n")
    finally:
        if close:
            out.close()
    if args.truth:
        with open(args.truth, "w", encoding="utf-8") as fp:
            for subset in truth:
                fp.write(
                    json.dumps(
                        {
                            "sources": list(subset.sources),
                            "destinations": list(subset.destinations),
                            "timestamps": list(subset.timestamps),
                        }
                    )
                    + "\n"
                )
    return 0


def _parse_sizes(text: str) -> list[int]:
    """Accepts "2^16,2^18", "65536,262144", or a power range "2^14..2^20"."""
    sizes = []
    for item in text.split(","):
        item = item.strip()
        if ".." in item:
            lo, hi = item.split("..")
            if not (lo.startswith("2^") and hi.startswith("2^")):
                raise ValueError(f"size range must use powers of two: {item!r}")
            sizes.extend(2**k for k in range(int(lo[2:]), int(hi[2:]) + 1))
        elif item.startswith("2^"):
            sizes.append(2 ** int(item[2:]))
        else:
            sizes.append(int(item))
    return sizes


def _cmd_bench(args) -> int:
    for size in _parse_sizes(args.sizes):
        graph = synth.gen_er(size, args.seed)
        config = DriverConfig(
            max_iterations=args.iters, threshold_decay=args.alpha, seed=args.seed
        )
        start = time.perf_counter()
        report = mine_report(graph, config, algorithm=args.algorithm)
        elapsed = time.perf_counter() - start
        print(
            json.dumps(
                {
                    "edges": graph.num_edges,
                    "objects_per_kind": graph.num_sources,
                    "seconds": round(elapsed, 3),
                    "bicliques": len(report.bicliques),
                    "relative_cost": report.relative_cost,
                }
            ),
            flush=True,
        )
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _alpha(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must be in (0, 1)")
    return value


def _add_mining_flags(p):
    p.add_argument("--algorithm", choices=("cutnpeel", "peel"), default="cutnpeel")
    p.add_argument("--iters", type=_positive_int, default=DEFAULT_ITERATIONS)
    p.add_argument("--alpha", type=_alpha, default=DEFAULT_DECAY)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicmine",
        description="Mine near bi-cliques from temporal edge lists and "
        "compress graphs losslessly through them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine near bi-cliques from an edge list")
    p.add_argument("--input", required=True)
    _add_mining_flags(p)
    p.add_argument("--output", help="bi-clique JSONL (default stdout)")
    p.add_argument("--report", help="summary JSON path (default stderr)")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("cost", help="evaluate the cost of a bi-clique set")
    p.add_argument("--input", required=True)
    p.add_argument("--bicliques", required=True, help="JSONL as written by mine")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("compress", help="mine and write the model stream")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    _add_mining_flags(p)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="rebuild the edge list from a model stream")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="edge list path (default stdout)")
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("generate", help="emit synthetic edge lists")
    p.add_argument("--er-edges", type=_positive_int)
    p.add_argument("--plant", help="e.g. 8x8x4:1.0,4x4x2:0.9")
    p.add_argument("--universe", help="SxDxT override for planted graphs")
    p.add_argument("--noise", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.add_argument("--truth", help="write ground-truth subsets as JSONL")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bench", help="runtime table over uniform random graphs")
    p.add_argument("--sizes", required=True, help="e.g. 2^14,2^16,2^18")
    _add_mining_flags(p)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, codec.DecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
