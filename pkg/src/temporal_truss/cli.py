"""``temporal-truss`` command line.

Exit codes: 0 success (an empty community included), 1 usage error,
2 data error, 3 verification failure.

With ``--format json-lines`` every output line is one JSON object carrying
a ``"command"`` key plus the fields of that command's text output.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional

from .gen import GenSpec, Planted, generate
from .graph import GraphFormatError, TemporalGraph, UnknownEdgeError, UnknownVertexError, load_graph, write_edge_list
from .harness import ENGINES, bench, run_engine, thread_cap, verify
from .metrics import DISTINCT, WINDOW, estimate_delta_star, evaluate
from .truss import MODES, PAPER, CommunityResult
from .ttindex import TTIndexError, build_index, load_index, save_index

log = logging.getLogger("temporal_truss")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Out:
    def __init__(self, fmt: str, command: str, stream=None):
        self.fmt = fmt
        self.command = command
        self.stream = stream or sys.stdout

    def record(self, text: str, **fields):
        if self.fmt == "json-lines":
            self.stream.write(json.dumps({"command": self.command, **fields}) + "\n")
        else:
            self.stream.write(text + "\n")


def _delta_arg(raw: str):
    if raw == "auto":
        return raw
    try:
        d = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError("delta must be a non-negative integer or 'auto'") from None
    if d < 0:
        raise argparse.ArgumentTypeError("delta must be non-negative")
    return d


def _graph(args) -> TemporalGraph:
    if not args.input:
        raise UsageError("--input is required")
    return load_graph(args.input, time_scale=args.time_scale, rebase=args.rebase)


def _delta(args, g) -> int:
    if args.delta is None:
        raise UsageError("--delta is required (an integer or 'auto')")
    if args.delta == "auto":
        d = estimate_delta_star(g)
        log.info("delta auto -> %d", d)
        return d
    return args.delta


def _query_vertex(args, g) -> int:
    if args.query_node is None:
        raise UsageError("--query-node is required")
    return g.vertex_of_label(args.query_node)


def _index_for(args, g, engine):
    if engine != "tts":
        return None
    if not args.index:
        raise UsageError("the tts engine requires --index")
    return load_index(args.index, graph=g)


# -- subcommands ---------------------------------------------------------------

def cmd_ingest(args, out: Out) -> int:
    g = _graph(args)
    stats = {"vertices": g.n, "static_edges": g.m_static, "temporal_edges": g.m_temporal, "t_max": g.t_max}
    header = f"{'vertices':>10} {'static_edges':>13} {'temporal_edges':>15} {'t_max':>8}"
    row = f"{g.n:>10} {g.m_static:>13} {g.m_temporal:>15} {g.t_max:>8}"
    out.record(header + "\n" + row, **stats)
    return EXIT_OK


def cmd_build_index(args, out: Out) -> int:
    g = _graph(args)
    if not args.index:
        raise UsageError("--index (output path) is required")
    t0 = time.perf_counter()
    idx = build_index(g, delta_max=args.delta_max)
    secs = time.perf_counter() - t0
    size = save_index(idx, args.index)
    if idx.saturated_at is not None and idx.saturated_at < max(g.t_max - 1, 0):
        log.warning("supports saturated at delta=%d (t_max=%d); stopped early", idx.saturated_at, g.t_max)
    stats = {"build_seconds": round(secs, 6), "file_bytes": size, **idx.stats()}
    out.record("\n".join(f"{k}: {v}" for k, v in stats.items()), **stats)
    return EXIT_OK


def render_result(g: TemporalGraph, res: CommunityResult, engine: str, out: Out) -> None:
    lab = g.labels
    comps = []
    for c in res.components:
        verts = sorted({lab[x] for e in c for x in e})
        edges = sorted(sorted((lab[u], lab[v])) for u, v in c)
        comps.append({"vertices": verts, "edges": edges})
    lines = [f"k*={res.k_star} components={len(comps)}"]
    for i, c in enumerate(comps, start=1):
        lines.append(f"component {i}: {len(c['vertices'])} vertices, {len(c['edges'])} edges")
        lines.append("  vertices: " + " ".join(map(str, c["vertices"])))
        lines.append("  edges: " + " ".join(f"{u}-{v}" for u, v in c["edges"]))
    out.record("\n".join(lines), engine=engine, mode=res.mode, query=lab[res.query],
               delta=res.delta, k_star=res.k_star, components=comps)


def cmd_query(args, out: Out) -> int:
    g = _graph(args)
    q = _query_vertex(args, g)
    delta = _delta(args, g)
    idx = _index_for(args, g, args.engine)
    res = run_engine(args.engine, g, q, delta, args.mode, idx)
    render_result(g, res, args.engine, out)
    return EXIT_OK


def cmd_metrics(args, out: Out) -> int:
    g = _graph(args)
    if args.vertices:
        try:
            labels = [int(x) for x in args.vertices.split(",") if x.strip()]
        except ValueError:
            raise UsageError("--vertices takes comma-separated integer labels") from None
        s = {g.vertex_of_label(x) for x in labels}
    elif args.query_node is not None:
        q = _query_vertex(args, g)
        delta = _delta(args, g)
        s = run_engine(args.engine, g, q, delta, args.mode, _index_for(args, g, args.engine)).vertices()
    else:
        raise UsageError("give --vertices or --query-node to pick the vertex set")
    ds = None if args.delta_star == "auto" else args.delta_star
    rep = evaluate(g, s, ds, ts_mode=args.ts_mode)
    fields = {"size": len(s), **rep.as_dict()}
    out.record("\n".join(f"{k}: {v}" for k, v in fields.items()), **fields)
    return EXIT_OK


def cmd_bench(args, out: Out) -> int:
    g = _graph(args)
    delta = _delta(args, g)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ENGINES:
            raise UsageError(f"unknown engine {e!r}")
    idx = load_index(args.index, graph=g) if args.index else None
    rep = bench(g, delta, engines, n_queries=args.queries, reps=args.reps, seed=args.seed,
                mode=args.mode, index=idx, workers=args.workers)
    if out.fmt != "json-lines":
        out.record(f"{'engine':<6} {'bucket':<6} {'queries':>7} {'median_ms':>10} {'p10_ms':>10} {'p90_ms':>10}")
    for r in rep.rows:
        out.record(f"{r.engine:<6} {r.bucket:<6} {r.queries:>7} {r.median_ms:>10.3f} "
                   f"{r.p10_ms:>10.3f} {r.p90_ms:>10.3f}", **r.as_dict())
    return EXIT_OK


def cmd_verify(args, out: Out) -> int:
    modes = MODES if args.mode == "both" else (args.mode,)
    rep = verify(args.instances, seed=args.seed, modes=modes)
    if rep.passed:
        out.record(f"PASS {rep.instances} instances, {rep.checks} checks",
                   passed=True, instances=rep.instances, checks=rep.checks)
        return EXIT_OK
    d = rep.divergence
    out.record(f"FAIL at seed {d['seed']} (mode={d['mode']}, q={d['q']}, delta={d['delta']}): "
               f"k*={d['k_star']}", passed=False, instances=rep.instances, checks=rep.checks, divergence=d)
    return EXIT_VERIFY


def cmd_generate(args, out: Out) -> int:
    conf = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            conf = json.load(fh)
    planted = conf.pop("planted", None)
    for key in ("n", "m_static", "t_max", "max_timestamps"):
        val = getattr(args, key)
        if val is not None:
            conf[key] = val
    conf["seed"] = args.seed
    if args.planted_size:
        planted = {"size": args.planted_size, "spread": args.planted_spread, "count": args.planted_count}
    missing = [k for k in ("n", "m_static", "t_max") if k not in conf]
    if missing:
        raise UsageError("generate needs " + ", ".join("--" + k.replace("_", "-") for k in missing))
    spec = GenSpec(**conf, planted=Planted(**planted) if planted else None)
    g = generate(spec)
    if not args.output:
        raise UsageError("--output is required")
    write_edge_list(g, args.output)
    out.record(f"wrote {g.m_temporal} temporal edges ({g.m_static} static) to {args.output}",
               path=args.output, vertices=g.n, static_edges=g.m_static, temporal_edges=g.m_temporal)
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "build-index": cmd_build_index,
    "query": cmd_query,
    "metrics": cmd_metrics,
    "bench": cmd_bench,
    "verify": cmd_verify,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="edge list: one 'u v t' per line")
    common.add_argument("--index", help="index file path")
    common.add_argument("--query-node", type=int, help="query vertex (original id)")
    common.add_argument("--delta", type=_delta_arg, help="time-span bound, or 'auto'")
    common.add_argument("--engine", choices=ENGINES, default="ls")
    common.add_argument("--mode", choices=(*MODES, "both"),
                        help="connectivity mode (default paper; verify defaults to both)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--reps", type=int, default=1)
    common.add_argument("--time-scale", type=int, default=1)
    common.add_argument("--rebase", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="temporal-truss", description="Truss-based temporal community search.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("ingest", parents=[common], help="print graph statistics")
    b = sub.add_parser("build-index", parents=[common], help="build and save the index")
    b.add_argument("--delta-max", type=int)
    sub.add_parser("query", parents=[common], help="find the maximal delta-truss around a vertex")
    m = sub.add_parser("metrics", parents=[common], help="HTD / HTC of a vertex set")
    m.add_argument("--vertices", help="comma-separated vertex ids")
    m.add_argument("--delta-star", type=_delta_arg, default="auto")
    m.add_argument("--ts-mode", choices=(DISTINCT, WINDOW), default=DISTINCT)
    be = sub.add_parser("bench", parents=[common], help="per-engine query latency")
    be.add_argument("--engines", default=",".join(ENGINES))
    be.add_argument("--queries", type=int, default=100)
    be.add_argument("--workers", type=int, default=1)
    v = sub.add_parser("verify", parents=[common], help="cross-engine agreement on random instances")
    v.add_argument("--instances", type=int, default=200)
    gp = sub.add_parser("generate", parents=[common], help="write a synthetic temporal graph")
    gp.add_argument("--config", help="JSON file with generator fields")
    gp.add_argument("--output")
    gp.add_argument("--n", type=int)
    gp.add_argument("--m-static", dest="m_static", type=int)
    gp.add_argument("--t-max", dest="t_max", type=int)
    gp.add_argument("--max-timestamps", dest="max_timestamps", type=int)
    gp.add_argument("--planted-size", type=int)
    gp.add_argument("--planted-spread", type=int, default=2)
    gp.add_argument("--planted-count", type=int, default=1)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    log.debug("parallelism cap %d", thread_cap())
    out = Out(args.format, args.command)
    try:
        if args.mode is None:
            args.mode = "both" if args.command == "verify" else PAPER
        elif args.mode == "both" and args.command != "verify":
            raise UsageError("--mode both is only meaningful for verify")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"temporal-truss: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, TTIndexError, UnknownVertexError, UnknownEdgeError, OSError, ValueError,
            json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        kind = "unknown vertex" if isinstance(exc, UnknownVertexError) else type(exc).__name__
        print(f"temporal-truss: {kind}: {msg}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
