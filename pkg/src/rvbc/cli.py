"""Command-line front end.

Exit codes: 0 on success, 1 on input errors (unreadable or malformed graph,
unknown vertex, failed download), 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
from typing import Optional, Sequence

from . import datasets
from .bench import (
    FORMATS, ConfigError, ExperimentConfig, SetReport, VertexRow, generate_gadget,
    loglog_slope, run_vertex_experiment, timing_scaling_report,
)
from .dependency import betweenness_all, top_vertices
from .estimators import DEFAULT_TAU, abcd, ebcd, required_samples
from .graph import GraphFormatError, UnknownVertexError, load_edge_list, write_edge_list
from .reachability import compute_rv, rv_ratio

EXIT_INPUT = 1
EXIT_CONFIG = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        p.add_argument("graph", help="edge-list file (.gz accepted)")
        p.add_argument("--weighted", action="store_true", help="lines carry a third weight column")
    p.add_argument("--format", choices=FORMATS, default="tsv", dest="fmt")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rvbc", description="Betweenness of chosen vertices in directed graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rv", help="vertices that can reach a vertex")
    _common(p)
    p.add_argument("vertex", type=int)
    p.add_argument("--members", action="store_true", help="also list the members")

    p = sub.add_parser("exact", help="exact betweenness of one vertex")
    _common(p)
    p.add_argument("vertex", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("approx", help="sampled betweenness of one vertex")
    _common(p)
    p.add_argument("vertex", type=int)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bcd", help="exact below the threshold, sampled above it")
    _common(p)
    p.add_argument("vertices", type=int, nargs="*")
    p.add_argument("--random-set", type=int)
    p.add_argument("--tau", type=int, default=DEFAULT_TAU)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="override the number of samples")
    p.add_argument("--k", type=float, help="dependency bound for --epsilon/--delta mode")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--oracle", action="store_true", help="add exact scores and errors")
    p.add_argument("--include-sinks", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("all", help="exact betweenness of every vertex")
    _common(p)
    p.add_argument("--top", type=int, help="only the highest N")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("gadget", help="write a fan or broom test graph")
    p.add_argument("--kind", choices=("fan", "broom"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("plan", help="samples needed for an (epsilon, delta) guarantee")
    _common(p, graph=False)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--rv", type=int, required=True)

    p = sub.add_parser("scaling", help="exact-score time on growing gadgets")
    _common(p, graph=False)
    p.add_argument("--kind", choices=("fan", "broom"), required=True)
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--repeats", type=int, default=3)

    p = sub.add_parser("fetch", help="download a benchmark network")
    p.add_argument("name", choices=sorted(datasets.DATASETS))
    p.add_argument("--dir", help=f"target directory (default ${datasets.DATA_ENV} or ./data)")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["\t".join(header)] + ["\t".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _estimate_output(args, g, est) -> str:
    label = g.label_of(est.target)
    if args.fmt == "json":
        return json.dumps(est.to_dict(label), indent=2) + "\n"
    return SetReport(args.graph, g.n, (VertexRow.from_estimate(est, label, g.n),)).to_tsv()


def _run(args) -> int:
    cmd = args.command
    if cmd == "gadget":
        g = generate_gadget(args.kind, args.n)
        if args.out:
            write_edge_list(g, args.out)
        else:
            write_edge_list(g, sys.stdout)
        return 0
    if cmd == "plan":
        plan = required_samples(args.epsilon, args.delta, args.k, args.rv)
        rec = {"epsilon": plan.epsilon, "delta": plan.delta, "K": plan.K,
               "rv_size": plan.rv_size, "required_samples": plan.required_samples}
        text = (json.dumps(rec, indent=2) + "\n" if args.fmt == "json"
                else _tsv(list(rec), [list(rec.values())]))
        _emit(text, args.out)
        return 0
    if cmd == "scaling":
        table = timing_scaling_report(args.kind, args.sizes, args.repeats)
        slope = loglog_slope(table)
        if args.fmt == "json":
            text = json.dumps({"kind": args.kind, "rows": table, "slope": slope}, indent=2) + "\n"
        else:
            text = _tsv(["n", "seconds"], [(n, f"{s:.6f}") for n, s in table])
            if slope is not None:
                text += f"# loglog_slope={slope:.3f}\n"
        _emit(text, args.out)
        return 0
    if cmd == "fetch":
        path = datasets.fetch(args.name, args.dir)
        print(path)
        return 0
    if cmd == "bcd":
        cfg = ExperimentConfig(
            graph=args.graph, vertices=args.vertices or None, random_set=args.random_set,
            weighted=args.weighted, tau=args.tau, samples=args.samples, seed=args.seed,
            k=args.k, epsilon=args.epsilon, delta=args.delta, fmt=args.fmt,
            oracle=args.oracle, include_sinks=args.include_sinks, workers=args.workers)
        cfg.validate()
        _emit(run_vertex_experiment(cfg).render(cfg.fmt), args.out)
        return 0

    g = load_edge_list(args.graph, weighted=args.weighted)
    if cmd == "rv":
        r = g.index_of(args.vertex)
        rs = compute_rv(g, r)
        rec = {"target": args.vertex, "size": rs.size, "ratio": rv_ratio(rs, g),
               "rv_seconds": rs.rv_seconds}
        if args.members:
            rec["members"] = [g.label_of(v) for v in rs.members]
        if args.fmt == "json":
            text = json.dumps(rec, indent=2) + "\n"
        else:
            if args.members:
                rec["members"] = ",".join(map(str, rec["members"]))
            text = _tsv(list(rec), [list(rec.values())])
        _emit(text, args.out)
    elif cmd == "exact":
        _emit(_estimate_output(args, g, ebcd(g, g.index_of(args.vertex), args.workers)), args.out)
    elif cmd == "approx":
        if args.samples < 1:
            raise ConfigError("samples must be >= 1")
        est = abcd(g, g.index_of(args.vertex), args.samples, args.seed, args.workers)
        _emit(_estimate_output(args, g, est), args.out)
    elif cmd == "all":
        bc = betweenness_all(g, workers=args.workers)
        order = top_vertices(bc, args.top) if args.top else range(g.n)
        pairs = [(g.label_of(v), float(bc[v])) for v in order]
        if args.fmt == "json":
            text = json.dumps([{"vertex": v, "bc": s} for v, s in pairs], indent=2) + "\n"
        else:
            text = _tsv(["vertex", "bc"], [(v, repr(s)) for v, s in pairs])
        _emit(text, args.out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ConfigError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            print(f"rvbc: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"rvbc: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnknownVertexError as exc:
        print(f"rvbc: input error: unknown vertex {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, urllib.error.URLError) as exc:
        print(f"rvbc: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
