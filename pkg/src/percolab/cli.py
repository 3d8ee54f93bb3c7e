"""Command-line entry point: ``percolab <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when an experiment
has more failed trials than ``--max-failures``.
"""

from __future__ import annotations

import argparse
import sys

from . import cycles, dfs, expansion, generators, harness, oracle, percolation
from .graph import read_edge_list, save_edge_list, write_edge_list
from .rng import RngStream


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record(**kw) -> str:
    return " ".join(f"{k}={'-' if v is None else v}" for k, v in kw.items()) + "\n"


def cmd_gen(args) -> int:
    spec = generators.GeneratorSpec(family=args.family, n=args.n, a=args.a, b=args.b,
                                    d=args.d, q=args.q, size=args.size, count=args.count,
                                    seed=args.seed or 0)
    _emit(save_edge_list(generators.generate(spec)), args.out)
    return 0


def cmd_certify(args) -> int:
    G = read_edge_list(args.input)
    if args.exact:
        v = expansion.verify_exact(G, args.k, args.d, budget=args.budget)
    else:
        v = expansion.refute_stochastic(G, args.k, args.d, args.trials, args.seed or 0,
                                        probe_nearby=args.probe_nearby)
    _emit(v.as_record() + "\n", args.out)
    return 0


def cmd_percolate(args) -> int:
    G = read_edge_list(args.input)
    Gp = percolation.percolate(G, args.p, RngStream(args.seed or 0, args.stream))
    _emit(save_edge_list(Gp), args.out)
    return 0


def cmd_dfs_path(args) -> int:
    G = read_edge_list(args.input)
    params = None
    if args.k is not None and args.d is not None and args.eps is not None:
        params = dfs.theorem2_params(args.k, args.d, args.eps)
    budget = args.budget if args.budget is not None else (params.n1 if params else 0)
    tr = dfs.run_dfs(G, args.p, RngStream(args.seed or 0, args.stream),
                     query_budget=budget, params=params)
    text = _record(path_len=tr.max_stack.length, positives=tr.positive_count,
                   queries=tr.n_queries, n2=tr.n2, terminated=tr.terminated,
                   path_target=params.path_target if params else None)
    if args.emit_path:
        text += "path=" + ",".join(map(str, tr.max_stack.vertices)) + "\n"
    _emit(text, args.out)
    return 0


def cmd_cycle(args) -> int:
    G = read_edge_list(args.input)
    params = cycles.theorem3_params(args.c, args.d, args.eps, G.n)
    res = cycles.find_long_cycle(G, params, args.seed or 0, args.stream)
    text = _record(outcome=repr(res.outcome), path_len=res.path_length,
                   r_nominal=res.r_nominal, r_used=res.r_used, g=res.g,
                   n_successful=res.n_successful, cycle_len=res.cycle_length,
                   cycle_target=params.cycle_target, block_len=params.block_len)
    if args.emit_cycle and res.cycle is not None:
        text += "cycle=" + ",".join(map(str, res.cycle.vertices)) + "\n"
    _emit(text, args.out)
    return 0


def cmd_oracle(args) -> int:
    G = read_edge_list(args.input)
    if args.what == "path":
        seq = oracle.longest_path_exact(G)
    else:
        seq = oracle.longest_cycle_exact(G)
    if seq is None:
        text = _record(what=args.what, length=None) + "vertices=-\n"
    else:
        text = _record(what=args.what, length=seq.length)
        text += "vertices=" + ",".join(map(str, seq.vertices)) + "\n"
    _emit(text, args.out)
    return 0


def _experiment_overrides(args) -> dict:
    keys = ("mode", "family", "n", "a", "b", "degree", "q", "size", "count", "input",
            "k", "d", "eps", "c", "p", "budget", "K", "samples", "trials", "seed",
            "workers", "max_failures")
    ov = {k: getattr(args, k, None) for k in keys}
    if getattr(args, "timing", False):
        ov["timing"] = "1"
    return ov


def _run_and_report(cfg, args) -> int:
    if args.sweep:
        name, _, vals = args.sweep.partition("=")
        values = [float(x) for x in vals.split(",") if x]
        results = harness.sweep(cfg, name, values)
        for v, s in results:
            sys.stderr.write(f"{name}={v} " + s.lines()[0] + "\n")
        if args.plot:
            harness.plot_sweep(results, args.plot, xlabel=name)
        return 0
    records, summary = harness.run_experiment(cfg)
    _emit(harness.records_to_csv(records, timing=cfg.timing), args.out)
    for line in summary.lines():
        sys.stderr.write(line + "\n")
    failures = summary.errors
    return 2 if failures > cfg.max_failures else 0


def cmd_experiment(args) -> int:
    ov = _experiment_overrides(args)
    if args.config:
        cfg = harness.load_config(args.config, ov)
    else:
        cfg = harness.parse_config("", ov)
    return _run_and_report(cfg, args)


def cmd_corollary(args) -> int:
    args.mode = "corollary"
    return cmd_experiment(args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--config", default=None, help="key=value config file")

    ap = argparse.ArgumentParser(prog="percolab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    p.add_argument("--family", required=True)
    for name in ("n", "a", "b", "d", "q", "size", "count"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("certify", parents=[common], help="check (k,d) vertex expansion")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--trials", type=int, default=1000)
    p.add_argument("--budget", type=int, default=expansion.DEFAULT_BUDGET)
    p.add_argument("--probe-nearby", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("percolate", parents=[common], help="bond-percolate an edge list")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.set_defaults(func=cmd_percolate)

    p = sub.add_parser("dfs-path", parents=[common], help="budgeted DFS long-path search")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--emit-path", action="store_true")
    p.set_defaults(func=cmd_dfs_path)

    p = sub.add_parser("cycle", parents=[common], help="two-round long-cycle construction")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--emit-cycle", action="store_true")
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("oracle", parents=[common], help="exact longest path/cycle (n <= 20)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--what", choices=("path", "cycle"), default="path")
    p.set_defaults(func=cmd_oracle)

    def experiment_flags(p):
        p.add_argument("--family")
        for name in ("n", "a", "b", "degree", "q", "size", "count", "k", "budget",
                     "samples", "trials", "max_failures"):
            p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
        for name in ("d", "eps", "c", "p"):
            p.add_argument(f"--{name}", type=float)
        p.add_argument("--K", type=float)
        p.add_argument("--in", dest="input")
        p.add_argument("--timing", action="store_true", help="fill the ms column")
        p.add_argument("--sweep", help="PARAM=v1,v2,... (summaries only)")
        p.add_argument("--plot", help="SVG file for the sweep")

    p = sub.add_parser("experiment", parents=[common], help="Monte Carlo trials to CSV")
    p.add_argument("--mode", choices=harness.MODES)
    experiment_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("corollary", parents=[common], help="polarity-graph corollary pipeline")
    experiment_flags(p)
    p.set_defaults(func=cmd_corollary)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"percolab {args.command}: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
