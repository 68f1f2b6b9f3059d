"""Command-line front end.

Every subcommand reads an edge-list graph, runs one analysis, and writes
deterministic artifacts (CSV/JSON, figures as PNG) into the output
directory. Output location comes from --out-dir, falling back to the
HORW_OUT_DIR environment variable, then the working directory.

Exit codes: 0 on success, 1 on a runtime failure (non-convergence,
malformed input file, cap exceeded), 2 on a usage error (bad flag
values, missing file). Failures print a single line to stderr of the
form `error: <message>`.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import (
    build_metadata,
    write_coo_text,
    write_csv,
    write_json,
    write_jsonl,
    write_rank_csv,
    write_rank_json,
)
from .centrality import (
    betweenness_centrality,
    closeness_centrality,
    coreness,
    degree_centrality,
    eigenvector_centrality,
    pagerank,
)
from .dismantle import run_dismantling
from .epidemic import EpidemicParams, select_seeds, simulate_hsir, simulate_sir, spreading_threshold
from .errors import HorwError
from .figures import (
    dismantle_figure,
    epidemic_curves_figure,
    rank_profile_figure,
    sweep_figure,
)
from .graph import EdgeListFormat, Graph, giant_component, is_connected, load_edge_list, stats
from .resolution import analyze, default_window, sweep_s
from .simplicial import DEFAULT_CLIQUE_CAP, all_triangles, maximal_cliques
from .walk import rank as horw_rank

RANK_METHODS = (
    "horw",
    "degree",
    "closeness",
    "betweenness",
    "eigenvector",
    "pagerank",
    "coreness",
)
DISMANTLE_METHODS = ("horw", "corehd", "betweenness", "degree", "coreness", "eigenvector")

ENV_OUT_DIR = "HORW_OUT_DIR"


class UsageError(ValueError):
    """Bad invocation; maps to exit code 2."""


def _out_dir(args) -> Path:
    path = args.out_dir or os.environ.get(ENV_OUT_DIR) or "."
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _edge_format(args) -> EdgeListFormat:
    return EdgeListFormat(delimiter="," if args.delimiter == "comma" else None)


def _load_graph(args, require_connected: bool) -> Graph:
    if not Path(args.graph).is_file():
        raise UsageError(f"graph file not found: {args.graph}")
    g = load_edge_list(args.graph, _edge_format(args))
    if require_connected and not is_connected(g):
        gcc, _ = giant_component(g)
        print(
            f"note: graph not connected; using giant component ({gcc.n} of {g.n} nodes)",
            file=sys.stderr,
        )
        g = gcc
    return g


def _check_unit(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"{name} out of range [0,1]")


def _config(args, skip=("out_dir", "format", "func")) -> dict:
    # out_dir and echo format do not affect results, so they stay out of
    # the hash that stamps the artifacts
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _rank_by_method(g: Graph, method: str, s: float, damping: float, tol: float, max_iter: int):
    if method == "horw":
        return horw_rank(g, s, tol=tol, max_iter=max_iter)
    if method == "pagerank":
        return pagerank(g, damping=damping, tol=tol, max_iter=max_iter)
    if method == "eigenvector":
        return eigenvector_centrality(g, tol=tol, max_iter=max_iter)
    if method == "degree":
        return degree_centrality(g)
    if method == "closeness":
        return closeness_centrality(g)
    if method == "betweenness":
        return betweenness_centrality(g)
    if method == "coreness":
        return coreness(g)
    raise UsageError(f"unknown method {method!r}")


def _method_tag(method: str, s: float) -> str:
    return f"horw_s{s:g}" if method == "horw" else method


def _emit(args, summary: dict, files: list[Path]) -> None:
    if args.format == "json":
        print(json.dumps(summary, sort_keys=True, default=str))
    else:
        for k, v in summary.items():
            print(f"{k}: {v}")
    for f in files:
        print(f"wrote: {f}")


def cmd_stats(args) -> int:
    g = _load_graph(args, require_connected=False)
    st = stats(g)
    meta = build_metadata(_config(args))
    out = _out_dir(args)
    files = [
        write_csv(
            out / "stats.csv",
            meta,
            ("n", "m", "mean_degree", "mean_sq_degree", "clustering"),
            [(st.n, st.m, st.mean_degree, st.mean_sq_degree, st.clustering)],
        ),
        write_json(out / "stats.json", meta, st.as_dict()),
    ]
    _emit(args, st.as_dict(), files)
    return 0


def cmd_cliques(args) -> int:
    from scipy import sparse

    g = _load_graph(args, require_connected=False)
    simplices = maximal_cliques(g, cap=args.cap)
    meta = build_metadata(_config(args))
    out = _out_dir(args)
    rows = ({"id": s.id, "members": [g.labels[m] for m in s.members]} for s in simplices)
    coo_rows, coo_cols = [], []
    for s in simplices:
        coo_rows.extend([s.id] * len(s.members))
        coo_cols.extend(s.members)
    incidence = sparse.csr_matrix(
        (np.ones(len(coo_rows)), (coo_rows, coo_cols)), shape=(len(simplices), g.n)
    )
    files = [
        write_jsonl(out / "cliques.jsonl", meta, rows),
        write_coo_text(out / "incidence.txt", meta, incidence),
    ]
    sizes = [len(s.members) for s in simplices]
    summary = {
        "simplices": len(simplices),
        "largest": max(sizes) if sizes else 0,
        "nodes": g.n,
    }
    _emit(args, summary, files)
    return 0


def cmd_rank(args) -> int:
    _check_unit(args.s, "s")
    g = _load_graph(args, require_connected=True)
    result = _rank_by_method(g, args.method, args.s, args.damping, args.tol, args.max_iter)
    meta = build_metadata(_config(args))
    out = _out_dir(args)
    tag = _method_tag(args.method, args.s)
    files = [
        write_rank_csv(out / f"rank_{tag}.csv", meta, result),
        write_rank_json(out / f"rank_{tag}.json", meta, result),
        rank_profile_figure(out / f"rank_{tag}.png", meta, result.scores, tag),
    ]
    summary = {
        "method": tag,
        "top10": ",".join(result.top(10)),
        "iterations": result.iterations,
    }
    _emit(args, summary, files)
    return 0


def _run_epidemic(args, higher_order: bool) -> int:
    _check_unit(args.s, "s")
    _check_unit(args.gamma, "gamma")
    if not 0.0 < args.seed_frac < 1.0:
        raise UsageError("seed-frac out of range (0,1)")
    if args.runs < 1:
        raise UsageError("runs must be positive")
    g = _load_graph(args, require_connected=True)
    beta_c = spreading_threshold(stats(g))
    beta = args.beta if args.beta is not None else args.beta_mult * beta_c
    _check_unit(beta, "beta")
    beta2 = args.beta2_ratio * beta if higher_order else 0.0
    _check_unit(beta2, "beta2")

    seed_rank = _rank_by_method(g, args.method, args.s, args.damping, 1e-10, 100_000)
    seeds = select_seeds(seed_rank, args.seed_frac)
    params = EpidemicParams(
        beta=beta,
        beta2=beta2,
        gamma=args.gamma,
        seed_fraction=args.seed_frac,
        runs=args.runs,
        rng_seed=args.rng,
    )
    if higher_order:
        ens = simulate_hsir(g, all_triangles(g), seeds, params)
    else:
        ens = simulate_sir(g, seeds, params)

    meta = build_metadata(_config(args), rng_seed=args.rng)
    out = _out_dir(args)
    kind = "hsir" if higher_order else "sir"
    beta_tag = f"b{args.beta:g}" if args.beta is not None else f"bm{args.beta_mult:g}"
    tag = f"{kind}_{_method_tag(args.method, args.s)}_{beta_tag}"
    summary = {
        "beta": beta,
        "beta2": beta2,
        "beta_c": beta_c,
        "seeds": len(seeds),
        "runs": args.runs,
        "final_r_mean": ens.final_r_mean,
        "final_r_std": ens.final_r_std,
        "final_r_sem": ens.final_r_sem,
        "horizon": len(ens.mean_curve) - 1,
    }
    files = [
        write_csv(
            out / f"{tag}.csv",
            meta,
            ("step", "mean_r"),
            list(enumerate(ens.mean_curve.tolist())),
        ),
        write_json(out / f"{tag}.json", meta, summary),
        epidemic_curves_figure(
            out / f"{tag}.png", meta, [(f"beta={beta:.4g}", ens.mean_curve)]
        ),
    ]
    _emit(args, summary, files)
    return 0


def cmd_simulate_sir(args) -> int:
    return _run_epidemic(args, higher_order=False)


def cmd_simulate_hsir(args) -> int:
    return _run_epidemic(args, higher_order=True)


def cmd_dismantle(args) -> int:
    _check_unit(args.s, "s")
    if not 0.0 < args.target < 1.0:
        raise UsageError("target out of range (0,1)")
    g = _load_graph(args, require_connected=True)
    res = run_dismantling(g, args.method, s=args.s, target=args.target, damping=args.damping)
    meta = build_metadata(_config(args))
    out = _out_dir(args)
    tag = f"dismantle_{_method_tag(args.method, args.s)}"
    summary = {
        "method": args.method,
        "proportion": round(res.proportion, 3),
        "removed_count": len(res.removed),
        "threshold": res.threshold,
        "n": g.n,
    }
    payload = dict(summary)
    payload["removed"] = [g.labels[v] for v in res.removed]
    payload["gcc_trajectory"] = list(res.gcc_trajectory)
    files = [
        write_json(out / f"{tag}.json", meta, payload),
        write_csv(
            out / f"{tag}.csv",
            meta,
            ("removals", "gcc_size"),
            list(enumerate(res.gcc_trajectory, start=1)),
        ),
        dismantle_figure(out / f"{tag}.png", meta, res.gcc_trajectory, g.n, res.threshold),
    ]
    _emit(args, summary, files)
    return 0


def _parse_sweep(text: str) -> list[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError("sweep must look like start:stop:step, e.g. 0:1:0.01")
    if step <= 0 or stop < start:
        raise UsageError("sweep needs step > 0 and stop >= start")
    grid = np.round(np.arange(start, stop + step / 2, step), 10)
    if grid[0] < 0 or grid[-1] > 1:
        raise UsageError("sweep values must stay within [0,1]")
    return [float(s) for s in grid]


def cmd_resolution(args) -> int:
    _check_unit(args.s, "s")
    g = _load_graph(args, require_connected=True)
    window = args.window if args.window is not None else default_window(g.n)
    if g.n < 3 * window:
        raise UsageError(f"window {window} too large for {g.n} nodes")
    if args.methods == "all":
        methods = list(RANK_METHODS)
    else:
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
        unknown = [m for m in methods if m not in RANK_METHODS]
        if unknown:
            raise UsageError(f"unknown methods: {', '.join(unknown)}")

    meta = build_metadata(_config(args))
    out = _out_dir(args)
    reports = []
    for m in methods:
        r = _rank_by_method(g, m, args.s, args.damping, 1e-10, 100_000)
        reports.append(analyze(r, window=window))
    rows = [
        (rep.method, rep.kl, rep.slope_top, rep.slope_mid, rep.slope_bottom)
        for rep in reports
    ]
    files = [
        write_csv(
            out / "resolution.csv",
            meta,
            ("method", "kl", "slope_top", "slope_mid", "slope_bottom"),
            rows,
        ),
        write_json(
            out / "resolution.json",
            meta,
            {"window": window, "reports": [vars(rep) for rep in reports]},
        ),
    ]
    summary = {"window": window, "methods": ",".join(m for m in methods)}

    if args.sweep:
        grid = _parse_sweep(args.sweep)
        sw = sweep_s(g, grid)
        files.append(
            write_json(
                out / "sweep.json",
                meta,
                {
                    "s_grid": list(sw.s_grid),
                    "kl": list(sw.kl_values),
                    "best_s": sw.best_s,
                    "best_kl": sw.best_kl,
                },
            )
        )
        files.append(sweep_figure(out / "sweep.png", meta, sw.s_grid, sw.kl_values, sw.best_s))
        summary["best_s"] = sw.best_s
        summary["best_kl"] = sw.best_kl if math.isfinite(sw.best_kl) else "inf"

    _emit(args, summary, files)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file (two tokens per line)")
    p.add_argument(
        "--delimiter",
        choices=("whitespace", "comma"),
        default="whitespace",
        help="token separator in the edge list",
    )
    p.add_argument("--out-dir", default=None, help=f"output directory (default ${ENV_OUT_DIR} or .)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="stdout summary format")


def _add_method(p: argparse.ArgumentParser, choices, default="horw") -> None:
    p.add_argument("--method", choices=choices, default=default)
    p.add_argument("--s", type=float, default=0.5, help="walk mixing parameter in [0,1]")
    p.add_argument("--damping", type=float, default=0.85, help="pagerank damping factor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horw",
        description="Higher-order random-walk node ranking and experiment harnesses",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="node/edge counts, degree moments, clustering")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("cliques", help="maximal simplices and the incidence matrix")
    _add_common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CLIQUE_CAP, help="abort beyond this many cliques")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("rank", help="score nodes by one ranking method")
    _add_common(p)
    _add_method(p, RANK_METHODS)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.set_defaults(func=cmd_rank)

    for name, helptext in (
        ("simulate-sir", "SIR epidemic seeded by a ranking"),
        ("simulate-hsir", "higher-order SIR with triangle contagion"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        _add_method(p, RANK_METHODS)
        p.add_argument("--beta-mult", type=float, default=1.0, help="beta as a multiple of beta_c")
        p.add_argument("--beta", type=float, default=None, help="absolute beta (overrides --beta-mult)")
        p.add_argument("--beta2-ratio", type=float, default=0.8, help="beta2 = ratio * beta")
        p.add_argument("--gamma", type=float, default=1.0)
        p.add_argument("--seed-frac", type=float, default=0.10)
        p.add_argument("--runs", type=int, default=100)
        p.add_argument("--rng", type=int, default=42)
        p.set_defaults(func=cmd_simulate_sir if name == "simulate-sir" else cmd_simulate_hsir)

    p = sub.add_parser("dismantle", help="remove ranked nodes to a GCC target, then reinsert")
    _add_common(p)
    p.add_argument("--method", choices=DISMANTLE_METHODS, default="horw")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--target", type=float, default=0.01)
    p.set_defaults(func=cmd_dismantle)

    p = sub.add_parser("resolution", help="ranking-resolution diagnostics and s sweep")
    _add_common(p)
    p.add_argument("--methods", default="all", help="'all' or a comma list of ranking methods")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--window", type=int, default=None, help="segment width (default: ~1%% of n)")
    p.add_argument("--sweep", default=None, help="s grid start:stop:step for the KL sweep")
    p.set_defaults(func=cmd_resolution)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (HorwError, ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
