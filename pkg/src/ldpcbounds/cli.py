"""Command-line front end.

Subcommands: bounds (curve tables), graph (analyze a code file), verify
(run a verification suite), crossover (locate where two curves meet), gen
(write a random code file), mc (Monte-Carlo leader probability).

Exit codes: 0 ok/pass, 1 verification or crossover failure, 2 usage or
parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds as bnd
from .codes import CodeFormatError, format_code, load_alist, load_code, save_code
from .cosetgraph import (
    ResourceLimitError,
    ball_size,
    build_table,
    diameter,
    exact_leader_probability,
)
from .harness import SUITE_NAMES, GeneratorConfig, default_configs, generate_code, run_suite
from .partition import montecarlo_leader_probability

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class SystemExit2(Exception):
    """Usage-level error discovered after argparse."""


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _load_code_arg(path: str):
    if path.endswith(".alist"):
        return load_alist(path)
    return load_code(path)


def cmd_bounds(args) -> int:
    settings = bnd.DEFAULT_SETTINGS
    step = args.step
    lo = args.delta_min if args.delta_min is not None else step
    hi = args.delta_max
    if not 0.0 <= lo <= hi <= 0.5:
        raise SystemExit2(f"bad delta range [{lo}, {hi}]")
    count = int(round((hi - lo) / step)) + 1 if hi > lo else 1
    deltas = [round(lo + i * step, 12) for i in range(count)]
    deltas = [d for d in deltas if d <= 0.5 + 1e-12]
    names = args.curves.split(",") if args.curves else list(bnd.default_curves(args.w))
    curves = [
        bnd.sample_curve(name.strip(), deltas, w=args.w, mode=args.mode, settings=settings)
        for name in names
    ]
    if args.format == "csv":
        _write_output(bnd.curves_csv(curves), args.output)
    else:
        meta = {"w": args.w, "mode": args.mode}
        _write_output(bnd.curves_json(curves, settings, meta), args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    code = _load_code_arg(args.code)
    table = build_table(code)
    sizes = table.sphere_sizes
    out = {
        "n": code.n,
        "w": code.w,
        "m": code.m,
        "dual_dim": code.dual_dim,
        "code_dim": code.code_dim,
        "coset_count": table.coset_count,
        "sphere_profile": list(sizes),
        "ball_sizes": [int(b) for b in np.cumsum(sizes)],
        "diameter": diameter(table),
    }
    if args.rho is not None:
        out["rho"] = args.rho
        out["leader_probability"] = exact_leader_probability(table, args.rho)
    if args.delta is not None:
        rho = bnd.rho_of_delta(args.delta)
        r = math.floor(rho * code.n)
        out["delta"] = args.delta
        out["radius"] = r
        out["codewords"] = 1 << code.code_dim
        out["ball_at_radius"] = ball_size(table, r)
    if args.format == "json":
        _write_output(json.dumps(out, indent=2) + "\n", args.output)
    else:
        lines = [f"{k}: {v}" for k, v in out.items()]
        _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITE_NAMES:
        raise SystemExit2(f"unknown suite {args.suite!r}; known: {', '.join(SUITE_NAMES)}")
    w_options = (args.w,) if args.w else ((3,) if args.suite in
                ("lemma31", "tuple-claim", "chernoff") else (4,))
    n_hi_default = {"normalize4": 14, "diameter4": 14, "pprime4": 14}.get(args.suite, 16)
    n_lo = args.n_min if args.n_min else 8
    n_hi = args.n_max if args.n_max else n_hi_default
    configs = default_configs(args.codes, args.seed, (n_lo, n_hi), w_options,
                              mode=args.gen_mode)
    report = run_suite(args.suite, configs)
    _write_output(json.dumps(report.to_json_dict(), indent=2) + "\n", args.output)
    if report.skipped and not report.violations:
        sys.stderr.write(f"note: {len(report.skipped)} instances skipped at resource caps\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_crossover(args) -> int:
    fa = bnd.curve_function(args.a, w=args.w, mode=args.mode)
    fb = bnd.curve_function(args.b, w=args.w, mode=args.mode)
    try:
        res = bnd.crossover(fa, fb, args.lo, args.hi)
    except bnd.CrossoverError as exc:
        sys.stderr.write(f"crossover failed: {exc}\n")
        return EXIT_FAIL
    print(f"delta* = {res.delta:.5f}")
    print(f"{args.a}(delta*) = {res.value_a:.9g}")
    print(f"{args.b}(delta*) = {res.value_b:.9g}")
    return EXIT_OK


def cmd_gen(args) -> int:
    config = GeneratorConfig(
        n=args.n, w=args.w, m=args.rows, seed=args.seed, mode=args.gen_mode,
        require_column_weight_2=args.require_column_weight_2,
    )
    code = generate_code(config)
    if args.output:
        save_code(code, args.output)
    else:
        sys.stdout.write(format_code(code))
    return EXIT_OK


def cmd_mc(args) -> int:
    code = _load_code_arg(args.code)
    est = montecarlo_leader_probability(code, args.rho, args.samples, args.seed,
                                        mode=args.mode)
    print(f"estimate = {est.estimate:.6f} +- {1.96 * est.stderr:.6f} (95% CI)")
    print(f"ci = [{est.ci_low:.6f}, {est.ci_high:.6f}]")
    print(f"hits = {est.hits} / {est.samples}, mode = {est.mode}, rho = {est.rho}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ldpcbounds",
                                description="coset leader graphs and LDPC rate bounds")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="emit a table of bound curves")
    b.add_argument("--w", type=int, default=3)
    b.add_argument("--delta-min", type=float, default=None)
    b.add_argument("--delta-max", type=float, default=0.5)
    b.add_argument("--step", type=float, default=0.001)
    b.add_argument("--curves", type=str, default=None,
                   help="comma-separated curve names (default: standard ensemble)")
    b.add_argument("--mode", choices=("strict", "lax"), default="strict",
                   help="substitution mode for improved bounds")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--output", "-o", type=str, default=None)
    b.set_defaults(fn=cmd_bounds)

    g = sub.add_parser("graph", help="analyze a code file")
    g.add_argument("code", type=str)
    g.add_argument("--rho", type=float, default=None)
    g.add_argument("--delta", type=float, default=None)
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--output", "-o", type=str, default=None)
    g.set_defaults(fn=cmd_graph)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", type=str, required=True)
    v.add_argument("--codes", type=int, default=100)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--w", type=int, default=None)
    v.add_argument("--n-min", type=int, default=None)
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--gen-mode", choices=("uniform-support", "regular-tanner"),
                   default="uniform-support")
    v.add_argument("--output", "-o", type=str, default=None)
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("crossover", help="locate where two curves meet")
    c.add_argument("--a", type=str, required=True)
    c.add_argument("--b", type=str, required=True)
    c.add_argument("--lo", type=float, required=True)
    c.add_argument("--hi", type=float, required=True)
    c.add_argument("--w", type=int, default=3)
    c.add_argument("--mode", choices=("strict", "lax"), default="strict")
    c.set_defaults(fn=cmd_crossover)

    ge = sub.add_parser("gen", help="generate a random code file")
    ge.add_argument("--n", type=int, required=True)
    ge.add_argument("--w", type=int, required=True)
    ge.add_argument("--rows", type=int, required=True)
    ge.add_argument("--seed", type=int, required=True)
    ge.add_argument("--gen-mode", choices=("uniform-support", "regular-tanner"),
                    default="uniform-support")
    ge.add_argument("--require-column-weight-2", action="store_true")
    ge.add_argument("--output", "-o", type=str, default=None)
    ge.set_defaults(fn=cmd_gen)

    m = sub.add_parser("mc", help="Monte-Carlo coset leader probability")
    m.add_argument("--code", type=str, required=True)
    m.add_argument("--rho", type=float, required=True)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--mode", choices=("strict", "minweight"), default="strict")
    m.set_defaults(fn=cmd_mc)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (CodeFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_RESOURCE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
