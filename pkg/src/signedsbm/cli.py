"""Command-line interface: ``signedsbm {generate,estimate,solve,sweep,bench}``.

Exit codes: 0 on success, 1 for usage errors, 2 for bad input data.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
import warnings

from . import experiments as ex
from .estimation import estimate_params
from .generate import SsbmParams, sample
from .graph import EdgeListError, count_moments, read_edge_list, write_edge_list

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_rates(p, required=True):
    for flag in ("--alpha-plus", "--beta-plus", "--alpha-minus", "--beta-minus"):
        p.add_argument(flag, type=float, required=required)


def _rates(args) -> tuple[float, float, float, float]:
    return (args.alpha_plus, args.beta_plus, args.alpha_minus, args.beta_minus)


def _open_out(path):
    if path and path != "-":
        return open(path, "w", newline="")
    return contextlib.nullcontext(sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="signedsbm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="sample an SSBM graph to an edge-list file")
    p.add_argument("--n", type=int, required=True)
    _add_rates(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--truth", help="label output path (default: OUT.truth)")
    p.add_argument("--one-based", action="store_true")

    for name, help_ in (("estimate", "estimate model rates from an edge list"),
                        ("solve", "recover two communities from an edge list")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path")
        p.add_argument("--one-based", action="store_true")
        p.add_argument("--symmetrize", action="store_true",
                       help="merge pairs listed in both orientations with the same sign")
        p.add_argument("--out", help="write output here instead of stdout")
        if name == "estimate":
            p.add_argument("--csv", action="store_true", help="emit one machine-readable CSV row")
        else:
            p.add_argument("--xi", default="estimated", help="'estimated' or a number")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--labels", action="store_true", help="dump the full label assignment")

    p = sub.add_parser("sweep", help="exact-recovery ratios over a 2-D rate grid (CSV)")
    p.add_argument("--spec", help="JSON file with SweepSpec fields; flags below are then ignored")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=40)
    _add_rates(p, required=False)
    p.add_argument("--sweep", nargs=4, action="append", metavar=("NAME", "START", "STOP", "STEP"),
                   help="swept rate, e.g. --sweep alpha_minus 1 10 0.5 (give twice)")
    p.add_argument("--xi", default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave mean_runtime_ms empty")
    p.add_argument("--out")

    p = sub.add_parser("bench", help="timing across graph sizes (CSV)")
    p.add_argument("--n", required=True, help="comma-separated sizes, e.g. 500,1000,2000")
    _add_rates(p)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--xi", default="estimated")
    p.add_argument("--out")
    return parser


def _sweep_spec(args) -> ex.SweepSpec:
    if args.spec:
        with open(args.spec) as fh:
            return ex.SweepSpec.from_dict(json.load(fh))
    if args.n is None or not args.sweep or len(args.sweep) != 2:
        raise UsageError("sweep needs --n and exactly two --sweep NAME START STOP STEP")
    swept = []
    for name, *nums in args.sweep:
        name = name.replace("-", "_")
        try:
            swept.append((name, *map(float, nums)))
        except ValueError:
            raise UsageError(f"non-numeric range for {name}") from None
    names = {s[0] for s in swept}
    fixed = {k: v for k, v in zip(ex.RATE_NAMES, _rates(args)) if k not in names}
    missing = [k for k, v in fixed.items() if v is None]
    if missing:
        raise UsageError(f"missing fixed rate(s): {', '.join(missing)}")
    return ex.SweepSpec(n=args.n, trials=args.trials, fixed=fixed, sweep_x=swept[0], sweep_y=swept[1],
                        base_seed=args.seed, xi_mode=args.xi, include_timing=not args.no_timing,
                        workers=args.workers)


def _run(args) -> None:
    if args.command == "generate":
        params = SsbmParams(args.n, *_rates(args))
        graph, truth = sample(params, args.seed)
        write_edge_list(graph, args.out, one_based=args.one_based)
        with open(args.truth or args.out + ".truth", "w") as fh:
            fh.writelines(f"{int(v)}\n" for v in truth.labels)
        print(f"wrote n={graph.n} N_plus={graph.n_pos} N_minus={graph.n_neg} to {args.out}")

    elif args.command == "estimate":
        graph = read_edge_list(args.path, one_based=args.one_based, symmetrize=args.symmetrize)
        m = count_moments(graph)
        e = estimate_params(m, graph.n)
        xi = "" if e.xi_hat is None else format(e.xi_hat, ".10g")
        with _open_out(args.out) as out:
            if args.csv:
                cols = ("n", "n_pos", "n_neg", "t_pos", "t_neg", "alpha_hat_plus", "beta_hat_plus",
                        "alpha_hat_minus", "beta_hat_minus", "xi_hat", "plausible")
                row = dict(n=graph.n, n_pos=m.n_pos, n_neg=m.n_neg, t_pos=m.t_pos, t_neg=m.t_neg,
                           alpha_hat_plus=e.alpha_hat_plus, beta_hat_plus=e.beta_hat_plus,
                           alpha_hat_minus=e.alpha_hat_minus, beta_hat_minus=e.beta_hat_minus,
                           xi_hat=xi, plausible=e.plausible)
                ex.write_csv([row], out, cols)
            else:
                out.write(f"n={graph.n}\nN_plus={m.n_pos}\nN_minus={m.n_neg}\n"
                          f"T_plus={m.t_pos}\nT_minus={m.t_neg}\n"
                          f"alpha_hat_plus={e.alpha_hat_plus:.6g}\nbeta_hat_plus={e.beta_hat_plus:.6g}\n"
                          f"alpha_hat_minus={e.alpha_hat_minus:.6g}\nbeta_hat_minus={e.beta_hat_minus:.6g}\n"
                          f"xi_hat={xi or 'undefined'}\nplausible={str(e.plausible).lower()}\n")

    elif args.command == "solve":
        try:
            xi_mode = ex.parse_xi_mode(args.xi)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if xi_mode == "exact":
            raise UsageError("--xi exact needs known rates; use 'estimated' or a number")
        report = ex.run_solve_file(args.path, xi_mode, one_based=args.one_based,
                                   seed=args.seed, symmetrize=args.symmetrize)
        for note in report.notes:
            print(f"warning: {note}", file=sys.stderr)
        with _open_out(args.out) as out:
            out.write(report.format(dump_labels=args.labels))

    elif args.command == "sweep":
        try:
            spec = _sweep_spec(args)
        except (ValueError, TypeError, KeyError) as exc:
            raise UsageError(str(exc)) from None
        rows = ex.run_sweep(spec)
        with _open_out(args.out) as out:
            ex.write_csv(rows, out, ex.SWEEP_COLUMNS)

    elif args.command == "bench":
        try:
            n_list = [int(s) for s in args.n.split(",") if s]
        except ValueError:
            raise UsageError(f"--n must be comma-separated integers, got {args.n!r}") from None
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        rows = ex.run_bench(n_list, _rates(args), args.trials, seed=args.seed, xi_mode=args.xi)
        with _open_out(args.out) as out:
            ex.write_csv(rows, out, ex.BENCH_COLUMNS)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        try:
            _run(args)
        except UsageError as exc:
            print(f"signedsbm {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except (EdgeListError, ValueError, OSError) as exc:
            print(f"signedsbm {args.command}: {exc}", file=sys.stderr)
            return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
