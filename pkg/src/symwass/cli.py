"""Command-line entry point: ``symwass {gen,dist,symtest,bound,power,nemirovski}``.

Exit codes: 0 success, 2 usage or validation error, 1 internal error.
Every stochastic subcommand is a pure function of its flags and ``--seed``.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import sys
from functools import partial

import numpy as np

from . import __version__
from ._parallel import pmap
from .bootstrap import DEFAULT_REPLICATIONS, seed_from
from .bounds import (
    DEFAULT_SIGN_DRAWS,
    NEMIROVSKI_W2_RESAMPLE,
    BoundConfig,
    compare_symmetrization_bounds,
    nemirovski_experiment,
    nemirovski_from_data,
)
from .io import ResultDocument, read_cloud, write_cloud, write_result
from .rng import substream
from .simgen import GeneratorSpec, gen_rademacher
from .symtest import SymTestConfig, mardia_skewness_test, permutation_symmetry_test
from .wasserstein import empirical_wasserstein

METRICS = ("l1", "l2", "linf")
DEFAULT_N_GRID = "2,4,8,16,32,64,128,256"
DEFAULT_BOUND_REPS = 2000


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _grid(cast):
    def parse(text: str):
        try:
            vals = [cast(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid grid {text!r}") from None
        if not vals:
            raise argparse.ArgumentTypeError("empty grid")
        return vals

    return parse


def build_parser() -> argparse.ArgumentParser:
    out_opts = argparse.ArgumentParser(add_help=False)
    out_opts.add_argument("--out", default="-", help="output path, '-' for stdout")

    doc_opts = argparse.ArgumentParser(add_help=False, parents=[out_opts])
    doc_opts.add_argument("--format", choices=("json", "csv"), default="json")
    doc_opts.add_argument("--timestamps", action="store_true",
                          help="add wall-clock timestamps (breaks byte-identical reruns)")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_u64, required=True)
    seeded.add_argument("--workers", type=_positive_int, default=1)

    # parents share action objects, so each subcommand gets fresh copies
    def wass(metric: str, p: int) -> argparse.ArgumentParser:
        opts = argparse.ArgumentParser(add_help=False)
        opts.add_argument("--metric", choices=METRICS, default=metric)
        opts.add_argument("--p", type=int, choices=(1, 2), default=p, help="Wasserstein order")
        return opts

    def test_opts() -> argparse.ArgumentParser:
        opts = argparse.ArgumentParser(add_help=False, parents=[wass("l1", 1)])
        opts.add_argument("--r", type=_positive_int, default=1, help="bootstrap replications")
        opts.add_argument("--m-perms", type=_positive_int, default=200)
        opts.add_argument("--subsample", type=_positive_int)
        opts.add_argument("--tie-rule", choices=("inclusive", "strict"), default="inclusive")
        opts.add_argument("--center", action="store_true", help="reflect about the sample mean")
        return opts

    parser = argparse.ArgumentParser(prog="symwass", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[out_opts, seeded], help="emit a generated cloud as CSV")
    g.add_argument("--kind", choices=("rademacher", "mixture", "beta"), required=True)
    g.add_argument("--n", type=_positive_int, required=True)
    g.add_argument("--d", type=_positive_int, required=True)
    g.add_argument("--p", type=float, default=0.5, help="P(+1) for rademacher")
    g.add_argument("--alpha", type=float, default=1.0, help="Beta(alpha, 1) shape")

    d = sub.add_parser("dist", parents=[doc_opts, wass("l2", 2)], help="empirical W_p between two CSV clouds")
    d.add_argument("--x", required=True)
    d.add_argument("--y", required=True)
    d.add_argument("--header", action="store_true")

    s = sub.add_parser("symtest", parents=[doc_opts, seeded, test_opts()], help="permutation test for symmetry")
    s.add_argument("--input", required=True)
    s.add_argument("--header", action="store_true")

    b = sub.add_parser("bound", parents=[doc_opts, seeded, wass("l2", 2)], help="old vs new symmetrization bounds")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--generator", choices=("rademacher", "mixture", "beta"))
    src.add_argument("--input")
    b.add_argument("--header", action="store_true")
    b.add_argument("--k", type=_positive_int, default=2, help="generator dimension")
    b.add_argument("--rad-p", type=float, default=0.5)
    b.add_argument("--alpha", type=float, default=1.0)
    b.add_argument("--n-grid", type=_grid(int), default=_grid(int)(DEFAULT_N_GRID))
    b.add_argument("--reps", type=_positive_int, default=DEFAULT_BOUND_REPS)
    b.add_argument("--estimator", choices=("split", "bootstrap"), default="split")
    b.add_argument("--estimator-r", type=_positive_int, default=DEFAULT_REPLICATIONS)
    b.add_argument("--m", type=_positive_int, help="bootstrap resample size (default n)")
    b.add_argument("--sign-draws", type=_positive_int, default=DEFAULT_SIGN_DRAWS)

    pw = sub.add_parser("power", parents=[doc_opts, seeded, test_opts()], help="power curve over Rademacher(p)")
    pw.add_argument("--p-grid", type=_grid(float), default=_grid(float)("0.5,0.6,0.7,0.8"))
    pw.add_argument("--n", type=_positive_int, default=100)
    pw.add_argument("--d", type=_positive_int, default=5)
    pw.add_argument("--sims", type=_positive_int, default=1000)
    pw.add_argument("--level", type=float, default=0.05)
    pw.add_argument("--with-mardia", action="store_true")

    nm = sub.add_parser("nemirovski", parents=[doc_opts, seeded], help="l_inf Nemirovski bound comparison")
    nm.add_argument("--d-grid", type=_grid(int), default=_grid(int)("5,25,50"))
    nm.add_argument("--n", type=_positive_int, default=10)
    nm.add_argument("--alpha-grid", type=_grid(float), default=_grid(float)("0.25,0.5,1,2,4,8"))
    nm.add_argument("--reps", type=_positive_int, default=DEFAULT_BOUND_REPS)
    nm.add_argument("--w2-m", type=_positive_int, default=NEMIROVSKI_W2_RESAMPLE)
    nm.add_argument("--w2-r", type=_positive_int, default=DEFAULT_REPLICATIONS)
    nm.add_argument("--input")
    nm.add_argument("--header", action="store_true")
    return parser


def _config(args, *keys) -> dict:
    return {k: getattr(args, k) for k in keys}


def _document(args, config: dict, results: dict) -> ResultDocument:
    stamps = None
    if getattr(args, "timestamps", False):
        stamps = {"created": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    return ResultDocument(command=args.command, config=config, results=results, timestamps=stamps)


def run_gen(args) -> None:
    spec = GeneratorSpec(args.kind, args.d, p=args.p, alpha=args.alpha)
    write_cloud(spec.sample(args.n, substream(args.seed, "gen")), args.out)


def run_dist(args) -> ResultDocument:
    X = read_cloud(args.x, args.header)
    Y = read_cloud(args.y, args.header)
    w = empirical_wasserstein(X, Y, args.p, args.metric)
    return _document(args, _config(args, "x", "y", "p", "metric"), {"distance": w})


def _test_config(args, seed: int) -> SymTestConfig:
    return SymTestConfig(
        r=args.r, m_perms=args.m_perms, p=args.p, metric=args.metric,
        subsample=args.subsample, tie_rule=args.tie_rule, seed=seed, center=args.center,
    )


def run_symtest(args) -> ResultDocument:
    X = read_cloud(args.input, args.header)
    cfg = _test_config(args, args.seed)
    report = permutation_symmetry_test(X, cfg, workers=args.workers)
    config = {"input": args.input, **cfg.as_dict()}
    return _document(args, config, report.as_dict())


def run_bound(args) -> ResultDocument:
    cfg = BoundConfig(
        metric=args.metric, p=args.p, estimator=args.estimator, estimator_r=args.estimator_r,
        m=args.m, num_sign_draws=args.sign_draws, seed=args.seed,
    )
    config = cfg.as_dict()
    if args.input is not None:
        X = read_cloud(args.input, args.header)
        rows = [compare_symmetrization_bounds(X, cfg=cfg).as_dict()]
        config["input"] = args.input
    else:
        spec = GeneratorSpec(args.generator, args.k, p=args.rad_p, alpha=args.alpha)
        if min(args.n_grid) < 1:
            raise UsageError("n-grid values must be positive")
        if args.estimator == "split" and min(args.n_grid) < 2:
            raise UsageError("split estimator needs n >= 2")
        rows = [
            compare_symmetrization_bounds(spec, n, args.reps, cfg, workers=args.workers).as_dict()
            for n in args.n_grid
        ]
        config.update(generator=args.generator, k=args.k, rad_p=args.rad_p, alpha=args.alpha,
                      n_grid=args.n_grid, reps=args.reps)
    return _document(args, config, {"rows": rows})


def _power_sim(s: int, prob: float, args) -> tuple[bool, bool]:
    rng = substream(args.seed, "power", repr(prob), s)
    X = gen_rademacher(args.n, args.d, prob, rng)
    report = permutation_symmetry_test(X, _test_config(args, seed_from(rng)))
    rejected = report.p_value <= args.level
    mardia = mardia_skewness_test(X).p_value <= args.level if args.with_mardia else False
    return rejected, mardia


def run_power(args) -> ResultDocument:
    if not 0 < args.level < 1:
        raise UsageError("level must lie in (0, 1)")
    if args.n < 4:
        raise UsageError("n must be >= 4")
    rows = []
    for prob in args.p_grid:
        if not 0 <= prob <= 1:
            raise UsageError("p-grid values must lie in [0, 1]")
        sims = pmap(partial(_power_sim, prob=prob, args=args), range(args.sims), args.workers)
        row = {"p": prob, "power": sum(r for r, _ in sims) / args.sims, "sims": args.sims}
        if args.with_mardia:
            row["mardia_power"] = sum(m for _, m in sims) / args.sims
        rows.append(row)
    config = {**_test_config(args, args.seed).as_dict(), **_config(args, "n", "d", "sims", "level", "with_mardia")}
    config["p_grid"] = args.p_grid
    return _document(args, config, {"rows": rows})


def run_nemirovski(args) -> ResultDocument:
    config = _config(args, "n", "reps", "w2_m", "w2_r", "seed")
    if args.input is not None:
        X = read_cloud(args.input, args.header)
        rep = nemirovski_from_data(X, args.w2_m, args.w2_r, args.seed)
        rows = [{"n": X.shape[0], "d": X.shape[1], **rep.as_dict()}]
        config["input"] = args.input
    else:
        rows = []
        for d in args.d_grid:
            for alpha in args.alpha_grid:
                if not alpha > 0:
                    raise UsageError("alpha-grid values must be positive")
                rep = nemirovski_experiment(args.n, d, alpha, args.reps, args.w2_m, args.w2_r,
                                            args.seed, workers=args.workers)
                rows.append({"d": d, "alpha": alpha, **rep.as_dict()})
        config.update(d_grid=args.d_grid, alpha_grid=args.alpha_grid)
    return _document(args, config, {"rows": rows})


COMMANDS = {
    "dist": run_dist,
    "symtest": run_symtest,
    "bound": run_bound,
    "power": run_power,
    "nemirovski": run_nemirovski,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "gen":
            run_gen(args)
        else:
            doc = COMMANDS[args.command](args)
            write_result(doc, args.format, args.out)
    except (UsageError, ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"symwass {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"symwass {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
