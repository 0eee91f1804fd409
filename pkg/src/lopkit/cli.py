"""Command line interface.

Subcommands: generate / solve / construct / experiment / verify.
Exit codes: 0 success, 2 invalid arguments, 3 resource limit exceeded,
4 verification failure.  Permutations are printed 1-based to match the
usual ordering-problem convention; the library API is 0-based.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constructives import becker, construct_cm, construct_s, construct_ss
from .core import ResourceLimitError, evaluate, read_instance, write_instance
from .generators import RngSeed, gen_np_component, gen_p_component, gen_uniform
from .harness import (
    ExperimentConfig,
    aggregate,
    emit_plot_data,
    run_experiment,
    verify,
    write_aggregate_csv,
    write_records_csv,
)
from .solvers import solve_exhaustive, solve_p_exact

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4

_GENERATORS = {"p": gen_p_component, "np": gen_np_component, "uniform": gen_uniform}
_CONSTRUCTIVES = {"becker": becker, "ss": construct_ss, "s": construct_s, "cm": construct_cm}


def _one_based(perm) -> str:
    return " ".join(str(int(v) + 1) for v in perm)


def _cmd_generate(args) -> int:
    inst = _GENERATORS[args.type](args.n, RngSeed(args.seed))
    meta = f"lopkit instance type={args.type} n={args.n} seed={args.seed}"
    write_instance(inst, args.out, comments=[meta])
    print(f"wrote {args.type} instance n={args.n} to {args.out}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    if args.poly:
        perm = solve_p_exact(inst)
        print(f"optimum     {_one_based(perm)}")
        print(f"f_max       {evaluate(inst, perm):.17g}")
    else:
        res = solve_exhaustive(inst)
        print(f"best        {_one_based(res.best)}")
        print(f"f_max       {res.f_max:.17g}")
        print(f"worst       {_one_based(res.worst)}")
        print(f"f_min       {res.f_min:.17g}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    inst = read_instance(args.instance)
    perm = _CONSTRUCTIVES[args.algo](inst)
    print(f"permutation {_one_based(perm)}")
    print(f"f           {evaluate(inst, perm):.17g}")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    epsilons = None
    if args.eps_grid is not None:
        epsilons = sorted(float(tok) for tok in args.eps_grid.split(","))
    kwargs = dict(
        dims=tuple(args.dims),
        reps=args.reps,
        master_seed=args.seed,
        out_dir=Path(args.out_dir),
        parallel_workers=args.workers,
    )
    if epsilons is not None:
        kwargs["epsilons"] = tuple(epsilons)
    config = ExperimentConfig(**kwargs)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    records = run_experiment(config)
    table = aggregate(records)
    write_records_csv(records, config.out_dir / "records.csv")
    write_aggregate_csv(table, config.out_dir / "aggregate.csv")
    emit_plot_data(table, config.out_dir / "plot_data.csv")
    print(f"{len(records)} records -> {config.out_dir}/records.csv")
    print(f"{len(table)} aggregate rows -> {config.out_dir}/aggregate.csv")
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verify(limit_n=args.max_n)
    print(report.format())
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lopkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random instance file")
    p.add_argument("--type", choices=sorted(_GENERATORS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="solve an instance exactly")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", help="exhaustive enumeration (default)")
    group.add_argument("--poly", action="store_true", help="polynomial additive-skew algorithm")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("construct", help="run one constructive heuristic")
    p.add_argument("--algo", choices=sorted(_CONSTRUCTIVES), required=True)
    p.add_argument("instance")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("experiment", help="run the epsilon-sweep experiment")
    p.add_argument("--dims", type=int, nargs="+", default=[10, 11])
    p.add_argument("--reps", type=int, default=20)
    eps = p.add_mutually_exclusive_group()
    eps.add_argument("--eps-grid", help="comma-separated epsilon values")
    eps.add_argument("--eps-default", action="store_true", help="the 20-value log grid (default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("verify", help="run the cross-module identity suites")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
