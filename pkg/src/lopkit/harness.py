"""Experiment harness: sweep the weight of the hard component and measure
how far each constructive lands from the exact optimum.

One repetition draws a component pair, composes ``p_part + eps * np_part``
over a logarithmic epsilon grid, solves each composition exactly and scores
the four constructives with the relative error
|f(sigma) - f(sigma_max)| / |f(sigma_max) - f(sigma_min)|.  Everything is
deterministic given the master seed; cells are independent, so repetitions
can run in parallel and the output is canonically sorted before writing.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path

import numpy as np

from .components import (
    ComponentPair,
    marginal_table,
    np_violation,
    p_violation,
    reconstruct_first_order,
    split,
)
from .constructives import becker, construct_cm, construct_s, construct_ss
from .core import (
    ResourceLimitError,
    cyclic_shift,
    evaluate,
    relative_error,
    swap_positions,
)
from .generators import RngSeed, compose, gen_np_component, gen_p_component, gen_uniform
from .solvers import EXHAUSTIVE_LIMIT, solve_exhaustive, solve_lap_max, solve_p_exact

ALGORITHMS = ("BECKER", "SS", "S", "CM")

_CONSTRUCTIVES = (
    ("BECKER", becker),
    ("SS", construct_ss),
    ("S", construct_s),
    ("CM", construct_cm),
)

RECORD_FIELDS = ("n", "rep", "epsilon", "algorithm", "f_solution", "f_max", "f_min", "error", "seed")


def default_epsilon_grid() -> list[float]:
    """0 plus 10^e for e = -2, -1.75, ..., 2.5 (20 values, log scale)."""
    return [0.0] + [10.0 ** (-2.0 + 0.25 * k) for k in range(19)]


@dataclass
class ExperimentConfig:
    dims: tuple[int, ...] = (10, 11)
    reps: int = 20
    epsilons: tuple[float, ...] = field(default_factory=lambda: tuple(default_epsilon_grid()))
    master_seed: int = 0
    out_dir: Path | None = None
    enumeration_limit: int = EXHAUSTIVE_LIMIT
    parallel_workers: int = 1

    def __post_init__(self):
        self.dims = tuple(int(n) for n in self.dims)
        self.epsilons = tuple(float(e) for e in self.epsilons)
        if not self.dims or any(n < 2 for n in self.dims):
            raise ValueError("dims must be dimensions >= 2")
        if self.reps < 1:
            raise ValueError("reps must be positive")
        if any(e < 0 for e in self.epsilons) or list(self.epsilons) != sorted(self.epsilons):
            raise ValueError("epsilons must be nonnegative and sorted ascending")
        if self.parallel_workers < 1:
            raise ValueError("parallel_workers must be positive")
        if max(self.dims) > self.enumeration_limit:
            raise ResourceLimitError(
                f"dims {self.dims} exceed the enumeration limit {self.enumeration_limit}"
            )


@dataclass(frozen=True)
class ErrorRecord:
    """One experiment cell: how one constructive scored on one composition."""

    n: int
    rep: int
    epsilon: float
    algorithm: str
    f_solution: float
    f_max: float
    f_min: float
    error: float
    seed: int


def pair_for(master_seed: int, n: int, rep: int) -> ComponentPair:
    """The component pair underlying repetition (n, rep); shared by all epsilons."""
    return ComponentPair(
        gen_p_component(n, RngSeed(master_seed, (n, rep, 0))),
        gen_np_component(n, RngSeed(master_seed, (n, rep, 1))),
    )


def _run_repetition(args) -> list[ErrorRecord]:
    n, rep, master_seed, epsilons, limit = args
    pair = pair_for(master_seed, n, rep)
    records = []
    for eps in epsilons:
        inst = compose(pair, eps)
        exact = solve_exhaustive(inst, limit)
        for name, construct in _CONSTRUCTIVES:
            f_sol = evaluate(inst, construct(inst))
            err = relative_error(f_sol, exact.f_max, exact.f_min)
            records.append(
                ErrorRecord(n, rep, eps, name, f_sol, exact.f_max, exact.f_min, err, master_seed)
            )
    return records


def run_experiment(config: ExperimentConfig) -> list[ErrorRecord]:
    """All error records for the configured sweep, deterministic given the config."""
    if max(config.dims) > config.enumeration_limit:
        raise ResourceLimitError("experiment dimension exceeds the enumeration limit")
    tasks = [
        (n, rep, config.master_seed, config.epsilons, config.enumeration_limit)
        for n in config.dims
        for rep in range(config.reps)
    ]
    if config.parallel_workers > 1:
        with ProcessPoolExecutor(max_workers=config.parallel_workers) as pool:
            chunks = list(pool.map(_run_repetition, tasks))
    else:
        chunks = [_run_repetition(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    order = {name: i for i, name in enumerate(ALGORITHMS)}
    records.sort(key=lambda r: (r.n, r.rep, r.epsilon, order[r.algorithm]))
    return records


@dataclass(frozen=True)
class AggregateRow:
    """Mean errors over repetitions for one (n, epsilon) cell."""

    n: int
    epsilon: float
    becker: float
    ss: float
    s: float
    cm: float


def aggregate(records: list[ErrorRecord]) -> list[AggregateRow]:
    """Mean error per (n, epsilon, algorithm), rows sorted by (n, epsilon)."""
    if not records:
        raise ValueError("no records to aggregate")
    sums: dict[tuple[int, float], dict[str, list[float]]] = {}
    for rec in records:
        cell = sums.setdefault((rec.n, rec.epsilon), {name: [] for name in ALGORITHMS})
        cell[rec.algorithm].append(rec.error)
    rows = []
    for (n, eps) in sorted(sums):
        cell = sums[(n, eps)]
        means = {name: float(np.mean(cell[name])) for name in ALGORITHMS}
        rows.append(AggregateRow(n, eps, means["BECKER"], means["SS"], means["S"], means["CM"]))
    return rows


def write_records_csv(records: list[ErrorRecord], path: str | Path) -> None:
    """Raw record file, floats at 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow(
                [
                    r.n,
                    r.rep,
                    f"{r.epsilon:.17g}",
                    r.algorithm,
                    f"{r.f_solution:.17g}",
                    f"{r.f_max:.17g}",
                    f"{r.f_min:.17g}",
                    f"{r.error:.17g}",
                    r.seed,
                ]
            )


def write_aggregate_csv(rows: list[AggregateRow], path: str | Path) -> None:
    """Summary table at 3 decimals, one row per (n, epsilon)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "epsilon", "becker", "ss", "s", "cm"])
        for r in rows:
            writer.writerow(
                [r.n, f"{r.epsilon:.3f}"]
                + [f"{v:.3f}" for v in (r.becker, r.ss, r.s, r.cm)]
            )


def emit_plot_data(rows: list[AggregateRow], path: str | Path) -> Path:
    """Long-format (n, epsilon, algorithm, mean error) file for external plotting.

    Values keep full precision; the epsilon = 0 rows are exact zero, so a
    symlog-style axis is needed to show them on the log grid (noted in the
    header for whoever plots this).
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("# mean relative error of each constructive vs epsilon\n")
        fh.write("# epsilon=0 is exact zero: use a symlog-style axis\n")
        fh.write(f"# algorithm order: {','.join(ALGORITHMS)}\n")
        writer = csv.writer(fh)
        writer.writerow(["n", "epsilon", "algorithm", "mean_error"])
        for row in rows:
            for name, value in zip(ALGORITHMS, (row.becker, row.ss, row.s, row.cm)):
                writer.writerow([row.n, f"{row.epsilon:.17g}", name, f"{value:.17g}"])
    return path


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_violation: float
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    suites: tuple[SuiteResult, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def format(self) -> str:
        lines = []
        for s in self.suites:
            status = "PASS" if s.passed else "FAIL"
            lines.append(f"{status}  {s.name:<28} max violation {s.max_violation:.3e}  {s.detail}")
        lines.append("verify: " + ("all suites passed" if self.passed else "FAILURES present"))
        return "\n".join(lines)


def _rel(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(x), abs(y))


def verify(limit_n: int = 6, master_seed: int = 20220704) -> VerifyReport:
    """Run the cross-module identity suites at desk scale.

    Exercises the decomposition identities, solver oracles, constructive
    exactness on additive-skew instances, generator validity and the split
    round trip for dimensions up to ``limit_n`` (capped at 8 to keep the
    brute-force oracles fast).  Failures are reported, not raised.
    """
    if limit_n > 8:
        raise ValueError("verify is limited to n <= 8")
    if limit_n < 4:
        raise ValueError("verify needs n >= 4")
    dims = range(4, limit_n + 1)
    seed = RngSeed(master_seed)
    rng = np.random.default_rng(master_seed)

    def first_order_reconstruction():
        worst = 0.0
        for n in dims:
            inst = gen_p_component(n, seed.child(1, n))
            table = marginal_table(inst)
            for k, perm in enumerate(_all_perms(n)):
                if k >= 120:
                    break
                worst = max(
                    worst, _rel(reconstruct_first_order(inst, perm, table), evaluate(inst, perm))
                )
        return worst

    def np_marginal_uniformity():
        worst = 0.0
        for n in dims:
            inst = gen_np_component(n, seed.child(2, n))
            table = marginal_table(inst)
            target = table.sum() / (inst.n * inst.n)
            worst = max(worst, float(np.abs(table - target).max()) / max(1.0, abs(target)))
            for k, perm in enumerate(_all_perms(n)):
                if k >= 120:
                    break
                worst = max(worst, _rel(evaluate(inst, perm), evaluate(inst, cyclic_shift(perm))))
        return worst

    def swap_identity():
        worst = 0.0
        for n in dims:
            inst = gen_p_component(n, seed.child(3, n))
            for _ in range(200):
                perm = rng.permutation(n)
                i, j = sorted(rng.choice(n, size=2, replace=False))
                lhs = evaluate(inst, perm) - evaluate(inst, swap_positions(perm, i, j))
                rhs = (j - i) * (inst.a[perm[i], perm[j]] - inst.a[perm[j], perm[i]])
                worst = max(worst, _rel(lhs, rhs))
        return worst

    def solver_oracles():
        worst = 0.0
        for n in dims:
            inst = gen_p_component(n, seed.child(4, n))
            exact = solve_exhaustive(inst)
            worst = max(worst, _rel(evaluate(inst, solve_p_exact(inst)), exact.f_max))
            cost = rng.uniform(-5, 5, size=(n, n))
            _, value = solve_lap_max(cost)
            brute = max(sum(cost[i, p[i]] for i in range(n)) for p in _all_perms(n))
            worst = max(worst, _rel(value, brute))
        return worst

    def constructive_exactness():
        worst = 0.0
        for n in dims:
            inst = gen_p_component(n, seed.child(5, n))
            f_max = solve_exhaustive(inst).f_max
            for construct in (construct_ss, construct_s, construct_cm):
                worst = max(worst, _rel(evaluate(inst, construct(inst)), f_max))
        return worst

    def generator_validity():
        worst = 0.0
        for n in dims:
            for r in range(5):
                worst = max(worst, p_violation(gen_p_component(n, seed.child(6, n, r))))
                worst = max(worst, np_violation(gen_np_component(n, seed.child(7, n, r))))
        return worst

    def split_roundtrip():
        worst = 0.0
        for n in dims:
            inst = gen_uniform(n, seed.child(8, n))
            parts = split(inst)
            worst = max(worst, float(np.abs(parts.p_part.a + parts.np_part.a - inst.a).max()))
            worst = max(worst, p_violation(parts.p_part))
            worst = max(worst, np_violation(parts.np_part))
            for _ in range(20):
                perm = rng.permutation(n)
                combined = evaluate(parts.p_part, perm) + evaluate(parts.np_part, perm)
                worst = max(worst, _rel(evaluate(inst, perm), combined))
        return worst

    plan = [
        ("first-order-reconstruction", first_order_reconstruction, f"n in {list(dims)}"),
        ("np-marginal-uniformity", np_marginal_uniformity, "marginals and cyclic shifts"),
        ("swap-identity", swap_identity, "200 random swaps per dimension"),
        ("solver-oracles", solver_oracles, "exhaustive and brute assignment"),
        ("constructive-exactness", constructive_exactness, "SS, S, CM reach the optimum"),
        ("generator-validity", generator_validity, "5 samples per dimension"),
        ("split-roundtrip", split_roundtrip, "re-sum, validators, additivity"),
    ]
    suites = []
    for name, run, detail in plan:
        # A raising suite is a failure to report, never a crash of verify.
        try:
            violation = float(run())
            suites.append(SuiteResult(name, violation <= 1e-9, violation, detail))
        except Exception as exc:
            suites.append(SuiteResult(name, False, float("inf"), f"raised {exc!r}"))
    return VerifyReport(tuple(suites))


def _all_perms(n: int):
    return [np.array(p) for p in permutations(range(n))]
