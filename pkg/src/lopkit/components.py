"""Component validators, brute-force marginal oracles and the P/NP split.

The skew difference matrix ``d[i, j] = a[i, j] - a[j, i]`` controls
everything here.  An instance whose ``d`` is additive
(``d[i, j] + d[j, k] = d[i, k]``) carries only univariate information and is
polynomially solvable; an instance whose ``d`` has zero row sums carries no
univariate information at all and is as hard as the general problem.  Any
instance splits into a sum of one matrix of each kind.

The marginal oracles enumerate permutations explicitly; they are exact
references for the closed forms, not production solvers, and are capped at
a configurable dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Sequence

import numpy as np

from .core import LopInstance, ResourceLimitError, as_permutation, mean_value, net_flow

# Hard cap for explicit enumeration over permutations (10! ~ 3.6M).
ENUMERATION_LIMIT = 10

DEFAULT_TOL = 1e-9


def p_violation(inst: LopInstance) -> float:
    """Largest additivity defect max |d[i,j] + d[j,k] - d[i,k]| over all triples."""
    d = inst.a - inst.a.T
    triple = d[:, :, None] + d[None, :, :] - d[:, None, :]
    return float(np.abs(triple).max())


def np_violation(inst: LopInstance) -> float:
    """Largest absolute row sum of the skew difference matrix."""
    return float(np.abs(net_flow(inst)).max())


def is_p_component(inst: LopInstance, tol: float = DEFAULT_TOL) -> bool:
    """True iff the skew difference matrix is additive to within ``tol``.

    ``tol`` is absolute for entries of magnitude O(1) and scaled by the
    largest entry magnitude otherwise.
    """
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return p_violation(inst) <= tol * inst.scale()


def is_np_component(inst: LopInstance, tol: float = DEFAULT_TOL) -> bool:
    """True iff every row sum of the skew difference matrix vanishes within ``tol``."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return np_violation(inst) <= tol * inst.scale()


@dataclass(frozen=True)
class ComponentPair:
    """An additive decomposition: p_part + np_part recovers some instance."""

    p_part: LopInstance
    np_part: LopInstance

    def __post_init__(self):
        if self.p_part.n != self.np_part.n:
            raise ValueError("component dimensions differ")
        if not is_p_component(self.p_part):
            raise ValueError("p_part fails the additivity condition")
        if not is_np_component(self.np_part):
            raise ValueError("np_part fails the zero-row-sum condition")

    @property
    def n(self) -> int:
        return self.p_part.n


def _check_enum(n: int, limit: int) -> None:
    if n > limit:
        raise ResourceLimitError(f"enumeration over {n}! permutations exceeds limit n <= {limit}")


def _eval_rows(rows: list, perm: Sequence[int]) -> float:
    # Plain-Python evaluation; much faster than numpy in n!-sized loops.
    total = 0.0
    m = len(perm)
    for i in range(m - 1):
        row = rows[perm[i]]
        for j in range(i + 1, m):
            total += row[perm[j]]
    return total


def marginal_sum(inst: LopInstance, k: int, j: int, limit: int = ENUMERATION_LIMIT) -> float:
    """Sum of the objective over the (n-1)! permutations placing element j at position k.

    Explicit enumeration; this is the oracle the closed-form positional mean
    is checked against.
    """
    n = inst.n
    if not (0 <= k < n and 0 <= j < n):
        raise ValueError(f"position {k} or element {j} out of range 0..{n - 1}")
    _check_enum(n, limit)
    rows = inst.a.tolist()
    others = [e for e in range(n) if e != j]
    total = 0.0
    perm = [0] * n
    for rest in permutations(others):
        perm[:k] = rest[:k]
        perm[k] = j
        perm[k + 1 :] = rest[k:]
        total += _eval_rows(rows, perm)
    return total


@lru_cache(maxsize=32)
def marginal_table(inst: LopInstance, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """All n^2 marginal sums at once: table[k, j] = marginal_sum(inst, k, j).

    One sweep over n! permutations, bucketing each objective value into the
    n cells it contributes to.  Cached per instance.
    """
    n = inst.n
    _check_enum(n, limit)
    rows = inst.a.tolist()
    table = np.zeros((n, n))
    for perm in permutations(range(n)):
        f = _eval_rows(rows, perm)
        for k in range(n):
            table[k, perm[k]] += f
    table.setflags(write=False)
    return table


def reconstruct_first_order(
    inst: LopInstance,
    perm: Sequence[int],
    table: np.ndarray | None = None,
    limit: int = ENUMERATION_LIMIT,
) -> float:
    """Rebuild the objective of ``perm`` from marginal sums alone.

    For an instance passing :func:`is_p_component` (no information beyond
    first order), with m the marginal-sum table and fbar the mean objective:

        f(perm) = sum_k m[k, perm[k]] / (n * (n-2)!) - (n-2) * fbar

    The caller is responsible for the precondition; on other instances the
    returned value is just a first-order approximation.  ``table`` may be
    supplied to amortize the enumeration across many calls.
    """
    p = as_permutation(perm, inst.n)
    n = inst.n
    if table is None:
        table = marginal_table(inst, limit)
    s = float(table[np.arange(n), p].sum())
    return s / (n * factorial(n - 2)) - (n - 2) * mean_value(inst)


def split(inst: LopInstance) -> ComponentPair:
    """Decompose A = B + C with B additive-skew and C zero-row-sum-skew.

    Projecting the skew part D onto potential differences
    ``d1[i, j] = u[i] - u[j]`` with ``u = net_flow / n`` gives
    B = (A + A^T)/2 + D1/2.  C is computed as A - B so the parts re-sum to
    the input to within one rounding of the larger entry (bitwise equality
    is unattainable when an entry of C dwarfs the matching entry of A).
    The whole symmetric part goes to B; it contributes a constant to the
    objective, and keeping C purely skew preserves its hardness structure.
    """
    a = inst.a
    n = inst.n
    d = a - a.T
    u = d.sum(axis=1) / n
    d1 = u[:, None] - u[None, :]
    b = (a + a.T) / 2.0 + d1 / 2.0
    c = a - b
    np.fill_diagonal(b, 0.0)
    np.fill_diagonal(c, 0.0)
    return ComponentPair(LopInstance(b), LopInstance(c))


def lift_np(inst: LopInstance) -> LopInstance:
    """Embed an (n-1)-instance into an n-dimensional zero-row-sum instance.

    The original block is kept, the new last row is zero and the new last
    column is ``-net_flow`` of the original, which cancels every skew row
    sum.  A permutation ending in the new element is optimal for the lift
    iff its prefix is optimal for the original, so this reduction carries
    general instances into the zero-row-sum class.
    """
    m = inst.n
    out = np.zeros((m + 1, m + 1))
    out[:m, :m] = inst.a
    out[:m, m] = -net_flow(inst)
    return LopInstance(out)


def _as_distinct(inst: LopInstance, elems: Sequence[int], what: str) -> list:
    out = [int(e) for e in elems]
    if any(e < 0 or e >= inst.n for e in out):
        raise ValueError(f"{what} element out of range 0..{inst.n - 1}: {out}")
    if len(set(out)) != len(out):
        raise ValueError(f"repeated {what} element: {out}")
    return out


def prefix_mean(inst: LopInstance, prefix: Sequence[int]) -> float:
    """Mean objective over permutations starting with ``prefix`` (closed form).

    Each placed element contributes its row sum over the not-yet-placed
    elements; the free block contributes half its total.
    """
    pre = _as_distinct(inst, prefix, "prefix")
    a = inst.a
    remaining = np.ones(inst.n, dtype=bool)
    total = 0.0
    for e in pre:
        remaining[e] = False
        total += float(a[e, remaining].sum())
    free = np.flatnonzero(remaining)
    total += 0.5 * float(a[np.ix_(free, free)].sum())
    return total


def prefix_mean_delta(inst: LopInstance, prefix_before: Sequence[int], next_element: int) -> float:
    """Change of :func:`prefix_mean` from appending ``next_element``.

    Equals half the skew row sum of the new element over the still-free
    block, so the greedy constructives can rank candidates in O(n).
    """
    pre = _as_distinct(inst, prefix_before, "prefix")
    e = int(next_element)
    if e < 0 or e >= inst.n:
        raise ValueError(f"element {e} out of range 0..{inst.n - 1}")
    if e in pre:
        raise ValueError(f"element {e} already placed")
    mask = np.ones(inst.n, dtype=bool)
    mask[pre] = False
    mask[e] = False
    return 0.5 * float((inst.a[e, mask] - inst.a[mask, e]).sum())


def boundary_mean(inst: LopInstance, prefix: Sequence[int], suffix: Sequence[int]) -> float:
    """Mean objective over permutations with fixed ``prefix`` and fixed tail.

    ``suffix`` is listed from the last position inward: ``suffix[0]`` sits
    at position n-1, ``suffix[1]`` at n-2, and so on.  Generalizes
    :func:`prefix_mean` with column sums for the tail elements.
    """
    pre = _as_distinct(inst, prefix, "prefix")
    suf = _as_distinct(inst, suffix, "suffix")
    if set(pre) & set(suf):
        raise ValueError("prefix and suffix overlap")
    if len(pre) + len(suf) > inst.n:
        raise ValueError("prefix and suffix exceed the dimension")
    a = inst.a
    remaining = np.ones(inst.n, dtype=bool)
    total = 0.0
    for e in pre:
        remaining[e] = False
        total += float(a[e, remaining].sum())
    for e in suf:
        remaining[e] = False
        total += float(a[remaining, e].sum())
    free = np.flatnonzero(remaining)
    total += 0.5 * float(a[np.ix_(free, free)].sum())
    return total


def positional_mean(inst: LopInstance, i: int, j: int) -> float:
    """Mean objective over permutations placing element ``j`` at position ``i``.

    Closed form: position-weighted blend of the column and row sums of j
    plus half the total over the remaining block; times (n-1)! it equals
    :func:`marginal_sum`.
    """
    n = inst.n
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"position {i} or element {j} out of range 0..{n - 1}")
    a = inst.a
    col = float(a[:, j].sum())
    row = float(a[j, :].sum())
    block = float(a.sum()) - col - row
    return (i * col + (n - 1 - i) * row) / (n - 1) + 0.5 * block


def positional_mean_delta(inst: LopInstance, j: int) -> float:
    """Position-independent step mu[i+1, j] - mu[i, j] = -net_flow[j] / (n-1)."""
    if not 0 <= j < inst.n:
        raise ValueError(f"element {j} out of range 0..{inst.n - 1}")
    return -float(net_flow(inst)[j]) / (inst.n - 1)
