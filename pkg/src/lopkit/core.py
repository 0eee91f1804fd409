"""Instance and permutation primitives for the linear ordering problem.

An instance is a square real matrix ``a`` with zero diagonal; a solution is
a permutation ``perm`` (0-based one-line form, ``perm[k]`` = element at
position ``k``) and its objective is the sum of ``a[perm[i], perm[j]]`` over
all position pairs ``i < j``.  Everything here is a pure function over
immutable values, safe to share across workers.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

# Diagonal entries larger than this do not parse as zero in instance files.
DIAGONAL_TOLERANCE = 1e-12


class ResourceLimitError(RuntimeError):
    """Raised when an operation would exceed its enumeration limit."""


class LopInstance:
    """Square float64 matrix with zero diagonal, immutable after construction.

    Instances hash and compare by value so they can key caches of derived
    quantities (e.g. brute-force marginal tables).
    """

    __slots__ = ("a", "_hash")

    def __init__(self, a: Iterable) -> None:
        arr = np.array(a, dtype=np.float64, order="C")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"instance matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError("instance dimension must be at least 2")
        if not np.all(np.isfinite(arr)):
            raise ValueError("instance matrix must be finite")
        if np.any(np.diagonal(arr) != 0.0):
            raise ValueError("instance matrix must have an exactly zero diagonal")
        arr.setflags(write=False)
        object.__setattr__(self, "a", arr)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LopInstance is immutable")

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LopInstance):
            return NotImplemented
        return self.a.shape == other.a.shape and bool(np.all(self.a == other.a))

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.a.tobytes())))
        return self._hash

    def __repr__(self) -> str:
        return f"LopInstance(n={self.n})"

    def scale(self) -> float:
        """Magnitude used to scale absolute tolerances, never below 1."""
        return max(1.0, float(np.abs(self.a).max()))


def as_permutation(perm: Sequence[int], n: int | None = None) -> np.ndarray:
    """Validate and return ``perm`` as a 0-based one-line int64 array."""
    p = np.asarray(perm, dtype=np.int64)
    if p.ndim != 1:
        raise ValueError("permutation must be one-dimensional")
    m = p.shape[0]
    if n is not None and m != n:
        raise ValueError(f"permutation length {m} does not match dimension {n}")
    seen = np.zeros(m, dtype=bool)
    for v in p:
        if v < 0 or v >= m or seen[v]:
            raise ValueError(f"not a permutation of 0..{m - 1}: {p.tolist()}")
        seen[v] = True
    return p


def evaluate(inst: LopInstance, perm: Sequence[int]) -> float:
    """Objective value: sum of ``a[perm[i], perm[j]]`` over positions i < j."""
    p = as_permutation(perm, inst.n)
    sub = inst.a[np.ix_(p, p)]
    return float(np.triu(sub, 1).sum())


def adjacent_swap_delta(inst: LopInstance, perm: Sequence[int], k: int) -> float:
    """Objective change from swapping positions ``k`` and ``k + 1``.

    Constant-time: only the relative order of the two swapped elements
    changes, so the delta is ``a[y, x] - a[x, y]`` for ``x = perm[k]``,
    ``y = perm[k + 1]``.
    """
    p = as_permutation(perm, inst.n)
    if not 0 <= k < inst.n - 1:
        raise ValueError(f"adjacent swap position {k} out of range 0..{inst.n - 2}")
    x, y = p[k], p[k + 1]
    return float(inst.a[y, x] - inst.a[x, y])


def swap_positions(perm: Sequence[int], i: int, j: int) -> np.ndarray:
    """Return a copy of ``perm`` with the entries at positions i < j exchanged."""
    p = as_permutation(perm)
    if not (0 <= i < j < p.shape[0]):
        raise ValueError(f"need positions 0 <= i < j < {p.shape[0]}, got ({i}, {j})")
    out = p.copy()
    out[i], out[j] = out[j], out[i]
    return out


def cyclic_shift(perm: Sequence[int]) -> np.ndarray:
    """Move the last element to the front: [p0 .. pn-1] -> [pn-1 p0 .. pn-2]."""
    return np.roll(as_permutation(perm), 1)


def net_flow(inst: LopInstance) -> np.ndarray:
    """Row sums of the skew difference matrix: v[j] = sum_k (a[j,k] - a[k,j]).

    This is the quantity the constructive heuristics rank elements by, and
    its vanishing characterizes the hard component.
    """
    d = inst.a - inst.a.T
    return d.sum(axis=1)


def mean_value(inst: LopInstance) -> float:
    """Average objective over all n! permutations.

    Each ordered pair (i, j) precedes with probability 1/2, so the mean is
    half the sum of all off-diagonal entries.
    """
    return 0.5 * float(inst.a.sum())


def relative_error(f_sigma: float, f_max: float, f_min: float) -> float:
    """Solution-quality metric |f_sigma - f_max| / |f_max - f_min| in [0, 1].

    A constant objective (f_max == f_min) yields 0: every solution is
    optimal.  Tiny float overshoot of f_max is tolerated and clamped; a
    value materially outside [f_min, f_max] is a caller error.
    """
    if f_max < f_min:
        raise ValueError(f"f_max={f_max} smaller than f_min={f_min}")
    if f_max == f_min:
        return 0.0
    err = abs(f_sigma - f_max) / (f_max - f_min)
    if err > 1.0 + 1e-9:
        raise ValueError(
            f"f_sigma={f_sigma} outside [{f_min}, {f_max}]: relative error {err}"
        )
    return min(err, 1.0)


def read_instance(path: str | Path) -> LopInstance:
    """Read the plain text instance format.

    Line 1 holds n, the next n lines hold n whitespace-separated reals each.
    Lines starting with '#' are comments.  Diagonal entries must be zero to
    within 1e-12 (they are snapped to exact zero) or the reader errors.
    """
    tokens_per_line = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens_per_line.append(stripped.split())
    if not tokens_per_line:
        raise ValueError(f"{path}: empty instance file")
    try:
        n = int(tokens_per_line[0][0])
    except ValueError as exc:
        raise ValueError(f"{path}: first line must hold the dimension") from exc
    if len(tokens_per_line) != n + 1:
        raise ValueError(f"{path}: expected {n} matrix rows, got {len(tokens_per_line) - 1}")
    rows = []
    for idx, tok in enumerate(tokens_per_line[1:]):
        if len(tok) != n:
            raise ValueError(f"{path}: row {idx} has {len(tok)} entries, expected {n}")
        rows.append([float(t) for t in tok])
    a = np.array(rows, dtype=np.float64)
    diag = np.abs(np.diagonal(a))
    if diag.max(initial=0.0) > DIAGONAL_TOLERANCE:
        raise ValueError(f"{path}: diagonal entry exceeds {DIAGONAL_TOLERANCE}")
    np.fill_diagonal(a, 0.0)
    return LopInstance(a)


def write_instance(inst: LopInstance, path: str | Path, comments: Sequence[str] = ()) -> None:
    """Write the text format read back by :func:`read_instance`.

    Optional ``comments`` become '#'-prefixed header lines (used by the
    generators to record a sidecar metadata line).  Entries are written with
    17 significant digits so the round trip is value-exact.
    """
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        fh.write(f"{inst.n}\n")
        for row in inst.a:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")
