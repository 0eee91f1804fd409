"""Shared fixtures and independent brute-force oracles.

The oracle helpers here deliberately avoid the package's evaluation and
enumeration code paths: objectives are accumulated pair by pair straight
from the matrix, and permutations come from itertools.  Tests compare the
package against these, never against itself.
"""

from itertools import permutations

import numpy as np
import pytest

from lopkit import LopInstance


def brute_objective(a: np.ndarray, perm) -> float:
    """Reference objective: explicit sum over position pairs."""
    total = 0.0
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            total += float(a[perm[i]][perm[j]])
    return total


def brute_values(a: np.ndarray):
    """(permutation, objective) for every permutation, lexicographic order."""
    n = a.shape[0]
    return [(p, brute_objective(a, p)) for p in permutations(range(n))]


def brute_max_min(a: np.ndarray):
    vals = [f for _, f in brute_values(a)]
    return max(vals), min(vals)


def brute_marginal(a: np.ndarray, k: int, j: int) -> float:
    return sum(f for p, f in brute_values(a) if p[k] == j)


def brute_assignment_max(cost: np.ndarray) -> float:
    n = cost.shape[0]
    return max(sum(float(cost[i, p[i]]) for i in range(n)) for p in permutations(range(n)))


def random_instance(rng: np.random.Generator, n: int, scale: float = 1.0) -> LopInstance:
    a = rng.uniform(-scale, scale, size=(n, n))
    np.fill_diagonal(a, 0.0)
    return LopInstance(a)


@pytest.fixture
def a3():
    """Small asymmetric instance with distinct objective values {7,9,9,12,12,14}."""
    return LopInstance([[0, 1, 2], [3, 0, 4], [5, 6, 0]])


@pytest.fixture
def u3():
    """Additive-skew instance: d01=4, d12=2, d02=6."""
    return LopInstance([[0, 2, 3], [-2, 0, 1], [-3, -1, 0]])


@pytest.fixture
def c3():
    """Cyclic instance with zero skew row sums."""
    return LopInstance([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
