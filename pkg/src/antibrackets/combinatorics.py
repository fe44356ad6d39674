"""Integer combinatorics and the Koszul number sequence.

Koszul numbers K_n are the rationals with itlog(e^t - 1) = sum K_n t^(n+1)/(n+1)!;
n! K_n is the integer sequence OEIS A180609.  Two independent routes are
implemented here: the Stirling-triangle recursion and the signed sum over
chains of Stirling numbers.  A third route via the iterative logarithm lives
in :mod:`antibrackets.series`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

from .rational import rat

__all__ = [
    "binomial",
    "stirling2",
    "stirling2_closed_form",
    "koszul_numbers_recursive",
    "koszul_numbers_chain",
]


def binomial(n: int, k: int) -> int:
    """C(n, k); zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def stirling2(n: int, i: int) -> int:
    """Stirling number of the second kind {n i} by the triangle recursion."""
    if i < 1 or i > n:
        raise ValueError(f"stirling2 requires 1 <= i <= n, got ({n}, {i})")
    if i == 1 or i == n:
        return 1
    return stirling2(n - 1, i - 1) + i * stirling2(n - 1, i)


def stirling2_closed_form(n: int, i: int) -> int:
    """{n i} via the alternating sum (1/i!) sum_j (-1)^(i-j) C(i,j) j^n.

    Retained as an independent cross-check of :func:`stirling2`.
    """
    if i < 1 or i > n:
        raise ValueError(f"stirling2 requires 1 <= i <= n, got ({n}, {i})")
    total = sum((-1) ** (i - j) * comb(i, j) * j**n for j in range(i + 1))
    quotient, remainder = divmod(total, factorial(i))
    assert remainder == 0
    return quotient


def koszul_numbers_recursive(N: int) -> list:
    """K_1..K_N by the recursion K_n = -2/((n+2)(n-1)) sum_i {n+1 i} K_i.

    Returns a list of length N+1 with entry 0 unused (values[n] = K_n).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    values = [rat(0)] * (N + 1)
    values[1] = rat(1)
    for n in range(2, N + 1):
        acc = sum(stirling2(n + 1, i) * values[i] for i in range(1, n))
        values[n] = rat(-2, (n + 2) * (n - 1)) * acc
    return values


def koszul_numbers_chain(N: int) -> list:
    """K_1..K_N by the signed chain sum over 1 < n_1 < ... < n_k = n+1.

    Each chain contributes (-1)^(k+1)/k times the product of consecutive
    Stirling numbers {n_2 n_1} ... {n_k n_(k-1)}; the empty-interior chain
    (k = 1) contributes 1.  Independent of the triangle recursion route.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    values = [rat(0)] * (N + 1)
    for n in range(1, N + 1):
        total = rat(0)
        interior = range(2, n + 1)
        for size in range(0, n):
            for chosen in itertools.combinations(interior, size):
                chain = list(chosen) + [n + 1]
                k = len(chain)
                prod = 1
                for lo, hi in zip(chain, chain[1:]):
                    prod *= stirling2(hi, lo)
                total += rat((-1) ** (k + 1) * prod, k)
        values[n] = total
    return values
