"""Exact combinatorial counts for subspace codes.

Everything here is arbitrary-precision integer (or Fraction) arithmetic;
no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def gauss_binomial(v: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^v."""
    if k < 0 or k > v:
        return 0
    num = 1
    den = 1
    for i in range(1, k + 1):
        num *= q ** (v - k + i) - 1
        den *= q**i - 1
    assert num % den == 0
    return num // den


def count_intersecting(v: int, w: int, u: int, i: int, q: int) -> int:
    """u-spaces of F_q^v meeting a fixed w-space in dimension exactly i."""
    if not 0 <= i <= min(u, w) or w > v:
        raise ValueError("need 0 <= i <= min(u, w) and w <= v")
    return q ** ((w - i) * (u - i)) * gauss_binomial(w, i, q) * gauss_binomial(v - w, u - i, q)


def lifted_mrd_size(q: int, k: int, v: int, d: int) -> int:
    """Cardinality of a lifted MRD code of k-spaces in F_q^v at distance d."""
    if d % 2:
        raise ValueError("d must be even")
    if k > v:
        raise ValueError("k must be <= v")
    lo, hi = min(k, v - k), max(k, v - k)
    if d > 2 * lo:
        return 1
    return q ** (hi * (lo - d // 2 + 1))


def mrd_matrix_bound(q: int, m: int, n: int, dprime: int) -> int:
    """Maximum size of an m x n rank-metric code with min rank distance d'."""
    if min(m, n, dprime) < 1:
        raise ValueError("m, n, d' must be >= 1")
    exponent = max(n, m) * (min(n, m) - dprime + 1)
    return q**exponent if exponent > 0 else 1


def anticode_bound(q: int, v: int, d: int, k: int) -> int:
    """Anticode upper bound on A_q(v, d; k)."""
    if d % 2 or d > 2 * k or k > v:
        raise ValueError("need even d <= 2k <= 2v")
    t = k - d // 2 + 1
    return gauss_binomial(v, t, q) // gauss_binomial(k, t, q)


def spread_lower(q: int, v: int) -> int:
    """Maximum size of a partial line spread of F_q^v (exact for all v).

    Even v: (q^v - 1) / (q^2 - 1); odd v: 1 + q^3 + q^5 + ... + q^(v-2).
    """
    if v < 2:
        raise ValueError("v must be >= 2")
    if v % 2 == 0:
        return sum(q**i for i in range(0, v - 1, 2))
    return 1 + sum(q**i for i in range(3, v - 1, 2))


def sandwich_bounds(q: int, v: int, d: int, k: int) -> tuple[int, int]:
    """The bracket [q^((v-k)(k-d/2+1)), 2 q^((v-k)(k-d/2+1)))."""
    base = q ** ((v - k) * (k - d // 2 + 1))
    return base, 2 * base


def sandwich_check(q: int, v: int, d: int, k: int, lower: int, upper: int) -> bool:
    """True iff base <= lower <= upper < 2*base for the given table values."""
    base, twice = sandwich_bounds(q, v, d, k)
    return base <= lower <= upper < twice


def qbin_ratio_plus(a: int, b: int, q: int) -> Fraction:
    """[a+1 b]_q / [a b]_q as an exact rational: (q^(a+1)-1)/(q^(a-b+1)-1)."""
    return Fraction(q ** (a + 1) - 1, q ** (a - b + 1) - 1)


def qbin_ratio_minus(a: int, b: int, q: int) -> Fraction:
    """[a-1 b]_q / [a b]_q as an exact rational: (q^(a-b)-1)/(q^a-1)."""
    return Fraction(q ** (a - b) - 1, q**a - 1)
