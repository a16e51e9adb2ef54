"""Rank-metric codes: rank distance, Gabidulin construction, MRD check.

A Gabidulin code evaluates the linearized polynomials of q-degree at most
k - d' on the first k elements of the polynomial basis of GF(q^n) and
expands each value over that basis, giving k x n matrices over GF(q) with
minimum rank distance d' and exactly q^(n(k-d'+1)) codewords.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf import GF, ExtensionField
from .matrix import Matrix, matrix_from_rows, matrix_sub, rank
from .qfunc import mrd_matrix_bound
from .subspace import BudgetError

# codes at most this large are materialized; larger ones stay index-accessed
MATERIALIZE_BUDGET = 4096


def rank_distance(a: Matrix, b: Matrix) -> int:
    """rk(A - B); raises on shape or field mismatch."""
    return rank(matrix_sub(a, b))


@dataclass
class RankCode:
    """An indexed family of m x n matrices over GF(q) with minimum rank
    distance at least d'."""

    field: GF
    m: int
    n: int
    dprime: int
    size: int
    _at: object = dc_field(repr=False)
    _materialized: list[Matrix] | None = dc_field(default=None, repr=False)

    def matrix_at(self, index: int) -> Matrix:
        if not 0 <= index < self.size:
            raise IndexError(index)
        if self._materialized is not None:
            return self._materialized[index]
        return self._at(index)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        for i in range(self.size):
            yield self.matrix_at(i)

    def materialize(self, budget: int = MATERIALIZE_BUDGET) -> list[Matrix]:
        if self.size > budget:
            raise BudgetError(f"rank code of size {self.size} exceeds budget {budget}")
        if self._materialized is None:
            self._materialized = [self._at(i) for i in range(self.size)]
        return self._materialized


def all_matrices_code(field: GF, m: int, n: int) -> RankCode:
    """Every m x n matrix; the d' = 1 case."""
    q = field.q

    def at(index: int) -> Matrix:
        ent = []
        for _ in range(m * n):
            ent.append(index % q)
            index //= q
        return Matrix(field, m, n, tuple(ent))

    return RankCode(field, m, n, 1, q ** (m * n), at)


def gabidulin(q_or_field, k: int, n: int, dprime: int) -> RankCode:
    """Gabidulin code of k x n matrices (k <= n) with rank distance >= d'.

    For d' > k the singleton zero code is returned.  The field may be
    given as a prime power q (prime fields via the built-in table) or as
    a GF instance for explicit moduli.
    """
    field = q_or_field if isinstance(q_or_field, GF) else _field_for_order(q_or_field)
    q = field.q
    if not (1 <= dprime and 1 <= k <= n):
        raise ValueError("need 1 <= k <= n and d' >= 1")
    if dprime > k:
        zero = Matrix(field, k, n, (0,) * (k * n))
        return RankCode(field, k, n, dprime, 1, lambda i: zero)
    if dprime == 1:
        return all_matrices_code(field, k, n)

    ext = ExtensionField(field, n)
    ncoef = k - dprime + 1
    # evaluation points: first k polynomial-basis elements 1, x, ..., x^(k-1)
    points = [ext.pow(ext.gen(), j) for j in range(k)]
    # point_pows[j][i] = g_j^(q^i)
    point_pows = [[ext.frobenius_pow(g, i) for i in range(ncoef)] for g in points]
    order = ext.order

    def at(index: int) -> Matrix:
        coeffs = []
        for _ in range(ncoef):
            coeffs.append(index % order)
            index //= order
        rows = []
        for j in range(k):
            val = 0
            for i, c in enumerate(coeffs):
                if c:
                    val = ext.add(val, ext.mul(c, point_pows[j][i]))
            rows.append(ext.coeffs(val))
        return matrix_from_rows(field, rows, n)

    code = RankCode(field, k, n, dprime, order**ncoef, at)
    if code.size <= MATERIALIZE_BUDGET:
        code.materialize()
    return code


def _field_for_order(q: int) -> GF:
    from .gf import field_make, is_prime

    if is_prime(q):
        return field_make(q)
    for p in range(2, q):
        if is_prime(p):
            e = 0
            qq = q
            while qq % p == 0:
                qq //= p
                e += 1
            if qq == 1:
                return field_make(p, e)
    raise ValueError(f"q={q} is not a prime power")


def min_rank_distance(code: RankCode, budget: int = MATERIALIZE_BUDGET) -> int:
    """Exact minimum pairwise rank distance (exhaustive)."""
    mats = code.materialize(budget)
    best = min(code.m, code.n)
    for i, a in enumerate(mats):
        for b in mats[i + 1 :]:
            d = rank_distance(a, b)
            if d < best:
                best = d
                if best == 0:
                    return 0
    return best


def verify_mrd(code: RankCode, budget: int = MATERIALIZE_BUDGET) -> bool:
    """True iff pairwise rank distance >= d' and the size meets the
    maximum-rank-distance bound with equality."""
    if code.size > budget:
        raise BudgetError(f"code size {code.size} exceeds exhaustive budget {budget}")
    if code.size != mrd_matrix_bound(code.field.q, code.m, code.n, code.dprime):
        return False
    mats = code.materialize(budget)
    if len(set(m.entries for m in mats)) != len(mats):
        return False
    return min_rank_distance(code, budget) >= code.dprime
