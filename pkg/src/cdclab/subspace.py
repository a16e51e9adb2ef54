"""Canonical subspaces of F_q^v, the subspace metric, and enumeration.

A subspace is represented by the unique full-rank matrix in reduced row
echelon form whose row space it is; equality and hashing compare that
matrix verbatim, so sets of subspaces behave exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property

from .gf import GF
from .matrix import (
    Matrix,
    identity,
    matrix_from_rows,
    rank,
    rank_bitrows,
    rank_rows_generic,
    rref,
    vstack,
)

# enumeration refuses ambient spaces larger than this many vectors
ENUM_BUDGET = 2**20


class BudgetError(RuntimeError):
    """Raised when a computation would exceed its configured budget."""


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of F_q^v in canonical rref form."""

    field: GF
    ambient: int
    dim: int
    mat: Matrix

    @cached_property
    def _bitrows(self) -> tuple[int, ...]:
        return tuple(self.mat.bitrows())

    @cached_property
    def _rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.mat.row(i) for i in range(self.dim))

    def sort_key(self) -> tuple:
        return (self.ambient, self.dim, self.mat.entries)

    def __repr__(self) -> str:
        return f"Subspace({self.field}, v={self.ambient}, k={self.dim})"


def subspace_from_matrix(m: Matrix) -> Subspace:
    """Canonical subspace spanned by the rows of m; rejects dependent rows."""
    red, _ = rref(m)
    if red.rows != m.rows:
        raise ValueError("rows are linearly dependent")
    return Subspace(m.field, m.cols, red.rows, red)


def subspace_from_rref(red: Matrix) -> Subspace:
    """Wrap an already-reduced full-rank matrix without re-reducing."""
    return Subspace(red.field, red.cols, red.rows, red)


def span_of(m: Matrix) -> Subspace:
    """Row space of m (dependent rows allowed)."""
    red, _ = rref(m)
    return Subspace(m.field, m.cols, red.rows, red)


def zero_subspace(field: GF, v: int) -> Subspace:
    return Subspace(field, v, 0, Matrix(field, 0, v, ()))


def full_space(field: GF, v: int) -> Subspace:
    return subspace_from_rref(identity(field, v))


def pivot_vector(u: Subspace) -> tuple[int, ...]:
    """Binary pivot-position vector of the canonical matrix."""
    _, piv = rref(u.mat)
    bits = [0] * u.ambient
    for p in piv:
        bits[p] = 1
    return tuple(bits)


def hamming_distance(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum(x != y for x, y in zip(a, b))


def _stacked_rank(u: Subspace, w: Subspace, stop: int | None = None) -> int:
    if u.field.q == 2:
        return rank_bitrows(list(u._bitrows + w._bitrows), stop)
    return rank_rows_generic(u.field, [list(r) for r in u._rows + w._rows], stop)


def subspace_distance(u: Subspace, w: Subspace) -> int:
    """Subspace distance dim(U+W) - dim(U∩W) = 2 dim(U+W) - dim U - dim W."""
    if u.ambient != w.ambient or u.field != w.field:
        raise ValueError("ambient space mismatch")
    return 2 * _stacked_rank(u, w) - u.dim - w.dim


def distance_at_least(u: Subspace, w: Subspace, d: int) -> bool:
    """Early-exit check d_s(U, W) >= d."""
    # 2*rk - dimU - dimW >= d  <=>  rk >= ceil((d + dimU + dimW)/2)
    need = -(-(d + u.dim + w.dim) // 2)
    if need > min(u.dim + w.dim, u.ambient):
        return False
    return _stacked_rank(u, w, stop=need) >= need


def join(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient != w.ambient or u.field != w.field:
        raise ValueError("ambient space mismatch")
    return span_of(vstack(u.mat, w.mat))


def intersection_dim(u: Subspace, w: Subspace) -> int:
    return u.dim + w.dim - _stacked_rank(u, w)


def embed(u: Subspace, v: int, offset: int) -> Subspace:
    """Place U's coordinates at columns [offset, offset + ambient)."""
    if offset < 0 or offset + u.ambient > v:
        raise ValueError("embedding out of range")
    rows = []
    for i in range(u.dim):
        rows.append([0] * offset + list(u.mat.row(i)) + [0] * (v - offset - u.ambient))
    return subspace_from_rref(matrix_from_rows(u.field, rows, v))


def project_block(u: Subspace, offset: int, width: int) -> Subspace:
    """Row space of the columns [offset, offset+width) of U's matrix."""
    rows = [list(u.mat.row(i))[offset : offset + width] for i in range(u.dim)]
    return span_of(matrix_from_rows(u.field, rows, width))


def enumerate_subspaces(field: GF, v: int, k: int, budget: int = ENUM_BUDGET):
    """Yield every k-space of F_q^v exactly once.

    Canonical order: pivot-column sets lexicographically, then the free
    entries as a base-q odometer (row-major).  Total count equals the
    Gaussian binomial [v k]_q.
    """
    if not 0 <= k <= v:
        raise ValueError("need 0 <= k <= v")
    if field.q**v > budget:
        raise BudgetError(f"enumeration budget exceeded: {field.q}^{v} > {budget}")
    if k == 0:
        yield zero_subspace(field, v)
        return
    q = field.q
    for piv in itertools.combinations(range(v), k):
        pivset = set(piv)
        free = [
            (i, j)
            for i in range(k)
            for j in range(piv[i] + 1, v)
            if j not in pivset
        ]
        base = [[0] * v for _ in range(k)]
        for i, p in enumerate(piv):
            base[i][p] = 1
        counters = [0] * len(free)
        while True:
            rows = [r[:] for r in base]
            for (i, j), val in zip(free, counters):
                rows[i][j] = val
            yield subspace_from_rref(matrix_from_rows(field, rows, v))
            pos = len(free) - 1
            while pos >= 0:
                counters[pos] += 1
                if counters[pos] < q:
                    break
                counters[pos] = 0
                pos -= 1
            if pos < 0:
                break


def random_subspace(rng, field: GF, v: int, k: int) -> Subspace:
    """Uniform-ish random k-space: random full-rank k x v matrix, reduced."""
    q = field.q
    while True:
        m = matrix_from_rows(field, [[rng.randrange(q) for _ in range(v)] for _ in range(k)], v)
        if rank(m) == k:
            return subspace_from_matrix(m)


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Code:
    """A constant dimension code: a set of k-spaces of F_q^v with a
    claimed even minimum distance d.

    ``codewords`` may be None for a size-only certificate (constructions
    above the materialization budget).  ``bq_v2`` annotates codes built
    for the W-intersection setting, with W spanned by the last v2
    coordinates.
    """

    field: GF
    v: int
    k: int
    d: int
    codewords: frozenset[Subspace] | None
    provenance: str
    size_hint: int = 0
    verified: bool = dc_field(default=False)
    bq_v2: int | None = None

    def __post_init__(self):
        if self.d % 2 or not 2 <= self.d <= 2 * self.k:
            raise ValueError("claimed distance must be even with 2 <= d <= 2k")
        if self.codewords is not None:
            for u in self.codewords:
                if u.ambient != self.v or u.dim != self.k:
                    raise ValueError("codeword with wrong ambient dimension or dim")

    @property
    def size(self) -> int:
        return len(self.codewords) if self.codewords is not None else self.size_hint

    def ordered(self) -> list[Subspace]:
        if self.codewords is None:
            raise BudgetError(f"code is a size-only certificate ({self.provenance})")
        return sorted(self.codewords, key=Subspace.sort_key)

    def with_verified(self) -> "Code":
        return replace(self, verified=True)


def make_code(
    field: GF,
    v: int,
    k: int,
    d: int,
    codewords,
    provenance: str,
    bq_v2: int | None = None,
) -> Code:
    return Code(field, v, k, d, frozenset(codewords), provenance, bq_v2=bq_v2)


def certificate_code(field: GF, v: int, k: int, d: int, size: int, provenance: str) -> Code:
    return Code(field, v, k, d, None, provenance, size_hint=size)


def _pair_violates(words, d: int, lo: int, hi: int):
    n = len(words)
    for i in range(lo, hi):
        u = words[i]
        for j in range(i + 1, n):
            if not distance_at_least(u, words[j], d):
                return (i, j)
    return None


_POOL_WORDS: list = []
_POOL_D: int = 0


def _pool_init(words, d):
    global _POOL_WORDS, _POOL_D
    _POOL_WORDS = words
    _POOL_D = d


def _pool_chunk(bounds):
    return _pair_violates(_POOL_WORDS, _POOL_D, bounds[0], bounds[1])


def verify_min_distance(
    code: Code, jobs: int = 1
) -> tuple[bool, tuple[Subspace, Subspace] | None]:
    """Exhaustive O(N^2) pairwise check of the claimed minimum distance.

    Returns (True, None) or (False, violating pair).  With jobs > 1 the
    pair loop is split across processes and results merged by conjunction.
    """
    words = code.ordered()
    n = len(words)
    if n <= 1:
        return True, None
    if jobs > 1 and n > 256:
        import multiprocessing as mp

        bounds = _balanced_chunks(n, jobs * 4)
        with mp.Pool(jobs, initializer=_pool_init, initargs=(words, code.d)) as pool:
            for res in pool.imap_unordered(_pool_chunk, bounds):
                if res is not None:
                    pool.terminate()
                    return False, (words[res[0]], words[res[1]])
        return True, None
    res = _pair_violates(words, code.d, 0, n)
    if res is None:
        return True, None
    return False, (words[res[0]], words[res[1]])


def _balanced_chunks(n: int, parts: int) -> list[tuple[int, int]]:
    total = n * (n - 1) // 2
    target = total / parts if parts else total
    out = []
    lo = 0
    acc = 0
    for i in range(n):
        acc += n - 1 - i
        if acc >= target and lo <= i:
            out.append((lo, i + 1))
            lo = i + 1
            acc = 0
    if lo < n:
        out.append((lo, n))
    return out


def min_distance(code: Code) -> int:
    """Exact minimum distance by exhaustive pairwise computation."""
    words = code.ordered()
    best = 2 * code.k
    for i, u in enumerate(words):
        for w in words[i + 1 :]:
            dist = subspace_distance(u, w)
            if dist < best:
                best = dist
    return best
