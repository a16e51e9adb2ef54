"""Immutable matrices over GF(q) with exact row reduction.

Every operation returns a new matrix, which keeps concurrent verification
safe.  Entries are stored as raw field-element ints (row-major); over
GF(2) the reduction routines switch to bitmask rows, with column c mapped
to bit (cols-1-c) so the leading column of a row is its highest set bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import GF


@dataclass(frozen=True)
class Matrix:
    field: GF
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        q = self.field.q
        if any(not 0 <= x < q for x in self.entries):
            raise ValueError("entry out of field range")

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def bitrows(self) -> list[int]:
        """Rows as ints, GF(2) only; column c is bit (cols-1-c)."""
        if self.field.q != 2:
            raise ValueError("bitrows requires GF(2)")
        n = self.cols
        out = []
        for i in range(self.rows):
            r = 0
            for j, x in enumerate(self.row(i)):
                if x:
                    r |= 1 << (n - 1 - j)
            out.append(r)
        return out


def matrix_from_rows(field: GF, rows: list[list[int]], cols: int | None = None) -> Matrix:
    if cols is None:
        cols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != cols:
            raise ValueError("ragged rows")
    return Matrix(field, len(rows), cols, tuple(x for r in rows for x in r))


def matrix_from_bitrows(field: GF, bitrows: list[int], cols: int) -> Matrix:
    if field.q != 2:
        raise ValueError("bitrows requires GF(2)")
    ent = []
    for r in bitrows:
        ent.extend((r >> (cols - 1 - j)) & 1 for j in range(cols))
    return Matrix(field, len(bitrows), cols, tuple(ent))


def identity(field: GF, n: int) -> Matrix:
    return Matrix(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero_matrix(field: GF, rows: int, cols: int) -> Matrix:
    return Matrix(field, rows, cols, (0,) * (rows * cols))


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: {a.rows} vs {b.rows}")
    ent = []
    for i in range(a.rows):
        ent.extend(a.row(i))
        ent.extend(b.row(i))
    return Matrix(a.field, a.rows, a.cols + b.cols, tuple(ent))


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.cols != b.cols:
        raise ValueError(f"column mismatch: {a.cols} vs {b.cols}")
    return Matrix(a.field, a.rows + b.rows, a.cols, a.entries + b.entries)


def matrix_sub(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field or a.rows != b.rows or a.cols != b.cols:
        raise ValueError("shape or field mismatch")
    F = a.field
    return Matrix(a.field, a.rows, a.cols, tuple(F.sub(x, y) for x, y in zip(a.entries, b.entries)))


def transpose(a: Matrix) -> Matrix:
    return Matrix(
        a.field, a.cols, a.rows, tuple(a[i, j] for j in range(a.cols) for i in range(a.rows))
    )


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def rref_bitrows(rows: list[int]) -> list[int]:
    """Reduced echelon form of GF(2) bitmask rows; zero rows dropped,
    result sorted so leading bits strictly decrease."""
    basis: dict[int, int] = {}  # leading bit position -> fully reduced row
    for r in rows:
        while r:
            h = r.bit_length() - 1
            if h in basis:
                r ^= basis[h]
                continue
            # clear lower pivot bits from r (rows in basis carry no other
            # pivot bits, so a single pass suffices)
            for hh, rr in basis.items():
                if (r >> hh) & 1:
                    r ^= rr
            # clear bit h from existing rows, then insert
            for hh, rr in basis.items():
                if (rr >> h) & 1:
                    basis[hh] = rr ^ r
            basis[h] = r
            break
    return [basis[h] for h in sorted(basis, reverse=True)]


def rank_bitrows(rows: list[int], stop: int | None = None) -> int:
    """Rank of GF(2) bitmask rows with optional early exit at `stop`."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            h = r.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = r
                rank += 1
                if stop is not None and rank >= stop:
                    return rank
                break
            r ^= p
    return rank


def _rref_generic(field: GF, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    if field.q <= 256:
        field.build_tables()
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        piv = None
        for r in range(pr, len(mat)):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            continue
        mat[pr], mat[piv] = mat[piv], mat[pr]
        inv = field.inv(mat[pr][c])
        if inv != 1:
            mat[pr] = [field.mul(inv, x) for x in mat[pr]]
        for r in range(len(mat)):
            if r != pr and mat[r][c]:
                f = mat[r][c]
                row, prow = mat[r], mat[pr]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = field.sub(row[j], field.mul(f, prow[j]))
        pivots.append(c)
        pr += 1
        if pr == len(mat):
            break
    return mat[:pr], pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows removed, plus pivot columns."""
    if m.field.q == 2:
        red = rref_bitrows(m.bitrows())
        piv = tuple(m.cols - r.bit_length() for r in red)
        return matrix_from_bitrows(m.field, red, m.cols), piv
    red, piv = _rref_generic(m.field, m.row_list())
    return matrix_from_rows(m.field, red, m.cols), tuple(piv)


def rank(m: Matrix) -> int:
    if m.field.q == 2:
        return rank_bitrows(m.bitrows())
    red, _ = _rref_generic(m.field, m.row_list())
    return len(red)


def rank_rows_generic(field: GF, rows: list[list[int]], stop: int | None = None) -> int:
    """Rank by plain elimination; independent of rref (usable as an oracle)."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    rk = 0
    for c in range(ncols):
        piv = None
        for r in range(rk, len(mat)):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        inv = field.inv(mat[rk][c])
        for r in range(rk + 1, len(mat)):
            if mat[r][c]:
                f = field.mul(mat[r][c], inv)
                mat[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[r], mat[rk])]
        rk += 1
        if stop is not None and rk >= stop:
            return rk
        if rk == len(mat):
            break
    return rk


def nullspace(m: Matrix) -> Matrix:
    """A rref basis of the right kernel {x : M x^T = 0}, as rows."""
    red, piv = rref(m)
    pivset = set(piv)
    free = [c for c in range(m.cols) if c not in pivset]
    F = m.field
    rows = []
    for f in free:
        vec = [0] * m.cols
        vec[f] = 1
        for i, p in enumerate(piv):
            vec[p] = F.neg(red[i, f])
        rows.append(vec)
    basis = matrix_from_rows(F, rows, m.cols)
    red2, _ = rref(basis)
    return red2
