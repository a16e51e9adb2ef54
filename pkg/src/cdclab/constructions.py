"""Constructive lower bounds: lifting, the linkage family, spreads, and
the explicit W-intersecting code families.

Conventions used throughout: the distinguished subspace W is always the
span of the last coordinates (matching the pivot structure of lifted
codes), and quotients V/L are realized in coordinates through a fixed
complement basis of unit vectors, ordered so that the W-part of the
quotient comes last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gf import GF, field_make, is_prime
from .matrix import Matrix, hstack, matrix_from_rows, rref, transpose
from .qfunc import gauss_binomial, lifted_mrd_size, mrd_matrix_bound, spread_lower
from .rankmetric import RankCode, gabidulin
from .subspace import (
    BudgetError,
    Code,
    Subspace,
    certificate_code,
    embed,
    enumerate_subspaces,
    intersection_dim,
    join,
    make_code,
    span_of,
    subspace_from_rref,
    verify_min_distance,
)

SIZE_BUDGET = 200_000  # constructions above this refuse to materialize
AMBIENT_BUDGET = 2**64  # ... as do ambient spaces with more vectors than this


def _as_field(q_or_field) -> GF:
    if isinstance(q_or_field, GF):
        return q_or_field
    q = q_or_field
    if is_prime(q):
        return field_make(q)
    for p in range(2, q):
        if is_prime(p) and q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q == 1:
                return field_make(p, e)
            break
    raise ValueError(f"{q_or_field} is not a prime power")


def w_span(field: GF, v: int, v2: int) -> Subspace:
    """The canonical v2-space W: span of the last v2 coordinates."""
    rows = [[0] * (v - v2) + [1 if j == i else 0 for j in range(v2)] for i in range(v2)]
    return subspace_from_rref(matrix_from_rows(field, rows, v))


@dataclass(frozen=True)
class BqInstance:
    """Parameters of the W-intersection setting: k-spaces of F_q^v1 that
    meet the fixed v2-space W (last v2 coordinates) in dimension >= d/2."""

    field: GF
    v1: int
    v2: int
    d: int
    k: int

    def __post_init__(self):
        if not 0 <= self.v2 <= self.v1:
            raise ValueError("need 0 <= v2 <= v1")
        if self.d % 2:
            raise ValueError("d must be even")

    @property
    def w(self) -> Subspace:
        return w_span(self.field, self.v1, self.v2)

    def is_trivial(self) -> bool:
        return self.v1 < self.k or self.v2 < self.d // 2 or self.d > 2 * self.k


def check_w_intersections(code: Code, v2: int, min_dim: int):
    """Verify dim(U ∩ W) >= min_dim for every codeword; returns (ok, witness)."""
    w = w_span(code.field, code.v, v2)
    for u in code.ordered():
        if intersection_dim(u, w) < min_dim:
            return False, u
    return True, None


def singleton_code(field: GF, v: int, k: int, d: int, provenance: str = "singleton") -> Code:
    """The one-codeword code spanned by the first k unit vectors."""
    rows = [[1 if j == i else 0 for j in range(v)] for i in range(k)]
    return make_code(field, v, k, d, [subspace_from_rref(matrix_from_rows(field, rows, v))], provenance)


def grassmannian_code(field: GF, v: int, k: int, budget: int = SIZE_BUDGET) -> Code:
    """All k-spaces of F_q^v as a distance-2 code."""
    n = gauss_binomial(v, k, field.q)
    if n > budget:
        raise BudgetError(f"Grassmannian of size {n} exceeds budget {budget}")
    return make_code(field, v, k, 2, enumerate_subspaces(field, v, k), f"grassmannian({v},{k})")


def lift_factor(q: int, v: int, m: int, k: int, d: int) -> int:
    """The multiplier ceil(q^((v-m)(k-d/2+1))) of the linkage family."""
    if m == v:
        return 1
    return mrd_matrix_bound(q, k, v - m, d // 2)


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------


def _mrd_for_lift(field: GF, k: int, width: int, dprime: int) -> RankCode:
    """MRD code of k x width matrices with rank distance d' (transposing a
    Gabidulin code when k > width)."""
    if k <= width:
        return gabidulin(field, k, width, dprime)
    inner = gabidulin(field, width, k, dprime)

    def at(i: int) -> Matrix:
        return transpose(inner.matrix_at(i))

    return RankCode(field, k, width, dprime, inner.size, at)


def lift_mrd(q_or_field, v: int, k: int, d: int, budget: int = SIZE_BUDGET) -> Code:
    """Lifted MRD code {identity prefix | A} with |code| = M(q, k, v, d)."""
    field = _as_field(q_or_field)
    if d % 2 or not 1 <= k <= v:
        raise ValueError("need even d and 1 <= k <= v")
    size = lifted_mrd_size(field.q, k, v, d)
    if d > 2 * min(k, v - k):
        return singleton_code(field, v, k, min(d, 2 * k), f"lift_mrd({field.q},{v},{k},{d})")
    if size > budget or field.q**v > AMBIENT_BUDGET:
        return certificate_code(field, v, k, d, size, f"lift_mrd({field.q},{v},{k},{d})")
    mrd = _mrd_for_lift(field, k, v - k, d // 2)
    eye = [[1 if j == i else 0 for j in range(k)] for i in range(k)]
    words = []
    for a in mrd:
        rows = [eye[i] + list(a.row(i)) for i in range(k)]
        words.append(subspace_from_rref(matrix_from_rows(field, rows, v)))
    return make_code(field, v, k, d, words, f"lift_mrd({field.q},{v},{k},{d})")


def construction_d(base: Code, v: int, d: int | None = None, budget: int = SIZE_BUDGET) -> Code:
    """Generalized lifting: prefix each codeword matrix of `base` with the
    matrices of an MRD code on the remaining v - m columns.

    Every output codeword is disjoint from the span of the last v - m
    coordinates, and the minimum distance is at least d.
    """
    if d is None:
        d = base.d
    m, k = base.v, base.k
    if base.d < d:
        raise ValueError(f"base distance {base.d} below target {d}")
    if not k <= m <= v - k:
        raise ValueError(f"need k <= m <= v - k, got k={k}, m={m}, v={v}")
    q = base.field.q
    size = base.size * lift_factor(q, v, m, k, d)
    prov = f"construction_D({base.provenance} -> v={v}, d={d})"
    if base.codewords is None or size > budget or q**v > AMBIENT_BUDGET:
        return certificate_code(base.field, v, k, d, size, prov)
    mrd = _mrd_for_lift(base.field, k, v - m, d // 2)
    words = []
    for u in base.ordered():
        urows = u.mat.row_list()
        for a in mrd:
            rows = [urows[i] + list(a.row(i)) for i in range(k)]
            words.append(subspace_from_rref(matrix_from_rows(base.field, rows, v)))
    out = make_code(base.field, v, k, d, words, prov)
    if out.size != size:
        raise AssertionError(f"construction_D produced {out.size} != {size} codewords")
    return out


# ---------------------------------------------------------------------------
# the linkage family
# ---------------------------------------------------------------------------


def embed_code(code: Code, v: int, offset: int) -> Code:
    words = [embed(u, v, offset) for u in code.ordered()]
    return make_code(code.field, v, code.k, code.d, words, f"embed({code.provenance}@{offset})")


def _union(a: Code, b: Code, d: int, provenance: str) -> Code:
    if a.field != b.field or a.v != b.v or a.k != b.k:
        raise ValueError("incompatible parts")
    words = a.codewords | b.codewords
    if len(words) != a.size + b.size:
        raise ValueError("parts overlap")
    return Code(a.field, a.v, a.k, d, frozenset(words), provenance)


def linkage(base_a: Code, base_b: Code, v: int, d: int | None = None, budget: int = SIZE_BUDGET) -> Code:
    """Linkage: lift base_a over v columns and append base_b embedded on
    the complementary coordinates (cross pairs are disjoint, distance 2k)."""
    if d is None:
        d = min(base_a.d, base_b.d)
    m, k = base_a.v, base_a.k
    if base_b.k != k or base_b.v != v - m:
        raise ValueError("base_b must be a (v-m, *, d; k) code")
    if base_b.d < d or base_a.d < d:
        raise ValueError("base distances below target")
    lifted = construction_d(base_a, v, d, budget)
    prov = f"linkage(m={m}: {base_a.provenance} + {base_b.provenance})"
    if lifted.codewords is None:
        return certificate_code(base_a.field, v, k, d, lifted.size + base_b.size, prov)
    tail = embed_code(base_b, v, m)
    return _union(lifted, tail, d, prov)


def improved_linkage(
    base_a: Code, base_c: Code, v: int, d: int | None = None, budget: int = SIZE_BUDGET
) -> Code:
    """Improved linkage: the appended code lives on v - m + k - d/2
    coordinates overlapping the lifted part by k - d/2 columns."""
    if d is None:
        d = base_a.d
    m, k = base_a.v, base_a.k
    overlap = k - d // 2
    if base_c.k != k or base_c.v != v - m + overlap:
        raise ValueError("base_c must be a (v-m+k-d/2, *, d; k) code")
    if base_a.d < d or base_c.d < d:
        raise ValueError("base distances below target")
    lifted = construction_d(base_a, v, d, budget)
    prov = f"improved_linkage(m={m}: {base_a.provenance} + {base_c.provenance})"
    if lifted.codewords is None:
        return certificate_code(base_a.field, v, k, d, lifted.size + base_c.size, prov)
    tail = embed_code(base_c, v, m - overlap)
    return _union(lifted, tail, d, prov)


def bq_linkage(
    base_a: Code, bq_code: Code, v: int, d: int | None = None, budget: int = SIZE_BUDGET
) -> Code:
    """The linkage generalization: append any code whose codewords meet
    W = span(last v - m coordinates) in dimension >= d/2.

    The W-intersection precondition and the tail's internal distance are
    checked, not assumed.
    """
    if d is None:
        d = base_a.d
    m, k = base_a.v, base_a.k
    if bq_code.k != k or bq_code.v != v:
        raise ValueError("bq_code must consist of k-spaces of F_q^v")
    if bq_code.d < d or base_a.d < d:
        raise ValueError("base distances below target")
    ok, bad = check_w_intersections(bq_code, v - m, d // 2)
    if not ok:
        raise ValueError(f"bq_code violates the W-intersection precondition: {bad}")
    ok, pair = verify_min_distance(bq_code)
    if not ok:
        raise ValueError(f"bq_code violates its claimed distance: {pair}")
    lifted = construction_d(base_a, v, d, budget)
    prov = f"bq_linkage(m={m}: {base_a.provenance} + {bq_code.provenance})"
    if lifted.codewords is None:
        return certificate_code(base_a.field, v, k, d, lifted.size + bq_code.size, prov)
    return _union(lifted, bq_code, d, prov)


# ---------------------------------------------------------------------------
# line spreads
# ---------------------------------------------------------------------------


def line_spread(q_or_field, v: int, budget: int = SIZE_BUDGET) -> Code:
    """Partial line spread of F_q^v of size spread_lower(q, v), built by
    the linkage recursion over m = 2."""
    field = _as_field(q_or_field)
    return _line_spread_cached(field, v, budget)


@lru_cache(maxsize=None)
def _line_spread_cached(field: GF, v: int, budget: int) -> Code:
    if v < 2:
        raise ValueError("v must be >= 2")
    prov = f"line_spread({field.q},{v})"
    if v == 2:
        return make_code(field, 2, 2, 4, [span_of(matrix_from_rows(field, [[1, 0], [0, 1]]))], prov)
    if v == 3:
        line = span_of(matrix_from_rows(field, [[1, 0, 0], [0, 1, 0]]))
        return make_code(field, 3, 2, 4, [line], prov)
    base = make_code(field, 2, 2, 4, [span_of(matrix_from_rows(field, [[1, 0], [0, 1]]))], "line(F^2)")
    code = linkage(base, _line_spread_cached(field, v - 2, budget), v, 4, budget)
    assert code.size == spread_lower(field.q, v)
    return Code(field, v, 2, 4, code.codewords, prov)


def line_spread_avoiding_plane(q_or_field, v: int, budget: int = SIZE_BUDGET) -> tuple[Code, Subspace]:
    """For odd v: the spread_lower(q, v) - 1 lines disjoint from the plane
    spanned by the last three coordinates, plus that plane."""
    field = _as_field(q_or_field)
    if v % 2 == 0 or v < 3:
        raise ValueError("the avoided-plane variant needs odd v >= 3")
    full = line_spread(field, v, budget)
    plane = w_span(field, v, 3)
    final = embed(span_of(matrix_from_rows(field, [[1, 0, 0], [0, 1, 0]])), v, v - 3)
    words = set(full.codewords)
    words.remove(final)
    return (
        make_code(field, v, 2, 4, words, f"line_spread({field.q},{v})-avoiding-plane"),
        plane,
    )


# ---------------------------------------------------------------------------
# quotient machinery
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Coordinates for V/L: a fixed complement of L spanned by unit
    vectors at `comp_cols` (in that order)."""

    base: Subspace
    comp_cols: tuple[int, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.comp_cols)

    def project_vec(self, vec) -> list[int]:
        F = self.base.field
        vec = list(vec)
        mat = self.base.mat
        for i, p in enumerate(self.pivots):
            c = vec[p]
            if c:
                row = mat.row(i)
                for j in range(p, len(vec)):
                    if row[j]:
                        vec[j] = F.sub(vec[j], F.mul(c, row[j]))
        return [vec[c] for c in self.comp_cols]

    def project_subspace(self, u: Subspace) -> Subspace:
        rows = [self.project_vec(u.mat.row(i)) for i in range(u.dim)]
        return span_of(matrix_from_rows(self.base.field, rows, self.dim))

    def lift_vec(self, qvec) -> list[int]:
        out = [0] * self.base.ambient
        for val, c in zip(qvec, self.comp_cols):
            out[c] = val
        return out

    def lift_subspace(self, s: Subspace) -> Subspace:
        """Preimage of s under V -> V/L (contains L)."""
        rows = self.base.mat.row_list()
        rows += [self.lift_vec(s.mat.row(i)) for i in range(s.dim)]
        return span_of(matrix_from_rows(self.base.field, rows, self.base.ambient))


def quotient_w_last(line: Subspace, v2: int) -> QuotientMap:
    """Quotient map for V/L with L inside W = span(last v2 coordinates);
    the complement columns place the surviving W-coordinates last."""
    v = line.ambient
    _, piv = rref(line.mat)
    if any(p < v - v2 for p in piv):
        raise ValueError("base subspace is not contained in W")
    pivset = set(piv)
    comp = list(range(v - v2)) + [c for c in range(v - v2, v) if c not in pivset]
    return QuotientMap(line, tuple(comp), piv)


# ---------------------------------------------------------------------------
# explicit W-intersecting families
# ---------------------------------------------------------------------------


def bq_prop_asym(q_or_field, v1: int, v2: int, d: int, k: int, budget: int = SIZE_BUDGET) -> Code:
    """Pairing construction for k < d: each codeword of a (v2, 2d-2k; d/2)
    code in W is extended by a distinct member of a partial (k-d/2)-spread
    of the complementary coordinates."""
    field = _as_field(q_or_field)
    inst = BqInstance(field, v1, v2, d, k)
    if inst.is_trivial():
        raise ValueError("trivial parameters")
    if not k < d:
        raise ValueError("this construction requires k < d")
    t = k - d // 2
    base = build_best(field, v2, 2 * d - 2 * k, d // 2, budget)
    prov = f"bq_prop_asym({field.q},{v1},{v2},{d},{k})"
    if d == 2:
        out = embed_code(base, v1, v1 - v2)
        return Code(field, v1, k, d, out.codewords, prov, bq_v2=v2)
    spread = build_best(field, v1 - v2, 2 * t, t, budget)
    if spread.size < base.size:
        raise ValueError(
            f"pairing impossible: spread size {spread.size} < base size {base.size}"
        )
    words = []
    partners = spread.ordered()
    for i, u in enumerate(base.ordered()):
        uv = embed(u, v1, v1 - v2)
        pv = embed(partners[i], v1, 0)
        words.append(join(uv, pv))
    return Code(field, v1, k, d, frozenset(words), prov, bq_v2=v2)


def bq_solids_size(q: int, variant: str) -> int:
    if variant == "v12":
        return (q**2 + 1) * (q**8 + q**6 + q**4 + q**2) + 1
    if variant == "v13":
        return (q**3 + 1) * (q**9 + q**7 + q**5 + q**3)
    raise ValueError(f"unknown variant {variant!r}")


def bq_solids(q_or_field, variant: str, include_extra_solid: bool = False, budget: int = SIZE_BUDGET) -> Code:
    """Solid families meeting a fixed solid/5-space W in dimension >= 2.

    v12: (q^2+1)(q^8+q^6+q^4+q^2)+1 solids of F_q^12 with W a solid --
    per spread line L of W, the solids over a line spread of V/L with the
    class through W removed, plus W itself.

    v13: (q^3+1)(q^9+q^7+q^5+q^3) solids of F_q^13 with W a 5-space,
    using quotient spreads avoiding the plane W/L.  The additional solid
    inside W mentioned in passing is opt-in via include_extra_solid.
    """
    field = _as_field(q_or_field)
    if variant == "v12":
        v, v2 = 12, 4
    elif variant == "v13":
        v, v2 = 13, 5
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if include_extra_solid and variant != "v13":
        raise ValueError("the extra solid applies to the v13 variant only")
    expected = bq_solids_size(field.q, variant)
    if expected > budget or field.q**v > AMBIENT_BUDGET:
        raise BudgetError(f"{expected} codewords exceed budget {budget}")
    w = w_span(field, v, v2)
    spread_w = [embed(u, v, v - v2) for u in line_spread(field, v2).ordered()]
    words: list[Subspace] = []
    for line in spread_w:
        quot = quotient_w_last(line, v2)
        if variant == "v12":
            classes = line_spread(field, quot.dim).ordered()
            w_class = quot.project_subspace(w)
            classes = [c for c in classes if c != w_class]
            assert len(classes) == spread_lower(field.q, quot.dim) - 1
        else:
            avoiding, plane = line_spread_avoiding_plane(field, quot.dim)
            assert quot.project_subspace(w) == plane
            classes = avoiding.ordered()
        for cls in classes:
            words.append(quot.lift_subspace(cls))
    if variant == "v12":
        words.append(w)
    elif include_extra_solid:
        rows = [[0] * (v - v2) + [1 if j == i else 0 for j in range(v2)] for i in range(4)]
        words.append(subspace_from_rref(matrix_from_rows(field, rows, v)))
    code = Code(
        field,
        v,
        4,
        4,
        frozenset(words),
        f"bq_solids_{variant}({field.q})" + ("+solid" if include_extra_solid else ""),
        bq_v2=v2,
    )
    if code.size != expected + (1 if include_extra_solid else 0):
        raise AssertionError(f"size {code.size} != expected {expected}")
    return code


def bq_16_5_6_5_size(q: int) -> int:
    return q**6 + q**5 + 2 * q**4 + 2 * q**3 + 2 * q**2 + q + 1


def bq_16_5_6_5(q_or_field, budget: int = SIZE_BUDGET) -> Code:
    """All [5 2]_q planes of a fixed 5-space W <= F_q^16, each extended by
    a distinct line of a partial line spread of the complementary
    coordinates; distance 6, every codeword meets W in dimension >= 3."""
    field = _as_field(q_or_field)
    q = field.q
    v, v2 = 16, 5
    n_planes = bq_16_5_6_5_size(q)
    if n_planes > budget or q**v > AMBIENT_BUDGET:
        raise BudgetError(f"{n_planes} codewords exceed budget {budget}")
    planes = [embed(u, v, v - v2) for u in enumerate_subspaces(field, v2, 3)]
    assert len(planes) == n_planes
    spread = line_spread(field, v - v2)
    if spread.size < n_planes:
        raise ValueError("partial line spread too small for the pairing")
    lines = [embed(u, v, 0) for u in spread.ordered()[:n_planes]]
    words = [join(p, l) for p, l in zip(planes, lines)]
    return Code(field, v, 5, 6, frozenset(words), f"bq_16_5_6_5({q})", bq_v2=v2)


# ---------------------------------------------------------------------------
# best-effort constructive engine and duality
# ---------------------------------------------------------------------------


def dual_code(code: Code) -> Code:
    """Orthogonal-complement code; the complement map preserves subspace
    distances, swapping k for v - k."""
    from .matrix import nullspace

    words = [subspace_from_rref(nullspace(u.mat)) for u in code.ordered()]
    return Code(
        code.field, code.v, code.v - code.k, code.d, frozenset(words), f"dual({code.provenance})"
    )


_BUILD_CACHE: dict[tuple, Code] = {}


def build_best(field: GF, v: int, d: int, k: int, budget: int = SIZE_BUDGET) -> Code:
    """Largest code this library can materialize for (v, *, d; k)_q.

    Tries the whole Grassmannian (d <= 2), line spreads, lifted MRD,
    improved linkage over all admissible m, and complement duality;
    returns the biggest.  Used to supply base codes to heuristics and
    witness constructions.
    """
    if d % 2 or d < 2:
        raise ValueError("d must be even and >= 2")
    if not 1 <= k <= v:
        raise ValueError("need 1 <= k <= v")
    if d > 2 * k:
        raise ValueError(f"no code with d={d} > 2k={2 * k}")
    key = (field.q, v, d, k, budget)
    cached = _BUILD_CACHE.get(key)
    if cached is not None:
        return cached
    candidates: list[Code] = []
    if d > 2 * min(k, v - k):
        candidates.append(singleton_code(field, v, k, d))
    else:
        if d <= 2:
            try:
                candidates.append(grassmannian_code(field, v, k, budget))
            except BudgetError:
                pass
        if d == 4 and k == 2:
            candidates.append(line_spread(field, v, budget))
        lifted = lift_mrd(field, v, k, d, budget)
        if lifted.codewords is not None:
            candidates.append(lifted)
        for m in range(k, v - k + 1):
            tail_v = v - m + k - d // 2
            if tail_v < k or m == v:
                continue
            try:
                base_a = build_best(field, m, d, k, budget)
                base_c = build_best(field, tail_v, d, k, budget)
                out = improved_linkage(base_a, base_c, v, d, budget)
                if out.codewords is not None:
                    candidates.append(out)
            except (BudgetError, ValueError):
                continue
        if v - k < k:
            try:
                candidates.append(dual_code(build_best(field, v, d, v - k, budget)))
            except (BudgetError, ValueError):
                pass
    if not candidates:
        raise BudgetError(f"no materializable code for ({v},{d};{k})_{field.q}")
    best = max(candidates, key=lambda c: c.size)
    _BUILD_CACHE[key] = best
    return best


# ---------------------------------------------------------------------------
# structural verification of linkage unions
# ---------------------------------------------------------------------------


def split_by_w(code: Code, v2: int, d: int) -> tuple[list[Subspace], list[Subspace]]:
    """Partition codewords into (disjoint from W, meeting W in >= d/2);
    raises if any codeword falls in neither class."""
    w = w_span(code.field, code.v, v2)
    lifted, tail = [], []
    for u in code.ordered():
        i = intersection_dim(u, w)
        if i == 0:
            lifted.append(u)
        elif i >= d // 2:
            tail.append(u)
        else:
            raise ValueError(f"codeword meets W in dimension {i}, neither 0 nor >= d/2")
    return lifted, tail


def verify_linkage_union(code: Code, v2: int, sample_pairs: int = 0, seed: int = 0) -> dict:
    """Structural certificate for a Theorem-style union code.

    Checks exhaustively: the tail part's pairwise distances and W-
    intersections, and that every lifted-part codeword is disjoint from W
    with pivots confined to the first v - v2 columns.  Cross-class pairs
    then satisfy d_s >= d by the dimension argument (dim(U' ∩ U'') <=
    k - d/2); optional random sampling double-checks lifted and cross
    pairs directly.
    """
    from random import Random

    from .subspace import distance_at_least, pivot_vector

    d = code.d
    lifted, tail = split_by_w(code, v2, d)
    report = {"lifted": len(lifted), "tail": len(tail), "ok": True, "failures": []}
    v = code.v
    for u in lifted:
        pv = pivot_vector(u)
        if any(pv[c] for c in range(v - v2, v)):
            report["ok"] = False
            report["failures"].append(("pivot in W block", u))
    tail_code = make_code(code.field, v, code.k, d, tail, "tail") if tail else None
    if tail_code and len(tail) > 1:
        ok, pair = verify_min_distance(tail_code)
        if not ok:
            report["ok"] = False
            report["failures"].append(("tail distance", pair))
    if sample_pairs and lifted:
        rng = Random(seed)
        others = lifted + tail
        for _ in range(sample_pairs):
            a = rng.choice(lifted)
            b = rng.choice(others)
            if a is b:
                continue
            if not distance_at_least(a, b, d):
                report["ok"] = False
                report["failures"].append(("sampled distance", (a, b)))
    return report
