import random

import pytest

from cdclab.gf import field_make
from cdclab.matrix import matrix_from_rows
from cdclab.qfunc import gauss_binomial, lifted_mrd_size, spread_lower
from cdclab.constructions import (
    BqInstance,
    bq_16_5_6_5,
    bq_16_5_6_5_size,
    bq_linkage,
    bq_prop_asym,
    bq_solids,
    bq_solids_size,
    build_best,
    check_w_intersections,
    construction_d,
    dual_code,
    embed_code,
    grassmannian_code,
    improved_linkage,
    lift_factor,
    lift_mrd,
    line_spread,
    line_spread_avoiding_plane,
    linkage,
    quotient_w_last,
    singleton_code,
    split_by_w,
    verify_linkage_union,
    w_span,
)
from cdclab.subspace import (
    Code,
    distance_at_least,
    embed,
    intersection_dim,
    make_code,
    pivot_vector,
    subspace_from_matrix,
    verify_min_distance,
)

F2 = field_make(2)


def assert_verified(code, jobs=1):
    ok, witness = verify_min_distance(code, jobs=jobs)
    assert ok, f"{code.provenance}: violated by {witness}"


# -- lifting ----------------------------------------------------------------


def test_lift_mrd_small():
    code = lift_mrd(2, 4, 2, 4)
    assert code.size == 4
    assert_verified(code)


def test_lift_mrd_64():
    code = lift_mrd(2, 6, 3, 4)
    assert code.size == 64
    assert_verified(code)


def test_lift_mrd_256_pivot_structure():
    code = lift_mrd(2, 7, 3, 4)
    assert code.size == lifted_mrd_size(2, 3, 7, 4) == 256
    assert_verified(code)
    w = w_span(F2, 7, 4)
    for u in code.ordered():
        assert pivot_vector(u)[3:] == (0, 0, 0, 0)
        assert intersection_dim(u, w) == 0


def test_lift_mrd_wide_side():
    # k > v - k goes through the transposed rank code
    code = lift_mrd(2, 5, 3, 4)
    assert code.size == lifted_mrd_size(2, 3, 5, 4) == 8
    assert_verified(code)


def test_lift_mrd_singleton_when_distance_too_big():
    code = lift_mrd(2, 5, 3, 6)
    assert code.size == 1


def test_construction_d_single_base_matches_lift():
    base = singleton_code(F2, 2, 2, 4)
    out = construction_d(base, 4, 4)
    assert out.codewords == lift_mrd(2, 4, 2, 4).codewords


def test_construction_d_spread_base():
    """21 lines lifted over two extra columns: 21 * q^2 codewords at
    distance 4, all disjoint from the final 2-space."""
    out = construction_d(line_spread(2, 6), 8, 4)
    assert out.size == 21 * lift_factor(2, 8, 6, 2, 4) == 84
    assert_verified(out)
    w = w_span(F2, 8, 2)
    assert all(intersection_dim(u, w) == 0 for u in out.ordered())


def test_construction_d_rejects_bad_split():
    with pytest.raises(ValueError):
        construction_d(line_spread(2, 6), 7, 4)  # m = 6 > v - k = 5


def test_construction_d_certificate_over_budget():
    base = lift_mrd(2, 8, 4, 4)  # 2^12 codewords
    assert base.size == 4096
    out = construction_d(base, 12, 4, budget=1000)
    assert out.codewords is None
    assert out.size == 4096 * lift_factor(2, 12, 8, 4, 4) == 2**24


# -- the linkage family -----------------------------------------------------


def test_linkage_spread_recursion():
    base = make_code(F2, 2, 2, 4, line_spread(2, 2).ordered(), "line")
    out = linkage(base, line_spread(2, 4), 6, 4)
    assert out.size == spread_lower(2, 6) == 21
    assert_verified(out)


def test_linkage_cross_pairs_disjoint():
    base = make_code(F2, 2, 2, 4, line_spread(2, 2).ordered(), "line")
    out = linkage(base, line_spread(2, 4), 6, 4)
    lifted, tail = split_by_w(out, 4, 4)
    for u in lifted[:10]:
        for w in tail:
            assert intersection_dim(u, w) == 0


def test_improved_linkage_reduces_to_linkage_at_full_distance():
    # d = 2k makes the overlap zero
    a, c = line_spread(2, 4), line_spread(2, 4)
    assert improved_linkage(a, c, 8, 4).codewords == linkage(a, c, 8, 4).codewords


def test_improved_linkage_verified_small():
    out = improved_linkage(line_spread(2, 4), line_spread(2, 4), 8, 4)
    assert out.size == 85
    assert_verified(out)


def test_improved_linkage_overlap():
    """k = 3, d = 4: the appended code overlaps the lifted block by one
    column and still keeps distance 4."""
    base_a = build_best(F2, 3, 4, 3)
    base_c = build_best(F2, 4, 4, 3)
    out = improved_linkage(base_a, base_c, 6, 4)
    assert out.size == 1 * lift_factor(2, 6, 3, 3, 4) + 1 == 65
    assert_verified(out)


def test_bq_linkage_matches_improved_on_tail_codes():
    """An embedded tail code satisfies the W-intersection condition, so
    the generalized linkage reproduces improved linkage exactly."""
    base_a = build_best(F2, 3, 4, 3)
    tail = embed_code(build_best(F2, 4, 4, 3), 6, 3 - 1)
    tail = Code(F2, 6, 3, 4, tail.codewords, tail.provenance, bq_v2=3)
    out = bq_linkage(base_a, tail, 6, 4)
    assert out.codewords == improved_linkage(build_best(F2, 3, 4, 3), build_best(F2, 4, 4, 3), 6, 4).codewords


def test_bq_linkage_rejects_shallow_intersections():
    base_a = build_best(F2, 3, 4, 3)
    bad = make_code(F2, 6, 3, 4, [lift_mrd(2, 6, 3, 4).ordered()[0]], "bad tail")
    with pytest.raises(ValueError):
        bq_linkage(base_a, bad, 6, 4)


def test_bq_linkage_arithmetic_at_v10():
    base_a = build_best(F2, 7, 4, 3)
    from cdclab.bq_search import heuristic_bq

    tail, report = heuristic_bq(2, 10, 3, 4, 3, seed=5, restarts=5)
    assert report["reached"] == 7
    out = bq_linkage(base_a, tail, 10, 4)
    assert out.size == base_a.size * 64 + 7
    rep = verify_linkage_union(out, 3, sample_pairs=2000, seed=1)
    assert rep["ok"] and rep["tail"] == 7


# -- spreads ----------------------------------------------------------------


@pytest.mark.parametrize("v,expected", [(2, 1), (3, 1), (4, 5), (6, 21), (7, 41), (8, 85)])
def test_line_spread_sizes(v, expected):
    code = line_spread(2, v)
    assert code.size == expected == spread_lower(2, v)
    assert_verified(code)


def test_line_spread_q3():
    code = line_spread(3, 4)
    assert code.size == spread_lower(3, 4) == 10
    assert_verified(code)


def test_line_spread_avoiding_plane():
    code, plane = line_spread_avoiding_plane(2, 7)
    assert code.size == 40
    assert all(intersection_dim(u, plane) == 0 for u in code.ordered())
    assert_verified(code)
    with pytest.raises(ValueError):
        line_spread_avoiding_plane(2, 6)


# -- quotient machinery ------------------------------------------------------


def test_quotient_roundtrip():
    line = embed(subspace_from_matrix(matrix_from_rows(F2, [[1, 0, 0, 0], [0, 1, 0, 0]])), 12, 8)
    quot = quotient_w_last(line, 4)
    assert quot.dim == 10
    w = w_span(F2, 12, 4)
    # W/L is spanned by the last two quotient coordinates
    wq = quot.project_subspace(w)
    assert wq.dim == 2
    assert pivot_vector(wq) == (0,) * 8 + (1, 1)
    # lifting a quotient line through L gives a solid containing L
    rng = random.Random(2)
    from cdclab.subspace import random_subspace

    for _ in range(10):
        s = random_subspace(rng, F2, 10, 2)
        solid = quot.lift_subspace(s)
        assert solid.dim == 4
        assert intersection_dim(solid, line) == 2


# -- explicit W-intersecting families ----------------------------------------


def test_bq_prop_asym_12_4_4_3():
    code = bq_prop_asym(2, 12, 4, 4, 3)
    assert code.size == 35 == gauss_binomial(4, 2, 2)
    assert_verified(code)
    ok, _ = check_w_intersections(code, 4, 2)
    assert ok
    w = w_span(F2, 12, 4)
    assert {intersection_dim(u, w) for u in code.ordered()} == {2}


def test_bq_prop_asym_d2_returns_base():
    code = bq_prop_asym(2, 8, 3, 2, 1)
    assert code.size == gauss_binomial(3, 1, 2)
    ok, _ = check_w_intersections(code, 3, 1)
    assert ok


def test_bq_prop_asym_needs_room_for_pairing():
    with pytest.raises(ValueError):
        bq_prop_asym(2, 5, 3, 4, 3)  # only 3 points outside W for 7 lines


def test_bq_prop_asym_tight_pairing():
    """At (6, 3): exactly 7 partner points for the 7 lines of W."""
    code = bq_prop_asym(2, 6, 3, 4, 3)
    assert code.size == 7
    assert_verified(code)
    ok, _ = check_w_intersections(code, 3, 2)
    assert ok


def test_bq_solids_v12():
    code = bq_solids(2, "v12")
    assert code.size == bq_solids_size(2, "v12") == 1701
    ok, _ = check_w_intersections(code, 4, 2)
    assert ok
    w = w_span(F2, 12, 4)
    hist = {}
    for u in code.ordered():
        hist[intersection_dim(u, w)] = hist.get(intersection_dim(u, w), 0) + 1
    assert hist == {2: 1700, 4: 1}
    assert_verified(code)


def test_bq_solids_v13_sizes_and_samples():
    code = bq_solids(2, "v13")
    assert code.size == bq_solids_size(2, "v13") == 6120
    ok, _ = check_w_intersections(code, 5, 2)
    assert ok
    rng = random.Random(6)
    words = code.ordered()
    for _ in range(4000):
        a, b = rng.sample(words, 2)
        assert distance_at_least(a, b, 4)
    plus = bq_solids(2, "v13", include_extra_solid=True)
    assert plus.size == 6121


def test_bq_solids_size_polynomials():
    assert bq_solids_size(3, "v12") == (9 + 1) * (3**8 + 3**6 + 3**4 + 3**2) + 1
    assert bq_solids_size(2, "v13") == 9 * 680


def test_bq_16_5_6_5():
    code = bq_16_5_6_5(2)
    assert code.size == bq_16_5_6_5_size(2) == 155
    assert_verified(code)
    ok, _ = check_w_intersections(code, 5, 3)
    assert ok


def test_bq_16_5_6_5_size_q3():
    assert bq_16_5_6_5_size(3) == 1210


# -- engine helpers -----------------------------------------------------------


def test_dual_code_preserves_distances():
    code = line_spread(2, 5)
    dual = dual_code(code)
    assert dual.k == 3 and dual.size == code.size
    assert_verified(dual)


def test_build_best_known_values():
    assert build_best(F2, 4, 4, 2).size == 5
    assert build_best(F2, 5, 4, 3).size == 9
    assert build_best(F2, 7, 4, 3).size >= 265
    assert build_best(F2, 3, 2, 2).size == 7
    assert build_best(F2, 4, 4, 3).size == 1


def test_grassmannian_code():
    code = grassmannian_code(F2, 4, 2)
    assert code.size == 35
    assert min(d for d in [2]) == 2  # distance-2 by construction


def test_bq_instance_trivial_flags():
    assert BqInstance(F2, 3, 1, 4, 3).is_trivial()  # v2 < d/2
    assert BqInstance(F2, 2, 2, 4, 3).is_trivial()  # v1 < k
    assert BqInstance(F2, 6, 3, 8, 3).is_trivial()  # d > 2k
    assert not BqInstance(F2, 6, 3, 4, 3).is_trivial()
