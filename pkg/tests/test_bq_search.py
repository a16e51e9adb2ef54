import pytest

from cdclab.bounds import bq_upper_corollary, bq_upper_lp
from cdclab.bq_search import (
    ExactBqResult,
    conjecture_experiment,
    count_candidates,
    enumerate_w_intersecting,
    exact_bq,
    heuristic_bq,
    max_clique,
)
from cdclab.constructions import check_w_intersections, w_span
from cdclab.gf import field_make
from cdclab.qfunc import count_intersecting
from cdclab.subspace import BudgetError, embed, intersection_dim, verify_min_distance

F2 = field_make(2)


def test_candidate_counts_match_lemma():
    assert count_candidates(2, 6, 3, 3, 2) == 99
    assert count_candidates(2, 12, 4, 3, 2) == 35_715
    cands = list(enumerate_w_intersecting(F2, 6, 3, 3, 2))
    assert len(cands) == len(set(cands)) == 99
    w = w_span(F2, 6, 3)
    assert all(intersection_dim(u, w) >= 2 for u in cands)


def test_max_clique_known_graphs():
    # triangle plus isolated vertex
    adj = [0b0110, 0b0101, 0b0011, 0b0000]
    assert len(max_clique(adj)) == 3
    # 5-cycle: max clique 2
    adj = [0] * 5
    for i in range(5):
        adj[i] |= (1 << ((i + 1) % 5)) | (1 << ((i - 1) % 5))
    assert len(max_clique(adj)) == 2


def test_exact_bq_6_3_4_3():
    res = exact_bq(2, 6, 3, 4, 3)
    assert res.exact and res.value == 7
    ok, _ = verify_min_distance(res.witness)
    assert ok
    okw, _ = check_w_intersections(res.witness, 3, 2)
    assert okw


def test_exact_bq_forced_tiny():
    # lines confined to a 3-space cannot be disjoint
    res = exact_bq(2, 5, 3, 4, 2)
    assert res.exact and res.value == 1


def test_exact_bq_trivial():
    res = exact_bq(2, 3, 2, 4, 4)
    assert res.exact and res.value == 0


def test_exact_bq_interval_over_budget():
    res = exact_bq(2, 12, 4, 4, 3, budget=500)
    assert not res.exact
    assert res.upper == bq_upper_lp(2, 12, 4, 4, 3) == 35
    assert 0 <= res.lower <= 35
    with pytest.raises(BudgetError):
        res.value


def test_heuristic_reaches_seven_at_v10():
    code, report = heuristic_bq(2, 10, 3, 4, 3, seed=1, restarts=10)
    assert report["reached"] == 7
    assert report["verified"]
    assert code.bq_v2 == 3


def test_heuristic_determinism():
    c1, r1 = heuristic_bq(2, 7, 3, 4, 3, seed=42, restarts=4)
    c2, r2 = heuristic_bq(2, 7, 3, 4, 3, seed=42, restarts=4)
    assert c1.codewords == c2.codewords
    assert r1 == r2


def test_heuristic_zero_extension_dim():
    # k = d/2 embeds the base code directly
    code, report = heuristic_bq(2, 6, 3, 4, 2, seed=0, restarts=1)
    assert report["reached"] == 1
    assert report["verified"]


def test_heuristic_rejects_wrong_regime():
    with pytest.raises(ValueError):
        heuristic_bq(2, 8, 4, 4, 4)  # k >= d
    with pytest.raises(ValueError):
        heuristic_bq(2, 3, 1, 4, 3)  # trivial


def test_heuristic_at_most_exact_at_most_lp():
    for v1 in (5, 6, 7):
        _, rep = heuristic_bq(2, v1, 3, 4, 3, seed=0, restarts=10)
        exact = exact_bq(2, v1, 3, 4, 3, budget=4000)
        lp = bq_upper_lp(2, v1, 3, 4, 3)
        assert rep["reached"] <= exact.lower <= lp
        if exact.exact:
            assert rep["reached"] <= exact.value <= lp


def test_boundary_gap_at_v1_5():
    """Two columns beyond W leave only q^2 - 1 usable directions, so the
    greedy and the exact oracle both stop at 3 rather than 7."""
    _, rep = heuristic_bq(2, 5, 3, 4, 3, seed=0, restarts=20)
    assert rep["reached"] == 3
    res = exact_bq(2, 5, 3, 4, 3)
    assert res.exact and res.value == 3
    assert bq_upper_lp(2, 5, 3, 4, 3) == 7  # counting alone cannot see this


def test_monotone_in_ambient_dimension():
    """Embedding a witness into one more coordinate preserves both the
    distance and the W-intersection conditions (W stays the last v2)."""
    code, rep = heuristic_bq(2, 6, 3, 4, 3, seed=3, restarts=5)
    assert rep["reached"] == 7
    lifted = [embed(u, 7, 1) for u in code.ordered()]  # keep W as the last coords
    from cdclab.subspace import make_code

    bigger = make_code(F2, 7, 3, 4, lifted, "embedded witness", bq_v2=3)
    ok, _ = verify_min_distance(bigger)
    assert ok
    okw, _ = check_w_intersections(bigger, 3, 2)
    assert okw
    # hence B is monotone: the (7, 3) value is at least the (6, 3) value
    res7 = exact_bq(2, 7, 3, 4, 3, budget=4000)
    assert res7.lower >= 7


def test_conjecture_experiment_reports():
    rep = conjecture_experiment(2, 3, 3, 7, seed=0, restarts=5)
    assert rep["target"] == 7
    assert rep["reached"] == 7
    assert rep["gap"] == 0
    assert rep["verified"]
    rep = conjecture_experiment(2, 3, 4, 8, seed=0, restarts=3)
    assert rep["target"] == 35


def test_conjecture_experiment_regime_checks():
    with pytest.raises(ValueError):
        conjecture_experiment(2, 2, 3, 7)  # k < 3
    with pytest.raises(ValueError):
        conjecture_experiment(2, 3, 3, 4)  # v1 < v2 + 2


def test_trivial_intersection_candidates_match_count():
    # the heuristic's pool size formula against the counting lemma
    from cdclab.bq_search import _TrivialFreePool
    import random

    pool = _TrivialFreePool(F2, 6, 3, 1, random.Random(0))
    assert pool.total == count_intersecting(6, 3, 1, 0, 2)
    seen = set()
    while True:
        s = pool.draw()
        if s is None:
            break
        seen.add(s)
        pool.remove_last()
    assert len(seen) == pool.total
    w = w_span(F2, 6, 3)
    assert all(intersection_dim(u, w) == 0 for u in seen)
