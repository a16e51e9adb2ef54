from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cdclab.gf import field_make
from cdclab.qfunc import (
    anticode_bound,
    count_intersecting,
    gauss_binomial,
    lifted_mrd_size,
    mrd_matrix_bound,
    qbin_ratio_minus,
    qbin_ratio_plus,
    sandwich_check,
    spread_lower,
)
from cdclab.subspace import enumerate_subspaces, intersection_dim, embed


def test_gauss_binomial_values():
    assert gauss_binomial(3, 2, 2) == 7
    assert gauss_binomial(4, 2, 2) == 35
    assert gauss_binomial(5, 2, 2) == 155
    assert gauss_binomial(6, 3, 2) == 1395
    assert gauss_binomial(4, 0, 7) == 1
    assert gauss_binomial(3, 5, 2) == 0


@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from([2, 3, 4, 5]))
def test_gauss_binomial_symmetry(a, b, q):
    if b <= a:
        assert gauss_binomial(a, b, q) == gauss_binomial(a, a - b, q)


@given(st.integers(1, 10), st.integers(1, 10), st.sampled_from([2, 3, 4, 5]))
def test_qbin_neighbor_ratios(a, b, q):
    """The two exact-rational recurrences for adjacent q-binomials."""
    if b > a:
        return
    g = Fraction(gauss_binomial(a, b, q))
    assert Fraction(gauss_binomial(a + 1, b, q)) / g == qbin_ratio_plus(a, b, q)
    if b <= a - 1:
        assert Fraction(gauss_binomial(a - 1, b, q)) / g == qbin_ratio_minus(a, b, q)


@given(st.integers(0, 10), st.integers(0, 10), st.sampled_from([2, 3, 4, 5]))
def test_qbin_bracket(a, b, q):
    if b > a:
        return
    g = gauss_binomial(a, b, q)
    lo = q ** ((a - b) * b)
    assert lo <= g <= 4 * lo <= q**2 * lo


def test_count_intersecting_line_example():
    # lines of F_2^3 meeting a fixed line in exactly a point
    assert count_intersecting(3, 2, 2, 1, 2) == 6
    assert count_intersecting(3, 2, 2, 2, 2) == 1


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("v", [2, 3, 4, 5, 6])
def test_count_intersecting_totals(q, v):
    """Summing the intersection counts over i recovers the Grassmannian."""
    for w in range(v + 1):
        for u in range(v + 1):
            total = sum(count_intersecting(v, w, u, i, q) for i in range(min(u, w) + 1))
            assert total == gauss_binomial(v, u, q)


@pytest.mark.parametrize("v,w,u", [(4, 2, 2), (5, 3, 2), (5, 2, 2)])
def test_count_intersecting_vs_enumeration(v, w, u):
    field = field_make(2)
    wsub = embed(next(enumerate_subspaces(field, w, w)), v, v - w)
    hist = {}
    for s in enumerate_subspaces(field, v, u):
        i = intersection_dim(s, wsub)
        hist[i] = hist.get(i, 0) + 1
    for i in range(min(u, w) + 1):
        assert hist.get(i, 0) == count_intersecting(v, w, u, i, 2)


def test_lifted_mrd_size():
    assert lifted_mrd_size(2, 3, 7, 4) == 256
    assert lifted_mrd_size(2, 3, 5, 6) == 1  # d beyond 2 min(k, v-k)
    for q, k, v in [(2, 2, 5), (3, 3, 7)]:
        assert lifted_mrd_size(q, k, v, 2) == q ** (max(k, v - k) * min(k, v - k))


def test_mrd_matrix_bound():
    assert mrd_matrix_bound(2, 3, 4, 2) == 256
    assert mrd_matrix_bound(2, 2, 2, 3) == 1
    assert mrd_matrix_bound(3, 2, 4, 1) == 3**8


def test_anticode_bound():
    assert anticode_bound(2, 6, 4, 3) == 93
    assert anticode_bound(2, 4, 4, 2) == 5
    for q, v, k in [(2, 5, 2), (3, 6, 3)]:
        assert anticode_bound(q, v, 2, k) == gauss_binomial(v, k, q)


def test_spread_lower():
    assert spread_lower(2, 6) == 21
    assert spread_lower(2, 7) == 41
    assert spread_lower(2, 4) == 5
    assert spread_lower(2, 8) == 85
    for q in (2, 3, 4):
        assert spread_lower(q, 2) == 1
        assert spread_lower(q, 3) == 1
        assert spread_lower(q, 7) == q**5 + q**3 + 1


def test_sandwich_examples():
    # M = 4 and the anticode bound 5 for (2, 4, 4, 2): 4 <= 5 < 8
    assert sandwich_check(2, 4, 4, 2, 4, 5)
    assert sandwich_check(2, 6, 4, 3, 64, 93)
    assert not sandwich_check(2, 4, 4, 2, 4, 8)
    assert not sandwich_check(2, 4, 4, 2, 3, 5)
