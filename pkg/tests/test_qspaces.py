from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from hecke_koszul.errors import Undetermined
from hecke_koszul.exact import rat
from hecke_koszul.hecke import antisymmetrizer, symmetrizer
from hecke_koszul.qspaces import (berlekamp_massey, birank, exterior, lambda_dim, poincare,
                                  reconstruct_rational, root_signs_ok, series_mul, sym_dim)
from hecke_koszul.zoo import drinfeld_jimbo, hecke_sum, odd_point, super_flip

from conftest import Q_SAMPLES


def super_lambda(m, n, k):
    return sum(comb(m, i) * comb(n + k - i - 1, k - i) if n else comb(m, k) * (i == k)
               for i in range(k + 1))


def super_sym(m, n, l):
    return sum(comb(m + i - 1, i) * comb(n, l - i) if m else comb(n, l) * (i == 0)
               for i in range(l + 1))


def expand(numer, denom, K):
    """Power series of numer/denom (denom[0] = 1) up to t^K."""
    out = []
    for i in range(K + 1):
        c = mpq(numer[i]) if i < len(numer) else mpq(0)
        c -= sum((denom[j] * out[i - j] for j in range(1, min(i, len(denom) - 1) + 1)), mpq(0))
        out.append(c)
    return out


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_super_flip_dimensions(m, n):
    sym = super_flip(m, n)
    for k in range(5):
        assert lambda_dim(sym, k) == super_lambda(m, n, k)
        assert sym_dim(sym, k) == super_sym(m, n, k)


@pytest.mark.parametrize("q", Q_SAMPLES)
def test_dj_dimensions_are_classical(q):
    for N in (2, 3):
        sym = drinfeld_jimbo(N, q)
        for k in range(5):
            assert lambda_dim(sym, k) == comb(N, k)
            assert sym_dim(sym, k) == comb(N + k - 1, k)


def test_graded_dims_match_projector_ranks():
    sym = hecke_sum(drinfeld_jimbo(2, 3), odd_point(3))
    for n in range(4):
        assert lambda_dim(sym, n) == antisymmetrizer(sym, n).rank
        assert sym_dim(sym, n) == symmetrizer(sym, n).rank


def test_degree_basis_is_stable_under_projector():
    sym = drinfeld_jimbo(2, mpq(7, 3))
    Y = antisymmetrizer(sym, 2).matrix
    for b in exterior(sym).degree(2).basis:
        assert Y.apply(b) == b


def test_hecke_sum_series_multiply():
    # P_Lambda(dj2 + odd) = (1+t)^2 / (1-t)
    sym = hecke_sum(drinfeld_jimbo(2, 2), odd_point(2))
    want = expand([1, 2, 1], [1, -1], 6)
    assert [lambda_dim(sym, k) for k in range(7)] == want


def test_odd_point():
    sym = odd_point(mpq(1, 2))
    assert [lambda_dim(sym, k) for k in range(5)] == [1] * 5
    assert [sym_dim(sym, k) for k in range(5)] == [1, 1, 0, 0, 0]


def test_berlekamp_massey_fibonacci():
    C, L, last = berlekamp_massey([1, 1, 2, 3, 5, 8, 13, 21])
    assert (C, L) == ([1, -1, -1], 2)


def test_reconstruct_examples():
    assert reconstruct_rational([1, 2, 1, 0, 0, 0]) == ([1, 2, 1], [1])
    assert reconstruct_rational([1, 2, 2, 2, 2, 2, 2]) == ([1, 1], [1, -1])
    assert reconstruct_rational([1, 3, 3, 1, 0, 0, 0, 0]) == ([1, 3, 3, 1], [1])
    with pytest.raises(Undetermined):
        reconstruct_rational([1, 2, 1, 0])


@given(st.lists(st.integers(1, 4), max_size=3), st.lists(st.integers(1, 4), max_size=2))
def test_reconstruct_recovers_product_forms(neg_roots, pos_roots):
    numer, denom = [1], [1]
    for a in neg_roots:
        numer = series_mul(numer + [0], [1, a], len(numer))
    for b in pos_roots:
        denom = series_mul(denom + [0], [1, -b], len(denom))
    K = 2 * (len(numer) + len(denom)) + 4
    got = reconstruct_rational([int(x) for x in expand(numer, denom, K)])
    assert got == ([int(x) for x in numer], [int(x) for x in denom])
    assert root_signs_ok(*got)


def test_root_signs():
    assert root_signs_ok([1, 3, 3, 1], [1])
    assert root_signs_ok([1, 1], [1, -1])
    assert not root_signs_ok([1, 0, 1], [1])     # roots +-i
    assert not root_signs_ok([1, -1], [1])       # root +1
    assert not root_signs_ok([1], [1, 1])        # pole at -1
    assert not root_signs_ok([1, 2, 2], [1])     # complex pair with negative real part


@pytest.mark.parametrize("q", ["2", "1/2", "7/3"])
def test_birank_zoo(q):
    q = rat(q)
    assert birank(drinfeld_jimbo(2, q)) == (2, 0)
    assert birank(drinfeld_jimbo(3, q)) == (3, 0)
    assert birank(odd_point(q)) == (0, 1)
    assert birank(hecke_sum(drinfeld_jimbo(1, q), odd_point(q))) == (1, 1)
    assert birank(hecke_sum(drinfeld_jimbo(2, q), odd_point(q))) == (2, 1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_birank_super_flip(m, n):
    assert birank(super_flip(m, n)) == (m, n)


def test_poincare_duality(zoo_q2):
    for name, sym in zoo_q2.items():
        rep = poincare(sym)
        assert rep.duality_ok and rep.roots_ok, name


def test_poincare_undetermined_with_few_terms():
    rep = poincare(drinfeld_jimbo(2, 2), K=3)
    assert rep.birank is None
    with pytest.raises(Undetermined):
        birank(drinfeld_jimbo(2, 2), K=3)
