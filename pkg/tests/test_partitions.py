"""Pieri rules against an independent Schur-product oracle.

The oracle expands s_lambda * s_mu as monomials via semistandard tableaux in
enough variables, then peels off Schur functions by their leading monomial
(Kostka triangularity).
"""

import itertools
from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from hecke_koszul.partitions import (HomQuery, Partition, hom_dimension, hook_valid, pieri_col, pieri_row,
                                     verify_theorem1_homs)


def partitions_of(n, max_part=None):
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def schur_monomials(shape, nvars):
    """Counter of exponent vectors of s_shape in nvars variables (SSYT enumeration)."""
    cells = [(r, c) for r, row in enumerate(shape) for c in range(row)]
    out = Counter()

    def fill(i, T):
        if i == len(cells):
            exp = [0] * nvars
            for v in T.values():
                exp[v] += 1
            out[tuple(exp)] += 1
            return
        r, c = cells[i]
        lo = 0
        if c > 0:
            lo = T[(r, c - 1)]
        if r > 0:
            lo = max(lo, T[(r - 1, c)] + 1)
        for v in range(lo, nvars):
            T[(r, c)] = v
            fill(i + 1, T)
        T.pop((r, c), None)

    fill(0, {})
    return out


def schur_product(lam, mu):
    n = sum(lam) + sum(mu)
    # constituents have at most len(lam) + len(mu) rows
    nvars = max(1, len(lam) + len(mu))
    prod = Counter()
    for a, x in schur_monomials(lam, nvars).items():
        for b, y in schur_monomials(mu, nvars).items():
            prod[tuple(i + j for i, j in zip(a, b))] += x * y
    result = {}
    for shape in partitions_of(n):   # reverse lexicographic: dominant shapes first
        if len(shape) > nvars:
            continue
        exp = tuple(shape) + (0,) * (nvars - len(shape))
        c = prod.get(exp, 0)
        if c:
            result[shape] = c
            for e, k in schur_monomials(shape, nvars).items():
                prod[e] -= c * k
    assert not +prod
    return result


def as_set(parts):
    return {p.parts for p in parts}


def test_hook_valid_examples():
    assert hook_valid(Partition((3, 1)), 1, 1)
    assert not hook_valid(Partition((2, 2)), 1, 1)
    assert hook_valid(Partition((5, 4)), 2, 0)


def test_partition_normalizes():
    assert Partition((2, 1, 0, 0)).parts == (2, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))


def test_pieri_examples():
    assert pieri_row(Partition(()), 2) == [Partition((2,))]
    assert pieri_row(Partition((1,)), 1) == [Partition((2,)), Partition((1, 1))]
    assert pieri_col(Partition((2, 1)), 2) == [Partition(p) for p in [(3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1)]]


@pytest.mark.parametrize("total", range(1, 9))
def test_pieri_against_schur_oracle(total):
    for size in range(0, total + 1):
        for strip in range(0, total - size + 1):
            if size + strip != total:
                continue
            for lam in partitions_of(size):
                P = Partition(lam)
                row = schur_product(lam, (strip,) if strip else ())
                col = schur_product(lam, (1,) * strip)
                assert set(row.values()) <= {1} and as_set(pieri_row(P, strip)) == set(row)
                assert set(col.values()) <= {1} and as_set(pieri_col(P, strip)) == set(col)


@given(st.lists(st.integers(1, 4), max_size=4).map(lambda xs: Partition(sorted(xs, reverse=True))),
       st.integers(0, 4))
def test_pieri_sizes_and_containment(lam, l):
    for g in pieri_row(lam, l):
        assert g.size == lam.size + l
        assert all(g[i] >= lam[i] for i in range(1, len(g) + 1))
        assert all(g[i + 1] <= lam[i] for i in range(1, len(g)))   # horizontal strip
    assert as_set(pieri_col(lam, l)) == {g.conjugate().parts for g in pieri_row(lam.conjugate(), l)}


def test_hom_dimension_examples():
    assert hom_dimension(HomQuery(Partition((2,)), 1, Partition((1, 1)), 1, (1, 1))) == 1
    assert hom_dimension(HomQuery(Partition((2,)), 0, Partition((1, 1)), 2, (1, 1))) == 0
    assert hom_dimension(HomQuery(Partition((3, 3)), 2, Partition((2, 2, 2)), 2, (2, 2))) == 1


def test_hom_dimension_self_pairing():
    lam = Partition((2, 1))
    assert hom_dimension(HomQuery(lam, 0, lam, 0, (2, 1))) == 1


@pytest.mark.parametrize("m,n", list(itertools.product(range(1, 4), repeat=2)))
def test_birank_homs(m, n):
    assert verify_theorem1_homs(m, n) == (1, 0, 0)


def test_birank_homs_precondition():
    with pytest.raises(ValueError):
        verify_theorem1_homs(0, 1)
