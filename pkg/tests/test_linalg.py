from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from weyl_e8.linalg import (
    determinant, exact_rank, nullspace, primitive_integer_vector, sparse_nullspace, sparse_rank,
)


def _leibniz(m):
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def _rank_by_minors(m):
    rows, cols = len(m), len(m[0]) if m else 0
    for k in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                if _leibniz([[m[i][j] for j in ci] for i in ri]):
                    return k
    return 0


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3).map(Fraction), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rank_examples():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2


def test_primitive_integer_vector():
    assert primitive_integer_vector([mpq(-1, 2), mpq(3, 4), 0]) == [2, -3, 0]


@given(matrices)
def test_rank_matches_minors(m):
    assert exact_rank(m) == _rank_by_minors(m)


@given(matrices)
def test_sparse_rank_matches_dense(m):
    rows = [{j: x for j, x in enumerate(r) if x} for r in m]
    assert sparse_rank(rows) == exact_rank(m)


@given(matrices)
def test_nullspace_vectors_are_annihilated(m):
    ncols = len(m[0])
    ns = nullspace(m)
    assert len(ns) == ncols - exact_rank(m)
    for v in ns:
        assert all(sum(mpq(a) * b for a, b in zip(row, v)) == 0 for row in m)
    rows = [{j: mpq(x) for j, x in enumerate(r) if x} for r in m]
    assert sparse_nullspace(rows, ncols) == ns


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-4, 4).map(Fraction), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == _leibniz(m)
