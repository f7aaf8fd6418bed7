from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weyl_e8.basis_algorithm import (
    catalog_rank_check, degree_pairs, enumerate_monomials, jacobi_basis, lb_generator_counts,
    span_rank, translate_monomial, verify_basis,
)
from weyl_e8.exact_poly import parse_poly
from weyl_e8.jacobi_ring import ab_to_cd, grades

TABLE1 = (0, 0, 0, 0, 1, 0, 2, 0, 1, 1, 2, 0, 3, 1, 3)


def _strs(ansatz):
    return [str(p) for p in ansatz.monomials]


def test_enumerate_examples():
    assert _strs(enumerate_monomials(4, 1)) == ["a0*b1"]
    assert _strs(enumerate_monomials(0, 0)) == ["1"]
    assert _strs(enumerate_monomials(4, 0)) == ["a0"]
    assert len(enumerate_monomials(-2, 1)) == 0
    with pytest.raises(ValueError):
        enumerate_monomials(0, -1)


def _brute_force_monomials(k, m):
    # every a/b monomial with exponents up to a crude bound, filtered by grades
    from itertools import product

    names = ("a0", "a2", "a3", "a4", "b0", "b1", "b2", "b3", "b4", "b5", "b6")
    bound = m + (k + 6 * m) // 4 + 1
    out = set()
    for exps in product(range(bound + 1), repeat=4):
        da = sum(exps)
        ia = 2 * exps[1] + 3 * exps[2] + 4 * exps[3]
        if ia > m:
            continue
        for bexps in product(range(bound + 1), repeat=7):
            if sum(j * e for j, e in enumerate(bexps)) != m - ia:
                continue
            db = sum(bexps)
            if 4 * da + 6 * db - 6 * m == k:
                out.add(tuple(exps) + bexps)
    return out


@pytest.mark.parametrize("k,m", [(4, 1), (-8, 2), (0, 2), (-4, 3), (2, 2)])
def test_enumeration_is_exhaustive(k, m):
    got = {p.terms()[0][0] for p in enumerate_monomials(k, m).monomials}
    assert got == _brute_force_monomials(k, m)


def test_degree_pairs():
    assert degree_pairs(4, 1) == [(1, 1)]
    assert degree_pairs(-20, 1) == []


def test_basis_examples():
    r = jacobi_basis(4, 1)
    assert r.dimension == 1 and r.basis[0].poly == parse_poly("a0*b1")
    assert jacobi_basis(-2, 1).dimension == 0
    assert jacobi_basis(-8, 2).dimension == 0


def test_translate_monomial_matches_full_translation():
    p = parse_poly("a2^2*a3*b1^3*b4")
    assert translate_monomial(p) == ab_to_cd(p)


CELLS = [(k, m) for m in range(0, 7) for k in range(-4 * m - 6, 14, 2)]


@pytest.mark.parametrize("k,m", CELLS)
def test_basis_cells(k, m):
    r = jacobi_basis(k, m)
    assert verify_basis(r)
    assert span_rank(r.basis) == r.dimension
    if k + 4 * m < 0:
        assert r.dimension == 0
    for b in r.basis:
        g = grades(b.poly)
        assert (g.k, g.m) == (k, m) and g.omega >= 0


def test_primitive_normalization():
    for b in jacobi_basis(-8, 4).basis:
        coeffs = [c for _, c in b.poly.terms()]
        assert all(c.denominator == 1 for c in coeffs)


def test_lb_counts():
    tab = lb_generator_counts(10)
    assert tuple(tab.counts) == TABLE1[:11]
    assert tab.counts[4] == 1 and tab.counts[5] == 0 and tab.counts[6] == 2


@pytest.mark.parametrize("m,omega", [(4, 0), (6, 0), (6, 8), (8, 8)])
def test_catalog_rank(m, omega):
    rep = catalog_rank_check(m, omega)
    assert rep["pass"], rep


@given(st.integers(0, 5), st.integers(-30, 10))
def test_no_forms_below_bound(m, k):
    if k + 4 * m < 0:
        assert jacobi_basis(k, m).dimension == 0
