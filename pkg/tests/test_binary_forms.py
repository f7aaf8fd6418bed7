from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from weyl_e8.binary_forms import (
    QUARTIC, SEXTIC, Covariant, binary_form, coefficient_action, covariant_grades, diagonal_action,
    is_equivariant, quartic, sextic, sl2_transform, substitute_uv, transformed_coefficients,
    transvectant, unipotent_action,
)
from weyl_e8.exact_poly import Poly, parse_poly
from weyl_e8.sampling import random_unimodular, rng

ALPHABET = QUARTIC.names + SEXTIC.names


def _literal_transvectant(f1: Covariant, f2: Covariant, i: int) -> Covariant:
    # direct differentiation of the defining formula in u and v
    from math import comb, factorial

    n1, n2 = f1.order, f2.order
    p1, p2 = f1.poly, f2.poly
    total = Poly.constant(0)
    for j in range(i + 1):
        d1 = p1.diff("u", i - j).diff("v", j) if i - j else p1.diff("v", j)
        d2 = p2.diff("u", j).diff("v", i - j) if j else p2.diff("v", i - j)
        total = total + (d1 * d2).scale((-1) ** j * comb(i, j))
    pref = mpq(factorial(n1 - i) * factorial(n2 - i), factorial(n1) * factorial(n2))
    return Covariant.from_poly(total.scale(pref))


def _literal_action(p: Poly, T) -> Poly:
    # substitute alpha_i -> coefficients of f(T(u, v)) directly
    images = dict(zip(QUARTIC.names, transformed_coefficients(T, QUARTIC)))
    images.update(zip(SEXTIC.names, transformed_coefficients(T, SEXTIC)))
    return p.substitute({k: v for k, v in images.items() if k in p.alphabet})


def test_transvectant_sources():
    f, g = quartic(), sextic()
    assert transvectant(g, g, 2).coeffs[0] == parse_poly("2/15*beta0*beta2 - 1/18*beta1^2")
    assert transvectant(f, f, 2).coeffs[0] == parse_poly("1/3*alpha0*alpha2 - 1/8*alpha1^2")
    assert transvectant(f, g, 1).coeffs[0] == parse_poly("(2*alpha0*beta1 - 3*alpha1*beta0)/12")
    assert transvectant(f, g, 2).coeffs[0] == parse_poly("1/15*alpha0*beta2 - 1/12*alpha1*beta1 + 1/6*alpha2*beta0")


def test_transvectant_explicit_forms():
    u4 = binary_form([1, 0, 0, 0, 0])
    u5v = binary_form([0, 1, 0, 0, 0, 0, 0])
    out = transvectant(u4, u5v, 1)
    assert out.order == 8 and out.poly == parse_poly("1/6*u^8")


def test_transvectant_beyond_order_is_zero():
    assert transvectant(quartic(), sextic(), 5).is_zero()
    with pytest.raises(ValueError):
        transvectant(quartic(), sextic(), -1)


@pytest.mark.parametrize("i", range(5))
def test_transvectant_matches_differentiation(i):
    f, g = quartic(), sextic()
    assert transvectant(f, g, i) == _literal_transvectant(f, g, i)
    assert transvectant(f, f, i) == _literal_transvectant(f, f, i)


@pytest.mark.parametrize("i", range(5))
def test_swap_symmetry(i):
    f, g = quartic(), sextic()
    assert transvectant(f, g, i) == transvectant(g, f, i).scale((-1) ** i)


@pytest.mark.parametrize("i", range(4))
def test_order_arithmetic(i):
    t = transvectant(quartic(), sextic(), i)
    assert not t.is_zero() and t.order == 4 + 6 - 2 * i


def test_bilinearity():
    f, g = quartic(), sextic()
    h = transvectant(f, f, 2)
    lhs = transvectant(f * mpq(3) + h, g, 2)
    assert lhs == transvectant(f, g, 2).scale(3) + transvectant(h, g, 2)


def test_grades():
    f, g = quartic(), sextic()
    assert covariant_grades(f) == (1, 0, 4)
    assert covariant_grades(transvectant(f, g, 1)) == (1, 1, 8)
    assert covariant_grades(f * g) == (1, 1, 10)
    with pytest.raises(ValueError, match="grades undefined"):
        covariant_grades(Covariant.zero())


def test_not_a_binary_form():
    with pytest.raises(ValueError, match="not a binary form"):
        Covariant.from_poly(parse_poly("u^2 + v"))


def test_identity_and_determinant_checks():
    f = quartic()
    assert sl2_transform(f, ((1, 0), (0, 1))) == f
    with pytest.raises(ValueError, match="not unimodular"):
        sl2_transform(f, ((2, 0), (0, 1)))


def test_translation_of_quartic():
    # f(u + v, v) has coefficients sum_j alpha_j C(4 - j, i - j)
    coeffs = transformed_coefficients(((1, 1), (0, 1)), QUARTIC)
    assert coeffs[1] == parse_poly("4*alpha0 + alpha1")
    assert coeffs[4] == parse_poly("alpha0 + alpha1 + alpha2 + alpha3 + alpha4")


def test_derivation_action_matches_literal_substitution():
    r = rng(7)
    p = transvectant(quartic(), sextic(), 2).coeffs[1]
    for _ in range(6):
        T = random_unimodular(r)
        assert coefficient_action(p, T) == _literal_action(p, T)


def test_unipotent_and_diagonal_on_alpha1():
    a1 = Poly.variable("alpha1", ALPHABET)
    assert unipotent_action(a1, 2) == parse_poly("alpha1 + 8*alpha0", ALPHABET)
    assert diagonal_action(a1, mpq(3)) == a1.scale(9)


@pytest.mark.parametrize("seed", range(4))
def test_equivariance_small_covariants(seed):
    r = rng(seed)
    f, g = quartic(), sextic()
    for cov in (f, g, transvectant(f, g, 1), transvectant(f, f, 2) * g):
        T = random_unimodular(r)
        assert is_equivariant(cov, T)


def test_equivariance_fails_for_non_covariant():
    fake = Covariant([Poly.variable("alpha1", ALPHABET)], 0)
    assert not is_equivariant(fake, ((1, 1), (0, 1)))


@given(st.integers(-6, 6), st.integers(1, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_substitute_uv_composes(a_num, a_den, b, c):
    a = mpq(a_num, a_den) or mpq(1)
    T = ((a, mpq(b)), (mpq(c), (1 + mpq(b) * c) / a))
    S = ((mpq(1), mpq(2)), (mpq(0), mpq(1)))
    TS = tuple(tuple(sum(T[i][k] * S[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    f = quartic()
    assert substitute_uv(substitute_uv(f, T), S) == substitute_uv(f, TS)
