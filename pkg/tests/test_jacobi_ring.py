from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weyl_e8.basis_algorithm import cached_basis
from weyl_e8.exact_poly import Poly, parse_poly
from weyl_e8.generator_catalog import build_generator, recipes
from weyl_e8.jacobi_ring import (
    AB_ALPHABET, IDENTITIES, JacobiPolynomial, ab_to_cd, cd_to_ab, grades, is_jacobi_form, psi_j,
    psi_j_inverse, verify_identity,
)
from weyl_e8.semiinvariants import source


def test_ab_to_cd_examples():
    assert ab_to_cd(parse_poly("a0")) == parse_poly("c0")
    assert ab_to_cd(parse_poly("a0*b1")) == parse_poly("-3/2*c1*d0")
    assert ab_to_cd(parse_poly("a2")) == parse_poly("c2 - 3/8*c1^2*c0^-1")


def test_cd_to_ab_examples():
    assert cd_to_ab(parse_poly("c0")) == parse_poly("a0")
    assert cd_to_ab(parse_poly("d0")) == parse_poly("b0")


def test_membership_examples():
    assert is_jacobi_form(parse_poly("a0*b1"))
    assert not is_jacobi_form(parse_poly("a2"))
    assert is_jacobi_form(parse_poly("b0"))
    with pytest.raises(ValueError):
        is_jacobi_form(parse_poly("a0 + b0"))


def test_grades():
    g = grades(parse_poly("12*b0*b2 - 5*b1^2"))
    assert g.as_tuple() == (0, 2, 2, 0, 8)


def test_psi_examples():
    assert psi_j(parse_poly("a0")).poly == parse_poly("alpha0")
    assert psi_j(parse_poly("a0*b1")).poly == parse_poly("alpha0*beta1 - 3/2*alpha1*beta0")
    assert psi_j(parse_poly("a0*a2/3")).poly == parse_poly("alpha0*alpha2/3 - alpha1^2/8")
    with pytest.raises(ValueError, match="not in J"):
        psi_j(parse_poly("a2"))


def test_psi_inverse_examples():
    assert psi_j_inverse(parse_poly("alpha0")).poly == parse_poly("a0")
    out = psi_j_inverse(parse_poly("(12*beta0*beta2 - 5*beta1^2)/90"))
    assert out.poly == parse_poly("(12*b0*b2 - 5*b1^2)/90")
    assert out.grades.as_tuple() == (0, 2, 2, 0, 8)
    out = psi_j_inverse(parse_poly("(2*alpha0*beta2 - 5/2*alpha1*beta1 + 5*alpha2*beta0)/30"))
    assert out.poly == parse_poly("(2*a0*b2 + 5*a2*b0)/30")


@pytest.mark.parametrize("name", IDENTITIES)
def test_identities(name):
    rep = verify_identity(name)
    assert rep["pass"], rep
    assert rep["anchor"]


def test_identity_unknown():
    with pytest.raises(ValueError):
        verify_identity("nope")


def _members():
    out = []
    for k, m in [(4, 1), (-8, 4), (-2, 2), (0, 4), (-12, 6), (-4, 3), (2, 2)]:
        out.extend(b.poly for b in cached_basis(k, m).basis)
    return out


MEMBERS = _members()


@given(st.sampled_from(MEMBERS), st.sampled_from(MEMBERS))
def test_psi_is_a_ring_homomorphism(p, q):
    assert psi_j(p * q).poly == psi_j(p).poly * psi_j(q).poly
    if grades(p).as_tuple() == grades(q).as_tuple():
        assert psi_j(p + q).poly == psi_j(p).poly + psi_j(q).poly


@given(st.sampled_from(MEMBERS))
def test_psi_inverse_undoes_psi(p):
    assert psi_j_inverse(psi_j(p)).poly == p


@pytest.mark.parametrize("rec", recipes()[:40], ids=lambda r: r.label.key)
def test_psi_undoes_psi_inverse_on_sources(rec):
    s = source(build_generator(rec.label))
    jp = psi_j_inverse(s)
    assert psi_j(jp).poly == s.poly


@given(st.sampled_from(MEMBERS))
def test_translations_are_inverse(p):
    cd = ab_to_cd(p)
    assert cd_to_ab(cd) == p.with_alphabet(AB_ALPHABET).compact()


@given(st.sampled_from(MEMBERS))
def test_members_have_nonnegative_order(p):
    g = grades(p)
    assert g.omega == 4 * g.d_a + 6 * g.d_b - 2 * g.m >= 0


def test_jacobi_polynomial_wraps_poly():
    jp = JacobiPolynomial(parse_poly("a0*b1"))
    assert jp.frame == "ab" and str(jp) == "a0*b1"
    assert JacobiPolynomial(Poly.variable("c0")).frame == "cd"
