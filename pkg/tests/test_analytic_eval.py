from __future__ import annotations

import mpmath
import pytest
from fractions import Fraction
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpc

from weyl_e8.analytic_eval import (
    E8Lattice, NumericContext, NumericError, bernoulli, coefficient_values, discriminant,
    e8_roots, e_functions, eisenstein, eisenstein_coefficients, eta, eval_form, numeric_suite,
    special_function, theta, theta_e8, theta_e8_lattice,
)

CTX = NumericContext()


def test_bernoulli():
    assert [bernoulli(n) for n in (0, 1, 2, 4, 6)] == [1, Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]
    assert bernoulli(3) == 0


def test_eisenstein_coefficients():
    assert eisenstein_coefficients(2, 3) == [1, 240, 2160]
    assert eisenstein_coefficients(3, 2)[1] == -504


def test_eisenstein_limit():
    for name in ("E2", "E4", "E6", "E8"):
        assert abs(special_function(name, CTX, tau=8j) - 1) < 1e-15


def test_context_validation():
    with pytest.raises(NumericError):
        NumericContext(tau=-1j)
    with pytest.raises(NumericError):
        NumericContext(z=(0,) * 7)
    with pytest.raises(NumericError):
        special_function("theta3", CTX, tau=-0.5j)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_theta_against_mpmath(k):
    # mpmath uses nome e^{i pi tau} and argument pi z
    z, tau = mpc("0.13", "0.05"), mpc("0.2", "0.9")
    with mp.workdps(30):
        ref = mpmath.jtheta(k, mpmath.pi * z, mpmath.expjpi(tau))
        assert abs(theta(k, z, tau, CTX) - ref) < 1e-25


def test_jacobi_identity_and_e_sum():
    with mp.workdps(30):
        t2, t3, t4 = (special_function(f"theta{k}", CTX) for k in (2, 3, 4))
        assert abs(t2 ** 4 + t4 ** 4 - t3 ** 4) < 1e-20
        assert abs(sum(e_functions(CTX.tau, CTX))) < 1e-20


@given(st.floats(0.9, 2.0), st.floats(-0.5, 0.5))
def test_discriminant_identities(im, re):
    tau = mpc(re, im)
    with mp.workdps(30):
        d = discriminant(tau, CTX)
        assert abs(d - eta(tau, CTX) ** 24) < 1e-10
        e4, e6 = eisenstein(2, tau, CTX), eisenstein(3, tau, CTX)
        assert abs(1728 * d - (e4 ** 3 - e6 ** 2)) < 1e-10


def test_lattice_counts():
    counts = E8Lattice(4).norm_counts()
    assert counts == {0: 1, 2: 240, 4: 2160}
    assert len(e8_roots()) == 240


def test_theta_e8_against_lattice_sum():
    z = ["0.1", "0.02", "-0.05", "0.03j", "0", "0.07", "0.01", "-0.02"]
    assert abs(theta_e8(1.5j, z, CTX) - theta_e8_lattice(1.5j, z, CTX)) < 1e-10


def test_theta_e8_basics():
    zero = (0,) * 8
    with mp.workdps(30):
        assert abs(theta_e8(1.5j, zero, CTX) - eisenstein(2, 1.5j, CTX)) < 1e-10
        z = [mpc(x) for x in CTX.z]
        base = theta_e8(CTX.tau, z, CTX)
        # periodic under lattice vectors; e_1 alone flips the sign of half-integer terms
        for shift in ((1, 1, 0, 0, 0, 0, 0, 0), (2, 0, 0, 0, 0, 0, 0, 0), (Fraction(1, 2),) * 8):
            moved = [zi + mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator for zi, s in zip(z, shift)]
            assert abs(theta_e8(CTX.tau, moved, CTX) - base) < 1e-20
        moved = [z[0] + 1] + z[1:]
        assert abs(theta_e8(CTX.tau, moved, CTX) - base) > 1e-3


def test_eval_examples():
    at0 = NumericContext(tau=1.3j, z=(0,) * 8)
    assert abs(eval_form("A2", at0) - eval_form("E4", at0)) < 1e-9
    assert eval_form("a1", CTX) == 0
    assert eval_form("d1", CTX) == 0
    twice = [2 * mpc(x) for x in CTX.z]
    assert abs(eval_form("A4", CTX) - theta_e8(CTX.tau, twice, CTX)) < 1e-9
    assert abs(eval_form("a0", CTX) - eval_form("E4", CTX) / 12) < 1e-14
    assert abs(eval_form("c1", CTX) - 48 * eval_form("A1", CTX) / eval_form("E6", CTX)) < 1e-12


def test_singular_point():
    with pytest.raises(NumericError, match="near singular point"):
        coefficient_values("ab", NumericContext(tau=1j))


def test_unknown_names():
    with pytest.raises(ValueError):
        eval_form("Q7", CTX)
    with pytest.raises(ValueError):
        special_function("theta5", CTX)


def test_spec_examples():
    ctx = NumericContext(z=("0.1", "0.07j", "0", "0", "0", "0", "0", "0"))
    assert numeric_suite("abincd-numeric", ctx)["max_residual"] < 1e-8
    rep = numeric_suite("weyl-numeric", ctx)
    assert rep["items"][0]["item"].startswith("r=(1,-1,0") and rep["items"][0]["residual"] < 1e-8
    rep = numeric_suite("quasi-period", ctx)
    assert rep["items"][0]["residual"] < 1e-7


@pytest.mark.parametrize("check", ["abincd-numeric", "psi-consistency", "weyl-numeric", "quasi-period",
                                   "modular-basics"])
def test_suite_at_other_point(check):
    ctx = NumericContext(tau=mpc("0.1", "1.4"), z=("0.05", "-0.02", "0.09j", "0.01", "0.03", "0", "0.04", "0.06"))
    assert numeric_suite(check, ctx)["pass"]


def test_b6_at_zero_and_roundtrip():
    # B6 has no reference values away from z = 0; check the origin and the a/b round trip
    at0 = NumericContext(z=(0,) * 8)
    assert abs(eval_form("B6", at0) - eval_form("E6", at0)) < 1e-9
    rep = numeric_suite("psi-consistency", CTX)
    assert all(i["pass"] for i in rep["items"] if i["item"].startswith("B6"))
