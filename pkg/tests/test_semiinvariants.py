from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weyl_e8.binary_forms import quartic, sextic, transvectant
from weyl_e8.exact_poly import Poly, parse_poly
from weyl_e8.semiinvariants import (
    Semiinvariant, check_semiinvariance, hatted_coefficients, infer_order, is_semiinvariant,
    roberts_lift, shifted_coefficients, source,
)

SMALL = [quartic(), sextic(), transvectant(quartic(), sextic(), 1), transvectant(quartic(), quartic(), 2),
         transvectant(sextic(), sextic(), 4)]


def test_hatted_examples():
    h = hatted_coefficients("quartic")
    assert h["a1"].is_zero()
    assert h["b0"] == Poly.variable("beta0")
    h2 = hatted_coefficients("sextic")
    assert h2["d1"].is_zero()
    c1 = h2["c1"].set_zero(("alpha1",)).compact()
    assert c1 == parse_poly("-2/3*alpha0*beta1*beta0^-1")


def test_check_alpha0_passes_alpha1_fails():
    rep = check_semiinvariance(Semiinvariant(parse_poly("alpha0"), 4))
    assert rep["pass"] and "seed" in rep
    bad = check_semiinvariance(Semiinvariant(parse_poly("alpha1"), 2))
    assert not bad["pass"]
    assert any(e["axiom"] == "unipotent" and not e["pass"] for e in bad["results"])


@pytest.mark.parametrize("center", ["quartic", "sextic"])
def test_scaled_shifted_coefficients_are_semiinvariant(center):
    # alpha0^(i-1) gamma_i for the centred form, alpha0^i gamma_i for the other
    from weyl_e8.binary_forms import DEFAULT_FORMS

    m = 0 if center == "quartic" else 1
    lead = parse_poly("alpha0" if m == 0 else "beta0")
    table = shifted_coefficients(DEFAULT_FORMS, m)
    checked = 0
    for k, row in enumerate(table):
        for i, gamma in enumerate(row):
            if gamma.is_zero():
                continue
            power = i - 1 if k == m else i
            p = (gamma * lead ** max(power, 0)).compact() if power >= 0 else gamma
            assert p.min_exponent(lead.variables()[0]) >= 0
            order = infer_order(p)
            assert is_semiinvariant(p, order)
            assert check_semiinvariance(Semiinvariant(p, order), trials=2)["pass"]
            checked += 1
    assert checked == 11  # 5 + 7 coefficients, one of which vanishes


@pytest.mark.parametrize("cov", SMALL, ids=range(len(SMALL)))
def test_roberts_roundtrip(cov):
    s = source(cov)
    assert roberts_lift(s) == cov
    assert source(roberts_lift(s)) == s


def test_roberts_rejects_wrong_order():
    with pytest.raises(ValueError, match="not a semiinvariant of order"):
        roberts_lift(parse_poly("alpha0"), order=2)


def test_source_of_zero():
    from weyl_e8.binary_forms import Covariant

    with pytest.raises(ValueError):
        source(Covariant.zero())


@given(st.sampled_from(range(len(SMALL))), st.sampled_from(range(len(SMALL))))
def test_source_is_multiplicative(i, j):
    c1, c2 = SMALL[i], SMALL[j]
    assert source(c1 * c2).poly == source(c1).poly * source(c2).poly
