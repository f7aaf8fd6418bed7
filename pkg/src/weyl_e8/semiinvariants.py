"""Semiinvariants, the Roberts correspondence with covariants, and shifted coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .binary_forms import (
    ALPHA, BETA, DEFAULT_FORMS, QUARTIC, SEXTIC, Covariant, FormSpec, lowering_derivation, raising_derivation,
    covariant_grades, diagonal_action, unipotent_action,
)
from .exact_poly import Poly, merge_alphabets, rational, zero
from .sampling import DEFAULT_SEED, random_rational, rng


@dataclass(frozen=True)
class Semiinvariant:
    """Polynomial in form coefficients together with its declared order."""

    poly: Poly
    order: int
    forms: tuple[FormSpec, ...] = field(default=DEFAULT_FORMS, compare=False)

    @property
    def grade(self) -> tuple[int, ...]:
        return covariant_grades(Covariant([self.poly], 0), self.forms)[:-1] + (self.order,)


def source(c: Covariant) -> Semiinvariant:
    """Leading coefficient (of ``u^order``) of a covariant."""
    if c.is_zero():
        raise ValueError("source of the zero covariant")
    return Semiinvariant(c.coeffs[0], c.order)


def roberts_lift(s: Semiinvariant | Poly, order: int | None = None,
                 forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Covariant:
    """Covariant whose source is ``s``.

    ``u^w s(alpha_hat)`` with ``alpha_hat_i = sum_j C(j, i) alpha_j (v/u)^(j-i)``
    equals ``sum_k u^(w-k) v^k D^k(s)/k!`` for the raising derivation ``D``;
    a nonzero ``D^(w+1) s`` would leave a negative power of ``u``.
    """
    if isinstance(s, Semiinvariant):
        poly, w = s.poly, s.order if order is None else order
    else:
        if order is None:
            raise ValueError("order must be given for a bare polynomial")
        poly, w = s, order
    if poly.is_zero():
        return Covariant.zero(w)
    action = raising_derivation(forms)
    coeffs = [poly]
    term = poly
    for k in range(1, w + 2):
        term = term.apply_derivation(action).scale(rational(1) / k)
        if k == w + 1:
            if not term.is_zero():
                raise ValueError(f"not a semiinvariant of order {w}")
        else:
            coeffs.append(term)
    return Covariant(coeffs, w)


def infer_order(p: Poly, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> int:
    """Diagonal weight ``sum (n - 2i) e_i`` when it is the same for every term."""
    weight = {}
    for spec in forms:
        for i, nm in enumerate(spec.names):
            weight[nm] = spec.degree - 2 * i
    ws = p.weights(weight)
    if len(ws) != 1:
        raise ValueError("polynomial is not homogeneous under the diagonal action")
    return ws.pop()


def shifted_coefficients(forms: Sequence[FormSpec], m: int) -> list[list[Poly]]:
    """``gamma[k][i]``: coefficients of ``f_k(u - alpha_{m,1}/(n_m alpha_{m,0}), 1)``.

    ``gamma_{k,i} = sum_{j<=i} alpha_{k,j} C(n_k - j, n_k - i) t^(i-j)`` with
    ``t = -alpha_{m,1}/(n_m alpha_{m,0})``; Laurent in ``alpha_{m,0}``.
    """
    center = forms[m]
    alphabet = merge_alphabets(*(spec.names for spec in forms))
    t = Poly.monomial({center.names[1]: 1, center.names[0]: -1}, rational(-1) / center.degree, alphabet)
    powers = [Poly.constant(1, alphabet)]
    for _ in range(max(spec.degree for spec in forms)):
        powers.append(powers[-1] * t)
    out = []
    for spec in forms:
        n = spec.degree
        row = []
        for i in range(n + 1):
            acc = zero(alphabet)
            for j in range(i + 1):
                acc = acc + Poly.variable(spec.names[j], alphabet) * powers[i - j].scale(comb(n - j, n - i))
            row.append(acc)
        out.append(row)
    return out


def hatted_coefficients(center: str = "quartic") -> dict[str, Poly]:
    """``a_hat, b_hat`` (quartic centre) or ``c_hat, d_hat`` (sextic centre) keyed by name."""
    if center == "quartic":
        gam = shifted_coefficients((QUARTIC, SEXTIC), 0)
        letters = ("a", "b")
    elif center == "sextic":
        gam = shifted_coefficients((QUARTIC, SEXTIC), 1)
        letters = ("c", "d")
    else:
        raise ValueError("center must be 'quartic' or 'sextic'")
    out = {}
    for letter, row in zip(letters, gam):
        for i, p in enumerate(row):
            out[f"{letter}{i}"] = p
    return out


def is_semiinvariant(p: Poly, order: int, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> bool:
    """Exact infinitesimal test: killed by the lowering derivation and of diagonal weight ``order``."""
    if p.is_zero():
        return True
    if not p.apply_derivation(lowering_derivation(forms)).is_zero():
        return False
    try:
        return infer_order(p, forms) == order
    except ValueError:
        return False


def check_semiinvariance(s: Semiinvariant, trials: int = 5, seed: int | None = None,
                         forms: Sequence[FormSpec] | None = None) -> dict:
    """Check both semiinvariance axioms at random rational kappa and lambda.

    Failures are reported, never raised.
    """
    forms = tuple(forms or s.forms)
    r = rng(seed)
    results = []
    for trial in range(trials):
        kappa = random_rational(r, nonzero=True)
        lam = random_rational(r, nonzero=True)
        moved = unipotent_action(s.poly, kappa, forms)
        ok = moved == s.poly
        entry = {"axiom": "unipotent", "trial": trial, "pass": ok}
        if not ok:
            entry["witness"] = {"kappa": str(kappa), "difference": (moved - s.poly).to_json_obj()}
        results.append(entry)
        scaled = diagonal_action(s.poly, lam, forms)
        expected = s.poly.scale(lam ** s.order)
        ok = scaled == expected
        entry = {"axiom": "diagonal", "trial": trial, "pass": ok}
        if not ok:
            entry["witness"] = {"lambda": str(lam), "difference": (scaled - expected).to_json_obj()}
        results.append(entry)
    return {
        "seed": DEFAULT_SEED if seed is None else seed,
        "order": s.order,
        "results": results,
        "pass": all(e["pass"] for e in results),
    }


__all__ = [
    "ALPHA", "BETA", "Semiinvariant", "source", "roberts_lift", "infer_order",
    "shifted_coefficients", "hatted_coefficients", "is_semiinvariant", "check_semiinvariance",
]
