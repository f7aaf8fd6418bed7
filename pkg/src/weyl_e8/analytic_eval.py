"""Numerical evaluation of theta functions, modular forms and the E8 Jacobi forms.

All arithmetic runs in mpmath at ``NumericContext.dps`` digits.  The a/b and
c/d coefficients divide by high powers of the discriminant, so double
precision loses most of its digits there.  Conventions: ``q = e^{2 pi i tau}``,
``y = e^{2 pi i z}``; theta series carry ``q^{n^2/2}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

import mpmath
from mpmath import mp, mpc, mpf

from .exact_poly import Poly
from .jacobi_ring import (
    AB_ALPHABET, CD_ALPHABET, FORM_NAMES, ab_in_forms, ab_to_cd, cd_in_forms,
    forms_in_ab, forms_in_cd, p165,
)
from .sampling import DEFAULT_SEED

RANK = 8
DEFAULT_TAU = mpc(0, "1.2")
DEFAULT_Z = ("0.11", "0.07j", "0.05", "-0.03+0.02j", "0.13", "0.021", "-0.09", "0.04")
SINGULAR_BOUND = 1e-12


class NumericError(ValueError):
    pass


def _to_mpc(x) -> mpc:
    if isinstance(x, str):
        return mpc(complex(x.replace(" ", ""))) if "j" in x else mpc(mpf(x))
    return mpc(x)


@dataclass(frozen=True)
class NumericContext:
    """Evaluation point and numerical settings.

    ``order`` is the q-truncation for Eisenstein and eta products; theta
    series are summed until the next term drops below ``tol * 1e-10``.
    """

    tau: object = DEFAULT_TAU
    z: tuple = DEFAULT_Z
    order: int = 24
    tol: float = 1e-9
    dps: int = 40

    def __post_init__(self):
        with mp.workdps(self.dps):
            object.__setattr__(self, "tau", _to_mpc(self.tau))
            object.__setattr__(self, "z", tuple(_to_mpc(v) for v in self.z))
        if self.tau.imag <= 0:
            raise NumericError("Im tau must be positive")
        if len(self.z) != RANK:
            raise NumericError(f"z must have {RANK} components")
        if self.order < 1:
            raise NumericError("order must be at least 1")
        if self.tol <= 0:
            raise NumericError("tol must be positive")

    def with_z(self, z) -> "NumericContext":
        return NumericContext(self.tau, tuple(z), self.order, self.tol, self.dps)

    def with_tau(self, tau) -> "NumericContext":
        return NumericContext(tau, self.z, self.order, self.tol, self.dps)

    @property
    def q(self) -> mpc:
        return mpmath.expjpi(2 * self.tau)

    @property
    def cutoff(self) -> mpf:
        return mpf(self.tol) * mpf(10) ** -10


# -- Bernoulli numbers and Eisenstein series --------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n from x/(e^x - 1) = sum B_n x^n / n!, via sum_{k<=n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, k) * bernoulli(k) for k in range(n)) / (n + 1)


def eisenstein_coefficients(n: int, count: int) -> list[Fraction]:
    """q-expansion of E_{2n} through q^(count-1): 1 - (4n/B_{2n}) sum sigma_{2n-1}(k) q^k."""
    pref = -Fraction(4 * n) / bernoulli(2 * n)
    out = [Fraction(1)]
    for k in range(1, count):
        sigma = sum(d ** (2 * n - 1) for d in range(1, k + 1) if k % d == 0)
        out.append(pref * sigma)
    return out


def eisenstein(n: int, tau, ctx: NumericContext) -> mpc:
    """E_{2n}(tau) from the Lambert series truncated at q^order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    tau = _check_tau(tau)
    q = mpmath.expjpi(2 * tau)
    b = bernoulli(2 * n)
    pref = -mpf(4 * n) * mpf(b.denominator) / mpf(b.numerator)
    s = mpc(0)
    qk = mpc(1)
    for k in range(1, ctx.order + 1):
        qk *= q
        s += mpf(k) ** (2 * n - 1) * qk / (1 - qk)
    return 1 + pref * s


def eta(tau, ctx: NumericContext) -> mpc:
    tau = _check_tau(tau)
    q = mpmath.expjpi(2 * tau)
    out = mpmath.expjpi(tau / 12)
    qk = mpc(1)
    for _ in range(ctx.order):
        qk *= q
        out *= 1 - qk
    return out


def discriminant(tau, ctx: NumericContext) -> mpc:
    """(E4^3 - E6^2)/1728."""
    return (eisenstein(2, tau, ctx) ** 3 - eisenstein(3, tau, ctx) ** 2) / 1728


def _check_tau(tau) -> mpc:
    tau = mpc(tau)
    if tau.imag <= 0:
        raise NumericError("Im tau must be positive")
    return tau


# -- theta functions --------------------------------------------------------

def theta(k: int, z, tau, ctx: NumericContext) -> mpc:
    """Jacobi theta function theta_k(z, tau), k = 1..4, summed until terms fall below the cutoff."""
    if k not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1..4")
    tau = _check_tau(tau)
    z = mpc(z)
    half = k in (1, 2)
    sign = k in (1, 4)
    cutoff = ctx.cutoff
    total = mpc(0)
    n = 1 if half else 0
    # pair n with 1-n (half-integer exponents) or with -n (integer exponents)
    while True:
        terms = []
        ns = (n, 1 - n) if half else ((n,) if n == 0 else (n, -n))
        for j in ns:
            s = j - mpf(1) / 2 if half else mpf(j)
            t = mpmath.expjpi(tau * s * s + 2 * z * s)
            if sign and j % 2:
                t = -t
            terms.append(t)
        chunk = sum(terms)
        total += chunk
        if n > 2 and max(abs(t) for t in terms) < cutoff * max(1, abs(total)):
            break
        n += 1
        if n > 10_000:
            raise NumericError("theta series did not converge")
    return 1j * total if k == 1 else total


def theta_null(k: int, tau, ctx: NumericContext) -> mpc:
    return theta(k, 0, tau, ctx)


def e_functions(tau, ctx: NumericContext) -> tuple[mpc, mpc, mpc]:
    t2, t3, t4 = (theta_null(k, tau, ctx) ** 4 for k in (2, 3, 4))
    return (t3 + t4) / 12, (t2 - t4) / 12, (-t2 - t3) / 12


def h0(tau, ctx: NumericContext) -> mpc:
    return (theta_null(3, 2 * tau, ctx) * theta_null(3, 6 * tau, ctx)
            + theta_null(2, 2 * tau, ctx) * theta_null(2, 6 * tau, ctx))


def special_function(name: str, ctx: NumericContext, *, z=0, tau=None) -> mpc:
    """Dispatch by name: theta1..theta4, eta, E<2n>, e1..e3, h0."""
    tau = ctx.tau if tau is None else tau
    with mp.workdps(ctx.dps):
        if name.startswith("theta") and name[5:].isdigit():
            return theta(int(name[5:]), z, tau, ctx)
        if name == "eta":
            return eta(tau, ctx)
        if name.startswith("E") and name[1:].isdigit():
            w = int(name[1:])
            if w % 2 or w < 2:
                raise ValueError(f"no Eisenstein series {name}")
            return eisenstein(w // 2, tau, ctx)
        if name in ("e1", "e2", "e3"):
            return e_functions(tau, ctx)[int(name[1]) - 1]
        if name == "h0":
            return h0(tau, ctx)
    raise ValueError(f"unknown special function {name!r}")


# -- the E8 lattice ---------------------------------------------------------

@dataclass(frozen=True)
class E8Lattice:
    """Vectors w of the E8 lattice (coordinates all integers or all half-integers, even sum) with w^2 <= bound."""

    bound: int

    def vectors(self) -> list[tuple[Fraction, ...]]:
        """Exhaustive enumeration; coordinates stored doubled as integers internally."""
        out = []
        limit = 4 * self.bound  # squared norm of the doubled vector
        for parity in (0, 1):
            r = isqrt(limit)
            cands = [v for v in range(-r, r + 1) if v % 2 == parity]

            def rec(acc: list[int], left: int):
                if len(acc) == RANK:
                    if (sum(acc) // 2) % 2 == 0:
                        out.append(tuple(Fraction(v, 2) for v in acc))
                    return
                for v in cands:
                    if v * v <= left:
                        acc.append(v)
                        rec(acc, left - v * v)
                        acc.pop()

            rec([], limit)
        return out

    def norm_counts(self) -> dict[Fraction, int]:
        counts: dict[Fraction, int] = {}
        for w in self.vectors():
            n = sum(x * x for x in w)
            counts[n] = counts.get(n, 0) + 1
        return dict(sorted(counts.items()))


@lru_cache(maxsize=4)
def _vectors(bound: int):
    return E8Lattice(bound).vectors()


def e8_roots() -> list[tuple[Fraction, ...]]:
    return [w for w in _vectors(2) if sum(x * x for x in w) == 2]


def theta_e8_lattice(tau, z, ctx: NumericContext, bound: int = 8) -> mpc:
    """Direct lattice sum of exp(pi i tau w^2 + 2 pi i z.w) over w^2 <= bound."""
    with mp.workdps(ctx.dps):
        tau = _check_tau(tau)
        z = [_to_mpc(v) for v in z]
        total = mpc(0)
        for w in _vectors(bound):
            w2 = sum(x * x for x in w)
            total += mpmath.expjpi(tau * mpf(w2.numerator) / w2.denominator
                                   + 2 * sum(zi * mpf(x.numerator) / x.denominator for zi, x in zip(z, w)))
        return total


def theta_e8(tau, z, ctx: NumericContext) -> mpc:
    """E8 lattice theta function as half the sum over k of prod_j theta_k(z_j, tau)."""
    with mp.workdps(ctx.dps):
        z = [_to_mpc(v) for v in z]
        total = mpc(0)
        for k in (1, 2, 3, 4):
            prod = mpc(1)
            for zj in z:
                prod *= theta(k, zj, tau, ctx)
            total += prod
        return total / 2


# -- the nine holomorphic forms ---------------------------------------------

def _scaled(z, s) -> list[mpc]:
    return [s * mpc(v) for v in z]


def basic_forms(ctx: NumericContext) -> dict[str, mpc]:
    """A1..A5, B2, B3, B4, B6 together with E4, E6 and Delta at (tau, z)."""
    return dict(_basic_forms(ctx))


@lru_cache(maxsize=64)
def _basic_forms(ctx: NumericContext) -> tuple:
    with mp.workdps(ctx.dps):
        tau, z = ctx.tau, list(ctx.z)
        th = lambda t, s: theta_e8(t, _scaled(z, s), ctx)  # noqa: E731
        out: dict[str, mpc] = {}
        out["A1"] = th(tau, 1)
        out["A4"] = th(tau, 2)
        for m in (2, 3, 5):
            s = sum(th((tau + k) / m, 1) for k in range(m))
            out[f"A{m}"] = mpf(m ** 3) / (m ** 3 + 1) * (th(m * tau, m) + s / m ** 4)
        e1, e2, e3 = e_functions(tau, ctx)
        out["B2"] = mpf(32) / 5 * (e1 * th(2 * tau, 2) + e3 * th(tau / 2, 1) / 16
                                   + e2 * th((tau + 1) / 2, 1) / 16)
        s = sum(h0((tau + k) / 3, ctx) ** 2 * th((tau + k) / 3, 1) for k in range(3))
        out["B3"] = mpf(81) / 80 * (h0(tau, ctx) ** 2 * th(3 * tau, 3) - s / 3 ** 5)
        t4 = theta_null(4, 2 * tau, ctx) ** 4
        s = sum(theta_null(2, (tau + k) / 2, ctx) ** 4 * th((tau + k) / 4, 1) for k in range(4))
        out["B4"] = mpf(16) / 15 * (t4 * th(4 * tau, 4) - t4 * th(tau + mpf(1) / 2, 2) / 16
                                    - s / (4 * 4 ** 4))
        s1 = sum(h0(tau + k, ctx) ** 2 * th((3 * tau + 3 * k) / 2, 3) for k in range(2))
        s2 = sum(h0((tau + k) / 3, ctx) ** 2 * th((2 * tau + 2 * k) / 3, 2) for k in range(3))
        s3 = sum(h0((tau + k) / 3, ctx) ** 2 * th((tau + k) / 6, 1) for k in range(6))
        out["B6"] = mpf(9) / 10 * (h0(tau, ctx) ** 2 * th(6 * tau, 6) + s1 / 16
                                   - s2 / (3 * 3 ** 4) - s3 / (3 * 6 ** 4))
        out["E4"] = eisenstein(2, tau, ctx)
        out["E6"] = eisenstein(3, tau, ctx)
        out["Delta"] = (out["E4"] ** 3 - out["E6"] ** 2) / 1728
        return tuple(out.items())


def _coerce(c) -> mpf:
    return mpf(int(c.numerator)) / int(c.denominator)


def _eval_poly(p: Poly, values) -> mpc:
    return mpc(p.evaluate(values, coerce=_coerce))


def _check_regular(vals: dict) -> None:
    for nm in ("Delta", "E4", "E6"):
        if abs(vals[nm]) < SINGULAR_BOUND:
            raise NumericError(f"near singular point: |{nm}| < {SINGULAR_BOUND}")


def coefficient_values(frame: str, ctx: NumericContext) -> dict[str, mpc]:
    """Numerical a_i, b_j (frame "ab") or c_i, d_j (frame "cd") from the basic forms."""
    table = {"ab": ab_in_forms, "cd": cd_in_forms}[frame]()
    with mp.workdps(ctx.dps):
        vals = basic_forms(ctx)
        _check_regular(vals)
        out = {}
        for nm, frac in table.items():
            num, k = frac.normalized()
            out[nm] = _eval_poly(num, vals) / vals["Delta"] ** k
        return out


def eval_form(name: str, ctx: NumericContext) -> mpc:
    """Evaluate A1..A5, B2..B6, E4, E6, Delta, P165 or a coefficient a0..b6, c0..d6."""
    with mp.workdps(ctx.dps):
        vals = basic_forms(ctx)
        if name in vals:
            return vals[name]
        if name == "P165":
            return _eval_poly(p165(), vals)
        if name[:1] in "ab" and name[1:].isdigit():
            return coefficient_values("ab", ctx)[name]
        if name[:1] in "cd" and name[1:].isdigit():
            return coefficient_values("cd", ctx)[name]
    raise ValueError(f"unknown form {name!r}")


def eval_ab_polynomial(p: Poly, ctx: NumericContext) -> mpc:
    with mp.workdps(ctx.dps):
        return _eval_poly(p, coefficient_values("ab", ctx))


def eval_cd_polynomial(p: Poly, ctx: NumericContext) -> mpc:
    with mp.workdps(ctx.dps):
        return _eval_poly(p, coefficient_values("cd", ctx))


# -- numeric checks ---------------------------------------------------------

CHECKS = ("abincd-numeric", "psi-consistency", "weyl-numeric", "quasi-period", "modular-basics")

ANCHORS = {
    "abincd-numeric": "a_i, b_i as binomial translates of c_j, d_j with shift -c1/(4 c0)",
    "psi-consistency": "polynomials in a, b agree with their c, d rewrites at the same point",
    "weyl-numeric": "A1 invariant under reflections in E8 roots",
    "quasi-period": "A1(tau, z + tau alpha) e^{pi i (tau alpha^2 + 2 z.alpha)} = A1(tau, z)",
    "modular-basics": "1728 Delta = E4^3 - E6^2, Delta = eta^24, A_m(tau, 0) = E4, B_m(tau, 0) = E6",
}


def _item(name: str, residual, tol: float) -> dict:
    r = float(abs(residual))
    return {"item": name, "residual": r, "tol": tol, "pass": r < tol}


def _report(check: str, items: list[dict], ctx: NumericContext, seed=None) -> dict:
    out = {"check": check, "anchor": ANCHORS[check], "tau": [float(ctx.tau.real), float(ctx.tau.imag)],
           "order": ctx.order, "dps": ctx.dps, "items": items,
           "max_residual": max((i["residual"] for i in items), default=0.0),
           "pass": all(i["pass"] for i in items)}
    if seed is not None:
        out["seed"] = seed
    return out


def abincd_residuals(ctx: NumericContext, tol: float = 1e-8) -> list[dict]:
    ab = coefficient_values("ab", ctx)
    cd = coefficient_values("cd", ctx)
    items = []
    with mp.workdps(ctx.dps):
        t = -cd["c1"] / (4 * cd["c0"])
        for i in range(5):
            rhs = sum(cd[f"c{j}"] * comb(4 - j, 4 - i) * t ** (i - j) for j in range(i + 1))
            items.append(_item(f"a{i}", ab[f"a{i}"] - rhs, tol))
        for i in range(7):
            rhs = sum(cd[f"d{j}"] * comb(6 - j, 6 - i) * t ** (i - j) for j in range(i + 1))
            items.append(_item(f"b{i}", ab[f"b{i}"] - rhs, tol))
        items.append(_item("d1", cd["d1"], tol))
    return items


def psi_consistency(ctx: NumericContext, tol: float = 1e-8, extra: dict[str, Poly] | None = None) -> list[dict]:
    """Each basic form via the a/b and c/d polynomial tables, plus extra a/b polynomials vs their c/d images."""
    vals = basic_forms(ctx)
    ab = coefficient_values("ab", ctx)
    cd = coefficient_values("cd", ctx)
    items = []
    with mp.workdps(ctx.dps):
        fab, fcd = forms_in_ab(), forms_in_cd()
        for nm in FORM_NAMES:
            scale = max(1, abs(vals[nm]))
            items.append(_item(f"{nm} via a,b", (_eval_poly(fab[nm], ab) - vals[nm]) / scale, tol))
            items.append(_item(f"{nm} via c,d", (_eval_poly(fcd[nm], cd) - vals[nm]) / scale, tol))
        dab = Poly.variable("a0", AB_ALPHABET) ** 3 - Poly.variable("b0", AB_ALPHABET) ** 2 * 27
        dcd = Poly.variable("c0", CD_ALPHABET) ** 3 - Poly.variable("d0", CD_ALPHABET) ** 2 * 27
        items.append(_item("Delta via a,b", _eval_poly(dab, ab) - vals["Delta"], tol))
        items.append(_item("Delta via c,d", _eval_poly(dcd, cd) - vals["Delta"], tol))
        for label, p in (extra or {}).items():
            lhs = _eval_poly(p, ab)
            rhs = _eval_poly(ab_to_cd(p), cd)
            items.append(_item(label, (lhs - rhs) / max(1, abs(lhs)), tol))
    return items


def _reflect(z, r) -> list[mpc]:
    rz = sum(zi * mpf(x.numerator) / x.denominator for zi, x in zip(z, r))
    return [zi - rz * mpf(x.numerator) / x.denominator for zi, x in zip(z, r)]


def weyl_residuals(ctx: NumericContext, roots, tol: float = 1e-8) -> list[dict]:
    with mp.workdps(ctx.dps):
        base = theta_e8(ctx.tau, ctx.z, ctx)
        items = []
        for r in roots:
            moved = theta_e8(ctx.tau, _reflect(ctx.z, r), ctx)
            name = "r=(" + ",".join(str(x) for x in r) + ")"
            items.append(_item(name, (moved - base) / max(1, abs(base)), tol))
        return items


def quasi_period_residual(ctx: NumericContext, alpha, index: int = 1, tol: float = 1e-7) -> dict:
    with mp.workdps(ctx.dps):
        alpha = [mpf(Fraction(a).numerator) / Fraction(a).denominator for a in alpha]
        a2 = sum(a * a for a in alpha)
        za = sum(zi * a for zi, a in zip(ctx.z, alpha))
        shifted = [zi + ctx.tau * a for zi, a in zip(ctx.z, alpha)]
        lhs = theta_e8(ctx.tau, shifted, ctx) * mpmath.expjpi(index * (ctx.tau * a2 + 2 * za))
        base = theta_e8(ctx.tau, ctx.z, ctx)
        name = "alpha=(" + ",".join(mpmath.nstr(a, 3) for a in alpha) + ")"
        return _item(name, (lhs - base) / max(1, abs(base)), tol)


def modular_basics(ctx: NumericContext) -> list[dict]:
    at0 = ctx.with_z((0,) * RANK)
    with mp.workdps(ctx.dps):
        vals = basic_forms(at0)
        e4, e6 = vals["E4"], vals["E6"]
        items = [_item(f"A{m}(tau,0) - E4", vals[f"A{m}"] - e4, 1e-9) for m in range(1, 6)]
        items += [_item(f"B{m}(tau,0) - E6", vals[f"B{m}"] - e6, 1e-9) for m in (2, 3, 4, 6)]
        items.append(_item("A4(tau,z) - Theta(tau,2z)",
                           eval_form("A4", ctx) - theta_e8(ctx.tau, _scaled(ctx.z, 2), ctx), 1e-9))
        items.append(_item("1728 Delta - (E4^3 - E6^2)", 1728 * discriminant(ctx.tau, ctx) - (e4 ** 3 - e6 ** 2), 1e-10))
        items.append(_item("Delta - eta^24", discriminant(ctx.tau, ctx) - eta(ctx.tau, ctx) ** 24, 1e-10))
        return items


def numeric_suite(check: str, ctx: NumericContext | None = None, seed: int = DEFAULT_SEED) -> dict:
    """Run one named numeric check and return a report with per-item residuals."""
    ctx = ctx or NumericContext()
    if check == "abincd-numeric":
        return _report(check, abincd_residuals(ctx), ctx)
    if check == "psi-consistency":
        a = {nm: Poly.variable(nm, AB_ALPHABET) for nm in AB_ALPHABET}
        extra = {"a0*b1": a["a0"] * a["b1"], "a2*b0 - a0*b2": a["a2"] * a["b0"] - a["a0"] * a["b2"],
                 "b1^2*a3": a["b1"] ** 2 * a["a3"]}
        return _report(check, psi_consistency(ctx, extra=extra), ctx)
    if check == "weyl-numeric":
        r = random.Random(seed)
        roots = r.sample(sorted(e8_roots()), 5)
        fixed = (Fraction(1), Fraction(-1)) + (Fraction(0),) * 6
        return _report(check, weyl_residuals(ctx, [fixed] + roots), ctx, seed)
    if check == "quasi-period":
        alphas = [(1, 1, 0, 0, 0, 0, 0, 0), (1, 0, -1, 0, 0, 0, 0, 0), (Fraction(1, 2),) * 8]
        return _report(check, [quasi_period_residual(ctx, a) for a in alphas], ctx)
    if check == "modular-basics":
        return _report(check, modular_basics(ctx), ctx)
    raise ValueError(f"unknown numeric check {check!r}")


def run_numeric_suite(ctx: NumericContext | None = None, seed: int = DEFAULT_SEED) -> list[dict]:
    return [numeric_suite(c, ctx, seed) for c in CHECKS]
