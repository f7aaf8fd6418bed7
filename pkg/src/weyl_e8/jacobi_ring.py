"""The a/b and c/d coordinate rings of W(E8)-invariant Jacobi forms.

Both frames are polynomial rings in eleven meromorphic Jacobi forms; a
weak Jacobi form is exactly an element that is polynomial in both frames.
The frames are related by translating the quartic (a1 = 0) or the sextic
(d1 = 0) to its centred position, which we compute as ``exp(t D)`` for the
lowering derivation ``D`` rather than by literal substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from gmpy2 import mpq

from . import formulas
from .binary_forms import ALPHA, BETA, FormSpec, lowering_derivation
from .exact_poly import Poly, evaluate_expression, merge_alphabets, rational
from .linalg import determinant
from .sampling import DEFAULT_SEED, random_rational, rng
from .semiinvariants import Semiinvariant

A_FORM = FormSpec(tuple(f"a{i}" for i in range(5)))
B_FORM = FormSpec(tuple(f"b{j}" for j in range(7)))
C_FORM = FormSpec(tuple(f"c{i}" for i in range(5)))
D_FORM = FormSpec(tuple(f"d{j}" for j in range(7)))
ALPHA_FORM = FormSpec(ALPHA)
BETA_FORM = FormSpec(BETA)

AB_ALPHABET = ("a0", "a2", "a3", "a4") + B_FORM.names
CD_ALPHABET = C_FORM.names + ("d0", "d2", "d3", "d4", "d5", "d6")
FORM_NAMES = ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B6")
FORM_ALPHABET = FORM_NAMES + ("E4", "E6")


def variable_grade(name: str) -> tuple[int, int]:
    """(weight, index) of a frame variable: a_i, c_i -> (4-6i, i); b_j, d_j -> (6-6j, j)."""
    letter, i = name[0], int(name[1:])
    if letter in "ac":
        return 4 - 6 * i, i
    if letter in "bd":
        return 6 - 6 * i, i
    raise ValueError(f"not a frame variable: {name}")


@dataclass(frozen=True)
class Grades:
    d_a: int
    d_b: int
    m: int
    k: int
    omega: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.d_a, self.d_b, self.m, self.k, self.omega)


def frame_of(p: Poly) -> str:
    """``"ab"`` or ``"cd"``; constants count as ``"ab"``."""
    names = p.variables()
    letters = {nm[0] for nm in names}
    if letters <= {"a", "b"}:
        return "ab"
    if letters <= {"c", "d"}:
        return "cd"
    raise ValueError(f"polynomial mixes frames or has foreign variables: {names}")


def grades(p: Poly) -> Grades:
    """Trigrading of a homogeneous frame polynomial."""
    if p.is_zero():
        raise ValueError("grades undefined for the zero polynomial")
    frame_of(p)
    seen = set()
    for exps, _ in p.terms():
        da = db = m = 0
        for nm, e in zip(p.alphabet, exps):
            if not e:
                continue
            if nm[0] in "ac":
                da += e
            else:
                db += e
            m += e * variable_grade(nm)[1]
        seen.add((da, db, m))
    if len(seen) != 1:
        raise ValueError("polynomial is not homogeneous in the trigrading")
    da, db, m = seen.pop()
    k = 4 * da + 6 * db - 6 * m
    return Grades(da, db, m, k, k + 4 * m)


@dataclass(frozen=True)
class JacobiPolynomial:
    """A frame polynomial with its trigrading."""

    poly: Poly

    @property
    def frame(self) -> str:
        return frame_of(self.poly)

    @property
    def grades(self) -> Grades:
        return grades(self.poly)

    def __str__(self) -> str:
        return str(self.poly)


def _as_poly(p) -> Poly:
    if isinstance(p, (JacobiPolynomial, Semiinvariant)):
        return p.poly
    return p


def _translate(p: Poly, src: tuple[FormSpec, FormSpec], dst: tuple[FormSpec, FormSpec],
               center: int, drop: tuple[str, ...]) -> Poly:
    """Rename ``src`` coefficients to ``dst`` and shift by the centre of ``dst[center]``.

    ``x_i -> sum_j x_j C(n-j, n-i) t^(i-j)`` equals ``exp(t D)`` applied to the
    renamed polynomial, with ``t = -x_{c,1}/(n_c x_{c,0})`` held constant.
    """
    rename = {}
    for s, d in zip(src, dst):
        rename.update(zip(s.names, d.names))
    q = p.rename({k: v for k, v in rename.items() if k in p.alphabet})
    alphabet = merge_alphabets(q.alphabet, dst[0].names, dst[1].names)
    q = q.with_alphabet(alphabet)
    c = dst[center]
    t = Poly.monomial({c.names[1]: 1, c.names[0]: -1}, rational(-1) / c.degree, alphabet)
    out = q.exp_derivation(lowering_derivation(dst), t)
    if drop:
        out = out.set_zero(drop)
    return out.compact()


def ab_to_cd(p) -> Poly:
    """Rewrite an a/b polynomial in c/d coordinates (Laurent in c0)."""
    return _translate(_as_poly(p), (A_FORM, B_FORM), (C_FORM, D_FORM), 0, ("d1",))


def cd_to_ab(p) -> Poly:
    """Rewrite a c/d polynomial in a/b coordinates (Laurent in b0)."""
    return _translate(_as_poly(p), (C_FORM, D_FORM), (A_FORM, B_FORM), 1, ("a1",))


def _nonneg(p: Poly, name: str) -> bool:
    return p.is_zero() or name not in p.alphabet or p.min_exponent(name) >= 0


def is_jacobi_form(p) -> bool:
    """Membership in the intersection of the a/b and c/d polynomial rings."""
    p = _as_poly(p)
    if p.is_zero():
        return True
    grades(p)  # homogeneity check
    if frame_of(p) == "ab":
        if not (_nonneg(p, "a0") and _nonneg(p, "b0")):
            return False
        return _nonneg(ab_to_cd(p), "c0")
    if not (_nonneg(p, "c0") and _nonneg(p, "d0")):
        return False
    return _nonneg(cd_to_ab(p), "b0")


def psi_j(p) -> Semiinvariant:
    """Substitute ``a_i -> a_hat_i``, ``b_j -> b_hat_j``; the result must be free of 1/alpha0."""
    p = _as_poly(p)
    if frame_of(p) != "ab":
        raise ValueError("psi_j expects an a/b polynomial")
    omega = grades(p).omega if not p.is_zero() else 0
    s = _translate(p, (A_FORM, B_FORM), (ALPHA_FORM, BETA_FORM), 0, ())
    if not _nonneg(s, "alpha0"):
        raise ValueError("not in J: negative power of alpha0 survives")
    return Semiinvariant(s, omega)


def psi_j_inverse(s) -> JacobiPolynomial:
    """Rename ``alpha_i -> a_i``, ``beta_j -> b_j`` and set ``a1 = 0``."""
    p = _as_poly(s)
    mapping = {a: b for a, b in zip(ALPHA + BETA, A_FORM.names + B_FORM.names)}
    q = p.rename({k: v for k, v in mapping.items() if k in p.alphabet}).set_zero(("a1",))
    return JacobiPolynomial(q.compact())


# -- expressions with powers of the discriminant in the denominator ---------

class DeltaFraction:
    """``num / Delta^k`` where ``Delta`` is a fixed polynomial kept symbolic until needed."""

    __slots__ = ("num", "k", "delta")

    def __init__(self, num, k: int = 0, delta: Poly | None = None):
        if isinstance(num, DeltaFraction):
            num, k, delta = num.num, num.k + k, num.delta
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        self.num, self.k, self.delta = num, k, delta

    def _coerce(self, other) -> "DeltaFraction":
        if isinstance(other, DeltaFraction):
            return other
        return DeltaFraction(other, 0, self.delta)

    def _lift(self, k: int) -> Poly:
        return self.num * self.delta ** (k - self.k) if k != self.k else self.num

    def __add__(self, other):
        o = self._coerce(other)
        k = max(self.k, o.k)
        return DeltaFraction(self._lift(k) + o._lift(k), k, self.delta)

    __radd__ = __add__

    def __neg__(self):
        return DeltaFraction(-self.num, self.k, self.delta)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return DeltaFraction(self.num * o.num, self.k + o.k, self.delta)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return DeltaFraction(self.num / o.num, self.k - o.k, self.delta)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        return DeltaFraction(self.num ** e, self.k * e, self.delta)

    def normalized(self) -> tuple[Poly, int]:
        """``(numerator, k)`` with ``k >= 0``."""
        if self.k < 0:
            return self.num * self.delta ** (-self.k), 0
        return self.num, self.k

    def equals_poly(self, p: Poly) -> bool:
        num, k = self.normalized()
        return num == (p * self.delta ** k if k else p)

    def diff(self, name: str) -> "DeltaFraction":
        """Derivative in a variable that ``Delta`` does not involve."""
        if name in self.delta.variables():
            raise ValueError("cannot differentiate through Delta")
        return DeltaFraction(self.num.diff(name), self.k, self.delta)

    def evaluate(self, values: Mapping[str, object]) -> mpq:
        num, k = self.normalized()
        return num.evaluate(values) / self.delta.evaluate(values) ** k


def _form_variables() -> dict[str, Poly]:
    return {nm: Poly.variable(nm, FORM_ALPHABET) for nm in FORM_ALPHABET}


def modular_delta() -> Poly:
    """``(E4^3 - E6^2)/1728`` over the form alphabet."""
    v = _form_variables()
    return (v["E4"] ** 3 - v["E6"] ** 2).scale(mpq(1, 1728))


@lru_cache(maxsize=None)
def p165() -> Poly:
    return evaluate_expression(formulas.P165, _form_variables())


def _frame_table(table: Mapping[str, str]) -> dict[str, DeltaFraction]:
    env: dict[str, object] = dict(_form_variables())
    delta = modular_delta()
    env["Delta"] = DeltaFraction(1, -1, delta)
    env["P165"] = p165()
    return {nm: DeltaFraction(evaluate_expression(text, env), 0, delta) for nm, text in table.items()}


@lru_cache(maxsize=None)
def ab_in_forms() -> dict[str, DeltaFraction]:
    """a_i, b_j as fractions ``N / Delta^k`` with ``N`` in A, B, E4, E6 (Laurent in E4)."""
    return _frame_table(formulas.AB_IN_FORMS)


@lru_cache(maxsize=None)
def cd_in_forms() -> dict[str, DeltaFraction]:
    """c_i, d_j as fractions ``N / Delta^k`` (Laurent in E4, E6)."""
    return _frame_table(formulas.CD_IN_FORMS)


def _forms_in(table: Mapping[str, str], names: tuple[str, ...]) -> dict[str, Poly]:
    env = {nm: Poly.variable(nm, names) for nm in names}
    env["Delta"] = evaluate_expression(table["Delta"], env)
    return {nm: evaluate_expression(table[nm], env) for nm in FORM_NAMES}


@lru_cache(maxsize=None)
def forms_in_ab() -> dict[str, Poly]:
    """A, B as polynomials in the a/b frame."""
    return _forms_in(formulas.FORMS_IN_AB, AB_ALPHABET)


@lru_cache(maxsize=None)
def forms_in_cd() -> dict[str, Poly]:
    """A, B as polynomials in the c/d frame."""
    return _forms_in(formulas.FORMS_IN_CD, CD_ALPHABET)


@lru_cache(maxsize=None)
def p165_over_e4_cd() -> Poly:
    env = {nm: Poly.variable(nm, CD_ALPHABET) for nm in CD_ALPHABET}
    env["Delta"] = env["c0"] ** 3 - env["d0"] ** 2 * 27
    return evaluate_expression(formulas.P165_OVER_E4_IN_CD, env)


# -- identity verification --------------------------------------------------

IDENTITIES = ("ab-roundtrip", "cd-roundtrip", "delta-frames", "p165-cd", "jacobian-AB")

ANCHORS = {
    "ab-roundtrip": "a,b in terms of A,B,E4,E6 substituted into A,B as polynomials of a,b",
    "cd-roundtrip": "c,d in terms of A,B,E4,E6 substituted into A,B as polynomials of c,d",
    "delta-frames": "Delta = a0^3 - 27 b0^2 = c0^3 - 27 d0^2 = (E4^3 - E6^2)/1728",
    "p165-cd": "12 c0 * (P165/E4 in c,d) equals P165 with A,B in c,d and E4 = 12 c0, E6 = 216 d0",
    "jacobian-AB": "det d(a2,a3,a4,b1..b6)/d(A1,A2,B2,A3,B3,A4,B4,A5,B6) = 2^15 5^4 7^2 / (3^2 Delta^14 E4^2)",
}

JACOBIAN_ROWS = ("a2", "a3", "a4", "b1", "b2", "b3", "b4", "b5", "b6")
JACOBIAN_COLS = ("A1", "A2", "B2", "A3", "B3", "A4", "B4", "A5", "B6")
JACOBIAN_CONSTANT = mpq(2 ** 15 * 5 ** 4 * 7 ** 2, 3 ** 2)


def _first_difference(diff: Poly) -> dict | None:
    if diff.is_zero():
        return None
    exps, c = diff.terms()[0]
    mono = {nm: e for nm, e in zip(diff.alphabet, exps) if e}
    return {"monomial": mono, "coefficient": str(c)}


def _check(item: str, lhs: Poly, rhs: Poly) -> dict:
    d = lhs - rhs
    out = {"item": item, "pass": d.is_zero()}
    if not out["pass"]:
        out["first_difference"] = _first_difference(d)
    return out


def _roundtrip(frame_table: dict[str, DeltaFraction], poly_table: dict[str, Poly]) -> list[dict]:
    checks = []
    for nm in FORM_NAMES:
        target = poly_table[nm]
        total = DeltaFraction(0, 0, modular_delta())
        for exps, c in target.terms():
            term = DeltaFraction(Poly.constant(c), 0, modular_delta())
            for v, e in zip(target.alphabet, exps):
                if e:
                    term = term * frame_table[v] ** e
            total = total + term
        num, k = total.normalized()
        expected = Poly.variable(nm, FORM_ALPHABET) * modular_delta() ** k
        checks.append(_check(nm, num, expected))
    return checks


def _random_point(r) -> dict[str, mpq]:
    while True:
        vals = {nm: random_rational(r, nonzero=True) for nm in FORM_ALPHABET}
        if vals["E4"] ** 3 != vals["E6"] ** 2:
            return vals


def jacobian_at(values: Mapping[str, object]) -> mpq:
    """Exact Jacobian determinant of (a2,a3,a4,b1..b6) w.r.t. the nine forms at a point."""
    table = ab_in_forms()
    rows = [[table[a].diff(x).evaluate(values) for x in JACOBIAN_COLS] for a in JACOBIAN_ROWS]
    return determinant(rows)


def verify_identity(name: str, seed: int | None = None, points: int = 3) -> dict:
    """Exact check of one closed-form identity; returns a JSON-ready report."""
    if name not in IDENTITIES:
        raise ValueError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    report: dict = {"identity": name, "anchor": ANCHORS[name]}
    if name == "ab-roundtrip":
        checks = _roundtrip(ab_in_forms(), forms_in_ab())
    elif name == "cd-roundtrip":
        checks = _roundtrip(cd_in_forms(), forms_in_cd())
    elif name == "delta-frames":
        a = {nm: Poly.variable(nm, AB_ALPHABET) for nm in AB_ALPHABET}
        c = {nm: Poly.variable(nm, CD_ALPHABET) for nm in CD_ALPHABET}
        d_ab = a["a0"] ** 3 - a["b0"] ** 2 * 27
        d_cd = c["c0"] ** 3 - c["d0"] ** 2 * 27
        v = _form_variables()
        e4, e6 = v["E4"], v["E6"]
        checks = [
            _check("translate a0^3-27b0^2 to c,d", ab_to_cd(d_ab), d_cd),
            _check("a0=E4/12, b0=E6/216", d_ab.substitute({"a0": e4 / 12, "b0": e6 / 216}), modular_delta()),
            _check("c0=E4/12, d0=E6/216", d_cd.substitute({"c0": e4 / 12, "d0": e6 / 216}), modular_delta()),
        ]
    elif name == "p165-cd":
        cd_forms = forms_in_cd()
        c = {nm: Poly.variable(nm, CD_ALPHABET) for nm in CD_ALPHABET}
        images = dict(cd_forms)
        images["E4"] = c["c0"] * 12
        images["E6"] = c["d0"] * 216
        lhs = c["c0"] * 12 * p165_over_e4_cd()
        rhs = p165().substitute(images)
        checks = [_check("P165", lhs, rhs)]
    else:
        r = rng(seed)
        checks = []
        for i in range(points):
            vals = _random_point(r)
            got = jacobian_at(vals)
            delta = modular_delta().evaluate(vals)
            expected = JACOBIAN_CONSTANT / (delta ** 14 * vals["E4"] ** 2)
            entry = {"item": f"point {i}", "pass": got == expected,
                     "point": {k: str(v) for k, v in sorted(vals.items())}}
            if got != expected:
                entry["ratio"] = str(got / expected)
            checks.append(entry)
        report["seed"] = DEFAULT_SEED if seed is None else seed
    report["checks"] = checks
    report["pass"] = all(ch["pass"] for ch in checks)
    return report
