"""Binary forms, covariants and transvectants.

A covariant of order ``w`` is stored as its list of coefficients
``[P_0, ..., P_w]`` with ``Psi = sum_k P_k u^(w-k) v^k``; the coefficient
polynomials live in the coefficient variables of the forms (``alpha0..4``
for the quartic ``f``, ``beta0..6`` for the sextic ``g``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from gmpy2 import mpq

from .exact_poly import Poly, merge_alphabets, rational, zero

ALPHA = tuple(f"alpha{i}" for i in range(5))
BETA = tuple(f"beta{j}" for j in range(7))
COEFF_ALPHABET = ALPHA + BETA
UV = ("u", "v")


@dataclass(frozen=True)
class FormSpec:
    """Names of the coefficient variables of a generic binary form of degree ``len(names)-1``."""

    names: tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.names) - 1


QUARTIC = FormSpec(ALPHA)
SEXTIC = FormSpec(BETA)
DEFAULT_FORMS = (QUARTIC, SEXTIC)


class Covariant:
    """Polynomial in form coefficients and (u, v), homogeneous in (u, v)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Poly], order: int | None = None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            order = 0
            coeffs = ()
        if coeffs and len(coeffs) != order + 1:
            raise ValueError("coefficient list length must be order + 1")
        if coeffs and all(c.is_zero() for c in coeffs):
            coeffs = ()
        if coeffs:
            alphabet = merge_alphabets(*(c.alphabet for c in coeffs))
            coeffs = tuple(c.with_alphabet(alphabet) for c in coeffs)
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def zero(cls, order: int = 0) -> "Covariant":
        return cls((), max(order, 0))

    @classmethod
    def from_poly(cls, poly: Poly) -> "Covariant":
        """Split a polynomial in (u, v) and coefficients; it must be homogeneous in (u, v)."""
        if poly.is_zero():
            return cls.zero()
        orders = poly.degrees_in(UV)
        if len(orders) != 1:
            raise ValueError("not a binary form: not homogeneous in (u, v)")
        (w,) = orders
        if w < 0:
            raise ValueError("not a binary form: negative order")
        rest = tuple(nm for nm in poly.alphabet if nm not in UV)
        by_v = poly.coefficients_in("v")
        coeffs = []
        for k in range(w + 1):
            p = by_v.get(k)
            coeffs.append(zero(rest) if p is None else p.coefficients_in("u")[w - k].with_alphabet(rest))
        return cls(coeffs, w)

    @property
    def poly(self) -> Poly:
        """The covariant as a single polynomial in coefficients, u and v."""
        w = self.order
        if not self.coeffs:
            return zero(UV)
        alphabet = merge_alphabets(self.coeffs[0].alphabet, UV)
        total = zero(alphabet)
        for k, c in enumerate(self.coeffs):
            if c:
                total = total + c * Poly.monomial({"u": w - k, "v": k}, 1, alphabet)
        return total

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Poly:
        if not self.coeffs:
            return zero(COEFF_ALPHABET)
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Covariant):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, tuple(hash(c) for c in self.coeffs)))

    def __add__(self, other: "Covariant") -> "Covariant":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.order != other.order:
            raise ValueError("cannot add covariants of different order")
        return Covariant([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self) -> "Covariant":
        return Covariant([-c for c in self.coeffs], self.order)

    def __sub__(self, other: "Covariant") -> "Covariant":
        return self + (-other)

    def scale(self, c) -> "Covariant":
        return Covariant([p.scale(c) for p in self.coeffs], self.order)

    def __mul__(self, other) -> "Covariant":
        if not isinstance(other, Covariant):
            return self.scale(other)
        w = self.order + other.order
        if self.is_zero() or other.is_zero():
            return Covariant.zero(w)
        out = [None] * (w + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                prod = a * b
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        alphabet = merge_alphabets(self.coeffs[0].alphabet, other.coeffs[0].alphabet)
        return Covariant([zero(alphabet) if p is None else p for p in out], w)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Covariant":
        if e < 0:
            raise ValueError("negative power of a covariant")
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            alphabet = self.coeffs[0].alphabet if self.coeffs else ()
            return Covariant([Poly.constant(1, alphabet)], 0)
        return result

    def map_coefficients(self, fn) -> "Covariant":
        return Covariant([fn(c) for c in self.coeffs], self.order) if self.coeffs else self

    def __repr__(self) -> str:
        return f"Covariant(order={self.order}, terms={sum(len(c) for c in self.coeffs)})"


def binary_form(spec_or_coeffs: FormSpec | Sequence[object]) -> Covariant:
    """Generic form with formal coefficients, or a form with explicit rational coefficients."""
    if isinstance(spec_or_coeffs, FormSpec):
        names = spec_or_coeffs.names
        return Covariant([Poly.variable(nm, names) for nm in names])
    return Covariant([c if isinstance(c, Poly) else Poly.constant(c) for c in spec_or_coeffs])


def quartic() -> Covariant:
    """The generic quartic ``f = sum alpha_i u^(4-i) v^i``."""
    return binary_form(QUARTIC)


def sextic() -> Covariant:
    """The generic sextic ``g = sum beta_i u^(6-i) v^i``."""
    return binary_form(SEXTIC)


def _falling(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    r = 1
    for t in range(k):
        r *= n - t
    return r


@lru_cache(maxsize=None)
def _transvectant_weights(n1: int, n2: int, i: int) -> tuple[tuple[int, int, mpq], ...]:
    # Weight of F_p * G_q in the coefficient of u^(n1+n2-2i-r) v^r, r = p+q-i.
    pref = mpq(factorial(n1 - i) * factorial(n2 - i), factorial(n1) * factorial(n2))
    out = []
    for p in range(n1 + 1):
        for q in range(n2 + 1):
            s = 0
            for j in range(i + 1):
                s += ((-1) ** j * comb(i, j)
                      * _falling(n1 - p, i - j) * _falling(p, j)
                      * _falling(n2 - q, j) * _falling(q, i - j))
            if s:
                out.append((p, q, pref * s))
    return tuple(out)


def transvectant(f1: Covariant, f2: Covariant, i: int) -> Covariant:
    """The ``i``-th transvectant ``<f1, f2>^i``.

    Zero when ``i`` exceeds either order.
    """
    if i < 0:
        raise ValueError("transvectant index must be non-negative")
    n1, n2 = f1.order, f2.order
    if i > min(n1, n2):
        return Covariant.zero(n1 + n2 - 2 * i)
    w = n1 + n2 - 2 * i
    if f1.is_zero() or f2.is_zero():
        return Covariant.zero(w)
    out: list[Poly | None] = [None] * (w + 1)
    for p, q, c in _transvectant_weights(n1, n2, i):
        a, b = f1.coeffs[p], f2.coeffs[q]
        if not a or not b:
            continue
        prod = (a * b).scale(c)
        r = p + q - i
        out[r] = prod if out[r] is None else out[r] + prod
    alphabet = merge_alphabets(f1.coeffs[0].alphabet, f2.coeffs[0].alphabet)
    return Covariant([zero(alphabet) if p is None else p for p in out], w)


def covariant_grades(c: Covariant, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> tuple[int, ...]:
    """Degrees in each form's coefficients followed by the order, e.g. ``(d_alpha, d_beta, w)``."""
    if c.is_zero():
        raise ValueError("grades undefined for the zero covariant")
    degs = []
    for spec in forms:
        found = set()
        for p in c.coeffs:
            if p:
                found |= p.degrees_in(spec.names)
        if len(found) != 1:
            raise ValueError("covariant is not homogeneous in the coefficients")
        degs.append(found.pop())
    return tuple(degs) + (c.order,)


# -- SL2 action -------------------------------------------------------------

def lowering_derivation(forms: Sequence[FormSpec]) -> list[tuple[str, str, int]]:
    # generator of (u, v) -> (u + k v, v) on coefficients
    action = []
    for spec in forms:
        n = spec.degree
        for i in range(1, n + 1):
            action.append((spec.names[i], spec.names[i - 1], n - i + 1))
    return action


def raising_derivation(forms: Sequence[FormSpec]) -> list[tuple[str, str, int]]:
    # generator of (u, v) -> (u, m u + v) on coefficients
    action = []
    for spec in forms:
        n = spec.degree
        for i in range(n):
            action.append((spec.names[i], spec.names[i + 1], i + 1))
    return action


def unipotent_action(p: Poly, kappa, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Poly:
    """``p(alpha')`` for ``T = [[1, kappa], [0, 1]]``."""
    kappa = rational(kappa)
    if not kappa:
        return p
    return p.exp_derivation(lowering_derivation(forms), kappa)


def lower_unipotent_action(p: Poly, mu, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Poly:
    """``p(alpha')`` for ``T = [[1, 0], [mu, 1]]``."""
    mu = rational(mu)
    if not mu:
        return p
    for nm in p.variables():
        if any(nm == spec.names[0] for spec in forms) and min(p.exponents_of(nm)) < 0:
            raise ValueError("lower unipotent action needs a polynomial input")
    return p.exp_derivation(raising_derivation(forms), mu)


def diagonal_action(p: Poly, lam, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Poly:
    """``p(alpha')`` for ``T = diag(lam, 1/lam)``: ``alpha_i -> lam^(n-2i) alpha_i``."""
    lam = rational(lam)
    if not lam:
        raise ValueError("lambda must be nonzero")
    images = {}
    for spec in forms:
        n = spec.degree
        for i, nm in enumerate(spec.names):
            images[nm] = Poly.variable(nm).scale(lam ** (n - 2 * i))
    return p.substitute({nm: img for nm, img in images.items() if nm in p.alphabet}, p.alphabet)


def _check_unimodular(T) -> tuple[mpq, mpq, mpq, mpq]:
    (a, b), (c, d) = T
    a, b, c, d = map(rational, (a, b, c, d))
    if a * d - b * c != 1:
        raise ValueError("not unimodular: det T must be 1")
    return a, b, c, d


def coefficient_action(p: Poly, T, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Poly:
    """``p(alpha')`` where ``alpha'`` are the coefficients of ``f(T(u, v))``.

    Uses ``T = L(c/a) diag(a, 1/a) U(b/a)`` and the composition rule
    ``S_{T1 T2} = S_{T1} o S_{T2}``.
    """
    a, b, c, d = _check_unimodular(T)
    if a == 0:
        # T = U(1) * (U(-1) T); the second factor has top-left entry -c != 0.
        rest = ((a - c, b - d), (c, d))
        return coefficient_action(coefficient_action(p, rest, forms), ((1, 1), (0, 1)), forms)
    p = unipotent_action(p, b / a, forms)
    p = diagonal_action(p, a, forms)
    return lower_unipotent_action(p, c / a, forms)


def uv_matrix(T, w: int) -> list[list[mpq]]:
    """Matrix ``M`` with ``(t11 u + t12 v)^(w-k) (t21 u + t22 v)^k = sum_r M[r][k] u^(w-r) v^r``."""
    a, b, c, d = (rational(x) for row in T for x in row)
    cols = []
    for k in range(w + 1):
        # expand (a u + b v)^(w-k)
        left = [comb(w - k, s) * a ** (w - k - s) * b ** s for s in range(w - k + 1)]
        right = [comb(k, s) * c ** (k - s) * d ** s for s in range(k + 1)]
        col = [mpq(0)] * (w + 1)
        for s1, x in enumerate(left):
            for s2, y in enumerate(right):
                col[s1 + s2] += x * y
        cols.append(col)
    return [[cols[k][r] for k in range(w + 1)] for r in range(w + 1)]


def substitute_uv(cov: Covariant, T) -> Covariant:
    """``Psi(alpha; T(u, v))``."""
    if cov.is_zero():
        return cov
    m = uv_matrix(T, cov.order)
    alphabet = cov.coeffs[0].alphabet
    out = []
    for r in range(cov.order + 1):
        acc = zero(alphabet)
        for k, p in enumerate(cov.coeffs):
            if m[r][k] and p:
                acc = acc + p.scale(m[r][k])
        out.append(acc)
    return Covariant(out, cov.order)


def sl2_transform(cov: Covariant, T, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> Covariant:
    """``Psi(alpha'; u, v)``: the coefficients of every form transformed by ``T``."""
    _check_unimodular(T)
    return cov.map_coefficients(lambda p: coefficient_action(p, T, forms))


def is_equivariant(cov: Covariant, T, forms: Sequence[FormSpec] = DEFAULT_FORMS) -> bool:
    """Exact check of ``Psi(alpha'; u, v) == Psi(alpha; u', v')``."""
    return sl2_transform(cov, T, forms) == substitute_uv(cov, T)


def transformed_coefficients(T, spec: FormSpec) -> list[Poly]:
    """Coefficients of ``f(T(u, v))`` for a generic form, by direct expansion."""
    f = binary_form(spec)
    return substitute_uv(f, T).coeffs
