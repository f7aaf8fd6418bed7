"""Exact sparse multivariate (Laurent) polynomials over the rationals.

Exponent vectors are packed into a single Python integer, 16 bits per
variable slot in balanced (signed) digits, so that monomial multiplication is
integer addition.  Coefficients are ``gmpy2.mpq``.

Polynomials are immutable values.  Every polynomial carries an ordered
alphabet; binary operations on polynomials with different alphabets first
merge the alphabets in the global variable order.
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = mpq

_BITS = 16
_MASK = (1 << _BITS) - 1
_HALF = 1 << (_BITS - 1)
MAX_EXPONENT = _HALF - 1
_MAX_SLOTS = 160
_BIAS = sum(_HALF << (_BITS * i) for i in range(_MAX_SLOTS))

# Fixed global alphabet order.  a1 and d1 only occur transiently inside the
# frame translations and are dropped from every public result.
GLOBAL_ORDER: tuple[str, ...] = (
    ("a0", "a1", "a2", "a3", "a4")
    + tuple(f"b{j}" for j in range(7))
    + tuple(f"c{i}" for i in range(5))
    + tuple(f"d{j}" for j in range(7))
    + tuple(f"alpha{i}" for i in range(5))
    + tuple(f"beta{j}" for j in range(7))
    + ("u", "v")
    + ("A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B6", "E4", "E6")
)
_RANK = {name: i for i, name in enumerate(GLOBAL_ORDER)}

LAURENT_VARIABLES = frozenset({"c0", "b0", "alpha0", "beta0", "a0", "d0", "E4", "E6"})


def rational(x) -> mpq:
    """Coerce ints, strings like ``"-3/8"``, Fractions and mpq to ``mpq``."""
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    return mpq(x)


def _order_key(name: str):
    return (_RANK.get(name, len(_RANK)), name)


def merge_alphabets(*alphabets: Iterable[str]) -> tuple[str, ...]:
    names = set()
    for alph in alphabets:
        names.update(alph)
    return tuple(sorted(names, key=_order_key))


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e:
            key += e << (_BITS * i)
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    k = key + _BIAS
    return tuple(((k >> (_BITS * i)) & _MASK) - _HALF for i in range(n))


def _digit(key: int, i: int) -> int:
    return (((key + _BIAS) >> (_BITS * i)) & _MASK) - _HALF


@lru_cache(maxsize=None)
def _index(alphabet: tuple[str, ...]) -> dict[str, int]:
    return {name: i for i, name in enumerate(alphabet)}


def _check_bound(bound: int) -> None:
    if bound > MAX_EXPONENT:
        raise OverflowError(f"exponent overflow (bound {bound} > {MAX_EXPONENT})")


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("alphabet", "_terms", "_bound")

    def __init__(self, alphabet: Sequence[str] = (), terms: dict[int, mpq] | None = None,
                 bound: int | None = None):
        # ``terms`` maps packed exponent keys to nonzero coefficients and is
        # owned by the new instance.  Use the ``from_*`` constructors from
        # outside this module.
        self.alphabet = tuple(alphabet)
        self._terms = terms if terms is not None else {}
        if bound is None:
            n = len(self.alphabet)
            bound = max((max(map(abs, _unpack(k, n)), default=0) for k in self._terms), default=0)
        _check_bound(bound)
        self._bound = bound

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, alphabet: Sequence[str], terms: Mapping[tuple[int, ...], object]
                   | Iterable[tuple[tuple[int, ...], object]]) -> "Poly":
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate variable in alphabet")
        if len(alphabet) > _MAX_SLOTS:
            raise ValueError("alphabet too long")
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[int, mpq] = {}
        bound = 0
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(alphabet):
                raise ValueError("exponent tuple length does not match alphabet")
            for name, e in zip(alphabet, exps):
                if e < 0 and name not in LAURENT_VARIABLES:
                    raise ValueError(f"negative exponent for non-Laurent variable {name}")
                bound = max(bound, abs(e))
            _check_bound(bound)
            c = rational(c)
            if c:
                k = _pack(exps)
                v = out.get(k, 0) + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return cls(alphabet, out, bound)

    @classmethod
    def constant(cls, c=0, alphabet: Sequence[str] = ()) -> "Poly":
        c = rational(c)
        return cls(alphabet, {0: c} if c else {}, 0)

    @classmethod
    def variable(cls, name: str, alphabet: Sequence[str] | None = None) -> "Poly":
        alphabet = (name,) if alphabet is None else tuple(alphabet)
        i = _index(alphabet)[name]
        return cls(alphabet, {1 << (_BITS * i): mpq(1)}, 1)

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1,
                 alphabet: Sequence[str] | None = None) -> "Poly":
        if alphabet is None:
            alphabet = merge_alphabets(exponents)
        idx = _index(tuple(alphabet))
        exps = [0] * len(alphabet)
        for name, e in exponents.items():
            exps[idx[name]] = e
        return cls.from_terms(alphabet, {tuple(exps): coeff})

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> mpq:
        return self._terms.get(0, mpq(0))

    def terms(self) -> list[tuple[tuple[int, ...], mpq]]:
        """Terms as ``(exponents, coefficient)`` in canonical graded-lex order."""
        n = len(self.alphabet)
        items = [(_unpack(k, n), c) for k, c in self._terms.items()]
        items.sort(key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
        return items

    def coefficient(self, exponents: Mapping[str, int] | Sequence[int]) -> mpq:
        if isinstance(exponents, Mapping):
            idx = _index(self.alphabet)
            exps = [0] * len(self.alphabet)
            for name, e in exponents.items():
                if name not in idx:
                    if e:
                        return mpq(0)
                    continue
                exps[idx[name]] = e
        else:
            exps = list(exponents)
        return self._terms.get(_pack(exps), mpq(0))

    def variables(self) -> tuple[str, ...]:
        """Variables that occur with nonzero exponent in some term."""
        n = len(self.alphabet)
        used = [False] * n
        for k in self._terms:
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    used[i] = True
        return tuple(name for name, u in zip(self.alphabet, used) if u)

    def exponents_of(self, name: str) -> set[int]:
        idx = _index(self.alphabet)
        if name not in idx:
            return {0} if self._terms else set()
        i = idx[name]
        return {_digit(k, i) for k in self._terms}

    def min_exponent(self, name: str) -> int:
        if not self._terms:
            raise ValueError("min_exponent undefined for zero polynomial")
        return min(self.exponents_of(name))

    def degree(self, name: str) -> int:
        if not self._terms:
            raise ValueError("degree undefined for zero polynomial")
        return max(self.exponents_of(name))

    def degrees_in(self, names: Iterable[str]) -> set[int]:
        """Set of total degrees in the given subset of variables, over all terms."""
        idx = _index(self.alphabet)
        slots = [idx[nm] for nm in names if nm in idx]
        return {sum(_digit(k, i) for i in slots) for k in self._terms}

    def weights(self, weight: Mapping[str, int]) -> set[int]:
        """Set of weighted degrees ``sum(weight[x] * e_x)`` over all terms."""
        idx = _index(self.alphabet)
        slots = [(idx[nm], w) for nm, w in weight.items() if nm in idx and w]
        return {sum(w * _digit(k, i) for i, w in slots) for k in self._terms}

    # -- alphabet handling ------------------------------------------------

    def with_alphabet(self, alphabet: Sequence[str]) -> "Poly":
        """Re-express over a larger alphabet containing every used variable."""
        alphabet = tuple(alphabet)
        if alphabet == self.alphabet:
            return self
        n = len(self.alphabet)
        if alphabet[:n] == self.alphabet:
            return Poly(alphabet, self._terms, self._bound)
        idx = _index(alphabet)
        slot = []
        for name in self.alphabet:
            slot.append(idx.get(name))
        out = {}
        for k, c in self._terms.items():
            nk = 0
            for i, (e, j) in enumerate(zip(_unpack(k, n), slot)):
                if e:
                    if j is None:
                        raise ValueError(f"variable {self.alphabet[i]} not in target alphabet")
                    nk += e << (_BITS * j)
            out[nk] = c
        return Poly(alphabet, out, self._bound)

    def compact(self) -> "Poly":
        """Drop alphabet entries that do not occur."""
        return self.with_alphabet(self.variables()) if self._terms else Poly((), {}, 0)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables; names mapped to the same target are multiplied."""
        names = [mapping.get(nm, nm) for nm in self.alphabet]
        alphabet = merge_alphabets(names)
        idx = _index(alphabet)
        slot = [idx[nm] for nm in names]
        n = len(self.alphabet)
        out: dict[int, mpq] = {}
        for k, c in self._terms.items():
            nk = 0
            for e, j in zip(_unpack(k, n), slot):
                if e:
                    nk += e << (_BITS * j)
            v = out.get(nk, 0) + c
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
        res = Poly(alphabet, out, None if len(set(names)) != len(names) else self._bound)
        for nm in res.variables():
            if nm not in LAURENT_VARIABLES and any(e < 0 for e in res.exponents_of(nm)):
                raise ValueError(f"negative exponent for non-Laurent variable {nm}")
        return res

    def set_zero(self, names: Iterable[str]) -> "Poly":
        """Substitute 0 for the given variables and remove them from the alphabet."""
        idx = _index(self.alphabet)
        slots = [idx[nm] for nm in names if nm in idx]
        if not slots:
            return self
        drop = {self.alphabet[i] for i in slots}
        kept = {k: c for k, c in self._terms.items() if all(_digit(k, i) == 0 for i in slots)}
        for k in kept:
            for i in slots:
                if _digit(k, i) < 0:
                    raise ValueError("cannot set a variable with negative exponent to zero")
        res = Poly(self.alphabet, kept, self._bound)
        return res.with_alphabet(tuple(nm for nm in self.alphabet if nm not in drop))

    def _align(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if self.alphabet == other.alphabet:
            return self, other
        alphabet = merge_alphabets(self.alphabet, other.alphabet)
        return self.with_alphabet(alphabet), other.with_alphabet(alphabet)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _is_scalar(x) -> bool:
        return isinstance(x, (int, Fraction)) or type(x).__name__ in ("mpq", "mpz")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.alphabet)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if not self._is_scalar(other):
                return NotImplemented
            other = Poly.constant(other, self.alphabet)
        a, b = self._align(other)
        if len(a._terms) < len(b._terms):
            a, b = b, a
        out = dict(a._terms)
        for k, c in b._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Poly(a.alphabet, out, max(a._bound, b._bound))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.alphabet, {k: -c for k, c in self._terms.items()}, self._bound)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly) and not self._is_scalar(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        if not self._is_scalar(other):
            return NotImplemented
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = rational(c)
        if not c:
            return Poly(self.alphabet, {}, 0)
        return Poly(self.alphabet, {k: v * c for k, v in self._terms.items()}, self._bound)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if not self._is_scalar(other):
                return NotImplemented
            return self.scale(other)
        a, b = self._align(other)
        if not a._terms or not b._terms:
            return Poly(a.alphabet, {}, 0)
        if len(a._terms) < len(b._terms):
            a, b = b, a
        bound = a._bound + b._bound
        _check_bound(bound)
        out: dict[int, mpq] = {}
        get = out.get
        bitems = list(b._terms.items())
        if len(bitems) == 1:
            (k2, c2), = bitems
            out = {k1 + k2: c1 * c2 for k1, c1 in a._terms.items()}
            return Poly(a.alphabet, out, bound)
        for k1, c1 in a._terms.items():
            for k2, c2 in bitems:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return Poly(a.alphabet, {k: c for k, c in out.items() if c}, bound)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (k, c), = self._terms.items()
            inv = Poly(self.alphabet, {-k: 1 / c}, self._bound)
            for nm in inv.variables():
                if nm not in LAURENT_VARIABLES:
                    raise ValueError(f"cannot invert non-Laurent variable {nm}")
            return inv ** (-e)
        result = Poly.constant(1, self.alphabet)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.is_constant():
                return self.scale(1 / other.constant_term())
            return self * other ** -1
        if not self._is_scalar(other):
            return NotImplemented
        return self.scale(1 / rational(other))

    def __rtruediv__(self, other) -> "Poly":
        if not self._is_scalar(other):
            return NotImplemented
        return (self ** -1).scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            try:
                other = Poly.constant(other, self.alphabet)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        return hash(frozenset((e, c) for e, c in self.compact().terms()))

    # -- calculus and operators -------------------------------------------

    def diff(self, name: str, order: int = 1) -> "Poly":
        idx = _index(self.alphabet)
        if name not in idx:
            return Poly(self.alphabet, {}, 0)
        i = idx[name]
        unit = 1 << (_BITS * i)
        out = {}
        for k, c in self._terms.items():
            e = _digit(k, i)
            f = 1
            for t in range(order):
                f *= e - t
            if f:
                out[k - order * unit] = c * f
        return Poly(self.alphabet, out, self._bound + order)

    def coefficients_in(self, name: str) -> dict[int, "Poly"]:
        """Split as ``sum_e name^e * P_e``; returns ``{e: P_e}`` (P_e free of ``name``)."""
        idx = _index(self.alphabet)
        if name not in idx:
            return {0: self} if self._terms else {}
        i = idx[name]
        unit = 1 << (_BITS * i)
        groups: dict[int, dict[int, mpq]] = {}
        for k, c in self._terms.items():
            e = _digit(k, i)
            groups.setdefault(e, {})[k - e * unit] = c
        return {e: Poly(self.alphabet, t, self._bound) for e, t in groups.items()}

    def apply_derivation(self, action: Sequence[tuple[str, str, object]]) -> "Poly":
        """Apply the derivation ``sum w * x_dst * d/dx_src`` given as (src, dst, w) triples."""
        alphabet = merge_alphabets(self.alphabet, [d for _, d, _ in action])
        p = self.with_alphabet(alphabet)
        idx = _index(alphabet)
        ops = []
        for src, dst, w in action:
            if src in idx:
                ops.append((idx[src], (1 << (_BITS * idx[dst])) - (1 << (_BITS * idx[src])), rational(w)))
        out: dict[int, mpq] = {}
        get = out.get
        for k, c in p._terms.items():
            kb = k + _BIAS
            for i, shift, w in ops:
                e = ((kb >> (_BITS * i)) & _MASK) - _HALF
                if e:
                    nk = k + shift
                    out[nk] = get(nk, 0) + c * w * e
        return Poly(alphabet, {k: c for k, c in out.items() if c}, p._bound + 1)

    def exp_derivation(self, action: Sequence[tuple[str, str, object]], t: "Poly | object",
                       max_steps: int = 10_000) -> "Poly":
        """``sum_k t^k/k! * D^k(self)`` for a locally nilpotent derivation ``D``.

        ``t`` may be a scalar or a polynomial; it is treated as a constant
        with respect to ``D``.
        """
        term = self
        total = self
        tk = None
        for k in range(1, max_steps + 1):
            term = term.apply_derivation(action)
            if term.is_zero():
                return total
            tk = (t if tk is None else tk * t)
            total = total + (term * tk) / factorial(k)
        raise ArithmeticError("derivation is not nilpotent on this input")

    def substitute(self, mapping: Mapping[str, object], alphabet: Sequence[str] | None = None) -> "Poly":
        """Replace variables by polynomials (or scalars) and expand exactly.

        Variables of ``self`` not in ``mapping`` are kept; when a target
        ``alphabet`` is given they must belong to it.
        """
        used = self.variables()
        images: dict[str, Poly] = {}
        for name in used:
            if name in mapping:
                img = mapping[name]
                images[name] = img if isinstance(img, Poly) else Poly.constant(img)
            else:
                if alphabet is not None and name not in alphabet:
                    raise ValueError(f"unmapped variable: {name}")
                images[name] = Poly.variable(name)
        target = merge_alphabets(alphabet or (), *(img.alphabet for img in images.values()))
        images = {nm: img.with_alphabet(target) for nm, img in images.items()}
        if not self._terms:
            return Poly(target, {}, 0)
        n = len(self.alphabet)
        slots = [(_index(self.alphabet)[nm], images[nm]) for nm in used]
        powers: list[dict[int, Poly]] = [dict() for _ in slots]
        def power(j: int, e: int) -> Poly:
            cache = powers[j]
            if e not in cache:
                img = slots[j][1]
                if e == 1:
                    cache[e] = img
                elif e > 1 and e - 1 in cache:
                    cache[e] = cache[e - 1] * img
                else:
                    cache[e] = img ** e
            return cache[e]

        items = [(_unpack(k, n), c) for k, c in self._terms.items()]

        def rec(group, j):
            if j == len(slots):
                return Poly.constant(sum(c for _, c in group), target)
            i = slots[j][0]
            split: dict[int, list] = {}
            for item in group:
                split.setdefault(item[0][i], []).append(item)
            acc = Poly(target, {}, 0)
            for e, sub in split.items():
                inner = rec(sub, j + 1)
                acc = acc + (inner if e == 0 else inner * power(j, e))
            return acc

        return rec(items, 0)

    def evaluate(self, values: Mapping[str, object], coerce: Callable[[mpq], object] | None = None):
        """Evaluate at a point; ``coerce`` converts coefficients (e.g. to mpmath numbers)."""
        n = len(self.alphabet)
        used = self.variables()
        missing = [nm for nm in used if nm not in values]
        if missing:
            raise ValueError(f"no value for variables {missing}")
        idx = _index(self.alphabet)
        slots = [(idx[nm], values[nm]) for nm in used]
        cache: dict[tuple[int, int], object] = {}
        total = 0
        for k, c in self._terms.items():
            exps = _unpack(k, n)
            term = coerce(c) if coerce else c
            for j, (i, val) in enumerate(slots):
                e = exps[i]
                if e:
                    key = (j, e)
                    pv = cache.get(key)
                    if pv is None:
                        pv = val ** e if e > 0 else 1 / (val ** (-e))
                        cache[key] = pv
                    term = term * pv
            total = total + term
        return total

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "terms": [{"e": list(e), "c": _qstr(c)} for e, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Poly":
        return cls.from_terms(obj["alphabet"], [(t["e"], rational(t["c"])) for t in obj["terms"]])

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(self.alphabet, exps) if e
            )
            if not mono:
                parts.append(_qstr(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_qstr(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"


def _qstr(c: mpq) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def zero(alphabet: Sequence[str] = ()) -> Poly:
    return Poly(tuple(alphabet), {}, 0)


def variables(names: Iterable[str]) -> list[Poly]:
    names = tuple(names)
    alphabet = merge_alphabets(names)
    return [Poly.variable(nm, alphabet) for nm in names]


def substitute(p: Poly, mapping: Mapping[str, object], alphabet: Sequence[str] | None = None) -> Poly:
    return p.substitute(mapping, alphabet)


def min_exponent(p: Poly, name: str) -> int:
    return p.min_exponent(name)


# -- expression parsing ----------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def evaluate_expression(text: str, env: Mapping[str, object]):
    """Evaluate an arithmetic expression over ``env`` without ``eval``.

    Accepts integer literals, names from ``env``, parentheses, unary +/- and
    the binary operators ``+ - * / ^`` (``^`` and ``**`` both mean power).
    Integer literals become ``mpq``.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return mpq(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                return left ** _int_literal(node.right)
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            return left / right
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise ValueError("exponent must be an integer literal")


def parse_poly(text: str, alphabet: Sequence[str] | None = None) -> Poly:
    """Parse a polynomial expression such as ``"c2 - 3/8*c1^2*c0^-1"``.

    Negative exponents are written ``x^-1`` or ``x^(-1)``.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    names = sorted({n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}, key=_order_key)
    alph = merge_alphabets(names, alphabet or ())
    env = {nm: Poly.variable(nm, alph) for nm in names}
    res = evaluate_expression(text, env)
    if not isinstance(res, Poly):
        res = Poly.constant(res, alph)
    return res.with_alphabet(alph)
