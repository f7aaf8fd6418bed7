"""The 194 minimal generators of joint covariants of a quartic and a sextic.

Each generator is given by a recipe of nested transvectants and products
over ``f``, ``g`` and earlier generators.  Labels follow the scheme
``<d_a, d_b>_{m, omega[, n]}`` with ``omega = 4 d_a + 6 d_b - 2 m``; the
corresponding Jacobi form has weight ``omega - 4 m`` and index ``m``.
"""

from __future__ import annotations

import csv
import io
import re
import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .binary_forms import Covariant, covariant_grades, quartic, sextic, transvectant
from .datafiles import read_verified
from .jacobi_ring import JacobiPolynomial, is_jacobi_form, psi_j_inverse
from .semiinvariants import source

RECIPE_FILE = "generators.txt"
OMEGA_COLUMNS = (0, 2, 4, 6, 8, 10, 12)


@dataclass(frozen=True, order=True)
class GeneratorLabel:
    d_a: int
    d_b: int
    m: int
    omega: int
    n: int | None = None

    @classmethod
    def parse(cls, text: str) -> "GeneratorLabel":
        parts = [int(x) for x in text.strip().strip("()").split(",")]
        if len(parts) not in (4, 5):
            raise ValueError(f"bad generator label {text!r}")
        return cls(*parts)

    @property
    def key(self) -> str:
        base = f"{self.d_a},{self.d_b},{self.m},{self.omega}"
        return base if self.n is None else f"{base},{self.n}"

    @property
    def weight(self) -> int:
        return self.omega - 4 * self.m

    def check(self) -> None:
        if self.omega != 4 * self.d_a + 6 * self.d_b - 2 * self.m:
            raise ValueError(f"label {self.key}: omega != 4 d_a + 6 d_b - 2 m")

    def __str__(self) -> str:
        sub = f"{self.m},{self.omega}" + ("" if self.n is None else f",[{self.n}]")
        return f"<{self.d_a},{self.d_b}>_{{{sub}}}"


# -- recipe grammar ---------------------------------------------------------
#   expr   := factor ('*' factor)*
#   factor := atom ('^' int)?
#   atom   := 'f' | 'g' | label | '<' expr '|' expr '>' int | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\(\d+(?:,\d+){3,4}\))|(\d+)|(.))")


@dataclass(frozen=True)
class Node:
    kind: str  # "f", "g", "ref", "prod", "pow", "tv"
    args: tuple = ()


def _tokens(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text.strip()):
        lab, num, ch = m.groups()
        if lab:
            out.append(("label", lab))
        elif num:
            out.append(("int", int(num)))
        elif ch and not ch.isspace():
            out.append(("sym", ch))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ValueError(f"cannot parse recipe {self.text!r} at token {self.i}")
        self.i += 1
        return tok[1]

    def expr(self) -> Node:
        factors = [self.factor()]
        while self.peek() == ("sym", "*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Node("prod", tuple(factors))

    def factor(self) -> Node:
        node = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            node = Node("pow", (node, self.take("int")))
        return node

    def atom(self) -> Node:
        kind, val = self.peek()
        if kind == "label":
            self.take()
            return Node("ref", (GeneratorLabel.parse(val),))
        if (kind, val) in (("sym", "f"), ("sym", "g")):
            self.take()
            return Node(val)
        if (kind, val) == ("sym", "<"):
            self.take()
            left = self.expr()
            self.take("sym", "|")
            right = self.expr()
            self.take("sym", ">")
            return Node("tv", (left, right, self.take("int")))
        if (kind, val) == ("sym", "("):
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        raise ValueError(f"cannot parse recipe {self.text!r} at token {self.i}")


def parse_recipe(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in recipe {text!r}")
    return node


def references(node: Node) -> list[GeneratorLabel]:
    if node.kind == "ref":
        return [node.args[0]]
    out = []
    for a in node.args:
        if isinstance(a, Node):
            out.extend(references(a))
    return out


@dataclass(frozen=True)
class GeneratorRecipe:
    label: GeneratorLabel
    text: str
    tree: Node


def parse_catalog(text: str) -> list[GeneratorRecipe]:
    """Parse the recipe file; every reference must point to an earlier entry."""
    recipes = []
    seen = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        label = GeneratorLabel.parse(lhs)
        label.check()
        if label in seen:
            raise ValueError(f"duplicate label {label.key}")
        tree = parse_recipe(rhs)
        for ref in references(tree):
            if ref not in seen:
                raise ValueError(f"{label.key} refers to {ref.key} before it is defined")
        seen.add(label)
        recipes.append(GeneratorRecipe(label, rhs, tree))
    return recipes


@lru_cache(maxsize=1)
def recipes() -> tuple[GeneratorRecipe, ...]:
    return tuple(parse_catalog(read_verified(RECIPE_FILE)))


def recipe_for(label: GeneratorLabel | str) -> GeneratorRecipe:
    if isinstance(label, str):
        label = GeneratorLabel.parse(label)
    for r in recipes():
        if r.label == label:
            return r
    raise KeyError(f"no generator labelled {label.key}")


# -- evaluation -------------------------------------------------------------

class CatalogError(RuntimeError):
    pass


class Catalog:
    """Memoized evaluation of recipes.

    The cache is guarded by a lock; two threads may evaluate the same label
    concurrently, and whichever stores first wins (results are identical).
    """

    def __init__(self):
        self._cache: dict[GeneratorLabel, Covariant] = {}
        self._lock = threading.Lock()
        self._f = quartic()
        self._g = sextic()

    def _eval(self, node: Node) -> Covariant:
        k = node.kind
        if k == "f":
            return self._f
        if k == "g":
            return self._g
        if k == "ref":
            return self.build(node.args[0])
        if k == "prod":
            out = self._eval(node.args[0])
            for a in node.args[1:]:
                out = out * self._eval(a)
            return out
        if k == "pow":
            return self._eval(node.args[0]) ** node.args[1]
        if k == "tv":
            return transvectant(self._eval(node.args[0]), self._eval(node.args[1]), node.args[2])
        raise ValueError(f"unknown node {k}")

    def cached(self, label: GeneratorLabel) -> Covariant | None:
        with self._lock:
            return self._cache.get(label)

    def build(self, label: GeneratorLabel | str) -> Covariant:
        """Evaluate a generator, validating that it is nonzero with the labelled grades."""
        rec = recipe_for(label)
        hit = self.cached(rec.label)
        if hit is not None:
            return hit
        cov = self._eval(rec.tree)
        if cov.is_zero():
            raise CatalogError(f"generator {rec.label.key} evaluates to zero")
        got = covariant_grades(cov)
        want = (rec.label.d_a, rec.label.d_b, rec.label.omega)
        if got != want:
            raise CatalogError(f"generator {rec.label.key}: grades {got} do not match label {want}")
        with self._lock:
            return self._cache.setdefault(rec.label, cov)

    def build_all(self) -> dict[GeneratorLabel, Covariant]:
        return {r.label: self.build(r.label) for r in recipes()}


_DEFAULT = Catalog()


def default_catalog() -> Catalog:
    return _DEFAULT


def build_generator(label: GeneratorLabel | str, catalog: Catalog | None = None) -> Covariant:
    return (catalog or _DEFAULT).build(label)


def generator_as_jacobi(label: GeneratorLabel | str, catalog: Catalog | None = None) -> JacobiPolynomial:
    """Source of the generator with alpha -> a (a1 = 0), beta -> b; must be a Jacobi form."""
    cov = build_generator(label, catalog)
    jp = psi_j_inverse(source(cov))
    if jp.poly.is_zero() or not is_jacobi_form(jp.poly):
        raise CatalogError(f"generator {recipe_for(label).label.key} does not map to a Jacobi form")
    return jp


# -- the (m, omega) count table ---------------------------------------------

@dataclass(frozen=True)
class CatalogTable:
    counts: dict[tuple[int, int], int]

    @property
    def max_index(self) -> int:
        return max(m for m, _ in self.counts)

    def row(self, m: int) -> tuple[int, ...]:
        return tuple(self.counts.get((m, w), 0) for w in OMEGA_COLUMNS)

    def column_totals(self) -> tuple[int, ...]:
        return tuple(sum(c for (m, w), c in self.counts.items() if w == col) for col in OMEGA_COLUMNS)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_csv(self) -> str:
        """Rows m = 0..max, columns omega = 0..12 and a row total; zeros print as ``-``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m\\omega", *OMEGA_COLUMNS, "#"])
        for m in range(self.max_index + 1):
            row = self.row(m)
            w.writerow([m, *(c if c else "-" for c in row), sum(row)])
        w.writerow(["Tot.", *self.column_totals(), self.total])
        return buf.getvalue()


def label_table() -> CatalogTable:
    """Counts by (m, omega) read from the labels alone."""
    return CatalogTable(dict(Counter((r.label.m, r.label.omega) for r in recipes())))


def catalog_table(catalog: Catalog | None = None) -> CatalogTable:
    """Build every generator (each must be nonzero with matching grades) and count by (m, omega)."""
    cat = catalog or _DEFAULT
    counts: Counter = Counter()
    for r in recipes():
        cov = cat.build(r.label)
        counts[(r.label.m, cov.order)] += 1
    return CatalogTable(dict(counts))
