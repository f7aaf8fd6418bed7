"""Bases of W(E8)-invariant weak Jacobi forms of given weight and index.

Ansatz: every a/b monomial of weight k and index m.  Rewriting in c/d
coordinates, the Jacobi forms are the combinations in which all negative
powers of c0 cancel.  Translation preserves the degrees (d_a, d_b), so the
linear system splits into independent blocks, one per degree pair.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

from .exact_poly import Poly
from .jacobi_ring import (
    AB_ALPHABET, JacobiPolynomial, ab_to_cd, grades, is_jacobi_form, variable_grade,
)
from .linalg import primitive_integer_vector, sparse_nullspace, sparse_rank

A_VARS = ("a0", "a2", "a3", "a4")
B_VARS = tuple(f"b{j}" for j in range(7))


def _index(name: str) -> int:
    return variable_grade(name)[1]


def _monomials_of(names: tuple[str, ...], degree: int, index: int) -> list[tuple[int, ...]]:
    """Exponent vectors over ``names`` with total degree ``degree`` and total index ``index``."""
    idx = [_index(nm) for nm in names]
    out = []

    def rec(pos: int, deg_left: int, ind_left: int, acc: list[int]):
        if pos == len(names) - 1:
            if deg_left * idx[pos] == ind_left:
                out.append(tuple(acc + [deg_left]))
            return
        for e in range(deg_left + 1):
            used = e * idx[pos]
            if used > ind_left:
                break
            rec(pos + 1, deg_left - e, ind_left - used, acc + [e])

    if degree < 0 or index < 0:
        return []
    rec(0, degree, index, [])
    return out


def degree_pairs(k: int, m: int) -> list[tuple[int, int]]:
    """(d_a, d_b) with 4 d_a + 6 d_b = k + 6 m."""
    total = k + 6 * m
    if total < 0:
        return []
    return [(da, (total - 4 * da) // 6) for da in range(total // 4 + 1) if (total - 4 * da) % 6 == 0]


@dataclass(frozen=True)
class MonomialAnsatz:
    k: int
    m: int
    monomials: tuple[Poly, ...]
    blocks: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]  # (d_a, d_b) -> positions

    def __len__(self) -> int:
        return len(self.monomials)


def enumerate_monomials(k: int, m: int) -> MonomialAnsatz:
    """All a/b monomials of weight ``k`` and index ``m``, grouped by (d_a, d_b)."""
    if m < 0:
        raise ValueError("index must be non-negative")
    monos: list[Poly] = []
    blocks = []
    for da, db in degree_pairs(k, m):
        start = len(monos)
        for ia in range(m + 1):
            a_part = _monomials_of(A_VARS, da, ia)
            if not a_part:
                continue
            b_part = _monomials_of(B_VARS, db, m - ia)
            for ea in a_part:
                for eb in b_part:
                    monos.append(Poly.from_terms(AB_ALPHABET, {ea + eb: 1}))
        if len(monos) > start:
            blocks.append(((da, db), tuple(range(start, len(monos)))))
    return MonomialAnsatz(k, m, tuple(monos), tuple(blocks))


@lru_cache(maxsize=4096)
def _translated_power(name: str, e: int) -> Poly:
    if e == 1:
        return ab_to_cd(Poly.variable(name, AB_ALPHABET))
    half = _translated_power(name, e // 2)
    sq = half * half
    return sq * _translated_power(name, 1) if e % 2 else sq


def translate_monomial(mono: Poly) -> Poly:
    """``ab_to_cd`` of a single monomial via cached images of variable powers."""
    (exps, c), = mono.terms()
    out = Poly.constant(c)
    for nm, e in zip(mono.alphabet, exps):
        if e:
            out = out * _translated_power(nm, e)
    return out


def _negative_c0_rows(images: list[Poly]) -> list[dict[int, object]]:
    rows: dict[tuple, dict[int, object]] = {}
    for col, img in enumerate(images):
        if img.is_zero() or "c0" not in img.alphabet:
            continue
        c0 = img.alphabet.index("c0")
        for exps, c in img.terms():
            if exps[c0] < 0:
                key = tuple(sorted((nm, e) for nm, e in zip(img.alphabet, exps) if e))
                rows.setdefault(key, {})[col] = c
    return list(rows.values())


@dataclass
class BasisResult:
    k: int
    m: int
    basis: list[JacobiPolynomial]
    ansatz_size: int = 0
    seconds: float = field(default=0.0, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def jacobi_basis(k: int, m: int) -> BasisResult:
    """Basis of weight-``k`` index-``m`` weak Jacobi forms as a/b polynomials.

    Each element is the ansatz combination given by a primitive integer
    nullspace vector of the negative-c0 constraint system.
    """
    t0 = time.perf_counter()
    ansatz = enumerate_monomials(k, m)
    basis: list[JacobiPolynomial] = []
    for _, positions in ansatz.blocks:
        monos = [ansatz.monomials[i] for i in positions]
        rows = _negative_c0_rows([translate_monomial(p) for p in monos])
        for vec in sparse_nullspace(rows, len(monos)):
            ints = primitive_integer_vector(vec)
            terms = {}
            for coeff, mono in zip(ints, monos):
                if coeff:
                    terms[mono.terms()[0][0]] = coeff
            basis.append(JacobiPolynomial(Poly.from_terms(AB_ALPHABET, terms)))
    return BasisResult(k, m, basis, len(ansatz), time.perf_counter() - t0)


_BASIS_CACHE: dict[tuple[int, int], BasisResult] = {}


def cached_basis(k: int, m: int) -> BasisResult:
    key = (k, m)
    if key not in _BASIS_CACHE:
        _BASIS_CACHE[key] = jacobi_basis(k, m)
    return _BASIS_CACHE[key]


def _vector(p: Poly) -> dict:
    return {exps: c for exps, c in p.with_alphabet(AB_ALPHABET).terms()}


def span_rank(polys) -> int:
    return sparse_rank([_vector(p.poly if isinstance(p, JacobiPolynomial) else p) for p in polys])


# -- generators of the omega = 0 subring -----------------------------------

@dataclass
class LbTable:
    counts: list[int]
    dimensions: list[int]
    generators: dict[int, list[JacobiPolynomial]]
    decomposable_ranks: list[int]
    seconds: list[float]

    def as_rows(self) -> list[dict]:
        return [{"m": m, "d_lb": c, "dim": d, "decomposable_rank": r}
                for m, (c, d, r) in enumerate(zip(self.counts, self.dimensions, self.decomposable_ranks))]


def _index_partitions(m: int, parts: list[int]) -> list[tuple[int, ...]]:
    """Multisets from ``parts`` (allowing repeats) summing to ``m``."""
    out = []
    for r in range(1, m + 1):
        found = False
        for combo in combinations_with_replacement(range(len(parts)), r):
            if sum(parts[i] for i in combo) == m:
                out.append(combo)
                found = True
        if not found and r * min(parts or [m + 1]) > m:
            break
    return out


def lb_generator_counts(max_index: int) -> LbTable:
    """Number of index-m generators of the ring of weight -4m, index m forms, m = 0..max_index.

    The decomposable part at index m is spanned by products of generators
    found at lower index; the span of all products of lower-index basis
    elements is computed as well and the two ranks must agree.
    """
    counts, dims, ranks, secs = [], [], [], []
    gens: dict[int, list[JacobiPolynomial]] = {}
    bases: dict[int, list[JacobiPolynomial]] = {}
    for m in range(max_index + 1):
        t0 = time.perf_counter()
        res = cached_basis(-4 * m, m)
        bases[m] = res.basis
        if m == 0:
            # constants: the unit is not a generator
            counts.append(0)
            dims.append(res.dimension)
            ranks.append(res.dimension)
            gens[0] = []
            secs.append(time.perf_counter() - t0)
            continue
        # products of lower-index basis elements (full safety span)
        full = []
        for i in range(1, m // 2 + 1):
            for p in bases[i]:
                for q in bases[m - i]:
                    full.append(p.poly * q.poly)
        full_rank = span_rank(full)
        # products of previously found generators over index partitions
        flat = [(i, g) for i in sorted(gens) for g in gens[i]]
        part_products = []
        for combo in _index_partitions(m, [i for i, _ in flat]):
            if len(combo) < 2:
                continue
            prod = Poly.constant(1, AB_ALPHABET)
            for j in combo:
                prod = prod * flat[j][1].poly
            part_products.append(prod)
        part_rank = span_rank(part_products)
        if part_rank != full_rank:
            raise RuntimeError(f"index {m}: generator products have rank {part_rank}, "
                               f"all lower products have rank {full_rank}")
        # pick generators: basis elements that enlarge the decomposable span
        chosen = []
        current = list(full)
        rank = full_rank
        for b in res.basis:
            r = span_rank(current + [b.poly])
            if r > rank:
                chosen.append(b)
                current.append(b.poly)
                rank = r
        gens[m] = chosen
        counts.append(res.dimension - full_rank)
        dims.append(res.dimension)
        ranks.append(full_rank)
        secs.append(time.perf_counter() - t0)
        if len(chosen) != counts[-1]:
            raise RuntimeError(f"index {m}: inconsistent generator count")
    return LbTable(counts, dims, gens, ranks, secs)


# -- cross-check against products of catalog generators ---------------------

def catalog_products(m: int, omega: int, catalog=None) -> list[Poly]:
    """All products of catalog generators (as a/b polynomials) with total index m and order omega."""
    from .generator_catalog import generator_as_jacobi, recipes

    items = [(r.label.m, r.label.omega, r.label) for r in recipes()
             if r.label.m <= m and r.label.omega <= omega]
    # generators with m = 0 and omega = 0 do not exist, so every factor raises m or omega
    out: list[Poly] = []
    polys = {lab: generator_as_jacobi(lab, catalog).poly for _, _, lab in items}

    def rec(start: int, m_left: int, w_left: int, acc: Poly):
        if m_left == 0 and w_left == 0:
            out.append(acc)
            return
        for j in range(start, len(items)):
            mi, wi, lab = items[j]
            if mi <= m_left and wi <= w_left and (mi or wi):
                rec(j, m_left - mi, w_left - wi, acc * polys[lab])

    rec(0, m, omega, Poly.constant(1, AB_ALPHABET))
    return out


def catalog_rank_check(m: int, omega: int, catalog=None) -> dict:
    """Rank of catalog-generator products versus the algorithm's dimension at (k, m) = (omega - 4m, m)."""
    prods = catalog_products(m, omega, catalog)
    rank = span_rank(prods)
    dim = cached_basis(omega - 4 * m, m).dimension
    return {"m": m, "omega": omega, "k": omega - 4 * m, "products": len(prods),
            "rank": rank, "dimension": dim, "pass": rank == dim}


def verify_basis(result: BasisResult) -> bool:
    """Every element is a Jacobi form of the requested grades."""
    for b in result.basis:
        g = grades(b.poly)
        if (g.k, g.m) != (result.k, result.m) or not is_jacobi_form(b.poly):
            return False
    return True
