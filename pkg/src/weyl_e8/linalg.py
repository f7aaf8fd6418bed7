"""Exact rational linear algebra: rank, nullspace, determinant."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from gmpy2 import mpq

from .exact_poly import rational


@dataclass(frozen=True)
class ExactMatrix:
    """Rectangular matrix of exact rationals."""

    rows: tuple[tuple[mpq, ...], ...]
    ncols: int

    @classmethod
    def of(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(rational(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix is not rectangular")
        return cls(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols


def _as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix.of(m)


def rref(m) -> tuple[list[list[mpq]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _as_matrix(m)
    a = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def exact_rank(m) -> int:
    """Rank over Q by exact elimination on sparse rows."""
    m = _as_matrix(m)
    return sparse_rank([{j: x for j, x in enumerate(row) if x} for row in m.rows])


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank of rows given as ``{column: value}`` dicts (columns may be any hashables)."""
    basis: dict = {}  # pivot column -> reduced row with leading 1 at pivot
    order: dict = {}
    for row in rows:
        v = {k: rational(x) for k, x in row.items() if x}
        while v:
            piv = min(v, key=lambda k: order.setdefault(k, len(order)))
            if piv in basis:
                f = v[piv]
                for k, x in basis[piv].items():
                    y = v.get(k, 0) - f * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
            else:
                inv = 1 / v[piv]
                basis[piv] = {k: x * inv for k, x in v.items()}
                break
    return len(basis)


def nullspace(m) -> list[list[mpq]]:
    """Basis of the right nullspace, one vector per free column."""
    m = _as_matrix(m)
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [mpq(0)] * m.ncols
        v[fcol] = mpq(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence[mpq]) -> list[int]:
    """Scale to coprime integers with the first nonzero entry positive."""
    v = [rational(x) for x in v]
    if not any(v):
        return [0] * len(v)
    den = reduce(lcm, (int(x.denominator) for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints if x))
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return ints


def determinant(m) -> mpq:
    m = _as_matrix(m)
    n, nc = m.shape
    if n != nc:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    det = mpq(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return mpq(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def sparse_nullspace(rows: Sequence[dict], ncols: int) -> list[list[mpq]]:
    """Right nullspace of a matrix given as sparse rows ``{column index: value}``.

    Rows are reduced one at a time against the pivots found so far, so the
    working set never exceeds ``ncols`` rows however many constraints come in.
    """
    basis: dict[int, dict[int, mpq]] = {}
    for row in rows:
        v = {j: rational(x) for j, x in row.items() if x}
        while v:
            piv = min(v)
            if piv not in basis:
                inv = 1 / v[piv]
                basis[piv] = {j: x * inv for j, x in v.items()}
                break
            f = v[piv]
            for j, x in basis[piv].items():
                y = v.get(j, 0) - f * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
    # back substitution to reduced echelon form
    for piv in sorted(basis, reverse=True):
        row = basis[piv]
        for other in basis:
            if other < piv and piv in basis[other]:
                f = basis[other][piv]
                target = basis[other]
                for j, x in row.items():
                    y = target.get(j, 0) - f * x
                    if y:
                        target[j] = y
                    else:
                        target.pop(j, None)
    free = [j for j in range(ncols) if j not in basis]
    out = []
    for fcol in free:
        v = [mpq(0)] * ncols
        v[fcol] = mpq(1)
        for piv, row in basis.items():
            x = row.get(fcol)
            if x:
                v[piv] = -x
        out.append(v)
    return out
