"""Reproducible random rationals and unimodular matrices for exact property checks."""

from __future__ import annotations

import random

from gmpy2 import mpq

DEFAULT_SEED = 20240601
BOUND = 9


def rng(seed: int | None = None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def random_rational(r: random.Random, nonzero: bool = False) -> mpq:
    """Numerator in [-9, 9], denominator in [1, 9]."""
    while True:
        x = mpq(r.randint(-BOUND, BOUND), r.randint(1, BOUND))
        if x or not nonzero:
            return x


def random_unimodular(r: random.Random) -> tuple[tuple[mpq, mpq], tuple[mpq, mpq]]:
    """Random rational 2x2 matrix with determinant exactly 1."""
    a = random_rational(r, nonzero=True)
    b = random_rational(r)
    c = random_rational(r)
    d = (1 + b * c) / a
    if r.random() < 0.25:
        # exercise the a == 0 branch of the factorized action too
        return ((mpq(0), -1 / c if c else mpq(-1)), (c if c else mpq(1), d))
    return ((a, b), (c, d))
