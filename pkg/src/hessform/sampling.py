"""Seeded generators for rational points, forms and coordinate changes.

Every generator takes a :class:`random.Random` so callers control
reproducibility; nothing here touches global random state.
"""

from __future__ import annotations

import math
import os
import random
from fractions import Fraction
from typing import Sequence

from .poly import Form, monomials
from .xlinalg import RationalMatrix, determinant

NUM_BOUND = 20
DEN_BOUND = 5
DEFAULT_SEED = 0


def default_seed() -> int:
    """Seed from ``HESSFORM_SEED`` if set, else :data:`DEFAULT_SEED`."""
    value = os.environ.get("HESSFORM_SEED")
    return int(value) if value not in (None, "") else DEFAULT_SEED


def make_rng(seed: int | None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def random_rational(rng: random.Random, lo: Fraction | None = None, hi: Fraction | None = None) -> Fraction:
    """Rational with denominator at most 5 and numerator at most 20 in size.

    With ``lo``/``hi`` the value is drawn from that closed interval instead.
    """
    den = rng.randint(1, DEN_BOUND)
    if lo is None or hi is None:
        num_lo, num_hi = -NUM_BOUND, NUM_BOUND
    else:
        num_lo = max(-NUM_BOUND, math.ceil(Fraction(lo) * den))
        num_hi = min(NUM_BOUND, math.floor(Fraction(hi) * den))
        if num_lo > num_hi:
            num_lo, num_hi = math.ceil(Fraction(lo) * den), math.floor(Fraction(hi) * den)
    return Fraction(rng.randint(num_lo, num_hi), den)


def random_point(rng: random.Random, n: int, box: tuple | None = None) -> tuple[Fraction, ...]:
    """Nonzero rational point; coordinates drawn from ``box=(lo, hi)`` when given."""
    lo, hi = box if box is not None else (None, None)
    while True:
        p = tuple(random_rational(rng, lo, hi) for _ in range(n))
        if any(p):
            return p


def random_form(rng: random.Random, arity: int, degree: int, bound: int = 5, density: float = 1.0) -> Form:
    """Homogeneous form with integer coefficients in ``[-bound, bound]``; never zero."""
    mons = monomials(arity, degree)
    while True:
        terms = {m: rng.randint(-bound, bound) for m in mons if rng.random() < density}
        f = Form(arity, terms)
        if not f.is_zero:
            return f


def random_binary_form(rng: random.Random, degree: int, bound: int = 5) -> Form:
    return random_form(rng, 2, degree, bound)


def random_invertible_matrix(rng: random.Random, n: int, bound: int = 2) -> RationalMatrix:
    while True:
        m = RationalMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if determinant(m) != 0:
            return m


def scaled(point: Sequence, c) -> tuple:
    return tuple(c * p for p in point)
