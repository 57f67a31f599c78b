"""Seeded random draws of forms, subspaces and group elements."""

from __future__ import annotations

import random
from fractions import Fraction

from .classify import DEFAULT_COEFF_BOUND
from .forms import BinaryForm, FormSubspace


def trial_rng(seed: int, *labels) -> random.Random:
    """Independent stream for one trial, derived from the master seed and labels."""
    return random.Random(":".join(str(x) for x in (seed, *labels)))


def random_form(d: int, rng: random.Random, bound: int = DEFAULT_COEFF_BOUND) -> BinaryForm:
    while True:
        f = BinaryForm(d, tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d + 1)))
        if not f.is_zero():
            return f


def random_subspace(d: int, dim: int, rng: random.Random, bound: int = DEFAULT_COEFF_BOUND) -> FormSubspace:
    """Uniform integer spanning set, redrawn until it has the requested dimension."""
    if not 0 <= dim <= d + 1:
        raise ValueError(f"no subspace of dimension {dim} in S^{d} U")
    while True:
        T = FormSubspace.span(d, [[rng.randint(-bound, bound) for _ in range(d + 1)] for _ in range(dim)])
        if T.dim == dim:
            return T


def random_gl2(rng: random.Random, bound: int = 10) -> tuple[tuple[int, int], tuple[int, int]]:
    while True:
        a, b, c, e = (rng.randint(-bound, bound) for _ in range(4))
        if a * e - b * c:
            return ((a, b), (c, e))


def random_direction_pair(rng: random.Random, bound: int = 10):
    (a, b), (c, e) = random_gl2(rng, bound)
    return (Fraction(a), Fraction(c)), (Fraction(b), Fraction(e))
