"""Seeded random rational points, Weyl elements and atomic measures for checks."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .symplectic import PhasePoint, SymplecticSpace
from .weyl import WeylElement


def random_point(rng: np.random.Generator, n: int, *, max_num: int = 6, max_den: int = 4) -> PhasePoint:
    """Random rational point with small numerators and denominators."""
    num = rng.integers(-max_num, max_num + 1, size=2 * n)
    den = rng.integers(1, max_den + 1, size=2 * n)
    coords = [Fraction(int(a), int(b)) for a, b in zip(num, den)]
    return PhasePoint(tuple(coords[:n]), tuple(coords[n:]))


def random_element(rng: np.random.Generator, space: SymplecticSpace, terms: int = 3, **kw) -> WeylElement:
    out = {}
    for _ in range(terms):
        z = random_point(rng, space.n, **kw)
        out[z] = complex(rng.normal(), rng.normal())
    return WeylElement(space, out)


def random_lattice_point(rng: np.random.Generator, n: int, radius: int = 3) -> PhasePoint:
    """Random point with integer coordinates in ``[-radius, radius]``."""
    c = rng.integers(-radius, radius + 1, size=2 * n)
    return PhasePoint(tuple(int(v) for v in c[:n]), tuple(int(v) for v in c[n:]))
