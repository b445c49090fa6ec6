"""Finite-dimensional symplectic spaces with exact rational coordinates.

Points of the phase space ``Q x Q`` with ``Q = R^n`` are stored as two blocks of
:class:`fractions.Fraction`, so that equality, hashing and the symplectic form

    beta(y, z) = (<y1, z2> - <y2, z1>) / 2

are exact. Floating point only enters later, when phases ``exp(i beta)`` are
evaluated.
"""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import sympy

__all__ = [
    "DimensionError",
    "PhasePoint",
    "RationalComplex",
    "SpaceKind",
    "SymplecticSpace",
    "as_fraction",
    "beta",
    "beta_annihilator",
    "complex_inner",
    "complex_scale",
    "euclidean_inner",
    "isotropy_check",
    "lattice_form",
    "norm_sq",
    "span_rank",
    "standard_complex_inner",
]


class DimensionError(ValueError):
    """Raised when points or spaces of different dimension are combined."""


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, floats or ``"p/q"`` strings to an exact Fraction.

    Floats are converted exactly (``Fraction(0.1)`` is the binary value, not 1/10).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        f = float(value)
        if not math.isfinite(f):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(f)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


@dataclass(frozen=True)
class PhasePoint:
    """A point ``z = (z1, z2)`` of ``Q x Q`` with exact rational blocks."""

    first: tuple[Fraction, ...]
    second: tuple[Fraction, ...]

    def __post_init__(self):
        first = tuple(as_fraction(v) for v in self.first)
        second = tuple(as_fraction(v) for v in self.second)
        if len(first) != len(second):
            raise DimensionError(
                f"blocks differ in length: {len(first)} != {len(second)}"
            )
        if not first:
            raise DimensionError("phase points need block length n >= 1")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    @classmethod
    def of(cls, first: Iterable, second: Iterable) -> "PhasePoint":
        return cls(tuple(first), tuple(second))

    @classmethod
    def zero(cls, n: int) -> "PhasePoint":
        return cls((0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.first)

    def is_zero(self) -> bool:
        return not any(self.first) and not any(self.second)

    def _check(self, other: "PhasePoint") -> None:
        if not isinstance(other, PhasePoint):
            raise TypeError(f"expected PhasePoint, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} != {other.n}")

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(
            tuple(a + b for a, b in zip(self.first, other.first)),
            tuple(a + b for a, b in zip(self.second, other.second)),
        )

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(
            tuple(a - b for a, b in zip(self.first, other.first)),
            tuple(a - b for a, b in zip(self.second, other.second)),
        )

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(tuple(-a for a in self.first), tuple(-a for a in self.second))

    def scale(self, t) -> "PhasePoint":
        """Exact real scaling ``t * z``."""
        t = as_fraction(t)
        return PhasePoint(tuple(t * a for a in self.first), tuple(t * a for a in self.second))

    def __rmul__(self, t) -> "PhasePoint":
        if isinstance(t, numbers.Real):
            return self.scale(t)
        return NotImplemented

    def to_array(self):
        import numpy as np

        return np.array([float(v) for v in self.first + self.second])

    def __repr__(self) -> str:
        def fmt(block):
            return "(" + ", ".join(str(v) for v in block) + ")"

        return f"PhasePoint({fmt(self.first)}, {fmt(self.second)})"


class SpaceKind(enum.Enum):
    STANDARD_PAIRS = "standard_pairs"
    LATTICE_Z2 = "lattice_z2"


@dataclass(frozen=True)
class SymplecticSpace:
    """Either ``Q x Q`` with ``Q = R^n`` or the lattice ``Z^2`` with angle ``theta``.

    For the lattice the points are ``PhasePoint`` instances with ``n = 1`` and
    integer entries, ``m = ((m1), (m2))``.
    """

    kind: SpaceKind
    n: int = 1
    theta: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("block dimension must be >= 1")
        if self.kind is SpaceKind.LATTICE_Z2 and self.n != 1:
            raise DimensionError("the lattice Z^2 has block dimension 1")

    @classmethod
    def standard(cls, n: int) -> "SymplecticSpace":
        return cls(SpaceKind.STANDARD_PAIRS, n)

    @classmethod
    def lattice(cls, theta: float) -> "SymplecticSpace":
        return cls(SpaceKind.LATTICE_Z2, 1, float(theta))

    @property
    def dim(self) -> int:
        return 2 * self.n

    def check(self, *points: PhasePoint) -> None:
        for p in points:
            if not isinstance(p, PhasePoint):
                raise TypeError(f"expected PhasePoint, got {type(p).__name__}")
            if p.n != self.n:
                raise DimensionError(f"point of block length {p.n} in a space with n={self.n}")
            if self.kind is SpaceKind.LATTICE_Z2:
                if any(v.denominator != 1 for v in p.first + p.second):
                    raise ValueError(f"lattice points must be integral, got {p!r}")

    def basis(self) -> list[PhasePoint]:
        out = []
        for k in range(2 * self.n):
            coords = [0] * (2 * self.n)
            coords[k] = 1
            out.append(PhasePoint(tuple(coords[: self.n]), tuple(coords[self.n :])))
        return out

    def zero(self) -> PhasePoint:
        return PhasePoint.zero(self.n)

    def phase(self, y: PhasePoint, z: PhasePoint) -> float:
        """The real phase in ``W(y) W(z) = exp(i * phase) W(y + z)``."""
        self.check(y, z)
        if self.kind is SpaceKind.LATTICE_Z2:
            return self.theta * float(lattice_form(y, z))
        return float(_beta(y, z))


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _beta(y: PhasePoint, z: PhasePoint) -> Fraction:
    return (_dot(y.first, z.second) - _dot(y.second, z.first)) / 2


def lattice_form(m: PhasePoint, k: PhasePoint) -> int:
    """Integer form ``m1 k2 - m2 k1`` of the deformed torus relation."""
    return int(m.first[0] * k.second[0] - m.second[0] * k.first[0])


def beta(space: SymplecticSpace, y: PhasePoint, z: PhasePoint) -> Fraction:
    """Exact symplectic form ``(<y1, z2> - <y2, z1>) / 2``.

    On the lattice space this returns the rational part only; the phase is
    ``theta`` times twice this value, see :meth:`SymplecticSpace.phase`.
    """
    space.check(y, z)
    return _beta(y, z)


def euclidean_inner(y: PhasePoint, z: PhasePoint) -> Fraction:
    """Standard real inner product ``<y1, z1> + <y2, z2>``."""
    y._check(z)
    return _dot(y.first, z.first) + _dot(y.second, z.second)


def norm_sq(z: PhasePoint) -> Fraction:
    """Standard squared norm ``|z1|^2 + |z2|^2`` used by all generating functions."""
    return euclidean_inner(z, z)


class RationalComplex(NamedTuple):
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def _split_scalar(scalar) -> tuple[Fraction, Fraction]:
    if isinstance(scalar, RationalComplex):
        return scalar.re, scalar.im
    if isinstance(scalar, tuple) and len(scalar) == 2:
        return as_fraction(scalar[0]), as_fraction(scalar[1])
    if isinstance(scalar, numbers.Real):
        return as_fraction(scalar), Fraction(0)
    if isinstance(scalar, numbers.Complex):
        c = complex(scalar)
        return as_fraction(c.real), as_fraction(c.imag)
    raise TypeError(f"unsupported scalar {scalar!r}")


def complex_scale(z: PhasePoint, scalar) -> PhasePoint:
    """Complex scalar action ``(r + i s) z = (r z1 - s z2, s z1 + r z2)``.

    ``scalar`` may be a Python number (converted exactly from binary floats),
    a ``(re, im)`` pair of rationals or a :class:`RationalComplex`.
    """
    r, s = _split_scalar(scalar)
    return PhasePoint(
        tuple(r * a - s * b for a, b in zip(z.first, z.second)),
        tuple(s * a + r * b for a, b in zip(z.first, z.second)),
    )


def complex_inner(y: PhasePoint, z: PhasePoint) -> RationalComplex:
    """``(y, z)_C = beta(y, i z) + i beta(y, z)``.

    Antilinear in ``y``, linear in ``z``. It equals half of the standard complex
    inner product ``sum(conj(y_k) z_k)`` under ``z_k = z1_k + i z2_k``.
    """
    y._check(z)
    iz = complex_scale(z, (0, 1))
    return RationalComplex(_beta(y, iz), _beta(y, z))


def standard_complex_inner(y: PhasePoint, z: PhasePoint) -> RationalComplex:
    """The usual ``sum(conj(y_k) z_k)``; exactly twice :func:`complex_inner`."""
    y._check(z)
    re = _dot(y.first, z.first) + _dot(y.second, z.second)
    im = _dot(y.first, z.second) - _dot(y.second, z.first)
    return RationalComplex(re, im)


def isotropy_check(space: SymplecticSpace, generators: Sequence[PhasePoint]) -> bool:
    """True iff ``beta`` vanishes on every pair of generators (span L within L^beta)."""
    if not generators:
        raise ValueError("isotropy_check needs at least one generator")
    space.check(*generators)
    return all(
        _beta(a, b) == 0
        for i, a in enumerate(generators)
        for b in generators[i + 1 :]
    )


def beta_annihilator(space: SymplecticSpace, generators: Sequence[PhasePoint]) -> list[PhasePoint]:
    """Exact rational basis of ``L^beta = {z : beta(z, g) = 0 for all generators g}``."""
    if space.kind is not SpaceKind.STANDARD_PAIRS:
        raise ValueError("beta_annihilator is defined for StandardPairs spaces only")
    space.check(*generators)
    n = space.n
    if not generators:
        return space.basis()
    # beta(z, g) = (<z1, g2> - <z2, g1>) / 2 as a row acting on (z1, z2)
    rows = [[sympy.Rational(v.numerator, v.denominator) for v in g.second]
            + [sympy.Rational(-v.numerator, v.denominator) for v in g.first]
            for g in generators]
    null = sympy.Matrix(rows).nullspace()
    out = []
    for vec in null:
        coords = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in vec]
        out.append(PhasePoint(tuple(coords[:n]), tuple(coords[n:])))
    return out


def span_rank(points: Sequence[PhasePoint]) -> int:
    """Exact rank of the rational span of ``points``."""
    if not points:
        return 0
    rows = [[sympy.Rational(v.numerator, v.denominator) for v in p.first + p.second] for p in points]
    return sympy.Matrix(rows).rank()
