"""The twisted group algebra ``span{W(z)}`` with exact supports.

An element is a finite formal sum ``sum_z c_z W(z)``. Supports are exact
:class:`PhasePoint` keys; coefficients are complex doubles. The product is the
bilinear extension of ``W(y) W(z) = exp(i beta(y, z)) W(y + z)``.
"""
from __future__ import annotations

import cmath
import json
import numbers
from typing import Iterable, Mapping

from .symplectic import PhasePoint, SymplecticSpace, as_fraction

__all__ = ["SpaceMismatch", "WeylElement", "weyl_mul", "adjoint", "l1_norm", "max_deviation"]


class SpaceMismatch(ValueError):
    """Elements living over different symplectic spaces were combined."""


class WeylElement:
    """Finite sum ``sum_z c_z W(z)`` over a fixed :class:`SymplecticSpace`.

    Instances are treated as immutable. Zero coefficients are never stored.
    """

    __slots__ = ("space", "_terms")

    def __init__(self, space: SymplecticSpace, terms: Mapping[PhasePoint, complex] | None = None):
        self.space = space
        clean: dict[PhasePoint, complex] = {}
        for z, c in (terms or {}).items():
            space.check(z)
            c = complex(c)
            if c != 0:
                clean[z] = clean.get(z, 0j) + c
        self._terms = {z: c for z, c in clean.items() if c != 0}

    # constructors
    @classmethod
    def unit(cls, space: SymplecticSpace) -> "WeylElement":
        return cls(space, {space.zero(): 1.0})

    @classmethod
    def generator(cls, space: SymplecticSpace, z: PhasePoint, coeff: complex = 1.0) -> "WeylElement":
        """``coeff * W(z)``."""
        return cls(space, {z: coeff})

    @classmethod
    def zero(cls, space: SymplecticSpace) -> "WeylElement":
        return cls(space, {})

    # access
    @property
    def terms(self) -> dict[PhasePoint, complex]:
        return dict(self._terms)

    @property
    def support(self) -> frozenset[PhasePoint]:
        return frozenset(self._terms)

    def coeff(self, z: PhasePoint) -> complex:
        return self._terms.get(z, 0j)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def _same_space(self, other: "WeylElement") -> None:
        if not isinstance(other, WeylElement):
            raise TypeError(f"expected WeylElement, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} != {other.space}")

    # linear structure
    def __add__(self, other):
        if isinstance(other, numbers.Number):
            other = WeylElement.unit(self.space).scale(other)
        self._same_space(other)
        out = dict(self._terms)
        for z, c in other._terms.items():
            out[z] = out.get(z, 0j) + c
        return WeylElement(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.space, {z: -c for z, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, alpha: complex) -> "WeylElement":
        return WeylElement(self.space, {z: alpha * c for z, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other):
        return weyl_mul(self, other)

    @property
    def H(self) -> "WeylElement":
        return adjoint(self)

    def prune(self, tol: float) -> "WeylElement":
        """Drop coefficients with ``|c| <= tol`` (float cancellation residue)."""
        return WeylElement(self.space, {z: c for z, c in self._terms.items() if abs(c) > tol})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self):
        return hash((self.space, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        parts = [f"({c:.6g})W{z!r}" for z, c in self._terms.items()]
        return "WeylElement(" + (" + ".join(parts) or "0") + ")"

    # serialization
    def to_json(self) -> list[dict]:
        """``[{"point": {"first": [...], "second": [...]}, "re": .., "im": ..}, ...]``."""
        rows = []
        for z, c in sorted(self._terms.items(), key=lambda t: (t[0].first, t[0].second)):
            rows.append({
                "point": {"first": [str(v) for v in z.first], "second": [str(v) for v in z.second]},
                "re": c.real,
                "im": c.imag,
            })
        return rows

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, space: SymplecticSpace, rows: Iterable[Mapping]) -> "WeylElement":
        terms: dict[PhasePoint, complex] = {}
        for row in rows:
            pt = row["point"]
            z = PhasePoint(tuple(as_fraction(v) for v in pt["first"]),
                           tuple(as_fraction(v) for v in pt["second"]))
            terms[z] = terms.get(z, 0j) + complex(row["re"], row["im"])
        return cls(space, terms)

    @classmethod
    def loads(cls, space: SymplecticSpace, text: str) -> "WeylElement":
        return cls.from_json(space, json.loads(text))


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Twisted product: ``W(y) W(z) = exp(i beta(y, z)) W(y + z)`` extended bilinearly."""
    a._same_space(b)
    space = a.space
    out: dict[PhasePoint, complex] = {}
    for y, cy in a._terms.items():
        for z, cz in b._terms.items():
            w = y + z
            out[w] = out.get(w, 0j) + cy * cz * cmath.exp(1j * space.phase(y, z))
    return WeylElement(space, out)


def adjoint(a: WeylElement) -> WeylElement:
    """``(c W(z))* = conj(c) W(-z)``."""
    return WeylElement(a.space, {-z: c.conjugate() for z, c in a._terms.items()})


def l1_norm(a: WeylElement) -> float:
    """``sum |c_z|``; dominates the C*-norm and every state value."""
    return float(sum(abs(c) for c in a._terms.values()))


def max_deviation(a: WeylElement, b: WeylElement) -> float:
    """Largest coefficient difference over the union of both supports."""
    a._same_space(b)
    keys = set(a._terms) | set(b._terms)
    return max((abs(a.coeff(z) - b.coeff(z)) for z in keys), default=0.0)
