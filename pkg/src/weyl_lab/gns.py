"""Finite-span GNS geometry and a grid Schroedinger representation (n = 1).

For a state with generating function ``g`` and points ``x_1..x_k`` the vectors
``pi(W(x_j)) Omega`` have Gram matrix

    G[j, k] = omega(W(x_j)* W(x_k)) = exp(-i beta(x_j, x_k)) g(x_k - x_j),

which is the kernel matrix of ``g`` evaluated on the negated points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .states import GeneratingFunction, Variant, beta_matrix
from .symplectic import PhasePoint

__all__ = [
    "GnsSpan",
    "IndefiniteGram",
    "gns_build",
    "gram_matrix",
    "OrthogonalityScan",
    "gns_fixpoint_residual",
    "gns_orthogonality_scan",
    "GridRep",
    "grid_weyl_apply",
    "vector_function",
    "c0_decay_scan",
    "gaussian_vacuum",
]


class IndefiniteGram(ValueError):
    """The Gram matrix has an eigenvalue below ``-tol``: ``g`` is not a state on these points."""


@dataclass(frozen=True)
class GnsSpan:
    g: GeneratingFunction
    points: tuple[PhasePoint, ...]
    gram: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)
    null_basis: np.ndarray = field(repr=False)  # columns, orthonormal
    tol: float = 1e-9

    @property
    def rank(self) -> int:
        return len(self.points) - self.null_basis.shape[1]


def gram_matrix(g: GeneratingFunction, points: Sequence[PhasePoint]) -> np.ndarray:
    """``G[j, k] = exp(-i beta(x_j, x_k)) g(x_k - x_j)``."""
    return g.difference_values(points).T * np.exp(-1j * beta_matrix(g.space, points))


def gns_build(g: GeneratingFunction, points: Sequence[PhasePoint], tol: float = 1e-9) -> GnsSpan:
    """Gram matrix, spectrum and null space of ``span{pi(W(x)) Omega}``.

    Eigenvalues below ``tol * max(1, lambda_max)`` are treated as null
    directions; anything below ``-tol * max(1, lambda_max)`` is rejected.
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    gram = gram_matrix(g, points)
    lam, vec = np.linalg.eigh(gram)
    scale = max(1.0, float(lam[-1])) if len(lam) else 1.0
    if len(lam) and lam[0] < -tol * scale:
        raise IndefiniteGram(f"min eigenvalue {lam[0]:.3e} below -{tol * scale:.1e}")
    null = vec[:, lam < tol * scale]
    return GnsSpan(g, points, gram, lam, null, tol)


def gns_fixpoint_residual(g: GeneratingFunction, y: PhasePoint) -> float:
    """``|pi(W(y)) Omega - Omega|^2 = 2 - 2 Re g(y)``; zero iff ``g(y) = 1``."""
    return 2.0 - 2.0 * g(y).real


@dataclass(frozen=True)
class OrthogonalityScan:
    classes: int
    max_cross: float  # largest |G_jk| between different first blocks
    max_within_dev: float  # largest ||G_jk| - 1| inside a class
    rank: int


def gns_orthogonality_scan(span: GnsSpan) -> OrthogonalityScan:
    """Group the points of a ``g0`` span by first block and measure the Gram structure."""
    if span.g.variant is not Variant.DIRAC_G0:
        raise ValueError("orthogonality scan is defined for the Dirac function g0")
    labels = {}
    cls = [labels.setdefault(p.first, len(labels)) for p in span.points]
    same = np.equal.outer(cls, cls)
    mod = np.abs(span.gram)
    cross = float(mod[~same].max()) if (~same).any() else 0.0
    within = float(np.abs(mod[same] - 1).max())
    return OrthogonalityScan(len(labels), cross, within, span.rank)


# ---------------------------------------------------------------------------
# grid Schroedinger representation


@dataclass(frozen=True)
class GridRep:
    """Uniform periodic grid of ``N`` samples on ``[-X, X)``."""

    N: int = 1024
    X: float = 16.0

    def __post_init__(self):
        if self.N < 2 or self.N & (self.N - 1):
            raise ValueError("N must be a power of two")
        if not self.X > 0:
            raise ValueError("X must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.X / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.X + self.dx * np.arange(self.N)

    @property
    def k(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.dx)

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        return complex(np.vdot(a, b) * self.dx)

    def norm(self, a: np.ndarray) -> float:
        return math.sqrt(self.inner(a, a).real)


def gaussian_vacuum(rep: GridRep) -> np.ndarray:
    """``pi^(-1/4) exp(-x^2/2)`` sampled on the grid."""
    return (np.pi ** -0.25 * np.exp(-rep.x ** 2 / 2)).astype(complex)


def _coords(z) -> tuple[float, float]:
    if isinstance(z, PhasePoint):
        if z.n != 1:
            raise ValueError("grid representation is one-dimensional")
        return float(z.first[0]), float(z.second[0])
    z1, z2 = z
    return float(z1), float(z2)


def grid_weyl_apply(rep: GridRep, z, psi: np.ndarray) -> np.ndarray:
    """``(W(z) psi)(x) = exp(i z1 z2 / 2) exp(-i z2 x) psi(x - z1)``.

    This sign convention reproduces ``W(y) W(z) = exp(i beta(y, z)) W(y + z)``
    with ``beta(y, z) = (y1 z2 - y2 z1) / 2``. The translation is spectral, so
    ``psi`` must be negligible near the window edges.
    """
    z1, z2 = _coords(z)
    if abs(z1) > rep.X / 2:
        raise ValueError(f"shift {z1} exceeds half the window {rep.X / 2}")
    shifted = np.fft.ifft(np.fft.fft(psi) * np.exp(-1j * rep.k * z1))
    return np.exp(0.5j * z1 * z2) * np.exp(-1j * z2 * rep.x) * shifted


def vector_function(rep: GridRep, xi: np.ndarray, z_list) -> np.ndarray:
    """``f_xi(z) = <xi, pi(W(z)) xi>`` for every ``z`` in ``z_list``."""
    if abs(rep.norm(xi) - 1) > 1e-9:
        raise ValueError("xi must be normalized on the grid")
    return np.array([rep.inner(xi, grid_weyl_apply(rep, z, xi)) for z in z_list])


def c0_decay_scan(rep: GridRep, mixture, radius_grid: Sequence[float],
                  n_angles: int = 64) -> list[tuple[float, float]]:
    """Rows ``(R, max |h|)`` on circles ``|z| = R`` for ``h = sum p_k f_{xi_k}``.

    ``mixture`` is a normalized grid vector or a list of ``(p_k, xi_k)``.
    """
    if isinstance(mixture, np.ndarray):
        mixture = [(1.0, mixture)]
    weights = np.array([p for p, _ in mixture], dtype=float)
    if (weights < 0).any() or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("mixture weights must be nonnegative and sum to 1")
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    rows = []
    for r in radius_grid:
        zs = [(r * math.cos(a), r * math.sin(a)) for a in angles] if r > 0 else [(0.0, 0.0)]
        h = sum(p * vector_function(rep, xi, zs) for p, xi in mixture)
        rows.append((float(r), float(np.abs(h).max())))
    return rows
