"""States on ``span{W(z)}`` given by generating functions ``g(z) = omega(W(z))``.

A function ``g`` with ``g(0) = 1`` defines a state iff the kernel

    h(x, y) = g(x - y) exp(-i beta(x, y))

is positive semidefinite. This module evaluates such states, tests kernel
positivity on finite point sets, and provides the diagnostics around Dirac
states (``g = 1`` on an isotropic subspace), regularity at the origin and the
quasifree family ``g_l`` that converges pointwise to the Dirac function ``g0``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .symplectic import (
    PhasePoint,
    SpaceKind,
    SymplecticSpace,
    as_fraction,
    isotropy_check,
)
from .sampling import random_point
from .weyl import SpaceMismatch, WeylElement, weyl_mul

__all__ = [
    "GeneratingFunction",
    "Variant",
    "PositivityReport",
    "Verdict",
    "Regularity",
    "RegularityReport",
    "dirac_g0",
    "quasifree",
    "fock",
    "custom",
    "evaluate_state",
    "kernel_matrix",
    "beta_matrix",
    "positivity_check",
    "dirac_check",
    "dirac_invariance_check",
    "regularity_probe",
    "phase_identity_check",
    "quasifree_convergence",
    "colombeau_scaling_test",
    "ColombeauReport",
]


class Variant(enum.Enum):
    DIRAC_G0 = "dirac_g0"
    QUASIFREE = "quasifree"
    FOCK = "fock"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GeneratingFunction:
    """Candidate state ``z -> omega(W(z))`` on a StandardPairs space.

    Use the factories :func:`dirac_g0`, :func:`quasifree`, :func:`fock` and
    :func:`custom` rather than the constructor.
    """

    variant: Variant
    space: SymplecticSpace
    l: float | None = None
    func: Callable[[PhasePoint], complex] | None = field(default=None, compare=False, repr=False)

    def __call__(self, z: PhasePoint) -> complex:
        self.space.check(z)
        if self.variant is Variant.DIRAC_G0:
            return 1.0 + 0j if not any(z.first) else 0j
        if self.variant in (Variant.QUASIFREE, Variant.FOCK):
            l = 1.0 if self.l is None else self.l
            a = float(sum(v * v for v in z.first))
            b = float(sum(v * v for v in z.second))
            return complex(math.exp(-(l * l / 4.0) * a - b / (4.0 * l * l)))
        return complex(self.func(z))

    def values(self, points: Sequence[PhasePoint]) -> np.ndarray:
        return np.array([self(z) for z in points], dtype=complex)

    def difference_values(self, points: Sequence[PhasePoint]) -> np.ndarray:
        """Matrix ``D[j, k] = g(x_j - x_k)``, vectorized for the built-in variants."""
        self.space.check(*points)
        k = len(points)
        if self.variant is Variant.DIRAC_G0:
            labels = {}
            cls = np.array([labels.setdefault(p.first, len(labels)) for p in points])
            return np.equal.outer(cls, cls).astype(complex)
        if self.variant in (Variant.QUASIFREE, Variant.FOCK):
            n = self.space.n
            l = 1.0 if self.l is None else self.l
            x = np.array([[float(v) for v in p.first + p.second] for p in points]).reshape(k, 2 * n)
            diff = x[:, None, :] - x[None, :, :]
            a = (diff[..., :n] ** 2).sum(-1)
            b = (diff[..., n:] ** 2).sum(-1)
            return np.exp(-(l * l / 4.0) * a - b / (4.0 * l * l)).astype(complex)
        return np.array([[self(x - y) for y in points] for x in points], dtype=complex).reshape(k, k)


def _standard(space: SymplecticSpace) -> None:
    if space.kind is not SpaceKind.STANDARD_PAIRS:
        raise ValueError("generating functions live on StandardPairs spaces")


def dirac_g0(space: SymplecticSpace) -> GeneratingFunction:
    """``g0(z1, z2) = 1`` if ``z1 == 0`` else ``0``; Dirac for ``L = {0} x Q``."""
    _standard(space)
    return GeneratingFunction(Variant.DIRAC_G0, space)


def quasifree(space: SymplecticSpace, l: float) -> GeneratingFunction:
    """``g_l(z) = exp(-(l^2/4)|z1|^2 - |z2|^2/(4 l^2))``."""
    _standard(space)
    if not l > 0:
        raise ValueError("l must be positive")
    return GeneratingFunction(Variant.QUASIFREE, space, float(l))


def fock(space: SymplecticSpace) -> GeneratingFunction:
    """Fock vacuum ``exp(-|z|^2 / 4)``, i.e. the quasifree member ``l = 1``."""
    _standard(space)
    return GeneratingFunction(Variant.FOCK, space, 1.0)


def custom(space: SymplecticSpace, func: Callable[[PhasePoint], complex], *,
           n_checks: int = 100, seed: int = 0, tol: float = 1e-12) -> GeneratingFunction:
    """Wrap a user function after spot checks of ``g(0)=1``, hermiticity and ``|g|<=1``.

    Positivity is *not* checked here; run :func:`positivity_check` for that.
    """
    _standard(space)
    g = GeneratingFunction(Variant.CUSTOM, space, None, func)
    if abs(g(space.zero()) - 1) > tol:
        raise ValueError("custom generating function must satisfy g(0) = 1")
    rng = np.random.default_rng(seed)
    for _ in range(n_checks):
        z = random_point(rng, space.n)
        gz = g(z)
        if abs(gz) > 1 + tol:
            raise ValueError(f"|g(z)| > 1 at {z!r}")
        if abs(g(-z) - gz.conjugate()) > tol:
            raise ValueError(f"g(-z) != conj(g(z)) at {z!r}")
    return g


def evaluate_state(g: GeneratingFunction, a: WeylElement) -> complex:
    """``omega(sum c_z W(z)) = sum c_z g(z)``."""
    if a.space != g.space:
        raise SpaceMismatch(f"{a.space} != {g.space}")
    return complex(sum(c * g(z) for z, c in a))


def kernel_matrix(g: GeneratingFunction, points: Sequence[PhasePoint]) -> np.ndarray:
    """``M[j, k] = g(x_j - x_k) exp(-i beta(x_j, x_k))``."""
    return g.difference_values(points) * np.exp(-1j * beta_matrix(g.space, points))


def beta_matrix(space: SymplecticSpace, points: Sequence[PhasePoint]) -> np.ndarray:
    """``B[j, k] = beta(x_j, x_k)`` in double precision."""
    space.check(*points)
    n = space.n
    x = np.array([[float(v) for v in p.first + p.second] for p in points]).reshape(len(points), 2 * n)
    x1, x2 = x[:, :n], x[:, n:]
    return 0.5 * (x1 @ x2.T - x2 @ x1.T)


class Verdict(enum.Enum):
    PSD = "PSD"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class PositivityReport:
    min_eigenvalue: float
    verdict: Verdict
    tol: float
    points: tuple[PhasePoint, ...] = ()


def positivity_check(m: np.ndarray, tol: float = 1e-9, *, points=()) -> PositivityReport:
    """Smallest eigenvalue of a Hermitian matrix and the PSD verdict at ``-tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if m.size and np.abs(m - m.conj().T).max() > 1e-10:
        raise ValueError("matrix is not Hermitian")
    lam = float(np.linalg.eigvalsh(m)[0]) if m.size else 0.0
    verdict = Verdict.PSD if lam >= -tol else Verdict.INDEFINITE
    return PositivityReport(lam, verdict, tol, tuple(points))


def _lattice_combinations(generators: Sequence[PhasePoint], radius: int):
    for coeffs in product(range(-radius, radius + 1), repeat=len(generators)):
        y = generators[0].scale(0)
        for c, g in zip(coeffs, generators):
            y = y + g.scale(c)
        yield y


def dirac_check(g: GeneratingFunction, generators: Sequence[PhasePoint], radius: int,
                tol: float = 1e-12) -> bool:
    """``g(y) == 1`` on all integer combinations of the generators with ``|coeff| <= radius``.

    Raises ``ValueError`` if the generators are not isotropic, since no Dirac
    state exists for such a constraint subspace.
    """
    if not isotropy_check(g.space, generators):
        raise ValueError("constraint generators are not beta-isotropic")
    return all(abs(g(y) - 1) <= tol for y in _lattice_combinations(generators, radius))


def dirac_invariance_check(g: GeneratingFunction, a: WeylElement, y: PhasePoint) -> float:
    """``max(|w(A W(y)) - w(A)|, |w(W(y) A) - w(A)|)``."""
    wy = WeylElement.generator(g.space, y)
    base = evaluate_state(g, a)
    right = evaluate_state(g, weyl_mul(a, wy))
    left = evaluate_state(g, weyl_mul(wy, a))
    return max(abs(right - base), abs(left - base))


class Regularity(enum.Enum):
    CONTINUOUS_AT_0 = "ContinuousAt0"
    JUMP_AT_0 = "JumpAt0"


@dataclass(frozen=True)
class RegularityReport:
    classification: Regularity
    t: tuple[float, ...]
    values: tuple[complex, ...]


def regularity_probe(g: GeneratingFunction, z: PhasePoint, t_grid: Sequence[float],
                     threshold: float = 0.5) -> RegularityReport:
    """Sample ``t -> g(t z)`` and classify the behaviour at ``t = 0``.

    Finitely many samples cannot prove continuity. The classifier looks at the
    quarter of nonzero grid points closest to 0 and calls it a jump when all of
    them stay farther than ``threshold`` from ``g(0) = 1``.
    """
    ts = [as_fraction(t) for t in t_grid]
    if 0 not in ts:
        raise ValueError("t_grid must contain 0")
    nonzero = sorted((t for t in ts if t != 0), key=abs)
    if not nonzero:
        raise ValueError("t_grid needs nonzero points accumulating at 0")
    values = tuple(g(z.scale(t)) for t in ts)
    lookup = dict(zip(ts, values))
    tail = nonzero[: max(1, len(nonzero) // 4)]
    jump = all(abs(lookup[t] - 1) > threshold for t in tail)
    cls = Regularity.JUMP_AT_0 if jump else Regularity.CONTINUOUS_AT_0
    return RegularityReport(cls, tuple(float(t) for t in ts), values)


def phase_identity_check(g: GeneratingFunction, y0: PhasePoint, z0: PhasePoint,
                         t_grid: Sequence[float]) -> float:
    """Max over ``t`` of ``|exp(-/+ i t beta(y0,z0)) g(z0 + t y0) - g(z0)|``.

    For a Dirac state adapted to a subspace containing ``y0`` both phase
    factors must reproduce ``g(z0)``; since ``beta(y0, z0) != 0`` this is only
    possible when ``g(z0) = 0``.
    """
    b = g.space.phase(y0, z0)
    if b == 0:
        raise ValueError("beta(y0, z0) = 0: the phase argument is vacuous")
    base = g(z0)
    worst = 0.0
    for t in t_grid:
        t = as_fraction(t)
        v = g(z0 + y0.scale(t))
        tf = float(t)
        worst = max(worst,
                    abs(cmath.exp(-1j * tf * b) * v - base),
                    abs(cmath.exp(1j * tf * b) * v - base))
    return worst


def quasifree_convergence(psi: PhasePoint, l_values: Sequence[float]) -> list[tuple[float, float, float]]:
    """Rows ``(l, g_l(psi), |g_l(psi) - g0(psi)|)``."""
    space = SymplecticSpace.standard(psi.n)
    g0 = dirac_g0(space)(psi)
    rows = []
    for l in l_values:
        v = quasifree(space, l)(psi).real
        rows.append((float(l), v, abs(v - g0.real)))
    return rows


@dataclass(frozen=True)
class ColombeauReport:
    negligible: bool
    eps: tuple[float, ...]
    values: tuple[float, ...]
    log_values: tuple[float, ...]
    # order m_eff(eps) = log(value) / log(eps), the largest m with value <= eps^m
    orders: tuple[float, ...]
    failures: tuple[tuple[float, int], ...]
    m_max: int = 0

    @property
    def asymptotically_negligible(self) -> bool:
        """Orders grow as ``eps`` shrinks and exceed ``m_max`` at the smallest ``eps``.

        Unlike :attr:`negligible`, which demands the bound at every grid point,
        this is the ``eps -> 0`` reading of ``O(eps^m)``.
        """
        pairs = sorted((e, o) for e, o in zip(self.eps, self.orders) if e < 1)
        if not pairs:
            return False
        increasing = all(a[1] >= b[1] for a, b in zip(pairs, pairs[1:]))
        return increasing and pairs[0][1] >= self.m_max


def colombeau_scaling_test(g, mollifier_norm_sq: float, n: int, eps_grid: Sequence[float],
                           m_max: int) -> ColombeauReport:
    """Test ``exp(-c eps^-n |phi|^2) <= eps^m`` for ``m <= m_max`` on a grid.

    ``g`` is a quasifree :class:`GeneratingFunction` (``c = l^2 / 4``) or a
    positive float ``c`` for a custom Gaussian ``exp(-<phi, C phi>/2)`` with
    ``C = 2 c``. The mollifier ``phi_eps`` has ``|phi_eps|^2 = eps^-n |phi|^2``.
    Comparisons are done on logarithms, so no underflow occurs.
    """
    if not eps_grid:
        raise ValueError("empty eps grid")
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    if isinstance(g, GeneratingFunction):
        if g.variant not in (Variant.QUASIFREE, Variant.FOCK):
            raise ValueError("scaling test applies to Gaussian generating functions")
        c = (g.l or 1.0) ** 2 / 4.0
    else:
        c = float(g)
        if not c > 0:
            raise ValueError("Gaussian exponent coefficient must be positive")
    eps_list, vals, logs, orders, failures = [], [], [], [], []
    for eps in eps_grid:
        eps = float(eps)
        if not 0 < eps <= 1:
            raise ValueError("eps must lie in (0, 1]")
        log_v = -c * eps ** (-n) * mollifier_norm_sq
        eps_list.append(eps)
        logs.append(log_v)
        vals.append(math.exp(log_v))
        orders.append(math.inf if eps == 1 else log_v / math.log(eps))
        if eps < 1:
            for m in range(1, m_max + 1):
                if log_v > m * math.log(eps):
                    failures.append((eps, m))
    return ColombeauReport(not failures, tuple(eps_list), tuple(vals), tuple(logs),
                           tuple(orders), tuple(failures), m_max)
