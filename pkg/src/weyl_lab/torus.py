"""Clock-and-shift matrices for the deformed torus algebra at rational angle.

With ``theta = pi p / q`` the unitaries ``W(m)``, ``m`` in ``Z^2``, satisfy

    W(m) W(n) = exp(i theta (m1 n2 - m2 n1)) W(m + n).

They are realized on ``C^q`` by ``W(m) = exp(-i theta m1 m2) U^m1 V^m2`` where
``U = diag(exp(2 pi i p k / q))`` is the clock and ``V e_k = e_{k+1}`` the
cyclic shift, so that ``U V = exp(2 i theta) V U``. The sign of the prefactor
is forced by the relation (take ``m = (1, 0)``, ``n = (0, 1)``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = ["TorusRep", "torus_build", "torus_apply", "torus_represent", "torus_trace_state", "relation_deviation", "WindowError"]

_TOL = 1e-12


class WindowError(ValueError):
    """Index outside the window on which the finite representation is faithful."""


@dataclass(frozen=True)
class TorusRep:
    p: int
    q: int
    clock: np.ndarray = field(repr=False)
    shift: np.ndarray = field(repr=False)

    @property
    def theta(self) -> float:
        return math.pi * self.p / self.q

    @property
    def period(self) -> int:
        """Order of the clock, ``q / gcd(p, q)``; the trace window is ``|m_i| < period``."""
        return self.q // math.gcd(self.p, self.q)


def _mpow(a: np.ndarray, k: int) -> np.ndarray:
    if k >= 0:
        return np.linalg.matrix_power(a, k)
    return np.linalg.matrix_power(a.conj().T, -k)


def torus_apply(rep: TorusRep, m) -> np.ndarray:
    """Matrix of ``W(m)``, ``m = (m1, m2)`` integers."""
    m1, m2 = (int(v) for v in m)
    phase = np.exp(-1j * rep.theta * m1 * m2)
    return phase * _mpow(rep.clock, m1) @ _mpow(rep.shift, m2)


def torus_build(p: int, q: int, *, verify: bool = True) -> TorusRep:
    """Build the ``q x q`` clock-and-shift representation for ``theta = pi p / q``.

    The construction is checked against the deformed Weyl relation for all
    ``|m_i|, |n_i| <= q``; a failure raises ``AssertionError``.
    """
    p, q = int(p), int(q)
    if q < 1:
        raise ValueError("q must be >= 1")
    k = np.arange(q)
    clock = np.diag(np.exp(2j * np.pi * p * k / q))
    shift = np.roll(np.eye(q, dtype=complex), 1, axis=0)
    rep = TorusRep(p, q, clock, shift)

    eye = np.eye(q)
    for u in (clock, shift):
        if np.abs(u.conj().T @ u - eye).max() > _TOL:
            raise AssertionError("clock/shift not unitary")
    if np.abs(clock @ shift - np.exp(2j * rep.theta) * shift @ clock).max() > _TOL:
        raise AssertionError("clock/shift commutation convention violated")
    if verify:
        dev = relation_deviation(rep)
        if dev > _TOL:
            raise AssertionError(f"deformed Weyl relation violated by {dev:.3e}")
    return rep


def relation_deviation(rep: TorusRep, radius: int | None = None) -> float:
    """Max entrywise deviation of ``W(m)W(n)`` from ``exp(i theta [m,n]) W(m+n)`` on a window."""
    r = rep.q if radius is None else radius
    rng = range(-r, r + 1)
    mats = {(a, b): torus_apply(rep, (a, b)) for a in range(-2 * r, 2 * r + 1)
            for b in range(-2 * r, 2 * r + 1)}
    worst = 0.0
    for m1 in rng:
        for m2 in rng:
            wm = mats[m1, m2]
            for n1 in rng:
                for n2 in rng:
                    lhs = wm @ mats[n1, n2]
                    rhs = np.exp(1j * rep.theta * (m1 * n2 - m2 * n1)) * mats[m1 + n1, m2 + n2]
                    worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def torus_represent(rep: TorusRep, element: Mapping[tuple[int, int], complex]) -> np.ndarray:
    out = np.zeros((rep.q, rep.q), dtype=complex)
    for m, c in element.items():
        out += c * torus_apply(rep, m)
    return out


def torus_trace_state(rep: TorusRep, element: Mapping[tuple[int, int], complex]) -> complex:
    """Normalized trace ``tr(pi(a)) / q`` of ``a = sum c_m W(m)``.

    Inside the faithfulness window this is the coefficient of ``W(0, 0)``.
    """
    window = rep.period
    for m in element:
        if abs(int(m[0])) >= window or abs(int(m[1])) >= window:
            raise WindowError(f"index {tuple(m)} outside |m_i| < {window}")
    return complex(np.trace(torus_represent(rep, element)) / rep.q)
