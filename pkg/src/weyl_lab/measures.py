"""Finite-dimensional harmonic analysis with atomic and Gaussian measures.

Conventions on ``R^d`` with the Euclidean pairing:

* Fourier transform of a measure on the primal space, ``F mu(u) = int exp(-i<u, x>) dmu(x)``
* co-Fourier transform of a measure on the dual, ``nu~(phi) = int exp(i<u, phi>) dnu(u)``

A split space ``S = K x L`` (``K = R^d1`` first) has dual ``L_perp x K_perp``
with ``L_perp ~ R^d1`` pairing against ``K`` and ``K_perp ~ R^d2`` against ``L``.
The indicator ``g0 = 1_L`` is ``1`` exactly when the ``K`` block vanishes and
``h0 = 1_{L_perp}`` is ``1`` exactly when the ``K_perp`` block vanishes.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

__all__ = [
    "AtomicMeasure",
    "GaussianSpec",
    "SplitSpace",
    "MCResult",
    "fourier_atomic",
    "cofourier_atomic",
    "duality_check",
    "multiply_function_measure",
    "convolve_function_measure",
    "convolve_measures",
    "product_lemma_check",
    "identity21_check",
    "identity23_check",
    "finite_bochner_check",
    "gaussian_mc_functional",
    "moment_check",
    "product_form_check",
    "ProductFormResult",
    "BochnerResult",
]


class AtomicMeasure:
    """``sum_j w_j delta_{x_j}`` on ``R^d``.

    Atoms at identical locations are merged and zero weights dropped, so two
    measures are equal iff their canonical atom dictionaries agree.
    """

    def __init__(self, d: int, locations, weights):
        locs = np.asarray(locations, dtype=float).reshape(-1, d) if d else np.zeros((0, 0))
        w = np.asarray(weights, dtype=complex).reshape(-1)
        if locs.shape[0] != w.shape[0]:
            raise ValueError("locations and weights differ in length")
        merged: dict[tuple[float, ...], complex] = {}
        for x, c in zip(locs, w):
            key = tuple(float(v) + 0.0 for v in x)  # +0.0 folds -0.0 into 0.0
            merged[key] = merged.get(key, 0j) + c
        keys = [k for k, c in merged.items() if c != 0]
        self.d = int(d)
        self.locations = np.array(keys, dtype=float).reshape(len(keys), d)
        self.weights = np.array([merged[k] for k in keys], dtype=complex)

    @classmethod
    def dirac(cls, d: int, at=None, weight: complex = 1.0) -> "AtomicMeasure":
        at = np.zeros(d) if at is None else np.asarray(at, dtype=float)
        return cls(d, at[None, :], [weight])

    @classmethod
    def zero(cls, d: int) -> "AtomicMeasure":
        return cls(d, np.zeros((0, d)), [])

    def atoms(self) -> dict[tuple[float, ...], complex]:
        return {tuple(x): c for x, c in zip(self.locations, self.weights)}

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total_mass(self) -> complex:
        return complex(self.weights.sum())

    @property
    def total_variation(self) -> float:
        return float(np.abs(self.weights).sum())

    def is_positive(self) -> bool:
        return bool(np.all(self.weights.imag == 0) and np.all(self.weights.real >= 0))

    def mass_at(self, x) -> complex:
        return self.atoms().get(tuple(float(v) + 0.0 for v in np.atleast_1d(x)), 0j)

    def scale(self, alpha: complex) -> "AtomicMeasure":
        return AtomicMeasure(self.d, self.locations, alpha * self.weights)

    def tensor(self, other: "AtomicMeasure") -> "AtomicMeasure":
        """Product measure on ``R^(d + d')`` with this factor first."""
        if not len(self) or not len(other):
            return AtomicMeasure.zero(self.d + other.d)
        a = np.repeat(self.locations, len(other), axis=0)
        b = np.tile(other.locations, (len(self), 1))
        w = np.outer(self.weights, other.weights).reshape(-1)
        return AtomicMeasure(self.d + other.d, np.hstack([a, b]), w)

    def max_weight_difference(self, other: "AtomicMeasure") -> float:
        a, b = self.atoms(), other.atoms()
        return max((abs(a.get(k, 0j) - b.get(k, 0j)) for k in set(a) | set(b)), default=0.0)

    def to_json(self) -> dict:
        return {"d": self.d, "atoms": [{"x": list(map(float, x)), "re": c.real, "im": c.imag}
                                       for x, c in zip(self.locations, self.weights)]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "AtomicMeasure":
        d = int(data["d"])
        atoms = data["atoms"]
        locs = [a["x"] for a in atoms]
        for x in locs:
            if len(x) != d:
                raise ValueError(f"atom {x} does not have dimension {d}")
        w = [complex(a["re"], a.get("im", 0.0)) for a in atoms]
        return cls(d, np.array(locs, dtype=float).reshape(len(locs), d), w)

    @classmethod
    def loads(cls, text: str) -> "AtomicMeasure":
        return cls.from_json(json.loads(text))

    def __repr__(self) -> str:
        return f"AtomicMeasure(d={self.d}, atoms={len(self)})"


def _points(u, d: int) -> tuple[np.ndarray, bool]:
    u = np.asarray(u, dtype=float)
    single = u.ndim == 1
    u = np.atleast_2d(u)
    if u.shape[1] != d:
        raise ValueError(f"dimension mismatch: {u.shape[1]} != {d}")
    return u, single


def fourier_atomic(mu: AtomicMeasure, u) -> complex | np.ndarray:
    """``F mu(u) = sum_j w_j exp(-i <u, x_j>)``; ``u`` may be a batch of rows."""
    u, single = _points(u, mu.d)
    vals = np.exp(-1j * u @ mu.locations.T) @ mu.weights
    return complex(vals[0]) if single else vals


def cofourier_atomic(nu: AtomicMeasure, phi) -> complex | np.ndarray:
    """``nu~(phi) = sum_k v_k exp(i <u_k, phi>)``."""
    phi, single = _points(phi, nu.d)
    vals = np.exp(1j * phi @ nu.locations.T) @ nu.weights
    return complex(vals[0]) if single else vals


def duality_check(mu: AtomicMeasure, nu: AtomicMeasure) -> float:
    """``|<F mu, nu> - <mu, F nu>|`` with ``F nu(phi) := nu~(-phi)``."""
    if mu.d != nu.d:
        raise ValueError("mu and nu must have equal dimension")
    lhs = np.dot(nu.weights, fourier_atomic(mu, nu.locations)) if len(nu) else 0j
    rhs = np.dot(mu.weights, cofourier_atomic(nu, -mu.locations)) if len(mu) else 0j
    return float(abs(lhs - rhs))


def convolve_measures(a: AtomicMeasure, b: AtomicMeasure) -> AtomicMeasure:
    """``a * b``: atoms at pairwise sums with product weights."""
    if a.d != b.d:
        raise ValueError("dimension mismatch")
    if not len(a) or not len(b):
        return AtomicMeasure.zero(a.d)
    locs = (a.locations[:, None, :] + b.locations[None, :, :]).reshape(-1, a.d)
    return AtomicMeasure(a.d, locs, np.outer(a.weights, b.weights).reshape(-1))


def multiply_function_measure(f: Callable[[np.ndarray], complex], mu: AtomicMeasure) -> AtomicMeasure:
    """``f . mu``: the atom at ``x_j`` is reweighted to ``w_j f(x_j)``."""
    w = np.array([w * f(x) for x, w in zip(mu.locations, mu.weights)], dtype=complex)
    return AtomicMeasure(mu.d, mu.locations, w)


def convolve_function_measure(f: Callable[[np.ndarray], complex], rho: AtomicMeasure, u) -> complex:
    """``(f * rho)(u) = sum_j w_j f(u - v_j)``."""
    u = np.asarray(u, dtype=float)
    return complex(sum(w * f(u - v) for v, w in zip(rho.locations, rho.weights)))


@dataclass(frozen=True)
class SplitSpace:
    """``S = K x L`` with ``dim K = d1``, ``dim L = d2``; dual ``L_perp x K_perp``."""

    d1: int
    d2: int

    @property
    def d(self) -> int:
        return self.d1 + self.d2

    def split(self, x) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        return x[..., : self.d1], x[..., self.d1 :]

    def join(self, a, b) -> np.ndarray:
        return np.concatenate([np.asarray(a, float), np.asarray(b, float)], axis=-1)

    def g0(self, phi) -> float:
        """Indicator of ``L`` (vanishing ``K`` block) on the primal space."""
        return 1.0 if not np.any(self.split(phi)[0]) else 0.0

    def h0(self, u) -> float:
        """Indicator of ``L_perp`` (vanishing ``K_perp`` block) on the dual space."""
        return 1.0 if not np.any(self.split(u)[1]) else 0.0

    def product(self, first: AtomicMeasure, second: AtomicMeasure) -> AtomicMeasure:
        if first.d != self.d1 or second.d != self.d2:
            raise ValueError("factor dimensions do not match the split")
        return first.tensor(second)


def product_lemma_check(split: SplitSpace, mu1: AtomicMeasure, mu2: AtomicMeasure) -> float:
    """Max atom-weight difference between ``g0 mu`` and ``mu1({0}) (delta_0 x mu2)``."""
    mu = split.product(mu1, mu2)
    lhs = multiply_function_measure(split.g0, mu)
    rhs = split.product(AtomicMeasure.dirac(split.d1), mu2).scale(mu1.mass_at(np.zeros(split.d1)))
    return lhs.max_weight_difference(rhs)


def identity21_check(split: SplitSpace, mu2: AtomicMeasure, dual_samples,
                     mu1: AtomicMeasure | None = None) -> float:
    """Max over samples of ``|F(g0 mu)(u1, u2) - mu1({0}) F mu2(u2)|``.

    ``mu = mu1 x mu2`` with ``mu1 = delta_0`` by default, in which case the
    right-hand side is just ``F mu2(u2)``.
    """
    mu1 = AtomicMeasure.dirac(split.d1) if mu1 is None else mu1
    g0mu = multiply_function_measure(split.g0, split.product(mu1, mu2))
    u = np.atleast_2d(np.asarray(dual_samples, dtype=float))
    lhs = fourier_atomic(g0mu, u) if len(g0mu) else np.zeros(len(u), complex)
    rhs = mu1.mass_at(np.zeros(split.d1)) * fourier_atomic(mu2, split.split(u)[1])
    return float(np.abs(lhs - rhs).max())


def identity23_check(split: SplitSpace, mu2: AtomicMeasure, rho1: AtomicMeasure, dual_samples) -> float:
    """Max over samples of ``| |rho| F(g0 mu)(u) - ((h0 rho) * F mu)(u) |``.

    Here ``mu = delta_0 x mu2`` on ``K x L`` and ``rho = rho1 x delta_0`` on
    ``L_perp x K_perp``; ``rho1`` must be a positive measure.
    """
    if not rho1.is_positive():
        raise ValueError("rho1 must be a positive measure")
    mu = split.product(AtomicMeasure.dirac(split.d1), mu2)
    rho = rho1.tensor(AtomicMeasure.dirac(split.d2))
    g0mu = multiply_function_measure(split.g0, mu)
    h0rho = multiply_function_measure(split.h0, rho)
    u = np.atleast_2d(np.asarray(dual_samples, dtype=float))
    worst = 0.0
    for point in u:
        lhs = rho.total_variation * (fourier_atomic(g0mu, point) if len(g0mu) else 0j)
        rhs = convolve_function_measure(lambda v: fourier_atomic(mu, v), h0rho, point)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)


@dataclass(frozen=True)
class BochnerResult:
    lhs: float
    rhs: float
    relative_deviation: float


def _ft_1d(sigma: float, x: float) -> float:
    """Quadrature of ``int exp(-i x t) exp(-t^2 / (2 sigma^2)) dt`` (real by symmetry)."""
    def phi(t):
        return math.exp(-t * t / (2 * sigma * sigma))

    if abs(x) * sigma < 1:
        # slow oscillation: the Gaussian is below 1e-300 beyond 40 sigma
        val, _ = integrate.quad(lambda t: math.cos(x * t) * phi(t), 0, 40 * sigma,
                                limit=200, epsabs=1e-14, epsrel=1e-13)
    else:
        # QAWF: Fourier-weighted quadrature on the half line
        val, _ = integrate.quad(phi, 0, np.inf, weight="cos", wvar=abs(x), epsabs=1e-12)
    return 2.0 * val


def finite_bochner_check(d: int, L0_axes: Sequence[int], sigmas: Sequence[float] | None = None) -> BochnerResult:
    """Compare ``<delta_L0, F phi>`` with ``(2 pi)^dim L0 <delta_L0perp, phi>``.

    ``L0`` is spanned by the coordinate axes in ``L0_axes`` and
    ``phi(t) = exp(-sum t_i^2 / (2 sigma_i^2))``. Both pairings are surface
    integrals computed by quadrature; ``F phi`` itself is evaluated by
    quadrature of the Fourier integral, one axis at a time.
    """
    axes = sorted(set(int(a) for a in L0_axes))
    if any(a < 0 or a >= d for a in axes):
        raise ValueError("L0 axes out of range")
    sig = [1.0] * d if sigmas is None else [float(s) for s in sigmas]
    if len(sig) != d:
        raise ValueError("need one sigma per axis")
    lhs = 1.0
    rhs = (2 * math.pi) ** len(axes)
    for i in range(d):
        s = sig[i]
        if i in axes:
            # integrate F phi along the axis; the complement axes sit at 0
            val, _ = integrate.quad(lambda x: _ft_1d(s, x), -np.inf, np.inf, epsabs=1e-12, epsrel=1e-10)
            lhs *= val
            rhs *= 1.0  # phi_i(0)
        else:
            lhs *= _ft_1d(s, 0.0)
            val, _ = integrate.quad(lambda t: math.exp(-t * t / (2 * s * s)), -np.inf, np.inf)
            rhs *= val
    return BochnerResult(lhs, rhs, abs(lhs - rhs) / abs(rhs))


@dataclass(frozen=True)
class GaussianSpec:
    """Centered Gaussian on ``R^d`` with covariance ``E[<u,phi><u,psi>] = phi^T cov psi``."""

    cov: np.ndarray

    def __post_init__(self):
        cov = np.atleast_2d(np.asarray(self.cov, dtype=float))
        if cov.shape[0] != cov.shape[1]:
            raise ValueError("covariance must be square")
        if np.abs(cov - cov.T).max() > 1e-12:
            raise ValueError("covariance must be symmetric")
        if cov.size and np.linalg.eigvalsh(cov)[0] < -1e-10:
            raise ValueError("covariance is not positive semidefinite")
        object.__setattr__(self, "cov", cov)

    @classmethod
    def isotropic(cls, d: int, variance: float) -> "GaussianSpec":
        return cls(variance * np.eye(d))

    @classmethod
    def quasifree(cls, d: int, l: float) -> "GaussianSpec":
        """Gaussian whose characteristic function is ``exp(-l^2 |phi|^2 / 4)``."""
        return cls.isotropic(d, l * l / 2.0)

    @property
    def d(self) -> int:
        return self.cov.shape[0]

    def factor(self) -> np.ndarray:
        lam, vec = np.linalg.eigh(self.cov)
        return vec * np.sqrt(np.clip(lam, 0, None))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.standard_normal((size, self.d)) @ self.factor().T

    def characteristic(self, phi) -> float:
        phi = np.asarray(phi, dtype=float)
        return math.exp(-0.5 * float(phi @ self.cov @ phi))


@dataclass(frozen=True)
class MCResult:
    target: complex
    estimate: complex
    stderr: float
    samples: int
    seed: int

    @property
    def deviation(self) -> float:
        return abs(self.estimate - self.target)

    def within(self, k: float = 4.0) -> bool:
        return self.deviation <= k * self.stderr

    def to_json(self) -> dict:
        def enc(c):
            c = complex(c)
            return c.real if c.imag == 0 else {"re": c.real, "im": c.imag}

        return {"target": enc(self.target), "estimate": enc(self.estimate),
                "stderr": self.stderr, "samples": self.samples, "seed": self.seed}


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def _check_samples(samples: int) -> None:
    if samples < 10_000:
        raise ValueError("Monte Carlo estimates need at least 10^4 samples")


def gaussian_mc_functional(spec: GaussianSpec, phi, samples: int, seed: int, *, stream: int = 0) -> MCResult:
    """Monte Carlo estimate of ``E exp(i <u, phi>)``, target ``exp(-phi^T cov phi / 2)``."""
    _check_samples(samples)
    phi = np.asarray(phi, dtype=float)
    u = spec.sample(_rng(seed, stream), samples)
    vals = np.exp(1j * (u @ phi))
    stderr = math.sqrt((vals.real.var() + vals.imag.var()) / samples)
    return MCResult(spec.characteristic(phi), complex(vals.mean()), stderr, samples, seed)


def moment_check(spec: GaussianSpec, phi, psi, samples: int, seed: int, *, stream: int = 1) -> MCResult:
    """Monte Carlo estimate of ``E[<u, phi><u, psi>]``, target ``phi^T cov psi``."""
    _check_samples(samples)
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    u = spec.sample(_rng(seed, stream), samples)
    vals = (u @ phi) * (u @ psi)
    return MCResult(float(phi @ spec.cov @ psi), float(vals.mean()),
                    float(vals.std() / math.sqrt(samples)), samples, seed)


@dataclass(frozen=True)
class ProductFormResult:
    results: tuple[MCResult, ...]
    batch_variances: tuple[float, ...]
    predicted_variances: tuple[float, ...]

    @property
    def max_sigma(self) -> float:
        return max((r.deviation / r.stderr if r.stderr else 0.0) for r in self.results)


def product_form_check(spec1: GaussianSpec, spec2: GaussianSpec, phi_pairs, samples: int,
                       seed: int) -> ProductFormResult:
    """``E exp(i(<u,phi1> + <v,phi2>))`` under independent ``u ~ spec1``, ``v ~ spec2``.

    The target is the product of both characteristic functions. The per-sample
    variance ``Var cos + Var sin`` is reported next to its product-law value
    ``1 - exp(-s^2)`` with ``s^2 = phi1^T C1 phi1 + phi2^T C2 phi2``.
    """
    _check_samples(samples)
    results, batch, predicted = [], [], []
    for k, (phi1, phi2) in enumerate(phi_pairs):
        phi1 = np.asarray(phi1, dtype=float)
        phi2 = np.asarray(phi2, dtype=float)
        u = spec1.sample(_rng(seed, 2 * k + 10), samples)
        v = spec2.sample(_rng(seed, 2 * k + 11), samples)
        vals = np.exp(1j * (u @ phi1 + v @ phi2))
        var = float(vals.real.var() + vals.imag.var())
        target = spec1.characteristic(phi1) * spec2.characteristic(phi2)
        results.append(MCResult(target, complex(vals.mean()), math.sqrt(var / samples), samples, seed))
        s2 = float(phi1 @ spec1.cov @ phi1 + phi2 @ spec2.cov @ phi2)
        batch.append(var)
        predicted.append(1.0 - math.exp(-s2))
    return ProductFormResult(tuple(results), tuple(batch), tuple(predicted))
