"""Named verification suites and their machine-readable reports.

Every check is a small function of a :class:`Context` returning the extremal
value it measured and whether that value is acceptable at the check's
tolerance. Checks are deterministic given the seed.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from . import gns, measures, states, torus
from .io import read_points
from .sampling import random_element, random_point
from .symplectic import PhasePoint, SymplecticSpace, _beta
from .weyl import WeylElement, adjoint, l1_norm, max_deviation, weyl_mul

SCHEMA_VERSION = "1.0"
SUITES = ("weyl", "states", "gns", "torus", "measures")


class ConfigError(ValueError):
    """Invalid suite configuration or unreadable input file."""


@dataclass
class SuiteConfig:
    suite: str
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    points: str | None = None
    measures: str | None = None
    out: str | None = None
    format: str = "json"

    def validate(self) -> None:
        if self.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if self.format not in ("json", "csv-summary"):
            raise ConfigError(f"unknown format {self.format!r}")
        known = {c.check_id for name in self.suite_names() for c in REGISTRY[name]}
        for name, value in self.tolerances.items():
            if name not in known:
                raise ConfigError(f"tolerance override for unknown check {name!r}")
            if not value > 0:
                raise ConfigError(f"tolerance for {name!r} must be positive")

    def suite_names(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    verdict: str
    value: float
    tolerance: float
    runtime_ms: float
    details: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    records: list[CheckRecord]

    @property
    def overall(self) -> str:
        return "pass" if all(r.verdict == "pass" for r in self.records) else "fail"

    def to_dict(self, *, runtime: bool = True) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            if not runtime:
                d.pop("runtime_ms")
            recs.append(d)
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite, "seed": self.seed,
                "overall": self.overall, "checks": recs}


@dataclass
class Context:
    seed: int
    tolerances: dict[str, float]
    points: list[PhasePoint] | None = None
    measure: measures.AtomicMeasure | None = None

    def rng(self, check_id: str) -> np.random.Generator:
        # one substream per check, independent of execution order
        key = [ord(c) for c in check_id]
        return np.random.default_rng(np.random.SeedSequence([self.seed] + key))


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    tol: float
    run: Callable[[Context, float], tuple[float, bool, dict]]


REGISTRY: dict[str, list[Check]] = {name: [] for name in SUITES}


def check(suite: str, check_id: str, anchor: str, tol: float):
    def deco(fn):
        REGISTRY[suite].append(Check(check_id, anchor, tol, fn))
        return fn
    return deco


def _le(value: float, tol: float, **details) -> tuple[float, bool, dict]:
    return float(value), bool(value <= tol), details


# ---------------------------------------------------------------- weyl

def _triples(ctx: Context, cid: str, count: int = 200):
    rng = ctx.rng(cid)
    for _ in range(count):
        n = int(rng.integers(1, 5))
        yield SymplecticSpace.standard(n), [random_point(rng, n) for _ in range(3)], rng


@check("weyl", "weyl.unitarity", "W(z)* W(z) = 1", 1e-12)
def _unitarity(ctx, tol):
    worst, support_ok = 0.0, True
    for space, (y, _, _), _ in _triples(ctx, "weyl.unitarity"):
        w = WeylElement.generator(space, y)
        prod = weyl_mul(adjoint(w), w)
        support_ok &= prod.support == {space.zero()}
        worst = max(worst, max_deviation(prod, WeylElement.unit(space)))
    return float(worst), worst <= tol and support_ok, {"support_exact": support_ok}


@check("weyl", "weyl.involution", "(A*)* = A, (AB)* = B* A*", 1e-12)
def _involution(ctx, tol):
    worst, exact = 0.0, True
    for space, _, rng in _triples(ctx, "weyl.involution"):
        a, b = random_element(rng, space), random_element(rng, space)
        exact &= adjoint(adjoint(a)) == a
        lhs, rhs = adjoint(weyl_mul(a, b)), weyl_mul(adjoint(b), adjoint(a))
        exact &= lhs.support == rhs.support
        worst = max(worst, max_deviation(lhs, rhs))
    return float(worst), worst <= tol and exact, {"support_exact": exact}


@check("weyl", "weyl.associativity", "(W(y)W(z))W(w) = W(y)(W(z)W(w))", 1e-12)
def _associativity(ctx, tol):
    worst, exact = 0.0, True
    for space, (y, z, w), rng in _triples(ctx, "weyl.associativity"):
        wy, wz, ww = (WeylElement.generator(space, p) for p in (y, z, w))
        lhs, rhs = weyl_mul(weyl_mul(wy, wz), ww), weyl_mul(wy, weyl_mul(wz, ww))
        exact &= lhs.support == rhs.support
        exact &= _beta(y, z) + _beta(y + z, w) == _beta(z, w) + _beta(y, z + w)
        worst = max(worst, max_deviation(lhs, rhs))
        a, b, c = (random_element(rng, space) for _ in range(3))
        worst = max(worst, max_deviation(weyl_mul(weyl_mul(a, b), c), weyl_mul(a, weyl_mul(b, c))))
    return float(worst), worst <= tol and exact, {"cocycle_exact": exact}


@check("weyl", "weyl.commutator_identity", "W(y)D - DW(y) = (W(y)-1)D - D(W(y)-1)", 1e-12)
def _commutator(ctx, tol):
    worst, exact = 0.0, True
    for space, (y, _, _), rng in _triples(ctx, "weyl.commutator_identity"):
        d = random_element(rng, space, terms=4)
        wy = WeylElement.generator(space, y)
        t = wy - 1
        lhs = weyl_mul(wy, d) - weyl_mul(d, wy)
        rhs = weyl_mul(t, d) - weyl_mul(d, t)
        exact &= lhs.prune(tol).support == rhs.prune(tol).support
        worst = max(worst, max_deviation(lhs, rhs))
    return float(worst), worst <= tol and exact, {"support_exact": exact}


@check("weyl", "weyl.l1_submultiplicative", "l1(AB) <= l1(A) l1(B)", 1e-12)
def _l1(ctx, tol):
    worst = -math.inf
    for space, _, rng in _triples(ctx, "weyl.l1_submultiplicative", 50):
        a, b = random_element(rng, space), random_element(rng, space)
        worst = max(worst, l1_norm(weyl_mul(a, b)) - l1_norm(a) * l1_norm(b))
    return _le(max(worst, 0.0), tol)


# ---------------------------------------------------------------- states

def _clustered_points(rng, n: int, size: int, classes: int) -> list[PhasePoint]:
    """Points sharing a few first blocks, so the g0 kernel has nontrivial blocks."""
    firsts = [random_point(rng, n).first for _ in range(classes)]
    pts = {PhasePoint(firsts[int(rng.integers(classes))], random_point(rng, n).second)
           for _ in range(size)}
    return sorted(pts, key=lambda p: (p.first, p.second))


@check("states", "states.kernel_psd", "sum c_j conj(c_k) g(x_j - x_k) exp(-i beta(x_j, x_k)) >= 0", 1e-9)
def _kernel_psd(ctx, tol):
    rng = ctx.rng("states.kernel_psd")
    worst = math.inf
    sets = [ctx.points] if ctx.points else [
        _clustered_points(rng, int(rng.integers(1, 9)), int(rng.integers(2, 65)), int(rng.integers(1, 6)))
        for _ in range(20)]
    for pts in sets:
        space = SymplecticSpace.standard(pts[0].n)
        for g in (states.dirac_g0(space), *(states.quasifree(space, l) for l in (1, 2, 4))):
            worst = min(worst, states.positivity_check(states.kernel_matrix(g, pts), tol).min_eigenvalue)
    return float(-worst), worst >= -tol, {"min_eigenvalue": worst, "point_sets": len(sets)}


@check("states", "states.indefinite_witness", "g = 1 on {0, y, z} with beta(y, z) = pi/2 is not positive", 1e-9)
def _indefinite(ctx, tol):
    space = SymplecticSpace.standard(1)
    one = states.custom(space, lambda z: 1.0)
    pts = [space.zero(), PhasePoint.of([1], [0]), PhasePoint.of([0], [Fraction(math.pi)])]
    rep = states.positivity_check(states.kernel_matrix(one, pts), tol)
    return rep.min_eigenvalue, rep.verdict is states.Verdict.INDEFINITE, {"verdict": rep.verdict.value}


@check("states", "states.dirac", "omega0(W(y)) = 1 and omega0(A W(y)) = omega0(A) = omega0(W(y) A), y in L", 1e-12)
def _dirac(ctx, tol):
    rng = ctx.rng("states.dirac")
    worst, lattice_ok = 0.0, True
    for n in (1, 2, 3):
        space = SymplecticSpace.standard(n)
        g0 = states.dirac_g0(space)
        gens = [PhasePoint(tuple(0 for _ in range(n)), tuple(int(i == k) for i in range(n))) for k in range(n)]
        lattice_ok &= states.dirac_check(g0, gens, 5 if n < 3 else 2)
        for _ in range(34):
            a = random_element(rng, space, terms=4, max_num=2, max_den=2)
            y = PhasePoint.of([0] * n, random_point(rng, n).second)
            worst = max(worst, states.dirac_invariance_check(g0, a, y))
    return float(worst), worst <= tol and lattice_ok, {"lattice_ok": lattice_ok}


@check("states", "states.phase_identity", "exp(-/+ i t beta(y0, z0)) g(z0 + t y0) = g(z0) forces g0(z0) = 0", 1e-12)
def _phase(ctx, tol):
    rng = ctx.rng("states.phase_identity")
    worst, zero_ok = 0.0, True
    grid = [0, 0.5, 1, -1, 2.5, 7]
    for _ in range(50):
        n = int(rng.integers(1, 4))
        space = SymplecticSpace.standard(n)
        g0 = states.dirac_g0(space)
        z0 = random_point(rng, n)
        if not any(z0.first):
            z0 = PhasePoint((Fraction(1),) + z0.first[1:], z0.second)
        k = next(i for i, v in enumerate(z0.first) if v)
        y0 = PhasePoint((0,) * n, tuple(int(i == k) for i in range(n)))
        worst = max(worst, states.phase_identity_check(g0, y0, z0, grid))
        zero_ok &= g0(z0) == 0
    return float(worst), worst <= tol and zero_ok, {"g0_vanishes": zero_ok}


def _t_grid():
    return [0.0] + [s * 2.0 ** -k for k in range(21) for s in (1, -1)]


@check("states", "states.regularity", "lim_{t->0} omega(W(tz)) = 1 iff regular", 0.5)
def _regularity(ctx, tol):
    space = SymplecticSpace.standard(1)
    fock = states.regularity_probe(states.fock(space), PhasePoint.of([1], [2]), _t_grid(), tol)
    jump = states.regularity_probe(states.dirac_g0(space), PhasePoint.of([1], [0]), _t_grid(), tol)
    inside = states.regularity_probe(states.dirac_g0(space), PhasePoint.of([0], [1]), _t_grid(), tol)
    ok = (fock.classification is states.Regularity.CONTINUOUS_AT_0
          and jump.classification is states.Regularity.JUMP_AT_0
          and inside.classification is states.Regularity.CONTINUOUS_AT_0)
    return 0.0 if ok else 1.0, ok, {"fock": fock.classification.value, "g0_off_L": jump.classification.value,
                                    "g0_on_L": inside.classification.value}


@check("states", "states.quasifree_convergence", "|g_l(psi) - g0(psi)| = exp(-l^2/4) for psi = (1, 0)", 1e-15)
def _quasifree(ctx, tol):
    rows = states.quasifree_convergence(PhasePoint.of([1], [0]), [1, 2, 4, 8])
    dev = max(abs(r[2] - math.exp(-r[0] ** 2 / 4)) for r in rows)
    mono = all(a[2] > b[2] for a, b in zip(rows, rows[1:]))
    return float(dev), dev <= tol and mono, {"monotone": mono}


@check("states", "states.colombeau_order", "exp(-eps^-n |phi|^2 / 4) = O(eps^m) for every m", 10)
def _colombeau(ctx, tol):
    worst, ok = math.inf, True
    for n in (1, 2):
        rep = states.colombeau_scaling_test(0.25, 1.0, n, [1e-2, 1e-3, 1e-4], int(tol))
        worst = min(worst, rep.orders[-1])
        ok &= rep.asymptotically_negligible
    return float(worst), worst >= tol and ok, {"note": "order at the smallest eps; must exceed m_max"}


@check("states", "states.linearity", "omega(alpha A + B) = alpha omega(A) + omega(B)", 1e-12)
def _linearity(ctx, tol):
    rng = ctx.rng("states.linearity")
    worst = 0.0
    for _ in range(50):
        space = SymplecticSpace.standard(int(rng.integers(1, 4)))
        a, b = random_element(rng, space), random_element(rng, space)
        alpha = complex(rng.normal(), rng.normal())
        for g in (states.dirac_g0(space), states.fock(space), states.quasifree(space, 2)):
            lhs = states.evaluate_state(g, a.scale(alpha) + b)
            rhs = alpha * states.evaluate_state(g, a) + states.evaluate_state(g, b)
            worst = max(worst, abs(lhs - rhs))
    return _le(worst, tol)


# ---------------------------------------------------------------- gns

@check("gns", "gns.fixpoint_residual", "omega(T_y* T_y) = 2 - 2 Re omega(W(y))", 1e-12)
def _fixpoint(ctx, tol):
    rng = ctx.rng("gns.fixpoint_residual")
    worst = 0.0
    for _ in range(100):
        space = SymplecticSpace.standard(int(rng.integers(1, 4)))
        y = random_point(rng, space.n)
        t = WeylElement.generator(space, y) - 1
        for g in (states.dirac_g0(space), states.fock(space), states.quasifree(space, 3)):
            direct = states.evaluate_state(g, weyl_mul(adjoint(t), t))
            worst = max(worst, abs(direct - gns.gns_fixpoint_residual(g, y)))
    return _le(worst, tol)


@check("gns", "gns.g0_rank", "<pi0(W(y))Omega0, pi0(W(z))Omega0> = 0 for y1 != z1", 1e-12)
def _g0_rank(ctx, tol):
    rng = ctx.rng("gns.g0_rank")
    worst, rank_ok = 0.0, True
    for k in range(1, 17):
        n = int(rng.integers(1, 4))
        pts = _clustered_points(rng, n, 3 * k + 4, k)
        span = gns.gns_build(states.dirac_g0(SymplecticSpace.standard(n)), pts)
        scan = gns.gns_orthogonality_scan(span)
        rank_ok &= scan.rank == scan.classes
        worst = max(worst, scan.max_cross, scan.max_within_dev)
    return float(worst), worst <= tol and rank_ok, {"rank_equals_classes": rank_ok}


@check("gns", "gns.gram_kernel_relation", "G(x) = h(-x) entrywise", 1e-12)
def _gram_kernel(ctx, tol):
    rng = ctx.rng("gns.gram_kernel_relation")
    worst = 0.0
    for _ in range(10):
        space = SymplecticSpace.standard(2)
        pts = list({random_point(rng, 2) for _ in range(12)})
        for g in (states.dirac_g0(space), states.quasifree(space, 2)):
            gram = gns.gram_matrix(g, pts)
            worst = max(worst, float(np.abs(gram - states.kernel_matrix(g, [-p for p in pts])).max()))
    return _le(worst, tol)


@check("gns", "gns.grid_weyl_relation", "pi(W(y)) pi(W(z)) = exp(i beta(y, z)) pi(W(y + z))", 1e-8)
def _grid_weyl(ctx, tol):
    rng = ctx.rng("gns.grid_weyl_relation")
    rep = gns.GridRep(1024, 16.0)
    omega = gns.gaussian_vacuum(rep)
    worst = 0.0
    for _ in range(50):
        y, z = (_disc_point(rng, 2.0) for _ in range(2))
        lhs = gns.grid_weyl_apply(rep, y, gns.grid_weyl_apply(rep, z, omega))
        b = 0.5 * (y[0] * z[1] - y[1] * z[0])
        rhs = np.exp(1j * b) * gns.grid_weyl_apply(rep, (y[0] + z[0], y[1] + z[1]), omega)
        worst = max(worst, rep.norm(lhs - rhs), abs(rep.norm(gns.grid_weyl_apply(rep, y, omega)) - 1))
    return _le(worst, tol)


def _disc_point(rng, radius: float) -> tuple[float, float]:
    r = radius * math.sqrt(rng.random())
    a = 2 * math.pi * rng.random()
    return r * math.cos(a), r * math.sin(a)


@check("gns", "gns.f_omega", "<Omega, pi(W(z)) Omega> = exp(-|z|^2 / 4)", 1e-6)
def _f_omega(ctx, tol):
    rng = ctx.rng("gns.f_omega")
    rep = gns.GridRep(1024, 16.0)
    zs = [_disc_point(rng, 4.0) for _ in range(50)]
    f = gns.vector_function(rep, gns.gaussian_vacuum(rep), zs)
    exact = np.array([math.exp(-(a * a + b * b) / 4) for a, b in zs])
    return _le(float(np.abs(f - exact).max()), tol)


@check("gns", "gns.c0_decay", "h(z) -> 0 as |z| -> infinity for normal states of the Schroedinger rep", 0.02)
def _c0(ctx, tol):
    rep = gns.GridRep(1024, 16.0)
    rows = gns.c0_decay_scan(rep, gns.gaussian_vacuum(rep), [0, 1, 2, 3, 4])
    dec = all(a[1] >= b[1] for a, b in zip(rows, rows[1:]))
    return float(rows[-1][1]), rows[-1][1] <= tol and dec, {"rows": rows}


# ---------------------------------------------------------------- torus

@check("torus", "torus.relation", "W(m)W(n) = exp(i theta (m1 n2 - m2 n1)) W(m + n)", 1e-12)
def _torus_relation(ctx, tol):
    worst = 0.0
    for p, q in ((1, 2), (1, 3), (2, 5)):
        worst = max(worst, torus.relation_deviation(torus.torus_build(p, q, verify=False)))
    return _le(worst, tol)


@check("torus", "torus.trace_state", "tau(sum c_m W(m)) = c_0", 1e-12)
def _torus_trace(ctx, tol):
    rng = ctx.rng("torus.trace_state")
    worst = 0.0
    for p, q in ((1, 2), (1, 3), (2, 5)):
        rep = torus.torus_build(p, q, verify=False)
        w = rep.period - 1
        for _ in range(50):
            el = {(int(rng.integers(-w, w + 1)), int(rng.integers(-w, w + 1))): complex(rng.normal(), rng.normal())
                  for _ in range(4)}
            worst = max(worst, abs(torus.torus_trace_state(rep, el) - el.get((0, 0), 0)))
    return _le(worst, tol)


# ---------------------------------------------------------------- measures

def _random_measure(rng, d: int, atoms: int, *, positive: bool = False, lattice: bool = True,
                    include_zero: bool = False) -> measures.AtomicMeasure:
    locs = rng.integers(-3, 4, size=(atoms, d)).astype(float) if lattice else rng.normal(size=(atoms, d))
    if include_zero:
        locs[0] = 0.0
    w = rng.random(atoms) if positive else rng.normal(size=atoms) + 1j * rng.normal(size=atoms)
    return measures.AtomicMeasure(d, locs, w)


@check("measures", "measures.identities", "<F mu, nu> = <mu, F nu>; g0 mu = mu1({0})(delta0 x mu2); "
       "F(g0 mu)(u1,u2) = F mu2(u2); |rho| F(g0 mu) = (h0 rho) * F mu", 1e-12)
def _identities(ctx, tol):
    rng = ctx.rng("measures.identities")
    worst = {"duality": 0.0, "product_lemma": 0.0, "identity21": 0.0, "identity23": 0.0, "homomorphism": 0.0}
    for _ in range(50):
        d1, d2 = (int(v) for v in rng.integers(1, 4, size=2))
        split = measures.SplitSpace(d1, d2)
        mu = _random_measure(rng, d1 + d2, 5, lattice=False)
        nu = _random_measure(rng, d1 + d2, 5, lattice=False)
        worst["duality"] = max(worst["duality"], measures.duality_check(mu, nu))
        mu1 = _random_measure(rng, d1, 4, include_zero=True)
        mu2 = _random_measure(rng, d2, 3)
        worst["product_lemma"] = max(worst["product_lemma"], measures.product_lemma_check(split, mu1, mu2))
        u = rng.normal(size=(20, d1 + d2))
        worst["identity21"] = max(worst["identity21"], measures.identity21_check(split, mu2, u))
        rho1 = _random_measure(rng, d1, 3, positive=True, lattice=False)
        worst["identity23"] = max(worst["identity23"], measures.identity23_check(split, mu2, rho1, u))
        conv = measures.convolve_measures(mu, nu)
        lhs = measures.fourier_atomic(conv, u)
        rhs = measures.fourier_atomic(mu, u) * measures.fourier_atomic(nu, u)
        worst["homomorphism"] = max(worst["homomorphism"], float(np.abs(lhs - rhs).max()))
    if ctx.measure is not None:
        mu = ctx.measure
        for _ in range(20):
            nu = _random_measure(rng, mu.d, 5, lattice=False)
            u = rng.normal(size=(20, mu.d))
            worst["duality"] = max(worst["duality"], measures.duality_check(mu, nu))
            lhs = measures.fourier_atomic(measures.convolve_measures(mu, nu), u)
            rhs = measures.fourier_atomic(mu, u) * measures.fourier_atomic(nu, u)
            worst["homomorphism"] = max(worst["homomorphism"], float(np.abs(lhs - rhs).max()))
    value = max(worst.values())
    return value, value <= tol, worst


@check("measures", "measures.finite_bochner", "F delta_L0 = (2 pi)^dim L0 delta_L0perp", 1e-6)
def _bochner(ctx, tol):
    res = {str(ax): measures.finite_bochner_check(2, ax) for ax in ([0], [1], [], [0, 1])}
    value = max(r.relative_deviation for r in res.values())
    return value, value <= tol, {k: {"lhs": r.lhs, "rhs": r.rhs} for k, r in res.items()}


@check("measures", "measures.gaussian_mc", "int exp(i <u, phi>) dnu_l(u) = exp(-l^2 |phi|^2 / 4)", 4.0)
def _mc(ctx, tol):
    rng = ctx.rng("measures.gaussian_mc")
    worst, runs = 0.0, []
    for l in (1, 2):
        for d in (1, 4, 8):
            spec = measures.GaussianSpec.quasifree(d, l)
            phi = rng.normal(size=d) / math.sqrt(d)
            psi = rng.normal(size=d) / math.sqrt(d)
            for k, r in enumerate((measures.gaussian_mc_functional(spec, phi, 100_000, ctx.seed, stream=10 * d + l),
                                   measures.moment_check(spec, phi, psi, 100_000, ctx.seed, stream=100 + 10 * d + l))):
                worst = max(worst, r.deviation / r.stderr)
                runs.append(r.to_json())
    return worst, worst <= tol, {"runs": runs, "note": "moment target phi^T cov psi = (l^2/2) <phi, psi>"}


@check("measures", "measures.product_form", "g(psi) = g1(Re psi) g2(i Im psi) under nu1 x nu2", 4.0)
def _product(ctx, tol):
    s1 = measures.GaussianSpec.isotropic(2, 1.0)
    s2 = measures.GaussianSpec.isotropic(2, 1.0)
    pairs = [([1, 0], [1, 0]), ([0.5, -0.3], [0, 0]), ([0.2, 0.7], [-1.0, 0.4])]
    res = measures.product_form_check(s1, s2, pairs, 100_000, ctx.seed)
    ratio = max(max(b / p, p / b) for b, p in zip(res.batch_variances, res.predicted_variances) if p > 0)
    return res.max_sigma, res.max_sigma <= tol and ratio <= 2, {"variance_ratio": ratio}


# ---------------------------------------------------------------- driver

def run_suite(config: SuiteConfig) -> list[SuiteReport]:
    """Run the configured suite(s); input problems raise :class:`ConfigError`."""
    config.validate()
    pts = None
    if config.points is not None:
        try:
            pts = read_points(config.points)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read points from {config.points}: {exc}") from None
        if not pts:
            raise ConfigError(f"point file {config.points} contains no points")
    mu = None
    if config.measures is not None:
        try:
            mu = measures.AtomicMeasure.loads(Path(config.measures).read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read measure from {config.measures}: {exc}") from None
        if len(mu) == 0:
            raise ConfigError(f"measure file {config.measures} has no atoms")
    ctx = Context(config.seed, dict(config.tolerances), pts, mu)
    reports = []
    for name in config.suite_names():
        records = []
        for c in REGISTRY[name]:
            tol = config.tolerances.get(c.check_id, c.tol)
            t0 = time.perf_counter()
            value, ok, details = c.run(ctx, tol)
            ms = 1000 * (time.perf_counter() - t0)
            records.append(CheckRecord(c.check_id, c.anchor, "pass" if ok else "fail",
                                       float(value), float(tol), round(ms, 3), _jsonable(details)))
        reports.append(SuiteReport(name, config.seed, records))
    return reports


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def report_document(reports: list[SuiteReport], *, runtime: bool = True) -> dict:
    overall = "pass" if all(r.overall == "pass" for r in reports) else "fail"
    return {"schema_version": SCHEMA_VERSION, "overall": overall,
            "suites": [r.to_dict(runtime=runtime) for r in reports]}


def emit_report(reports: list[SuiteReport], fmt: str = "json", path: str | Path | None = None) -> str:
    """Serialize reports as JSON (stable key order) or a one-row-per-check CSV."""
    if fmt == "json":
        text = json.dumps(report_document(reports), indent=2, sort_keys=False) + "\n"
    elif fmt == "csv-summary":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check_id", "verdict", "value", "tolerance", "runtime_ms", "anchor"])
        for rep in reports:
            for r in rep.records:
                w.writerow([rep.suite, r.check_id, r.verdict, repr(r.value), repr(r.tolerance), r.runtime_ms, r.anchor])
        text = buf.getvalue()
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def report_schema() -> dict:
    return json.loads(resources.files("weyl_lab").joinpath("report_schema.json").read_text())
