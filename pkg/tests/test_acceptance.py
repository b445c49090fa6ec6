"""One test per acceptance criterion, at the stated tolerance and sizes."""
from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from weyl_lab import gns, measures, states, torus
from weyl_lab.sampling import random_element, random_point
from weyl_lab.symplectic import PhasePoint, SymplecticSpace, _beta
from weyl_lab.weyl import WeylElement, adjoint, max_deviation, weyl_mul

SEED = 20240601


def report(k: int, ok: bool, detail: str) -> None:
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")


@pytest.mark.criterion(1, "Weyl algebra exactness")
def test_weyl_algebra_exactness():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst, exact = 0.0, True
    for _ in range(200):
        n = int(rng.integers(1, 5))
        space = SymplecticSpace.standard(n)
        y, z, w = (random_point(rng, n) for _ in range(3))
        wy, wz, ww = (WeylElement.generator(space, p) for p in (y, z, w))
        one = WeylElement.unit(space)
        # unitarity
        for u in (weyl_mul(adjoint(wy), wy), weyl_mul(wy, adjoint(wy))):
            exact &= u.support == {space.zero()}
            worst = max(worst, max_deviation(u, one))
        # involution
        exact &= adjoint(adjoint(wy)) == wy
        lhs, rhs = adjoint(weyl_mul(wy, wz)), weyl_mul(adjoint(wz), adjoint(wy))
        exact &= lhs.support == rhs.support == {-(y + z)}
        worst = max(worst, max_deviation(lhs, rhs))
        # associativity, with the exact cocycle identity behind it
        lhs, rhs = weyl_mul(weyl_mul(wy, wz), ww), weyl_mul(wy, weyl_mul(wz, ww))
        exact &= lhs.support == rhs.support == {y + z + w}
        exact &= _beta(y, z) + _beta(y + z, w) == _beta(z, w) + _beta(y, z + w)
        worst = max(worst, max_deviation(lhs, rhs))
        # W(y)D - DW(y) = (W(y) - 1)D - D(W(y) - 1)
        d = random_element(rng, space, terms=3)
        t = wy - 1
        lhs = weyl_mul(wy, d) - weyl_mul(d, wy)
        rhs = weyl_mul(t, d) - weyl_mul(d, t)
        worst = max(worst, max_deviation(lhs, rhs))
    elapsed = time.perf_counter() - t0
    ok = exact and worst <= 1e-12 and elapsed < 5
    report(1, ok, f"max phase deviation {worst:.2e}, support exact {exact}, {elapsed:.2f}s")
    assert exact
    assert worst <= 1e-12
    assert elapsed < 5


def _clustered(rng, n, size, classes):
    firsts = [random_point(rng, n).first for _ in range(classes)]
    return list({PhasePoint(firsts[int(rng.integers(classes))], random_point(rng, n).second)
                 for _ in range(size)})


@pytest.mark.criterion(2, "Kernel positivity")
def test_kernel_positivity():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = math.inf
    for _ in range(20):
        n = int(rng.integers(1, 9))
        pts = _clustered(rng, n, int(rng.integers(2, 65)), int(rng.integers(1, 6)))
        assert len(pts) <= 64
        space = SymplecticSpace.standard(n)
        for g in (states.dirac_g0(space), *(states.quasifree(space, l) for l in (1, 2, 4))):
            worst = min(worst, states.positivity_check(states.kernel_matrix(g, pts)).min_eigenvalue)
    space = SymplecticSpace.standard(1)
    one = states.custom(space, lambda z: 1.0)
    y, z = PhasePoint.of([1], [0]), PhasePoint.of([0], [Fraction(math.pi)])
    assert math.isclose(float(_beta(y, z)), math.pi / 2, rel_tol=1e-15)
    witness = states.positivity_check(states.kernel_matrix(one, [space.zero(), y, z]))
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-9 and witness.verdict is states.Verdict.INDEFINITE and elapsed < 10
    report(2, ok, f"min eigenvalue {worst:.2e}, witness {witness.verdict.value} "
                  f"({witness.min_eigenvalue:.4f}), {elapsed:.2f}s")
    assert worst >= -1e-9
    assert witness.verdict is states.Verdict.INDEFINITE
    assert elapsed < 10


@pytest.mark.criterion(3, "Dirac diagnostics")
def test_dirac_diagnostics():
    rng = np.random.default_rng(SEED)
    lattice_ok = True
    for n in (1, 2, 3):
        space = SymplecticSpace.standard(n)
        gens = [PhasePoint((0,) * n, tuple(int(i == k) for i in range(n))) for k in range(n)]
        lattice_ok &= states.dirac_check(states.dirac_g0(space), gens, 5)
    inv = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        space = SymplecticSpace.standard(n)
        a = random_element(rng, space, terms=4, max_num=2, max_den=2)
        y = PhasePoint((0,) * n, random_point(rng, n).second)
        inv = max(inv, states.dirac_invariance_check(states.dirac_g0(space), a, y))
    phase, forced = 0.0, True
    for _ in range(50):
        n = int(rng.integers(1, 4))
        g0 = states.dirac_g0(SymplecticSpace.standard(n))
        z0 = random_point(rng, n)
        if not any(z0.first):
            z0 = PhasePoint((Fraction(1),) + z0.first[1:], z0.second)
        k = next(i for i, v in enumerate(z0.first) if v)
        y0 = PhasePoint((0,) * n, tuple(int(i == k) for i in range(n)))
        phase = max(phase, states.phase_identity_check(g0, y0, z0, [0, 0.25, 1, -3, 10]))
        forced &= g0(z0) == 0
    ok = lattice_ok and inv <= 1e-12 and phase <= 1e-12 and forced
    report(3, ok, f"lattice {lattice_ok}, invariance {inv:.1e}, phase identity {phase:.1e}, g0(z0)=0 {forced}")
    assert lattice_ok and forced
    assert inv <= 1e-12
    assert phase <= 1e-12


@pytest.mark.criterion(4, "Regularity dichotomy")
def test_regularity_dichotomy():
    grid = [0.0] + [s * 2.0 ** -k for k in range(21) for s in (1, -1)]
    space = SymplecticSpace.standard(2)
    fock = states.regularity_probe(states.fock(space), PhasePoint.of([1, -2], [3, 1]), grid)
    off_l = [states.regularity_probe(states.dirac_g0(space), z, grid)
             for z in (PhasePoint.of([1, 0], [0, 0]), PhasePoint.of([0, 2], [1, 1]))]
    ok = (fock.classification is states.Regularity.CONTINUOUS_AT_0
          and all(r.classification is states.Regularity.JUMP_AT_0 for r in off_l))
    report(4, ok, f"Fock {fock.classification.value}, g0 {[r.classification.value for r in off_l]}")
    assert ok


@pytest.mark.criterion(5, "GNS identities")
def test_gns_identities():
    rng = np.random.default_rng(SEED)
    resid = 0.0
    for _ in range(200):
        space = SymplecticSpace.standard(int(rng.integers(1, 4)))
        y = random_point(rng, space.n)
        t = WeylElement.generator(space, y) - 1
        for g in (states.dirac_g0(space), states.fock(space), states.quasifree(space, 2)):
            direct = states.evaluate_state(g, weyl_mul(adjoint(t), t)).real
            resid = max(resid, abs(gns.gns_fixpoint_residual(g, y) - (2 - 2 * g(y).real)),
                        abs(direct - gns.gns_fixpoint_residual(g, y)))
    ranks = []
    for k in range(1, 17):
        n = int(rng.integers(1, 4))
        firsts = []
        while len(firsts) < k:
            f = random_point(rng, n).first
            if f not in firsts:
                firsts.append(f)
        pts = list({PhasePoint(f, random_point(rng, n).second) for f in firsts for _ in range(3)})
        span = gns.gns_build(states.dirac_g0(SymplecticSpace.standard(n)), pts, tol=1e-9)
        ranks.append((k, span.rank))
    ok = resid <= 1e-12 and all(k == r for k, r in ranks)
    report(5, ok, f"residual deviation {resid:.1e}, ranks {ranks}")
    assert resid <= 1e-12
    assert all(k == r for k, r in ranks)


@pytest.mark.criterion(6, "Discretized Schroedinger representation")
def test_grid_schroedinger():
    rng = np.random.default_rng(SEED)
    rep = gns.GridRep(1024, 16.0)
    omega = gns.gaussian_vacuum(rep)

    def disc(radius):
        r, a = radius * math.sqrt(rng.random()), 2 * math.pi * rng.random()
        return r * math.cos(a), r * math.sin(a)

    rel = 0.0
    for _ in range(50):
        y, z = disc(2.0), disc(2.0)
        lhs = gns.grid_weyl_apply(rep, y, gns.grid_weyl_apply(rep, z, omega))
        b = 0.5 * (y[0] * z[1] - y[1] * z[0])
        rhs = np.exp(1j * b) * gns.grid_weyl_apply(rep, (y[0] + z[0], y[1] + z[1]), omega)
        rel = max(rel, rep.norm(lhs - rhs))
    zs = [disc(4.0) for _ in range(200)] + [(4 * math.cos(a), 4 * math.sin(a)) for a in np.linspace(0, 6.28, 16)]
    f = gns.vector_function(rep, omega, zs)
    f_dev = float(np.abs(f - np.exp(-np.array([a * a + b * b for a, b in zs]) / 4)).max())
    rows = gns.c0_decay_scan(rep, omega, [0, 1, 2, 3, 4])
    ok = rel <= 1e-8 and f_dev <= 1e-6 and rows[-1][1] <= 0.02
    report(6, ok, f"relation {rel:.1e}, f_Omega {f_dev:.1e}, max|f| at R=4 {rows[-1][1]:.5f}")
    assert rel <= 1e-8
    assert f_dev <= 1e-6
    assert rows[-1][1] <= 0.02


@pytest.mark.criterion(7, "Quasifree convergence")
def test_quasifree_convergence():
    rows = states.quasifree_convergence(PhasePoint.of([1], [0]), [1, 2, 4, 8])
    dev = max(abs(d - math.exp(-l * l / 4)) for l, _, d in rows)
    mono = all(a[2] > b[2] for a, b in zip(rows, rows[1:]))
    report(7, dev == 0.0 and mono, f"max deviation from exp(-l^2/4): {dev:.1e}, monotone {mono}")
    assert dev <= 1e-15
    assert mono


@pytest.mark.criterion(8, "Colombeau negligibility on the stated grid")
def test_colombeau_negligibility():
    failures = []
    for n in (1, 2):
        rep = states.colombeau_scaling_test(0.25, 1.0, n, [1e-2, 1e-3, 1e-4], 10)
        failures += [(n, eps, m) for eps, m in rep.failures]
    ok = not failures
    detail = "all bounds hold" if ok else (
        f"{len(failures)} (n, eps, m) violations, e.g. {failures[0]}; "
        f"exp(-25) = {math.exp(-25):.3e} > 1e-2^6")
    report(8, ok, detail)
    assert not failures, detail


@pytest.mark.criterion(9, "Measure identities")
def test_measure_identities():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = {"duality": 0.0, "product": 0.0, "id21": 0.0, "id23": 0.0}

    def atoms(d, k, positive=False, with_zero=False):
        x = rng.integers(-3, 4, size=(k, d)).astype(float)
        if with_zero:
            x[0] = 0
        w = rng.random(k) + 0.1 if positive else rng.normal(size=k) + 1j * rng.normal(size=k)
        return measures.AtomicMeasure(d, x, w)

    for _ in range(50):
        d1, d2 = (int(v) for v in rng.integers(1, 4, size=2))
        split = measures.SplitSpace(d1, d2)
        mu = measures.AtomicMeasure(d1 + d2, rng.normal(size=(6, d1 + d2)), rng.normal(size=6) + 1j)
        nu = measures.AtomicMeasure(d1 + d2, rng.normal(size=(6, d1 + d2)), rng.normal(size=6) - 1j)
        worst["duality"] = max(worst["duality"], measures.duality_check(mu, nu))
        mu1, mu2 = atoms(d1, 4, with_zero=True), atoms(d2, 3)
        worst["product"] = max(worst["product"], measures.product_lemma_check(split, mu1, mu2))
        u = rng.normal(size=(20, d1 + d2))
        worst["id21"] = max(worst["id21"], measures.identity21_check(split, mu2, u, mu1=mu1))
        worst["id23"] = max(worst["id23"], measures.identity23_check(split, mu2, atoms(d1, 3, positive=True), u))
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-12 and elapsed < 5
    report(9, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f}s")
    assert max(worst.values()) <= 1e-12
    assert elapsed < 5


@pytest.mark.criterion(10, "Finite Bochner analog")
def test_finite_bochner():
    res = measures.finite_bochner_check(2, [0])
    target = 2 * math.pi * math.sqrt(2 * math.pi)
    ok = res.relative_deviation <= 1e-6 and math.isclose(res.rhs, target, rel_tol=1e-6)
    report(10, ok, f"lhs {res.lhs:.10f}, rhs {res.rhs:.10f}, relative deviation {res.relative_deviation:.1e}")
    assert math.isclose(res.lhs, target, rel_tol=1e-6)
    assert res.relative_deviation <= 1e-6


@pytest.mark.criterion(11, "Gaussian Monte Carlo")
def test_gaussian_mc():
    rng = np.random.default_rng(SEED)
    worst, runs = 0.0, 0
    for l in (1, 2):
        for d in (1, 2, 4, 8):
            spec = measures.GaussianSpec.quasifree(d, l)
            np.testing.assert_allclose(spec.cov, (l * l / 2) * np.eye(d))
            phi, psi = rng.normal(size=d) / math.sqrt(d), rng.normal(size=d) / math.sqrt(d)
            r = measures.gaussian_mc_functional(spec, phi, 100_000, SEED, stream=d + 10 * l)
            assert math.isclose(r.target.real, math.exp(-l * l * float(phi @ phi) / 4), rel_tol=1e-12)
            m = measures.moment_check(spec, phi, psi, 100_000, SEED, stream=100 + d + 10 * l)
            assert math.isclose(m.target.real, (l * l / 2) * float(phi @ psi), rel_tol=1e-12, abs_tol=1e-15)
            worst = max(worst, r.deviation / r.stderr, m.deviation / m.stderr)
            runs += 2
    report(11, worst <= 4, f"{runs} estimates, worst {worst:.2f} stderr")
    assert worst <= 4


@pytest.mark.criterion(12, "Deformed torus")
def test_torus():
    rng = np.random.default_rng(SEED)
    rel, tr = 0.0, 0.0
    for p, q in ((1, 2), (1, 3), (2, 5)):
        rep = torus.torus_build(p, q)
        rel = max(rel, torus.relation_deviation(rep))
        w = rep.period - 1
        for _ in range(50):
            el = {(int(rng.integers(-w, w + 1)), int(rng.integers(-w, w + 1))): complex(*rng.normal(size=2))
                  for _ in range(5)}
            el[(0, 0)] = el.get((0, 0), 0) + complex(*rng.normal(size=2))
            tr = max(tr, abs(torus.torus_trace_state(rep, el) - el[(0, 0)]))
    report(12, rel <= 1e-12 and tr <= 1e-12, f"relation {rel:.1e}, trace {tr:.1e}")
    assert rel <= 1e-12
    assert tr <= 1e-12
