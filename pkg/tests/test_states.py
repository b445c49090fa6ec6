import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weyl_lab import states
from weyl_lab.symplectic import PhasePoint, SymplecticSpace
from weyl_lab.weyl import WeylElement, adjoint, weyl_mul

from strategies import elements, points

S1, S2 = SymplecticSpace.standard(1), SymplecticSpace.standard(2)


def P(a, b):
    return PhasePoint.of(a, b)


def naive_kernel(g, pts):
    """Entry-by-entry oracle with the exact form."""
    out = np.empty((len(pts), len(pts)), complex)
    for j, x in enumerate(pts):
        for k, y in enumerate(pts):
            b = float((sum(a * c for a, c in zip(x.first, y.second)) - sum(a * c for a, c in zip(x.second, y.first))) / 2)
            out[j, k] = g(x - y) * cmath.exp(-1j * b)
    return out


@pytest.mark.parametrize("z,expected", [
    (P([0], [5]), 1.0),
    (P([Fraction(1, 10**9)], [0]), 0.0),
    (P([0, 0], [1, -1]), 1.0),
    (P([0, 1], [0, 0]), 0.0),
])
def test_g0_values(z, expected):
    assert states.dirac_g0(SymplecticSpace.standard(z.n))(z) == expected


@pytest.mark.parametrize("l", [0.5, 1, 2, 4])
def test_quasifree_closed_form(l):
    z = P([1, "1/2"], [-2, 3])
    expected = math.exp(-(l * l / 4) * 1.25 - 13 / (4 * l * l))
    assert states.quasifree(S2, l)(z) == pytest.approx(expected, rel=1e-14)


def test_fock_is_l_equal_one():
    z = P([0.3], [-1.1])
    assert states.fock(S1)(z) == pytest.approx(math.exp(-(0.09 + 1.21) / 4))
    assert states.fock(S1)(z) == pytest.approx(states.quasifree(S1, 1)(z))


def test_quasifree_requires_positive_l():
    with pytest.raises(ValueError):
        states.quasifree(S1, 0)


@pytest.mark.parametrize("func,msg", [
    (lambda z: 0.5, "g\\(0\\) = 1"),
    (lambda z: 1.0 if z.is_zero() else 2.0, "> 1"),
    (lambda z: 1.0 if z.is_zero() else cmath.exp(1j * float(z.first[0] + 1)), "conj"),
])
def test_custom_spot_checks(func, msg):
    with pytest.raises(ValueError, match=msg):
        states.custom(S1, func)


def test_kernel_matches_naive_oracle():
    rng = np.random.default_rng(3)
    from weyl_lab.sampling import random_point
    pts = list({random_point(rng, 2) for _ in range(15)})
    for g in (states.dirac_g0(S2), states.quasifree(S2, 2)):
        np.testing.assert_allclose(states.kernel_matrix(g, pts), naive_kernel(g, pts), atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.lists(points(2), min_size=1, max_size=12, unique=True), st.sampled_from([0.5, 1.0, 3.0]))
def test_quasifree_kernels_are_psd(pts, l):
    rep = states.positivity_check(states.kernel_matrix(states.quasifree(S2, l), pts))
    assert rep.verdict is states.Verdict.PSD


@settings(max_examples=40, deadline=None)
@given(st.lists(points(1), min_size=1, max_size=12, unique=True))
def test_g0_kernel_psd(pts):
    # reuse first blocks so the kernel is not diagonal
    pts = pts + [PhasePoint(p.first, tuple(v + 1 for v in p.second)) for p in pts]
    rep = states.positivity_check(states.kernel_matrix(states.dirac_g0(S1), pts))
    assert rep.min_eigenvalue >= -1e-9


def test_positivity_check_validation():
    with pytest.raises(ValueError):
        states.positivity_check(np.ones((2, 3)))
    with pytest.raises(ValueError):
        states.positivity_check(np.array([[1, 1j], [1j, 1]]))
    assert states.positivity_check(np.diag([1.0, -1e-12])).verdict is states.Verdict.PSD
    assert states.positivity_check(np.diag([1.0, -1e-3])).verdict is states.Verdict.INDEFINITE


@settings(max_examples=30, deadline=None)
@given(elements(1, max_terms=4))
def test_states_are_positive_on_a_star_a(a):
    for g in (states.dirac_g0(S1), states.fock(S1)):
        v = states.evaluate_state(g, weyl_mul(adjoint(a), a))
        assert v.real >= -1e-9 and abs(v.imag) <= 1e-9


def test_dirac_check_requires_isotropy():
    with pytest.raises(ValueError):
        states.dirac_check(states.dirac_g0(S1), [P([1], [0]), P([0], [1])], 2)
    assert not states.dirac_check(states.fock(S1), [P([0], [1])], 2)
    assert states.dirac_check(states.dirac_g0(S2), [P([0, 0], [1, 0]), P([0, 0], ["1/2", 3])], 3)


def test_dirac_invariance():
    a = WeylElement(S1, {P([1], [2]): 1 + 1j, P([0], [0]): 2.0, P([0], ["1/3"]): -1.0})
    y = P([0], [Fraction(5, 2)])
    assert states.dirac_invariance_check(states.dirac_g0(S1), a, y) <= 1e-12
    assert states.dirac_invariance_check(states.fock(S1), a, y) > 0.1


def test_phase_identity():
    g0 = states.dirac_g0(S1)
    assert states.phase_identity_check(g0, P([0], [1]), P([2], [3]), [0, 0.5, 1, 2]) == 0.0
    assert states.phase_identity_check(states.fock(S1), P([0], [1]), P([2], [3]), [0, 0.5, 1]) > 0.01
    with pytest.raises(ValueError):
        states.phase_identity_check(g0, P([0], [1]), P([0], [3]), [0, 1])


GRID = [0.0] + [s * 2.0 ** -k for k in range(21) for s in (1, -1)]


@pytest.mark.parametrize("g,z,expected", [
    (states.fock(S1), P([1], [1]), states.Regularity.CONTINUOUS_AT_0),
    (states.quasifree(S1, 3), P([1], [0]), states.Regularity.CONTINUOUS_AT_0),
    (states.dirac_g0(S1), P([1], [0]), states.Regularity.JUMP_AT_0),
    (states.dirac_g0(S1), P([0], [1]), states.Regularity.CONTINUOUS_AT_0),
])
def test_regularity(g, z, expected):
    assert states.regularity_probe(g, z, GRID).classification is expected


def test_regularity_grid_validation():
    with pytest.raises(ValueError):
        states.regularity_probe(states.fock(S1), P([1], [0]), [0.5, 0.25])
    with pytest.raises(ValueError):
        states.regularity_probe(states.fock(S1), P([1], [0]), [0.0])


def test_quasifree_convergence_rows():
    rows = states.quasifree_convergence(P([1], [0]), [1, 2, 4, 8])
    assert [r[0] for r in rows] == [1, 2, 4, 8]
    for l, v, d in rows:
        assert d == pytest.approx(math.exp(-l * l / 4), rel=1e-15)
    # off L the limit g0 = 0 is approached; on L the value tends to 1
    on_l = states.quasifree_convergence(P([0], [1]), [1, 4, 16])
    assert on_l[-1][2] < on_l[0][2]


def test_colombeau_literal_and_asymptotic():
    rep = states.colombeau_scaling_test(0.25, 1.0, 1, [1e-2, 1e-3, 1e-4], 10)
    assert rep.log_values[0] == pytest.approx(-25.0)
    assert rep.orders[0] == pytest.approx(25 / math.log(100))
    assert not rep.negligible
    assert {m for _, m in rep.failures} == {6, 7, 8, 9, 10}
    assert rep.asymptotically_negligible
    two = states.colombeau_scaling_test(states.fock(S1), 1.0, 2, [1e-2, 1e-3], 10)
    assert two.negligible


def test_colombeau_validation():
    with pytest.raises(ValueError):
        states.colombeau_scaling_test(0.25, 1.0, 1, [], 3)
    with pytest.raises(ValueError):
        states.colombeau_scaling_test(0.25, 1.0, 1, [2.0], 3)
    with pytest.raises(ValueError):
        states.colombeau_scaling_test(states.dirac_g0(S1), 1.0, 1, [0.1], 3)
