"""A walk through the Dirac state g0 and its quasifree approximants.

Run with ``python3 demos/01_dirac_state_tour.py``.
"""
from fractions import Fraction

import numpy as np

from weyl_lab import gns, states
from weyl_lab.symplectic import PhasePoint, SymplecticSpace

space = SymplecticSpace.standard(1)
g0 = states.dirac_g0(space)

# g0 is 1 on the constraint line {0} x Q and 0 everywhere else.
for z in (PhasePoint.of([0], [3]), PhasePoint.of([Fraction(1, 1000)], [0])):
    print(f"g0{z!r} = {g0(z)}")

# Its kernel is block diagonal in the first coordinate and positive semidefinite.
pts = [PhasePoint.of([a], [b]) for a in (0, 1) for b in (0, Fraction(1, 2), 2)]
K = states.kernel_matrix(g0, pts)
print("kernel eigenvalues:", np.round(np.linalg.eigvalsh(K), 6) + 0.0)

# The GNS vectors pi(W(x)) Omega collapse to one direction per first block.
span = gns.gns_build(g0, pts)
print(f"{len(pts)} points, {len({p.first for p in pts})} first blocks, Gram rank {span.rank}")

# A constant function is not a state once beta takes the value pi/2.
one = states.custom(space, lambda z: 1.0)
witness = [space.zero(), PhasePoint.of([1], [0]), PhasePoint.of([0], [Fraction(np.pi)])]
print("g = 1 on the witness:", states.positivity_check(states.kernel_matrix(one, witness)))

# Regularity: t -> g(tz) is continuous at 0 for Fock, jumps for g0 off the line.
grid = [0.0] + [s * 2.0 ** -k for k in range(21) for s in (1, -1)]
for name, g, z in (("Fock", states.fock(space), PhasePoint.of([1], [1])),
                   ("g0 off L", g0, PhasePoint.of([1], [0])),
                   ("g0 on L", g0, PhasePoint.of([0], [1]))):
    print(f"{name:9s} -> {states.regularity_probe(g, z, grid).classification.value}")

# Quasifree states g_l approach g0 pointwise as l grows.
print("  l    g_l(psi)      |g_l - g0|")
for l, v, d in states.quasifree_convergence(PhasePoint.of([1], [0]), [1, 2, 4, 8]):
    print(f"{l:4.0f}  {v:.6e}  {d:.6e}")

# Mollified quasifree values are O(eps^m) only in the limit: at eps = 1e-2
# the value exp(-25) still exceeds eps^6, while at eps = 1e-4 it is far below eps^10.
rep = states.colombeau_scaling_test(0.25, 1.0, 1, [1e-2, 1e-3, 1e-4], 10)
for eps, order in zip(rep.eps, rep.orders):
    print(f"eps={eps:g}: value <= eps^m for every m up to {order:.1f}")
