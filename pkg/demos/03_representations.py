"""Two concrete representations: clock-and-shift matrices and a grid Schroedinger picture.

Run with ``python3 demos/03_representations.py``.
"""
import numpy as np

from weyl_lab import gns, torus

# Deformed torus at theta = pi p / q on C^q.
for p, q in ((1, 2), (1, 3), (2, 5)):
    rep = torus.torus_build(p, q)
    tau = torus.torus_trace_state(rep, {(0, 0): 0.25, (1, 1): 3.0, (-1, 0): 1j})
    print(f"theta = {p}pi/{q}: relation deviation {torus.relation_deviation(rep):.1e}, trace state {tau:.3f}")

# Schroedinger representation on a periodic grid; Omega is the oscillator ground state.
grid = gns.GridRep(1024, 16.0)
omega = gns.gaussian_vacuum(grid)
zs = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, -2.0)]
f = gns.vector_function(grid, omega, zs)
for z, v in zip(zs, f):
    print(f"f_Omega{z} = {v.real:.8f}   exp(-|z|^2/4) = {np.exp(-(z[0]**2 + z[1]**2) / 4):.8f}")

# Vector functions of normal states decay at infinity.
excited = np.sqrt(2) * grid.x * omega
for r, m in gns.c0_decay_scan(grid, [(0.7, omega), (0.3, excited)], [0, 1, 2, 4, 6]):
    print(f"R = {r:3.0f}: max |h| = {m:.3e}")
