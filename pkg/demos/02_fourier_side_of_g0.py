"""The measure-side picture of g0: what is checked exactly and what stays heuristic.

On R^d = K x L, g0 is the indicator of L. Informally its Fourier transform
should be a multiple of the indicator h0 of the annihilator of L, i.e. of a
"Lebesgue measure on L_perp". Neither object is a finite measure, so the
library never asserts that statement. What it does check:

* atomic measures: multiplying by g0 and transforming gives exactly the
  transform of the L-factor, and the smeared version with a positive rho on
  L_perp reproduces the convolution with h0 rho;
* a finite analog: the Lebesgue measure on an axis subspace L0 pairs with
  Gaussian test functions like (2 pi)^dim L0 times the point mass on L0_perp.

Run with ``python3 demos/02_fourier_side_of_g0.py``.
"""
import numpy as np

from weyl_lab import measures
from weyl_lab.measures import AtomicMeasure, SplitSpace

rng = np.random.default_rng(1)
split = SplitSpace(1, 2)
mu1 = AtomicMeasure(1, [[0.0], [1.0], [-2.0]], [0.5, 1.0, 2.0])
mu2 = AtomicMeasure(2, rng.integers(-2, 3, size=(3, 2)), rng.normal(size=3))
u = rng.normal(size=(5, 3))

print("product lemma deviation:", measures.product_lemma_check(split, mu1, mu2))
print("F(g0 mu) vs mu1({0}) F mu2:", measures.identity21_check(split, mu2, u, mu1=mu1))
rho1 = AtomicMeasure(1, [[0.5], [-1.5]], [1.0, 0.25])
print("smeared identity with h0 rho:", measures.identity23_check(split, mu2, rho1, u))

# The finite analog, one axis at a time.
for axes in ([], [0], [0, 1]):
    res = measures.finite_bochner_check(2, axes)
    print(f"L0 axes {axes}: lhs {res.lhs:.10f}  rhs {res.rhs:.10f}  rel dev {res.relative_deviation:.1e}")

# Gaussian measures: the quasifree functional exp(-l^2 |phi|^2 / 4) is the
# characteristic function of the centred Gaussian with covariance (l^2/2) I.
# As l grows the functional tends to the indicator of phi = 0 while the
# measure spreads out: the finite-dimensional shadow of "F g0 ~ h0".
phi = np.array([0.3, -0.2])
for l in (1, 2, 4):
    spec = measures.GaussianSpec.quasifree(2, l)
    r = measures.gaussian_mc_functional(spec, phi, 100_000, seed=0)
    print(f"l={l}: MC {r.estimate.real:.5f} +- {r.stderr:.5f}, exact {r.target.real:.5f}")
