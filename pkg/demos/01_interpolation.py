# Cubic Hermite and periodic spline interpolation on the unit circle.
#
# Both interpolants are piecewise cubics. Hermite uses nodal values and
# slopes, the spline only values and solves a cyclic tridiagonal system for
# the slopes. We look at the L2 error under refinement and at the function
# whose Hermite interpolant is far larger than the function itself.

import numpy as np

from sladvect import hermite_interpolate, perturbed_grid, spline_interpolate, uniform_grid
from sladvect.interpolation import unboundedness_witness
from sladvect.norms import sample_points, simpson_functional

x = sample_points(3000)
exact = np.sin(2 * np.pi * x)

print("L2 interpolation error of sin(2 pi x)")
print("   M     hermite      spline")
prev = None
for M in (10, 20, 40, 80, 160):
    g = uniform_grid(M)
    f = np.sin(2 * np.pi * g.nodes)
    df = 2 * np.pi * np.cos(2 * np.pi * g.nodes)
    eh = simpson_functional((hermite_interpolate(g, f, df).eval(x) - exact) ** 2)
    es = simpson_functional((spline_interpolate(g, f).eval(x) - exact) ** 2)
    line = f"{M:4d}  {eh:.3e}  {es:.3e}"
    if prev:
        line += f"   rates {np.log2(prev[0] / eh):.2f} {np.log2(prev[1] / es):.2f}"
    print(line)
    prev = (eh, es)

# non-uniform meshes work the same way
g = perturbed_grid(40, amplitude=0.3, seed=1)
s = spline_interpolate(g, np.sin(2 * np.pi * g.nodes))
print("\nspline on a jittered 40-node mesh, max error:",
      "%.2e" % np.max(np.abs(s.eval(x) - exact)))

# v = 1 - 8 s^2 (1-s)^2 in every cell has value 1 and slope 0 at each node,
# so any power v**n is interpolated by the constant 1 while its L2 norm
# goes to zero. The ratio grows without bound (slowly, about n**(1/4)).
print("\n||I v_n|| / ||v_n||")
for n in (1, 100, 10**4, 10**6, 10**8):
    print(f"  n = {n:>9d}: {unboundedness_witness(uniform_grid(10), n):8.2f}")
