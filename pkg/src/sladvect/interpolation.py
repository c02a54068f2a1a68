"""Piecewise cubic interpolants on a periodic grid.

Three operators share one evaluation kernel, a cubic in the local cell
coordinate ``s = (x - x_j) / h_j``:

* cubic Hermite interpolation, from nodal values and first derivatives
  (the closure used by the CIP scheme);
* the periodic C2 cubic spline through nodal values;
* symmetric 4-point Lagrange interpolation on uniform grids.

Second derivatives jump at nodes; ``eval_deriv2`` returns the right limit.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate
from scipy.linalg import solve_banded

from .grid import PeriodicGrid


class PiecewiseCubic:
    """Cubic ``a + b s + c s^2 + d s^3`` on every cell, ``s`` in [0, 1]."""

    def __init__(self, grid: PeriodicGrid, coeffs):
        self.grid = grid
        self._coeffs = np.asarray(coeffs, dtype=float)
        self._coeffs.setflags(write=False)

    def _local(self, x):
        j, s = self.grid.locate_local(x)
        a, b, c, d = self._coeffs[:, j]
        return s, a, b, c, d, self.grid.widths[j]

    def eval(self, x):
        s, a, b, c, d, _ = self._local(x)
        return a + s * (b + s * (c + s * d))

    def eval_deriv(self, x):
        s, _, b, c, d, h = self._local(x)
        return (b + s * (2 * c + 3 * s * d)) / h

    def eval_deriv2(self, x):
        s, _, _, c, d, h = self._local(x)
        return (2 * c + 6 * s * d) / h**2

    __call__ = eval


def _hermite_coeffs(widths, values, derivs):
    f0 = values
    f1 = np.roll(values, -1)
    hd0 = widths * derivs
    hd1 = widths * np.roll(derivs, -1)
    return np.array([
        f0,
        hd0,
        3 * (f1 - f0) - 2 * hd0 - hd1,
        2 * (f0 - f1) + hd0 + hd1,
    ])


def _check_length(grid, arr, name):
    arr = np.asarray(arr, dtype=float)
    if arr.shape != (grid.M,):
        raise ValueError(f"{name} must have shape ({grid.M},), got {arr.shape}")
    return arr


class HermiteFn(PiecewiseCubic):
    """C1 piecewise cubic matching nodal values and nodal derivatives."""

    def __init__(self, grid, values, derivs):
        self.values = _check_length(grid, values, "values")
        self.derivs = _check_length(grid, derivs, "derivs")
        super().__init__(grid, _hermite_coeffs(grid.widths, self.values, self.derivs))


def hermite_interpolate(grid, values, derivs):
    return HermiteFn(grid, values, derivs)


def solve_cyclic_tridiagonal(lower, diag, upper, rhs):
    """Solve a periodic tridiagonal system by Sherman-Morrison.

    Row ``i`` reads ``lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]``
    with indices taken mod ``n``. Two banded solves of the tridiagonal part
    replace a dense factorisation.
    """
    lower = np.asarray(lower, dtype=float)
    diag = np.array(diag, dtype=float)
    upper = np.asarray(upper, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    n = diag.size
    if n < 3:
        raise ValueError("cyclic system needs at least 3 unknowns")

    corner_lo = lower[0]     # A[0, n-1]
    corner_hi = upper[-1]    # A[n-1, 0]
    gamma = -diag[0]
    diag[0] -= gamma
    diag[-1] -= corner_lo * corner_hi / gamma

    ab = np.zeros((3, n))
    ab[0, 1:] = upper[:-1]
    ab[1] = diag
    ab[2, :-1] = lower[1:]

    u = np.zeros(n)
    u[0] = gamma
    u[-1] = corner_hi
    y = solve_banded((1, 1), ab, rhs)
    q = solve_banded((1, 1), ab, u)
    # v = (1, 0, ..., 0, corner_lo / gamma)
    vy = y[0] + corner_lo * y[-1] / gamma
    vq = q[0] + corner_lo * q[-1] / gamma
    return y - q * (vy / (1.0 + vq))


def spline_system(grid, values):
    """Tridiagonal C2 continuity system for the nodal slopes of the spline.

    Returns ``(lower, diag, upper, rhs)`` in the layout expected by
    :func:`solve_cyclic_tridiagonal`.
    """
    h = grid.widths
    h_prev = np.roll(h, 1)
    delta = (np.roll(values, -1) - values) / h**2
    lower = 1.0 / h_prev
    upper = 1.0 / h
    diag = 2.0 * (lower + upper)
    rhs = 3.0 * (np.roll(delta, 1) + delta)
    return lower, diag, upper, rhs


class SplineFn(PiecewiseCubic):
    """Periodic C2 cubic spline through nodal values.

    Stored in Hermite form: ``node_derivs`` holds the slopes that make the
    second derivative continuous.
    """

    def __init__(self, grid, values):
        self.values = _check_length(grid, values, "values")
        lower, diag, upper, rhs = spline_system(grid, self.values)
        self.node_derivs = solve_cyclic_tridiagonal(lower, diag, upper, rhs)
        if not np.all(np.isfinite(self.node_derivs)):
            raise RuntimeError("spline system solve produced non-finite slopes")
        super().__init__(grid, _hermite_coeffs(grid.widths, self.values, self.node_derivs))


def spline_interpolate(grid, values):
    return SplineFn(grid, values)


class LagrangeFn(PiecewiseCubic):
    """Symmetric cubic Lagrange interpolant on a uniform grid.

    On cell ``j`` the cubic through nodes ``j-1, j, j+1, j+2`` is used.
    The result is continuous but not C1.
    """

    def __init__(self, grid, values):
        if not grid.uniform:
            raise ValueError("symmetric Lagrange interpolation needs a uniform grid")
        self.values = _check_length(grid, values, "values")
        fm = np.roll(self.values, 1)
        f0 = self.values
        f1 = np.roll(self.values, -1)
        f2 = np.roll(self.values, -2)
        coeffs = np.array([
            f0,
            -fm / 3 - f0 / 2 + f1 - f2 / 6,
            (fm + f1) / 2 - f0,
            (f2 - fm) / 6 + (f0 - f1) / 2,
        ])
        super().__init__(grid, coeffs)


def lagrange_interpolate(grid, values):
    return LagrangeFn(grid, values)


# eval / eval_deriv / eval_deriv2 as free functions, mirroring the methods
def eval(f, x):  # noqa: A001
    return f.eval(x)


def eval_deriv(f, x):
    return f.eval_deriv(x)


def eval_deriv2(f, x):
    return f.eval_deriv2(x)


def witness_profile(s):
    """Per-cell dip ``1 - 8 s^2 (1-s)^2``: equals 1 with zero slope at both
    ends and bottoms out at 1/2 mid-cell."""
    s = np.asarray(s, dtype=float)
    return 1.0 - 8.0 * s**2 * (1.0 - s) ** 2


def witness_function(grid, x):
    """The function ``v`` built cellwise from :func:`witness_profile`."""
    _, s = grid.locate_local(x)
    return witness_profile(s)


def _witness_power_integral(n):
    # int_0^1 v(s)^(2n) ds; the integrand is symmetric about 1/2 and, for
    # large n, concentrated within ~1/sqrt(n) of the cell ends.
    def f(s):
        return np.exp(2 * n * np.log1p(-8.0 * s**2 * (1.0 - s) ** 2))

    width = min(0.5, 12.0 / np.sqrt(16.0 * n))
    val, _ = integrate.quad(f, 0.0, width, limit=200, epsabs=0, epsrel=1e-10)
    if width < 0.5:
        tail, _ = integrate.quad(f, width, 0.5, limit=200)
        val += tail
    return 2.0 * val


def unboundedness_witness(grid, n, gauss_points=8):
    """Ratio ``||I v_n|| / ||v_n||`` in L2 for ``v_n = v**n``.

    ``v_n`` equals 1 with zero slope at every node, so its Hermite
    interpolant is the constant 1, while ``||v_n||`` shrinks to 0 as ``n``
    grows. The numerator is measured from the actual interpolant.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    n = int(n)
    ones = np.ones(grid.M)
    interp = hermite_interpolate(grid, ones ** n, np.zeros(grid.M))
    numerator = np.sqrt(cellwise_integral(grid, lambda x: interp.eval(x) ** 2, gauss_points))
    # every cell contributes h_j * I(n) and the widths sum to 1
    denominator = np.sqrt(_witness_power_integral(n))
    return numerator / denominator


def cellwise_integral(grid, func, points=8):
    """Gauss-Legendre quadrature over every cell of ``grid``.

    ``func`` is called once on the flattened quadrature nodes. Nodes sit in
    the open cell interior, so one-sided conventions at grid nodes never
    matter. Exact for piecewise polynomials of degree ``2 * points - 1``.
    """
    t, w = np.polynomial.legendre.leggauss(points)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    x = grid.nodes[:, None] + grid.widths[:, None] * t[None, :]
    vals = np.asarray(func(x.ravel()), dtype=float).reshape(x.shape)
    return float(np.sum(vals * w[None, :] * grid.widths[:, None]))
