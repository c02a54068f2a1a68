import numpy as np

from sladvect.interpolation import hermite_interpolate, spline_interpolate

TWO_PI = 2 * np.pi


def random_trig(rng, kmax=4):
    """Random trigonometric polynomial ``f(x, order)`` with exact derivatives."""
    a, b = rng.normal(size=kmax), rng.normal(size=kmax)
    k = np.arange(1, kmax + 1)

    def f(x, order=0):
        x = np.asarray(x)[..., None]
        ph = TWO_PI * k * x
        w = (TWO_PI * k) ** order
        c, s = np.cos(ph), np.sin(ph)
        terms = [a * c + b * s, -a * s + b * c, -a * c - b * s, a * s - b * c][order % 4]
        return np.sum(w * terms, axis=-1)

    return f


def interpolate(kind, grid, f):
    if kind == "hermite":
        return hermite_interpolate(grid, f(grid.nodes), f(grid.nodes, 1))
    return spline_interpolate(grid, f(grid.nodes))
