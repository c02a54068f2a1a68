"""Error norms and convergence rates.

All integrals use the periodic composite Simpson rule on ``2 * mtilde``
equispaced samples ``x_j = j / (2 mtilde)``: odd samples weigh 4, even
samples 2, total weight ``6 * mtilde``. Errors are relative: the norm of
``num - ref`` divided by the same norm of ``ref``. H1 and H2 columns use
seminorms (first and second derivatives).

The weighted H2 error combines the relative L2 and H2 errors as
``sqrt(e_L2**2 + (h**4 / dt) * e_H2**2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .characteristics import reference_trace

DEFAULT_MTILDE = 6000


def sample_points(mtilde=DEFAULT_MTILDE):
    if int(mtilde) != mtilde or mtilde < 1:
        raise ValueError("mtilde must be a positive integer")
    return np.arange(2 * int(mtilde)) / (2 * int(mtilde))


def simpson_functional(samples):
    """``sqrt((4 * sum(odd) + 2 * sum(even)) / (6 * mtilde))`` for periodic samples.

    ``samples`` are values of a nonnegative integrand at ``j / (2 mtilde)``,
    ``j = 0 .. 2 mtilde - 1``; the even sample at ``j = 2 mtilde`` is the
    periodic image of ``j = 0``.
    """
    s = np.asarray(samples, dtype=float)
    if s.ndim != 1 or s.size % 2:
        raise ValueError("simpson_functional needs an even number of samples")
    mtilde = s.size // 2
    total = 4.0 * math.fsum(s[1::2]) + 2.0 * math.fsum(s[0::2])
    return math.sqrt(total / (6.0 * mtilde))


def _relative(num, ref):
    num = np.asarray(num, dtype=float)
    ref = np.asarray(ref, dtype=float)
    denom = simpson_functional(ref**2)
    if denom == 0.0:
        raise ZeroDivisionError("reference has zero norm")
    return simpson_functional((num - ref) ** 2) / denom


def _derivative(f, order):
    if order == 0:
        return f.eval if hasattr(f, "eval") else f
    name = {1: "eval_deriv", 2: "eval_deriv2"}.get(order)
    if name is None:
        raise ValueError("order must be 0, 1 or 2")
    return getattr(f, name)


def relative_l2_error(num, ref, mtilde=DEFAULT_MTILDE):
    """Relative L2 error of ``num`` against ``ref`` (callables or interpolants)."""
    x = sample_points(mtilde)
    return _relative(_derivative(num, 0)(x), _derivative(ref, 0)(x))


def seminorm_error(num, ref, order, mtilde=DEFAULT_MTILDE):
    """Relative H1 (``order=1``) or H2 (``order=2``) seminorm error.

    Both arguments must expose ``eval_deriv`` / ``eval_deriv2``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    x = sample_points(mtilde)
    return _relative(_derivative(num, order)(x), _derivative(ref, order)(x))


def combine_weighted(e_l2, e_h2, h, dt):
    if not (h > 0 and dt > 0):
        raise ValueError("h and dt must be positive")
    return math.sqrt(e_l2**2 + h**4 / dt * e_h2**2)


def weighted_h2_error(num, ref, h, dt, mtilde=DEFAULT_MTILDE):
    """``(||e||^2 + h^4/dt |e|_H2^2)^(1/2)`` from the relative L2 and H2 errors."""
    return combine_weighted(
        relative_l2_error(num, ref, mtilde), seminorm_error(num, ref, 2, mtilde), h, dt
    )


def convergence_rate(e1, e2, h1, h2):
    """``(log e1 - log e2) / (log h1 - log h2)``."""
    if min(e1, e2, h1, h2) <= 0:
        raise ValueError("errors and mesh sizes must be positive")
    if h1 == h2:
        raise ValueError("mesh sizes must differ")
    return (math.log(e1) - math.log(e2)) / (math.log(h1) - math.log(h2))


class ReferenceSolution:
    """Exact solution ``phi(x, T) = phi_0(xi(0; x, T))`` of a :class:`Problem`.

    Derivatives follow from the chain rule along the characteristic:
    ``phi_x = xi_x phi_0'(xi)`` and
    ``phi_xx = xi_xx phi_0'(xi) + xi_x**2 phi_0''(xi)``.
    Traces are cached per sample array.
    """

    def __init__(self, problem, t=None, tol=1e-12):
        self.problem = problem
        self.t = problem.horizon if t is None else t
        self.tol = tol
        self._cache = {}

    def _trace(self, x):
        x = np.asarray(x, dtype=float)
        key = (x.shape, x.tobytes())
        hit = self._cache.get(key)
        if hit is None:
            hit = reference_trace(self.problem.vel, x, self.t, 0.0, self.tol)
            self._cache[key] = hit
        return hit

    def eval(self, x):
        xi, _, _ = self._trace(x)
        return self.problem.initial_value(xi)

    def eval_deriv(self, x):
        xi, xi_x, _ = self._trace(x)
        return xi_x * self.problem.initial_deriv(xi)

    def eval_deriv2(self, x):
        if self.problem.initial_deriv2 is None:
            raise ValueError("problem has no initial second derivative")
        xi, xi_x, xi_xx = self._trace(x)
        p = self.problem
        return xi_xx * p.initial_deriv(xi) + xi_x**2 * p.initial_deriv2(xi)

    __call__ = eval


@dataclass
class ErrorRow:
    M: int
    N: int
    h: float
    dt: float
    l2: float = math.nan
    h1: float = math.nan
    h2: float = math.nan
    wh2: float = math.nan
    error: str = ""

    @property
    def ok(self):
        return not self.error


ERROR_COLUMNS = ("l2", "h1", "h2", "wh2")


@dataclass
class ErrorReport:
    """Rows of errors per resolution plus rates between consecutive rows."""

    scheme: str
    regime: str
    rows: list = field(default_factory=list)

    def rates(self, column):
        """Rates between consecutive successful rows, ``None`` where undefined.

        The mesh parameter is ``h`` unless consecutive rows share ``h``,
        in which case ``dt`` is used.
        """
        out = [None]
        for prev, cur in zip(self.rows, self.rows[1:]):
            if not (prev.ok and cur.ok):
                out.append(None)
                continue
            if prev.h != cur.h:
                p1, p2 = prev.h, cur.h
            elif prev.dt != cur.dt:
                p1, p2 = prev.dt, cur.dt
            else:
                out.append(None)
                continue
            out.append(convergence_rate(getattr(prev, column), getattr(cur, column), p1, p2))
        return out


def measure(interp, ref, h, dt, mtilde=DEFAULT_MTILDE):
    """All four relative errors of ``interp`` against ``ref`` in one pass."""
    x = sample_points(mtilde)
    l2 = _relative(interp.eval(x), ref.eval(x))
    h1 = _relative(interp.eval_deriv(x), ref.eval_deriv(x))
    h2 = _relative(interp.eval_deriv2(x), ref.eval_deriv2(x))
    return l2, h1, h2, combine_weighted(l2, h2, h, dt)
