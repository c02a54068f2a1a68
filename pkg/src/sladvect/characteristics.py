"""Backward tracing of characteristic curves.

The foot point of a node ``x`` over one step solves ``d xi/ds = u(xi, s)``
backwards from ``xi(t_next) = x``; its spatial derivative obeys
``d xi_x/ds = u_x(xi, s) xi_x`` with ``xi_x(t_next) = 1``. The schemes use
a three-stage Runge-Kutta tracer on this augmented pair; the reference
tracer integrates the same system (plus ``xi_xx``) with classical RK4 and
step doubling, and serves as the exact solution for error measurements.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .grid import PeriodicGrid, wrap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VelocityField:
    """Smooth 1-periodic velocity ``u(x, t)`` with analytic x-derivatives.

    ``u``, ``u_x`` and ``u_xx`` take array ``x`` and scalar ``t``.
    ``speed`` is set for spatially and temporally constant fields, which
    some schemes (upwind) require. ``max_abs_ux`` bounds ``|u_x|`` and is
    used by the time-step guard.
    """

    u: Callable
    u_x: Callable
    u_xx: Optional[Callable] = None
    speed: Optional[float] = None
    max_abs_ux: float = 0.0
    name: str = "custom"
    jet: Optional[Callable] = None

    def derivatives(self, x, t):
        """``(u, u_x, u_xx)`` at ``(x, t)``; ``u_xx`` is zero when not given."""
        if self.jet is not None:
            return self.jet(x, t)
        uxx = self.u_xx(x, t) if self.u_xx is not None else np.zeros(np.shape(x))
        return self.u(x, t), self.u_x(x, t), uxx

    @classmethod
    def constant(cls, c):
        c = float(c)
        return cls(
            u=lambda x, t: np.full(np.shape(x), c),
            u_x=lambda x, t: np.zeros(np.shape(x)),
            u_xx=lambda x, t: np.zeros(np.shape(x)),
            speed=c,
            max_abs_ux=0.0,
            name=f"constant({c:g})",
        )

    @property
    def is_constant(self):
        return self.speed is not None


def sine_wave_velocity():
    """``u(x, t) = sin(2 pi x + 8 t) / 4``, the benchmark velocity."""
    two_pi = 2.0 * np.pi

    def jet(x, t):
        arg = two_pi * x + 8.0 * t
        sn, cs = np.sin(arg), np.cos(arg)
        return 0.25 * sn, 0.5 * np.pi * cs, -np.pi**2 * sn

    return VelocityField(
        u=lambda x, t: 0.25 * np.sin(two_pi * x + 8.0 * t),
        u_x=lambda x, t: 0.5 * np.pi * np.cos(two_pi * x + 8.0 * t),
        u_xx=lambda x, t: -np.pi**2 * np.sin(two_pi * x + 8.0 * t),
        max_abs_ux=0.5 * np.pi,
        name="sin(2pi x + 8t)/4",
        jet=jet,
    )


@dataclass(frozen=True)
class CharMap:
    """Foot points ``foot[j]`` (wrapped into [0, 1)) and slopes ``foot_deriv[j]``."""

    foot: np.ndarray
    foot_deriv: np.ndarray


def _augmented(vel, y0, y1, t):
    return vel.u(y0, t), y1 * vel.u_x(y0, t)


def check_step_size(vel, dt, limit=0.5):
    """Warn when ``dt * sup|u_x|`` exceeds ``limit``.

    Below that the backtraced map stays a bijection with slope in [1/2, 3/2].
    """
    ratio = dt * vel.max_abs_ux
    if ratio > limit:
        warnings.warn(
            f"dt * sup|u_x| = {ratio:.3g} exceeds {limit}; "
            "characteristic map may lose monotonicity",
            RuntimeWarning,
            stacklevel=3,
        )
    return ratio


def rk3_backtrace(vel: VelocityField, grid: PeriodicGrid, t_next, dt) -> CharMap:
    """Three-stage Runge-Kutta backtrace of every grid node over one step."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    check_step_size(vel, dt)
    return _rk3_points(vel, grid.nodes, t_next, dt)


def _rk3_points(vel, x, t_next, dt):
    x = np.asarray(x, dtype=float)
    y0, y1 = x, np.ones_like(x)
    k10, k11 = _augmented(vel, y0, y1, t_next)
    k20, k21 = _augmented(vel, y0 - 0.5 * dt * k10, y1 - 0.5 * dt * k11, t_next - 0.5 * dt)
    k30, k31 = _augmented(
        vel, y0 - dt * (-k10 + 2 * k20), y1 - dt * (-k11 + 2 * k21), t_next - dt
    )
    foot = y0 - dt * (k10 + 4 * k20 + k30) / 6
    foot_deriv = y1 - dt * (k11 + 4 * k21 + k31) / 6
    return CharMap(foot=wrap(foot), foot_deriv=foot_deriv)


class TraceNotConverged(RuntimeError):
    pass


def _rhs3(vel, y0, y1, y2, s):
    u, ux, uxx = vel.derivatives(y0, s)
    return u, y1 * ux, y1 * y1 * uxx + y2 * ux


def _rk4_trace(vel, x, t_from, t_to, nsteps):
    y0 = np.array(x, dtype=float)
    y1 = np.ones_like(y0)
    y2 = np.zeros_like(y0)
    ds = (t_to - t_from) / nsteps
    half = 0.5 * ds
    for i in range(nsteps):
        s = t_from + i * ds
        a0, a1, a2 = _rhs3(vel, y0, y1, y2, s)
        b0, b1, b2 = _rhs3(vel, y0 + half * a0, y1 + half * a1, y2 + half * a2, s + half)
        c0, c1, c2 = _rhs3(vel, y0 + half * b0, y1 + half * b1, y2 + half * b2, s + half)
        d0, d1, d2 = _rhs3(vel, y0 + ds * c0, y1 + ds * c1, y2 + ds * c2, s + ds)
        y0 = y0 + ds * (a0 + 2 * (b0 + c0) + d0) / 6
        y1 = y1 + ds * (a1 + 2 * (b1 + c1) + d1) / 6
        y2 = y2 + ds * (a2 + 2 * (b2 + c2) + d2) / 6
    return y0, y1, y2


def reference_trace(vel, x, t_from, t_to, tol=1e-12, min_steps=16, max_steps=2**20):
    """High-accuracy characteristic trace returning ``(xi, xi_x, xi_xx)``.

    ``xi`` is unwrapped. Steps double until successive ``xi`` and ``xi_x``
    agree within ``tol`` at every point.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if t_from == t_to:
        x = np.asarray(x, dtype=float)
        return x.copy(), np.ones_like(x), np.zeros_like(x)
    if vel.is_constant:
        x = np.asarray(x, dtype=float)
        return x + vel.speed * (t_to - t_from), np.ones_like(x), np.zeros_like(x)

    n = min_steps
    prev = _rk4_trace(vel, x, t_from, t_to, n)
    while n < max_steps:
        n *= 2
        cur = _rk4_trace(vel, x, t_from, t_to, n)
        diff = max(np.max(np.abs(cur[0] - prev[0])), np.max(np.abs(cur[1] - prev[1])))
        if diff < tol:
            logger.debug("reference trace converged with %d steps (diff %.2e)", n, diff)
            return cur[0], cur[1], cur[2]
        prev = cur
    raise TraceNotConverged(f"no convergence to tol={tol:g} within {max_steps} steps")


def reference_backtrace(vel, x, t_from, t_to, tol=1e-12):
    """Foot ``xi(t_to; x, t_from)`` wrapped into [0, 1) and its slope ``xi_x``."""
    xi, xi_x, _ = reference_trace(vel, x, t_from, t_to, tol)
    return wrap(xi), xi_x
