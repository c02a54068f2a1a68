"""Time stepping for ``phi_t + u phi_x = 0`` on the periodic unit interval.

Four one-step methods share the same state container:

``cip``
    values and first derivatives carried at nodes, closed by cubic Hermite
    interpolation; derivatives are advanced with the differentiated
    solution formula ``G = X_x * D(phi_h)(X)``.
``spline``
    semi-Lagrangian with the periodic cubic spline.
``lagrange``
    semi-Lagrangian with symmetric 4-point Lagrange interpolation
    (uniform grids only).
``upwind``
    first-order upwind, constant velocity only.

All steps are linear in the payload with real coefficients. None of them is
conservative.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .characteristics import VelocityField, rk3_backtrace, sine_wave_velocity
from .grid import PeriodicGrid
from .interpolation import hermite_interpolate, lagrange_interpolate, spline_interpolate

SCHEMES = ("cip", "spline", "lagrange", "upwind")


@dataclass(frozen=True)
class Problem:
    """Advection problem: velocity, initial profile and horizon ``T``.

    ``initial_deriv2`` is optional and only needed for H2 reference errors.
    """

    vel: VelocityField
    initial_value: Callable
    initial_deriv: Callable
    horizon: float = 1.0
    initial_deriv2: Optional[Callable] = None
    name: str = "custom"


def benchmark_problem():
    """``u = sin(2 pi x + 8 t)/4``, ``phi_0 = exp(sin 4 pi x)``, ``T = 1``."""
    four_pi = 4.0 * np.pi

    def phi0(x):
        return np.exp(np.sin(four_pi * x))

    def dphi0(x):
        return four_pi * np.cos(four_pi * x) * phi0(x)

    def d2phi0(x):
        return four_pi**2 * (np.cos(four_pi * x) ** 2 - np.sin(four_pi * x)) * phi0(x)

    return Problem(
        vel=sine_wave_velocity(),
        initial_value=phi0,
        initial_deriv=dphi0,
        horizon=1.0,
        initial_deriv2=d2phi0,
        name="benchmark",
    )


def constant_velocity_problem(c, initial_value, initial_deriv, horizon=1.0, initial_deriv2=None):
    return Problem(
        vel=VelocityField.constant(c),
        initial_value=initial_value,
        initial_deriv=initial_deriv,
        horizon=horizon,
        initial_deriv2=initial_deriv2,
        name=f"constant({c:g})",
    )


@dataclass(frozen=True)
class SchemeState:
    """Grid data at time ``t``; ``derivs`` is only carried by CIP."""

    grid: PeriodicGrid
    t: float
    values: np.ndarray
    derivs: Optional[np.ndarray] = None

    def __post_init__(self):
        if np.shape(self.values) != (self.grid.M,):
            raise ValueError("values length must equal the number of nodes")
        if self.derivs is not None and np.shape(self.derivs) != (self.grid.M,):
            raise ValueError("derivs length must equal the number of nodes")

    def interpolant(self, kind):
        """Continuous representation used by ``kind`` at this state."""
        if kind == "cip":
            return hermite_interpolate(self.grid, self.values, self.derivs)
        if kind == "spline":
            return spline_interpolate(self.grid, self.values)
        if kind in ("lagrange", "upwind"):
            return lagrange_interpolate(self.grid, self.values)
        raise ValueError(f"unknown scheme {kind!r}")


def cip_init(problem, grid):
    x = grid.nodes
    return SchemeState(
        grid, 0.0,
        np.asarray(problem.initial_value(x), dtype=float),
        np.asarray(problem.initial_deriv(x), dtype=float),
    )


def values_init(problem, grid):
    return SchemeState(grid, 0.0, np.asarray(problem.initial_value(grid.nodes), dtype=float))


def cip_step(state, vel, dt):
    if state.derivs is None:
        raise ValueError("CIP step needs a state carrying derivatives")
    t_next = state.t + dt
    phi_h = hermite_interpolate(state.grid, state.values, state.derivs)
    cmap = rk3_backtrace(vel, state.grid, t_next, dt)
    values = phi_h.eval(cmap.foot)
    derivs = cmap.foot_deriv * phi_h.eval_deriv(cmap.foot)
    return SchemeState(state.grid, t_next, values, derivs)


def spline_sl_step(state, vel, dt):
    t_next = state.t + dt
    phi_h = spline_interpolate(state.grid, state.values)
    cmap = rk3_backtrace(vel, state.grid, t_next, dt)
    return SchemeState(state.grid, t_next, phi_h.eval(cmap.foot))


def lagrange_sl_step(state, vel, dt):
    t_next = state.t + dt
    phi_h = lagrange_interpolate(state.grid, state.values)
    cmap = rk3_backtrace(vel, state.grid, t_next, dt)
    return SchemeState(state.grid, t_next, phi_h.eval(cmap.foot))


def upwind_step(state, u_const, dt):
    """``F_j <- (1 - mu) F_j + mu F_{j-1}`` with ``mu = u dt / h`` (mirrored for u < 0)."""
    grid = state.grid
    if not grid.uniform:
        raise ValueError("upwind step needs a uniform grid")
    mu = u_const * dt / grid.h
    if abs(mu) > 1.0 + 1e-14:
        raise ValueError(f"CFL number {mu:.6g} outside [-1, 1]")
    F = state.values
    if mu >= 0:
        new = (1.0 - mu) * F + mu * np.roll(F, 1)
    else:
        new = (1.0 + mu) * F - mu * np.roll(F, -1)
    return SchemeState(grid, state.t + dt, new)


def init_state(kind, problem, grid):
    if kind == "cip":
        return cip_init(problem, grid)
    if kind in SCHEMES:
        return values_init(problem, grid)
    raise ValueError(f"unknown scheme {kind!r}")


def step(kind, state, vel, dt):
    """Advance ``state`` by one step of scheme ``kind``."""
    if kind == "cip":
        return cip_step(state, vel, dt)
    if kind == "spline":
        return spline_sl_step(state, vel, dt)
    if kind == "lagrange":
        return lagrange_sl_step(state, vel, dt)
    if kind == "upwind":
        if not vel.is_constant:
            raise ValueError("upwind scheme needs a constant velocity")
        return upwind_step(state, vel.speed, dt)
    raise ValueError(f"unknown scheme {kind!r}")


def run(kind, problem, grid, N):
    """``N`` uniform steps of size ``T / N`` from the sampled initial data."""
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    N = int(N)
    T = problem.horizon
    dt = T / N
    state = init_state(kind, problem, grid)
    for n in range(N):
        state = step(kind, state, problem.vel, dt)
        # keep t on the grid t^n = n T / N instead of accumulating dt
        state = replace(state, t=(n + 1) * T / N)
    return state


def step_complex(kind, state_re, state_im, vel, dt):
    """Step complex data by pushing real and imaginary parts separately."""
    return step(kind, state_re, vel, dt), step(kind, state_im, vel, dt)
