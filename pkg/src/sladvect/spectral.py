"""One-step phase analysis for constant-velocity advection.

A scheme is started from the grid mode ``exp(2 pi i k x_j)`` (CIP also
gets the analytic derivative ``2 pi i k exp(2 pi i k x_j)``), advanced
by a single step of CFL number ``mu``, and the k-th DFT coefficient of the
result is compared with that of the input. The exact solution shifts the
phase by ``2 pi mu k h``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characteristics import VelocityField
from .grid import uniform_grid
from .schemes import SchemeState, step

PHASE_SCHEMES = ("cip", "spline", "lagrange", "upwind")


def dft_coefficient(values, k, nodes=None):
    """``sum_j v_j exp(-2 pi i k x_j)`` on the uniform grid ``x_j = j / M``."""
    v = np.asarray(values)
    M = v.size
    if abs(k) > M / 2:
        raise ValueError(f"wavenumber {k} beyond Nyquist for M={M}")
    x = np.arange(M) / M if nodes is None else np.asarray(nodes)
    return complex(np.sum(v * np.exp(-2j * np.pi * k * x)))


@dataclass(frozen=True)
class PhaseRow:
    scheme: str
    k: int
    kh: float
    theta: float
    theta_exact: float
    amplification: float
    ratio: complex
    theta_unwrapped: float = float("nan")

    @property
    def phase_error(self):
        """``theta - theta_exact`` reduced to (-pi, pi]."""
        return -np.angle(self.ratio * np.exp(1j * self.theta_exact))


def one_step_complex(kind, M, mu, data, deriv=None):
    """One step of ``kind`` on complex grid data with ``u = 1``, ``dt = mu h``.

    Real and imaginary parts are advanced separately and recombined.
    """
    grid = uniform_grid(M)
    vel = VelocityField.constant(1.0)
    dt = mu / M
    if kind == "cip" and deriv is None:
        raise ValueError("CIP needs nodal derivatives")
    if kind != "cip":
        deriv = None
    parts = []
    for take in (np.real, np.imag):
        d = None if deriv is None else take(deriv)
        state = SchemeState(grid, 0.0, take(data), d)
        if dt == 0.0:
            parts.append(state)
        else:
            parts.append(step(kind, state, vel, dt))
    re, im = parts
    values = re.values + 1j * im.values
    derivs = None if kind != "cip" else re.derivs + 1j * im.derivs
    return values, derivs


def phase_shift(kind, M, mu, k):
    """Phase shift and amplification of scheme ``kind`` on mode ``k``."""
    if abs(k) > M / 2:
        raise ValueError(f"wavenumber {k} beyond Nyquist for M={M}")
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    x = np.arange(M) / M
    mode = np.exp(2j * np.pi * k * x)
    out, _ = one_step_complex(kind, M, mu, mode, 2j * np.pi * k * mode)
    ratio = dft_coefficient(out, k) / dft_coefficient(mode, k)
    theta = float(-np.angle(ratio))
    if theta == -np.pi:
        theta = np.pi
    return PhaseRow(
        scheme=kind,
        k=int(k),
        kh=k / M,
        theta=theta,
        theta_exact=2 * np.pi * mu * k / M,
        amplification=abs(ratio),
        ratio=ratio,
    )


def phase_table(kinds=PHASE_SCHEMES, M=40, mu=0.4):
    """Rows for every scheme and every ``k = 1 .. M // 2``, ordered by (scheme, k)."""
    rows = []
    for kind in kinds:
        scheme_rows = [phase_shift(kind, M, mu, k) for k in range(1, M // 2 + 1)]
        unwrapped = np.unwrap([r.theta for r in scheme_rows])
        rows.extend(
            PhaseRow(**{**r.__dict__, "theta_unwrapped": float(u)})
            for r, u in zip(scheme_rows, unwrapped)
        )
    return rows
