"""Semi-Lagrangian solvers for 1-D periodic advection.

CIP (cubic Hermite) and cubic-spline semi-Lagrangian schemes, symmetric
Lagrange and upwind baselines, error norms, convergence tables and
one-step phase analysis.
"""

from .grid import PeriodicGrid, locate_cell, perturbed_grid, uniform_grid, wrap
from .interpolation import (
    HermiteFn,
    LagrangeFn,
    SplineFn,
    hermite_interpolate,
    lagrange_interpolate,
    spline_interpolate,
    unboundedness_witness,
)
from .characteristics import (
    CharMap,
    VelocityField,
    reference_backtrace,
    rk3_backtrace,
    sine_wave_velocity,
)
from .schemes import (
    Problem,
    SchemeState,
    benchmark_problem,
    cip_init,
    cip_step,
    lagrange_sl_step,
    run,
    spline_sl_step,
    upwind_step,
)
from .norms import (
    ErrorReport,
    ReferenceSolution,
    convergence_rate,
    relative_l2_error,
    seminorm_error,
    simpson_functional,
    weighted_h2_error,
)
from .spectral import PhaseRow, dft_coefficient, phase_shift, phase_table

__version__ = "0.1.0"
