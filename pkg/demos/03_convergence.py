# Convergence of CIP and the spline semi-Lagrangian scheme.
#
# Benchmark: u = sin(2 pi x + 8 t)/4, phi_0 = exp(sin 4 pi x), T = 1, with
# dt = h. Errors are relative and measured with Simpson's rule on 12000
# points against a high-accuracy characteristic trace of the exact solution.
# Building that reference takes a few seconds.
#
# The same table comes out of the command line:
#     sladvect converge --scheme cip --scheme spline --levels 80,160,320

import sys

from sladvect.cli import ExperimentConfig, format_convergence_csv, run_convergence

cfg = ExperimentConfig(schemes=["cip", "spline", "lagrange"], regime="coupled", levels=[40, 80, 160])
reports = run_convergence(cfg)
sys.stdout.write(format_convergence_csv(reports))

# Both cubic schemes are third order in L2; H2 errors drop at second order.
# The weighted H2 column adds h^4/dt times the squared H2 error, which is
# negligible here, so it tracks the L2 column.
for rep in reports:
    rates = rep.rates("l2")
    print(f"{rep.scheme:8s} final L2 rate {rates[-1]:.3f}")
