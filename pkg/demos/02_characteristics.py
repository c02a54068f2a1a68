# Tracing characteristics backwards for u(x, t) = sin(2 pi x + 8 t) / 4.
#
# Each step of the semi-Lagrangian schemes needs the foot point of every
# node and, for CIP, the slope of the foot map. A three-stage Runge-Kutta
# method integrates both together; a step-doubling RK4 reference checks it.

import numpy as np

from sladvect import rk3_backtrace, sine_wave_velocity, uniform_grid
from sladvect.characteristics import reference_backtrace

vel = sine_wave_velocity()
g = uniform_grid(40)

print("local error of the RK3 foot over one step ending at t = 0.5")
print("   dt        foot err   slope err")
for n in (10, 20, 40, 80, 160):
    dt = 1.0 / n
    cmap = rk3_backtrace(vel, g, 0.5, dt)
    xi, xi_x = reference_backtrace(vel, g.nodes, 0.5, 0.5 - dt)
    d = np.abs(cmap.foot - xi)
    err = np.max(np.minimum(d, 1 - d))
    derr = np.max(np.abs(cmap.foot_deriv - xi_x))
    print(f"  1/{n:<4d}  {err:.3e}  {derr:.3e}")

# For small steps the foot map is a monotone bijection of the circle
cmap = rk3_backtrace(vel, g, 0.5, 1 / 80)
print("\nfoot slope range at dt = 1/80: [%.4f, %.4f]" % (cmap.foot_deriv.min(), cmap.foot_deriv.max()))
