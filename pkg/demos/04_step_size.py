"""How the splitting error depends on the time step.

Each step applies the coherent unitary and then a first-order decay map, so
the yield error against exact propagation should halve with dt once the
coherent phase per step is small.  At dt = 5e-5 s the spread of coherent
phases accumulated in one step is several radians, which is why the coarse
grid sits far from the exact yields.

    python demos/04_step_size.py
"""
import math

import numpy as np

from rpm_dilation import FieldParams, run_trajectory
from rpm_dilation.model import build_hamiltonian
from rpm_dilation.oracle import exact_trajectory

params = FieldParams(theta=math.pi / 2)
horizon = 7.5e-4

w = np.linalg.eigvalsh(build_hamiltonian(params))
print(f"coherent frequency spread (w_max - w_min)/hbar = {(w[-1] - w[0]) / params.hbar:.3e} rad/s")

prev = None
print(f"{'steps':>6} {'dt (s)':>10} {'phase/step':>10} {'max dev':>9} {'ratio':>6}")
for n in (15, 30, 60, 120, 240, 480):
    dt = horizon / n
    rec = run_trajectory(params, n_steps=n, dt=dt)
    ref = exact_trajectory(params, rec.times)
    dev = np.abs(rec.diagonals[:, 8:] - ref[:, 8:]).max()
    phase = (w[-1] - w[0]) / params.hbar * dt
    ratio = f"{prev / dev:6.2f}" if prev else ""
    print(f"{n:6d} {dt:10.3e} {phase:10.3f} {dev:9.4f} {ratio}")
    prev = dev
