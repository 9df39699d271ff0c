"""Walk through one time step of the circuit construction.

Builds the ten-level radical pair model, the nine Kraus operators of one step,
their five-qubit dilations, and checks that the dilated circuit reproduces
the Kraus action on the initial state.

    python demos/01_kraus_and_dilation.py
"""
import math

import numpy as np

from rpm_dilation import (
    FieldParams,
    apply_to_state,
    build_kraus_step,
    dilate,
    initial_state,
    validate_completeness,
)
from rpm_dilation.linalg import unitarity_defect
from rpm_dilation.model import BASIS_LABELS

np.set_printoptions(precision=3, suppress=True, linewidth=120)

params = FieldParams(theta=math.pi / 2)
dt = 0.5 / params.kd
step = build_kraus_step(params, dt)

print(f"time step {dt:g} s, kd*dt = {params.kd * dt:g}")
print(f"completeness defect ||sum E^H E - I||_F = {validate_completeness(step):.2e}")

# The first jump operator feeds the singlet shelf: a single dense row.
e1 = step.operators[1]
print("\nE_1, shelf row (|S>) over the spin basis:")
for label, z in zip(BASIS_LABELS[:8], e1[8, :8]):
    print(f"  {label:8s} {z.real:+.3e} {z.imag:+.3e}i")

d = dilate(e1)
print(f"\ndilation: {d.matrix.shape} -> padded {d.padded_matrix.shape} ({d.n_qubits} qubits)")
print(f"unitarity defect {unitarity_defect(d.padded_matrix):.2e}")

# Running the circuit on (v, 0, ..., 0) leaves E_k v in the first ten amplitudes.
v = initial_state()
for k, e in enumerate(step.operators):
    out = apply_to_state(dilate(e), v)
    err = np.abs(out[:10] - e @ v).max()
    print(f"E_{k}: physical weight {np.vdot(out[:10], out[:10]).real:.4f}, circuit error {err:.1e}")
