"""Radical pair dynamics via Sz.-Nagy dilation of Kraus operators.

The Lindblad dynamics of a two-electron, one-nucleus radical pair with singlet
and triplet shelving states is discretized into nine Kraus operators per step.
Each operator is dilated to a unitary on five qubits and applied to a
statevector; populations come from measuring the physical half.  An exact
Liouvillian propagator serves as the reference.
"""
from .dilation import DilatedUnitary, MeasurementResult, apply_to_state, dilate, measure_populations, pad_to_qubits
from .evolution import (
    Branch,
    BranchEnsemble,
    TrajectoryRecord,
    diag_populations,
    init_ensemble,
    run_trajectory,
    step_ensemble,
)
from .experiment import ExperimentConfig, YieldCurve, parse_config, run_angle_sweep, run_dynamics
from .kraus import KrausStep, build_decay_kraus, build_kraus_step, coherent_step_unitary, compose_effective, validate_completeness
from .model import FieldParams, build_hamiltonian, decay_projectors, initial_state
from .oracle import build_liouvillian, propagate_exact, steady_state_yields

__version__ = "0.1.0"
