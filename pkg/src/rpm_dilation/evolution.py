"""Iterated Kraus evolution as an ensemble of pure-state branches.

Every branch is one term ``E_{k_n} ... E_{k_1} v_i`` of the expanded Kraus map,
computed by pushing ``(v, 0, ..., 0)`` through the dilated unitary of each
``E_k`` and keeping the physical half for the next step.  Diagonal populations
of the density matrix are the weighted sum of the branches' measured
first-half populations.

For the radical pair channel the jump operators multiply to zero pairwise, so
a branch that has just jumped is only continued with the no-jump operator.
Together with pruning of exactly-vanishing children this keeps ``8n + 1``
branches alive after ``n`` steps instead of ``9**n``.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .dilation import DEFAULT_SHOTS, apply_to_state, dilate, measure_populations, qubit_dim
from .errors import BadDecomposition, MismatchedDilation
from .kraus import COMPLETENESS_TOL, build_kraus_step, validate_completeness
from .model import SINGLET_SHELF, TRIPLET_SHELF, initial_state

PRUNE_THRESHOLD = 1e-14


@dataclass
class Branch:
    state: np.ndarray
    lineage: tuple = ()
    weight: float = 1.0
    live: bool = True

    def physical(self, base_dim):
        return self.state[:base_dim]


@dataclass
class BranchEnsemble:
    branches: list
    base_dim: int
    padded_dim: int
    step_count: int = 0
    dt: float = 0.0

    @property
    def live_branches(self):
        return [b for b in self.branches if b.live]

    def physical_trace(self):
        return math.fsum(
            b.weight * float(np.vdot(b.physical(self.base_dim), b.physical(self.base_dim)).real)
            for b in self.live_branches
        )


@dataclass
class TrajectoryRecord:
    times: np.ndarray
    diagonals: np.ndarray
    branch_counts: list = field(default_factory=list)
    source: str = "quantum"

    @property
    def singlet_yield(self):
        return self.diagonals[:, SINGLET_SHELF]

    @property
    def triplet_yield(self):
        return self.diagonals[:, TRIPLET_SHELF]


def init_ensemble(decomposition, padded_dim=None):
    """Branch ensemble for ``rho0 = sum_i p_i |phi_i><phi_i|``.

    ``decomposition`` is a sequence of ``(p_i, phi_i)`` pairs.
    """
    decomposition = list(decomposition)
    if not decomposition:
        raise BadDecomposition("empty decomposition")
    weights = [float(w) for w, _ in decomposition]
    if any(w <= 0 for w in weights):
        raise BadDecomposition("weights must be positive")
    if abs(math.fsum(weights) - 1.0) > 1e-12:
        raise BadDecomposition(f"weights sum to {math.fsum(weights)!r}, not 1")
    states = [np.asarray(v, dtype=complex) for _, v in decomposition]
    base_dim = states[0].size
    if any(v.ndim != 1 or v.size != base_dim for v in states):
        raise BadDecomposition("all states must be vectors of equal dimension")
    if any(abs(np.linalg.norm(v) - 1.0) > 1e-12 for v in states):
        raise BadDecomposition("states must have unit norm")
    if padded_dim is None:
        padded_dim = qubit_dim(2 * base_dim)
    branches = []
    for w, v in zip(weights, states):
        padded = np.zeros(padded_dim, dtype=complex)
        padded[:base_dim] = v
        branches.append(Branch(padded, (), w))
    return BranchEnsemble(branches, base_dim, padded_dim)


def _check_dilations(step, dilations):
    if len(dilations) != len(step.operators):
        raise MismatchedDilation(
            f"{len(dilations)} dilations for {len(step.operators)} Kraus operators"
        )
    for k, (d, e) in enumerate(zip(dilations, step.operators)):
        if not np.array_equal(d.block, e):
            raise MismatchedDilation(f"dilation {k} does not embed E_{k}")


def step_ensemble(ensemble, step, dilations, prune_threshold=PRUNE_THRESHOLD):
    """Advance every live branch by one Kraus step through the dilated circuits."""
    _check_dilations(step, dilations)
    n = ensemble.base_dim
    shortcut = step.jumps_nilpotent
    children = []
    for b in ensemble.live_branches:
        if shortcut and b.lineage and b.lineage[-1] != 0:
            ks = (0,)
        else:
            ks = range(len(dilations))
        phys = b.physical(n)
        for k in ks:
            out = apply_to_state(dilations[k], phys)
            if np.vdot(out[:n], out[:n]).real < prune_threshold:
                continue
            children.append(Branch(out, b.lineage + (k,), b.weight))
    return BranchEnsemble(
        children, n, ensemble.padded_dim, ensemble.step_count + 1, step.dt
    )


def _seed_sequence(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def diag_populations(ensemble, mode="analytic", shots=DEFAULT_SHOTS, seed=None):
    """Diagonal of the ensemble density matrix in the physical basis.

    Sampled mode measures each branch with ``shots`` shots; per-branch streams
    are spawned from ``seed`` in branch order.
    """
    n = ensemble.base_dim
    live = ensemble.live_branches
    total = np.zeros(n)
    if mode == "sampled":
        streams = _seed_sequence(seed).spawn(len(live))
    for i, b in enumerate(live):
        if mode == "sampled":
            rng = np.random.Generator(np.random.PCG64(streams[i]))
            res = measure_populations(b.state, "sampled", shots, rng=rng)
        else:
            res = measure_populations(b.state, mode)
        total += b.weight * res.first_half(n)
    return total


def build_dilations(step):
    return [dilate(e) for e in step.operators]


def run_trajectory(params, n_steps=15, dt=5e-5, mode="analytic", shots=DEFAULT_SHOTS,
                   seed=None, psi0=None):
    """Full quantum-algorithm pipeline for one field orientation.

    Populations are recorded at ``t = 0, dt, ..., n_steps * dt``.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    step = build_kraus_step(params, dt)
    defect = validate_completeness(step)
    if defect > COMPLETENESS_TOL:
        raise RuntimeError(f"Kraus set incomplete: defect {defect:.3e}")
    dilations = build_dilations(step)
    psi0 = initial_state() if psi0 is None else psi0
    ensemble = init_ensemble([(1.0, psi0)])
    if mode == "sampled":
        seeds = _seed_sequence(seed).spawn(n_steps + 1)
    else:
        seeds = [None] * (n_steps + 1)

    diagonals = [diag_populations(ensemble, mode, shots, seeds[0])]
    counts = [len(ensemble.live_branches)]
    for i in range(1, n_steps + 1):
        ensemble = step_ensemble(ensemble, step, dilations)
        diagonals.append(diag_populations(ensemble, mode, shots, seeds[i]))
        counts.append(len(ensemble.live_branches))
    times = dt * np.arange(n_steps + 1)
    return TrajectoryRecord(times, np.array(diagonals), counts)


def dense_iteration(step, rho0, n_steps):
    """Reference path: apply ``rho -> sum_k E_k rho E_k^H`` directly."""
    rho = np.asarray(rho0, dtype=complex)
    out = [rho]
    for _ in range(n_steps):
        rho = step.apply(rho)
        out.append(rho)
    return out
