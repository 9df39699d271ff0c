"""Per-step Kraus operators for the radical pair channel."""
from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from .errors import InvalidStep
from .linalg import check_hermitian, psd_sqrt, unitary_exp
from .model import build_hamiltonian, decay_projectors

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class KrausStep:
    """Effective Kraus set ``E_k = M_k U`` for one time step of length ``dt``.

    ``operators[0]`` is the no-jump operator, ``operators[1:]`` the decay jumps
    in the order of ``model.decay_projectors``.
    """

    dt: float
    operators: tuple
    coherent_unitary: np.ndarray

    @property
    def dim(self):
        return self.coherent_unitary.shape[0]

    def apply(self, rho):
        """Channel action on a density matrix."""
        return sum(e @ rho @ e.conj().T for e in self.operators)

    @cached_property
    def jumps_nilpotent(self):
        """True when every product of two jump operators is exactly zero."""
        jumps = self.operators[1:]
        return all(not np.any(a @ b) for a in jumps for b in jumps)


def build_decay_kraus(kd, dt, projectors):
    """Kraus operators of the purely dissipative step.

    ``M_0 = sqrt(I - kd*dt * sum_k P_k^H P_k)`` and ``M_k = sqrt(kd*dt) P_k``.
    Completeness is exact whenever ``sum_k P_k^H P_k`` is a projector.
    """
    rate = kd * dt
    if not (0.0 <= rate <= 1.0):
        raise InvalidStep(f"kd*dt = {rate!r} must lie in [0, 1]")
    projectors = [np.asarray(p, dtype=complex) for p in projectors]
    n = projectors[0].shape[0]
    occupation = sum(p.conj().T @ p for p in projectors)
    m0 = psd_sqrt(np.eye(n) - rate * occupation)
    amp = math.sqrt(rate)
    return [m0] + [amp * p for p in projectors]


def coherent_step_unitary(h, dt, hbar):
    """``exp(-i H dt / hbar)``.

    Levels with identically zero rows and columns in ``h`` are left out of the
    eigendecomposition, so the unitary is exactly the identity there.
    """
    h = check_hermitian(h)
    active = np.flatnonzero(np.any(h != 0, axis=0) | np.any(h != 0, axis=1))
    u = np.eye(h.shape[0], dtype=complex)
    if active.size:
        block = h[np.ix_(active, active)]
        u[np.ix_(active, active)] = unitary_exp(block, dt / hbar)
    return u


def compose_effective(decay, u, dt):
    ops = tuple(m @ u for m in decay)
    return KrausStep(dt=dt, operators=ops, coherent_unitary=u)


def validate_completeness(step):
    """``||sum_k E_k^H E_k - I||_F``; callers treat values above 1e-10 as fatal."""
    total = sum(e.conj().T @ e for e in step.operators)
    return float(np.linalg.norm(total - np.eye(total.shape[0])))


def build_kraus_step(params, dt):
    """Kraus step for the full radical pair model at ``params``."""
    decay = build_decay_kraus(params.kd, dt, decay_projectors())
    u = coherent_step_unitary(build_hamiltonian(params), dt, params.hbar)
    return compose_effective(decay, u, dt)
