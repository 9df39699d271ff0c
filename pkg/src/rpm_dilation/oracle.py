"""Exact Lindblad propagation, independent of the Kraus/dilation path.

Density matrices are vectorized by stacking columns, ``vec(A rho B) =
(B^T kron A) vec(rho)``, i.e. numpy ``order="F"`` reshapes.
"""
import numpy as np
from scipy.linalg import expm

from .errors import BadDensityMatrix, NotConverged
from .linalg import check_hermitian
from .model import SINGLET_SHELF, TRIPLET_SHELF, build_hamiltonian, decay_projectors, initial_state

STEADY_TOL = 1e-3


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, n):
    return np.asarray(v).reshape(n, n, order="F")


def build_liouvillian(h, projectors, kd, hbar):
    """Liouvillian of ``-(i/hbar)[H, rho] + kd sum_i (P rho P^H - {P^H P, rho}/2)``."""
    h = check_hermitian(h)
    n = h.shape[0]
    eye = np.eye(n)
    lv = (-1j / hbar) * (np.kron(eye, h) - np.kron(h.T, eye))
    for p in projectors:
        p = np.asarray(p, dtype=complex)
        pp = p.conj().T @ p
        lv = lv + kd * (np.kron(p.conj(), p) - 0.5 * np.kron(eye, pp) - 0.5 * np.kron(pp.T, eye))
    return lv


def model_liouvillian(params):
    return build_liouvillian(build_hamiltonian(params), decay_projectors(), params.kd, params.hbar)


def trace_functional(n):
    return vec(np.eye(n)).conj()


def _check_rho(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise BadDensityMatrix(f"shape {rho.shape}")
    if np.linalg.norm(rho - rho.conj().T) > 1e-10:
        raise BadDensityMatrix("not Hermitian")
    if abs(np.trace(rho) - 1) > 1e-10:
        raise BadDensityMatrix(f"trace {np.trace(rho).real!r}")
    if np.linalg.eigvalsh(rho)[0] < -1e-10:
        raise BadDensityMatrix("not positive semidefinite")
    return rho


def _rk4(lv, v, t, substeps):
    h = t / substeps
    for _ in range(substeps):
        k1 = lv @ v
        k2 = lv @ (v + 0.5 * h * k1)
        k3 = lv @ (v + 0.5 * h * k2)
        k4 = lv @ (v + h * k3)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return v


def propagate_exact(lv, rho0, t, method="expm", substeps=10_000):
    """``rho(t)`` under the superoperator ``lv`` from ``rho0``.

    ``method="expm"`` uses the matrix exponential of ``lv * t``; ``"rk4"`` takes
    ``substeps`` classic Runge-Kutta steps.  The result is symmetrized.
    """
    rho0 = _check_rho(rho0)
    if t < 0:
        raise ValueError("t must be >= 0")
    n = rho0.shape[0]
    if t == 0:
        return rho0.copy()
    if method == "expm":
        v = expm(lv * t) @ vec(rho0)
    elif method == "rk4":
        v = _rk4(lv, vec(rho0), t, substeps)
    else:
        raise ValueError(f"unknown method {method!r}")
    rho = unvec(v, n)
    return 0.5 * (rho + rho.conj().T)


def exact_trajectory(params, times, psi0=None):
    """Diagonals of ``rho(t)`` at each of the increasing ``times``."""
    times = np.asarray(times, dtype=float)
    psi0 = initial_state() if psi0 is None else psi0
    n = psi0.size
    lv = model_liouvillian(params)
    propagators = {}
    v = vec(np.outer(psi0, psi0.conj()))
    out = np.empty((times.size, n))
    prev = 0.0
    for i, t in enumerate(times):
        gap = t - prev
        if gap < 0:
            raise ValueError("times must be non-decreasing and >= 0")
        if gap > 0:
            key = round(gap, 18)
            if key not in propagators:
                propagators[key] = expm(lv * gap)
            v = propagators[key] @ v
        out[i] = unvec(v, n).diagonal().real
        prev = t
    return out


def steady_state_yields(params, t_final=7.5e-4, check_interval=5e-5, tol=STEADY_TOL, psi0=None):
    """Singlet and triplet shelf populations at ``t_final``.

    Raises NotConverged if any diagonal entry still moves by ``tol`` or more
    over the last ``check_interval`` before ``t_final``.
    """
    t0 = max(0.0, t_final - check_interval)
    before, after = exact_trajectory(params, [t0, t_final], psi0)
    drift = np.abs(after - before).max()
    if drift >= tol:
        raise NotConverged(f"diagonal drift {drift:.3e} over last {check_interval:g} s")
    return float(after[SINGLET_SHELF]), float(after[TRIPLET_SHELF])
