"""Dense complex linear algebra used throughout the package.

All matrices here are small (at most 100 x 100), so everything is dense numpy.
Tolerances are Frobenius-norm based.
"""
import numpy as np

from .errors import NegativeEigenvalue, NotHermitian, NotSquare

HERMITIAN_RTOL = 1e-10
EIG_CLAMP = -1e-12


def _as_square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m


def check_hermitian(m, rtol=HERMITIAN_RTOL):
    """Return ``m`` as a complex array, raising NotHermitian if ``m != m^dagger``."""
    m = _as_square(m)
    scale = max(1.0, np.linalg.norm(m))
    defect = np.linalg.norm(m - m.conj().T)
    if defect > rtol * scale:
        raise NotHermitian(f"||m - m^H||_F = {defect:.3e} exceeds {rtol:.0e} * {scale:.3e}")
    return m


def hermitian_eigendecompose(m):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like, shape (n, n)

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Real, ascending.
    eigenvectors : ndarray, shape (n, n)
        Unitary; column ``j`` belongs to ``eigenvalues[j]``.
    """
    m = check_hermitian(m)
    # symmetrize so eigh sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w, v


def psd_sqrt(m):
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-1e-12, 0)`` are treated as round-off and clamped to zero.
    Anything more negative raises NegativeEigenvalue.
    """
    w, v = hermitian_eigendecompose(m)
    if w.size and w[0] < EIG_CLAMP:
        raise NegativeEigenvalue(f"minimum eigenvalue {w[0]:.3e} below {EIG_CLAMP:.0e}")
    w = np.sqrt(np.clip(w, 0.0, None))
    r = (v * w) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def unitary_exp(h, scale):
    """Return ``exp(-1j * scale * h)`` for Hermitian ``h`` via its eigenbasis."""
    w, v = hermitian_eigendecompose(h)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


def kron(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(m):
    return np.asarray(m).conj().T


def frobenius(m):
    return float(np.linalg.norm(m))


def unitarity_defect(u):
    """``||U^dagger U - I||_F``."""
    u = np.asarray(u)
    return frobenius(u.conj().T @ u - np.eye(u.shape[1]))
