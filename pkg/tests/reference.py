"""Independent reference computations used as test oracles.

Nothing here imports the package's numerical code paths.
"""
import math

import numpy as np


def taylor_expm(a, terms=30):
    """exp(a) by scaling and squaring of a truncated Taylor series."""
    a = np.asarray(a, dtype=complex)
    norm = np.linalg.norm(a, 1)
    s = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0 else 0
    x = a / (2 ** s)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ x / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def pauli_half(bx, by, bz):
    """b . sigma / 2 written out explicitly."""
    return 0.5 * np.array([[bz, bx - 1j * by], [bx + 1j * by, -bz]], dtype=complex)


def hamiltonian_by_terms(Ax, Ay, Az, B0, theta, phi, gamma):
    """Product-basis (e1, e2, n) Hamiltonian assembled from 4x4 blocks.

    The hyperfine part is built on e1 x n and moved into place by an index
    permutation instead of three-factor Kronecker products.
    """
    sx = pauli_half(1, 0, 0)
    sy = pauli_half(0, 1, 0)
    sz = pauli_half(0, 0, 1)
    hf = Ax * np.kron(sx, sx) + Ay * np.kron(sy, sy) + Az * np.kron(sz, sz)  # (e1, n)
    hf4 = hf.reshape(2, 2, 2, 2)  # [e1, n, e1', n']
    eye = np.eye(2)
    hf8 = np.einsum("acbd,ef->aecbfd", hf4, eye).reshape(8, 8)
    b = B0 * np.array([math.cos(phi) * math.sin(theta), math.sin(phi) * math.sin(theta), math.cos(theta)])
    z = pauli_half(*b)
    zeeman = np.kron(np.kron(z, eye), eye) + np.kron(np.kron(eye, z), eye)
    return gamma * (hf8 + zeeman)


def dense_kraus_iteration(ops, rho, n):
    for _ in range(n):
        rho = sum(e @ rho @ e.conj().T for e in ops)
    return rho


def random_density_matrix(rng, n, rank=None):
    rank = n if rank is None else rank
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, n, scale=1.0):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (g + g.conj().T) / 2


def random_unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))
