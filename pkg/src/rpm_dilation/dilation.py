"""Sz.-Nagy 1-dilation of contractions and statevector emulation of the circuit.

A contraction ``M`` (n x n) becomes the 2n x 2n unitary::

    U = [[ M,  sqrt(I - M M^H) ],
         [ sqrt(I - M^H M), -M^H ]]

which is then padded with an identity block up to the next power of two so
it acts on whole qubits.  The physical space occupies the lowest indices, so
``U @ (v, 0, ..., 0)`` carries ``M v`` in its first ``n`` entries.

Shot sampling uses numpy's ``Generator`` with the PCG64 bit generator seeded
from the integer seed, so sampled results are reproducible bit for bit.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NormExceedsOne, ZeroState

CONTRACTION_TOL = 1e-12
DEFAULT_SHOTS = 8192


@dataclass(frozen=True)
class DilatedUnitary:
    base_dim: int
    matrix: np.ndarray
    padded_dim: int
    padded_matrix: np.ndarray

    @property
    def n_qubits(self):
        return int(self.padded_dim).bit_length() - 1

    @property
    def block(self):
        """The dilated operator (top-left ``base_dim`` block)."""
        return self.matrix[: self.base_dim, : self.base_dim]


@dataclass(frozen=True)
class MeasurementResult:
    populations: np.ndarray
    mode: str
    shots: Optional[int] = None
    seed: Optional[int] = None

    def first_half(self, base_dim):
        return self.populations[:base_dim]


def qubit_dim(n):
    """Smallest power of two >= n."""
    return 1 << max(0, int(n - 1).bit_length())


def dilate(m):
    """1-dilation of ``m``, already padded to whole qubits.

    Both defect operators come from one SVD ``M = W diag(s) V^H``:
    ``sqrt(I - M^H M) = V diag(c) V^H`` and ``sqrt(I - M M^H) = W diag(c) W^H``
    with ``c = sqrt(1 - s^2)``.  Sharing the singular vectors makes
    ``M^H D_{M^H} = D_M M^H`` hold to round-off even when ``M`` has singular
    values at 1, where separate eigen-based square roots lose half the digits.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"dilation needs a square matrix, got {m.shape}")
    n = m.shape[0]
    w, s, vh = np.linalg.svd(m)
    if s[0] > 1 + CONTRACTION_TOL:
        raise NormExceedsOne(f"operator norm {s[0]:.15f} exceeds 1")
    c = np.sqrt(np.clip((1 - s) * (1 + s), 0.0, None))
    v = vh.conj().T
    d_m = (v * c) @ vh
    d_md = (w * c) @ w.conj().T
    u = np.block([[m, d_md], [d_m, -m.conj().T]])
    return pad_to_qubits(DilatedUnitary(n, u, 2 * n, u))


def pad_to_qubits(d):
    size = d.matrix.shape[0]
    padded_dim = qubit_dim(size)
    padded = np.eye(padded_dim, dtype=complex)
    padded[:size, :size] = d.matrix
    return DilatedUnitary(d.base_dim, d.matrix, padded_dim, padded)


def apply_to_state(d, v):
    """Run the dilated circuit on ``v`` (zero-extended if given at ``base_dim``)."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch("state must be a vector")
    if v.size == d.base_dim:
        v = np.concatenate([v, np.zeros(d.padded_dim - d.base_dim, dtype=complex)])
    elif v.size != d.padded_dim:
        raise DimensionMismatch(
            f"state has dim {v.size}; expected {d.base_dim} or {d.padded_dim}"
        )
    return d.padded_matrix @ v


def measure_populations(v, mode="analytic", shots=DEFAULT_SHOTS, seed=None, rng=None):
    """Computational-basis populations of ``v``.

    In ``"analytic"`` mode these are ``|v_i|^2``.  In ``"sampled"`` mode ``shots``
    outcomes are drawn from ``|v_i|^2 / ||v||^2`` and the empirical frequencies
    are rescaled by ``||v||^2``, so both modes carry the same total weight.
    An explicit ``rng`` takes precedence over ``seed``.
    """
    v = np.asarray(v, dtype=complex)
    probs = np.abs(v) ** 2
    if mode == "analytic":
        return MeasurementResult(probs, "analytic")
    if mode != "sampled":
        raise ValueError(f"unknown measurement mode {mode!r}")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    norm2 = probs.sum()
    if norm2 == 0:
        raise ZeroState("cannot sample a zero state")
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, probs / norm2)
    return MeasurementResult(norm2 * counts / shots, "sampled", shots, seed)


def dump_matrix(m, path):
    """Write a complex matrix as text: rows on lines, ``re,im`` cells separated by spaces."""
    m = np.asarray(m, dtype=complex)
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            fh.write(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
            fh.write("\n")


def load_matrix(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append([complex(*map(float, cell.split(","))) for cell in line.split()])
    return np.array(rows, dtype=complex)
