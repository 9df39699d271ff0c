"""Ten-level radical pair model: two electron spins, one nuclear spin, two shelves.

Basis ordering (fixed)::

    0 (s, up)   1 (t0, up)   2 (t+, up)   3 (t-, up)
    4 (s, down) 5 (t0, down) 6 (t+, down) 7 (t-, down)
    8 |S> singlet shelf      9 |T> triplet shelf

The Hamiltonian is assembled in the product basis electron1 x electron2 x nucleus
and rotated into the singlet/triplet x nuclear basis above.
"""
from dataclasses import dataclass, replace
import functools
import math

import numpy as np

from .errors import ValidationError
from .linalg import kron

DIM = 10
SPIN_DIM = 8
SINGLET_SHELF = 8
TRIPLET_SHELF = 9

BASIS_LABELS = (
    "s,up", "t0,up", "t+,up", "t-,up",
    "s,down", "t0,down", "t+,down", "t-,down",
    "S", "T",
)

# spin-1/2 operators
SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class FieldParams:
    """Physical constants and field geometry, SI units.

    Defaults reproduce the published parameter table.  ``hbar`` is deliberately
    100x the physical constant; see README.
    """

    Ax: float = 1e-4
    Ay: float = 1e-4
    Az: float = 2e-4
    B0: float = 5e-5
    theta: float = 0.0
    phi: float = 0.0
    gamma: float = 9.27e-24
    hbar: float = 1.05457e-32
    kd: float = 1e4

    def __post_init__(self):
        for name in ("Ax", "Ay", "Az", "B0", "theta", "phi", "gamma", "hbar", "kd"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.B0 < 0:
            raise ValidationError("B0 must be >= 0")
        if self.kd < 0:
            raise ValidationError("kd must be >= 0")
        if self.hbar <= 0:
            raise ValidationError("hbar must be > 0")

    @property
    def field_vector(self):
        st = math.sin(self.theta)
        return self.B0 * np.array(
            [math.cos(self.phi) * st, math.sin(self.phi) * st, math.cos(self.theta)]
        )

    def with_angles(self, theta=None, phi=None):
        kw = {}
        if theta is not None:
            kw["theta"] = theta
        if phi is not None:
            kw["phi"] = phi
        return replace(self, **kw)


def spin_operator(s, position, n_spins=3):
    """Embed a single-spin operator at ``position`` of an ``n_spins`` product space."""
    factors = [s if i == position else I2 for i in range(n_spins)]
    return functools.reduce(kron, factors)


@functools.lru_cache(maxsize=None)
def _change_of_basis():
    up = np.array([1, 0], dtype=complex)
    dn = np.array([0, 1], dtype=complex)
    r = 1 / math.sqrt(2)
    singlet = r * (np.kron(up, dn) - np.kron(dn, up))
    t0 = r * (np.kron(up, dn) + np.kron(dn, up))
    tp = np.kron(up, up)
    tm = np.kron(dn, dn)
    electron = (singlet, t0, tp, tm)
    cols = [np.kron(e, n) for n in (up, dn) for e in electron]
    c = np.column_stack(cols)
    c.setflags(write=False)
    return c


def change_of_basis():
    """Columns are the eight spin basis states written in the product basis."""
    return _change_of_basis().copy()


def product_hamiltonian(p: FieldParams):
    """8x8 Hamiltonian in the electron1 x electron2 x nucleus product basis (Joules)."""
    s1 = [spin_operator(s, 0) for s in (SX, SY, SZ)]
    s2 = [spin_operator(s, 1) for s in (SX, SY, SZ)]
    nuc = [spin_operator(s, 2) for s in (SX, SY, SZ)]
    a = (p.Ax, p.Ay, p.Az)
    b = p.field_vector
    h = np.zeros((SPIN_DIM, SPIN_DIM), dtype=complex)
    for j in range(3):
        h += a[j] * nuc[j] @ s1[j]
        h += b[j] * (s1[j] + s2[j])
    return p.gamma * h


def build_hamiltonian(p: FieldParams):
    """10x10 Hamiltonian in the model basis; the shelf rows and columns are zero."""
    c = _change_of_basis()
    h = np.zeros((DIM, DIM), dtype=complex)
    h[:SPIN_DIM, :SPIN_DIM] = c.conj().T @ product_hamiltonian(p) @ c
    return 0.5 * (h + h.conj().T)


def decay_projectors():
    """The eight spin-selective decay operators, ordered as the spin basis.

    ``P[k]`` maps spin state ``k`` to the singlet shelf for k in (0, 4) and to the
    triplet shelf otherwise.
    """
    out = []
    for k in range(SPIN_DIM):
        m = np.zeros((DIM, DIM), dtype=complex)
        m[SINGLET_SHELF if k % 4 == 0 else TRIPLET_SHELF, k] = 1.0
        out.append(m)
    return out


def initial_state():
    """Electron singlet times the nuclear state (|up> - |down>)/sqrt(2)."""
    v = np.zeros(DIM, dtype=complex)
    v[0] = 1 / math.sqrt(2)
    v[4] = -1 / math.sqrt(2)
    return v


def triplet_projector():
    m = np.zeros((DIM, DIM))
    for k in (1, 2, 3, 5, 6, 7):
        m[k, k] = 1.0
    return m
