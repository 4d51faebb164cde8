"""Dense-matrix spin algebra: angular momentum operators, coherent states and
the two-spin singlet.

This layer is deliberately brute force. It is the oracle every spectral
shortcut elsewhere in the package is checked against, so nothing here relies
on closed forms beyond the ladder-operator matrix elements.

Basis ordering is m = j, j-1, ..., -j throughout. Two-spin operators are
Kronecker products with particle 1 in the left slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .specfun import wigner_d

# Two-spin dense objects have dimension (2j+1)**2; keep the oracle desk-sized.
TWO_SPIN_ORACLE_MAX_TWICE_J = 16


@dataclass(frozen=True, order=True)
class SpinQuantumNumber:
    """Spin j stored exactly as the integer 2j."""

    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, (int, np.integer)) or self.twice_j < 0:
            raise ValueError(f"twice_j must be a non-negative integer, got {self.twice_j!r}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @classmethod
    def parse(cls, text) -> "SpinQuantumNumber":
        """Parse "5", "19/2", "9.5" or a SpinQuantumNumber without going through float."""
        if isinstance(text, SpinQuantumNumber):
            return text
        value = Fraction(str(text).strip())
        twice = 2 * value
        if twice.denominator != 1:
            raise ValueError(f"{text!r} is not a multiple of 1/2")
        return cls(int(twice))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def exact(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    @property
    def casimir(self) -> float:
        """j(j+1)."""
        return self.twice_j * (self.twice_j + 2) / 4

    def m_values(self) -> np.ndarray:
        return (self.twice_j - 2 * np.arange(self.dim)) / 2

    def __str__(self):
        return str(self.exact)


def as_spin(j) -> SpinQuantumNumber:
    if isinstance(j, SpinQuantumNumber):
        return j
    return SpinQuantumNumber.parse(j)


@dataclass(frozen=True)
class Direction:
    """A point on the unit sphere."""

    vec: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=float).reshape(3)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"not a unit vector (|n| = {norm!r})")
        v = v / norm
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @classmethod
    def normalized(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        return cls(v / np.linalg.norm(v))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        st = math.sin(theta)
        return cls.normalized([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])

    @property
    def theta(self) -> float:
        return math.acos(min(1.0, max(-1.0, self.vec[2])))

    @property
    def phi(self) -> float:
        return math.atan2(self.vec[1], self.vec[0]) % (2 * math.pi)

    def dot(self, other) -> float:
        return float(self.vec @ getattr(other, "vec", other))

    def __neg__(self):
        return Direction(-self.vec)


Z_AXIS = Direction(np.array([0.0, 0.0, 1.0]))
X_AXIS = Direction(np.array([1.0, 0.0, 0.0]))


def random_directions(rng: np.random.Generator, n: int) -> np.ndarray:
    """n isotropic unit vectors as an (n, 3) array."""
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass(frozen=True)
class DenseOperator:
    """A complex matrix acting on one spin j or on a pair of spins j (x) j."""

    mat: np.ndarray
    spin: SpinQuantumNumber
    num_spins: int = 1

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        expected = self.spin.dim**self.num_spins
        if m.shape != (expected, expected):
            raise ValueError(f"expected a {expected}x{expected} matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.mat - self.mat.conj().T), initial=0.0) < tol)

    @property
    def H(self) -> "DenseOperator":
        return DenseOperator(self.mat.conj().T, self.spin, self.num_spins)

    def _check_compatible(self, other: "DenseOperator"):
        if (self.spin, self.num_spins) != (other.spin, other.num_spins):
            raise ValueError("operators act on different spaces")

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return DenseOperator(self.mat @ other.mat, self.spin, self.num_spins)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return DenseOperator(self.mat + other.mat, self.spin, self.num_spins)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        self._check_compatible(other)
        return DenseOperator(self.mat - other.mat, self.spin, self.num_spins)

    def __mul__(self, scalar) -> "DenseOperator":
        return DenseOperator(scalar * self.mat, self.spin, self.num_spins)

    __rmul__ = __mul__

    def trace(self) -> complex:
        return complex(np.trace(self.mat))


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of one spin or of a spin pair."""

    amplitudes: np.ndarray
    spin: SpinQuantumNumber
    num_spins: int = 1

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.shape[0] != self.spin.dim**self.num_spins:
            raise ValueError("amplitude count does not match the spin content")
        if abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise ValueError("state is not normalized")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def identity(j, num_spins: int = 1) -> DenseOperator:
    spin = as_spin(j)
    return DenseOperator(np.eye(spin.dim**num_spins), spin, num_spins)


def spin_operators(j) -> tuple[DenseOperator, DenseOperator, DenseOperator]:
    """(Jx, Jy, Jz) in the |j, m> basis, m = j ... -j."""
    spin = as_spin(j)
    m = spin.m_values()
    jp = np.zeros((spin.dim, spin.dim))
    for a in range(1, spin.dim):
        # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row up
        jp[a - 1, a] = math.sqrt(spin.casimir - m[a] * (m[a] + 1))
    jx = (jp + jp.T) / 2
    jy = (jp - jp.T) / 2j
    return (
        DenseOperator(jx, spin),
        DenseOperator(jy, spin),
        DenseOperator(np.diag(m), spin),
    )


def spin_component(j, a) -> DenseOperator:
    """J . a for a 3-vector a (not necessarily unit)."""
    a = np.asarray(getattr(a, "vec", a), dtype=float)
    jx, jy, jz = spin_operators(j)
    return DenseOperator(a[0] * jx.mat + a[1] * jy.mat + a[2] * jz.mat, as_spin(j))


def tensor(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    """a (x) b on the two-spin space, particle 1 in the left slot."""
    if a.num_spins != 1 or b.num_spins != 1 or a.spin != b.spin:
        raise ValueError("tensor expects two one-spin operators of equal j")
    return DenseOperator(np.kron(a.mat, b.mat), a.spin, 2)


def rotation_matrix(j, n) -> np.ndarray:
    """Matrix of the rotation taking z to n along the great circle.

    The rotation is by theta about the axis z x n, i.e.
    R_z(phi) R_y(theta) R_z(-phi).
    """
    spin = as_spin(j)
    n = n if isinstance(n, Direction) else Direction.normalized(n)
    m = spin.m_values()
    d = wigner_d(spin.twice_j, n.theta).entries
    phi = n.phi
    return np.exp(-1j * phi * m)[:, None] * d * np.exp(1j * phi * m)[None, :]


def coherent_amplitudes(j, directions) -> np.ndarray:
    """Coherent-state amplitudes for many directions at once.

    Row i holds <j, m|n_i> for m = j ... -j; it is the m = j column of
    :func:`rotation_matrix`, written out explicitly:
    e^{i phi (j - m)} sqrt(C(2j, j + m)) cos^{j+m}(theta/2) sin^{j-m}(theta/2).
    """
    spin = as_spin(j)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    theta = np.arccos(np.clip(dirs[:, 2], -1.0, 1.0))
    phi = np.arctan2(dirs[:, 1], dirs[:, 0])
    n = spin.twice_j
    a = np.arange(n + 1)  # a = j - m
    binom = np.array([math.comb(n, k) for k in a], dtype=float)
    c = np.cos(theta / 2)[:, None] ** (n - a)[None, :]
    s = np.sin(theta / 2)[:, None] ** a[None, :]
    return np.sqrt(binom)[None, :] * c * s * np.exp(1j * phi[:, None] * a[None, :])


def coherent_state(j, n) -> StateVector:
    """Spin coherent state |n>: the J.n eigenstate with eigenvalue j.

    Phase convention: |j, j> rotated by theta about z x n. For n = +z or -z
    the corresponding basis vector is returned.
    """
    spin = as_spin(j)
    n = n if isinstance(n, Direction) else Direction.normalized(n)
    if abs(n.vec[2]) == 1.0 or np.hypot(n.vec[0], n.vec[1]) == 0.0:
        amps = np.zeros(spin.dim, dtype=complex)
        amps[0 if n.vec[2] > 0 else -1] = 1.0
        return StateVector(amps, spin)
    amps = coherent_amplitudes(spin, n.vec)[0]
    return StateVector(amps / np.linalg.norm(amps), spin)


def singlet_amplitudes(j) -> np.ndarray:
    """Singlet coefficients as a (2j+1) x (2j+1) array, z quantization axis.

    Entry [a, b] multiplies |m_a> (x) |m_b>; only m_b = -m_a is populated,
    with sign (-1)^(j - m_a).
    """
    spin = as_spin(j)
    phi = np.zeros((spin.dim, spin.dim))
    for a in range(spin.dim):
        phi[a, spin.dim - 1 - a] = (-1) ** a
    return phi / math.sqrt(spin.dim)


def singlet_state(j, quantization_axis=Z_AXIS) -> StateVector:
    """Two-spin singlet sum_m (-1)^(j-m) |j,m>_u |j,-m>_u / sqrt(2j+1).

    The |j, m>_u are eigenstates of J.u obtained by rotating the z basis with
    :func:`rotation_matrix`. The result is independent of u up to a phase.
    """
    spin = as_spin(j)
    u = rotation_matrix(spin, quantization_axis)
    amps = u @ singlet_amplitudes(spin) @ u.T
    return StateVector(amps.reshape(-1), spin, num_spins=2)


def density_matrix(psi: StateVector) -> DenseOperator:
    return DenseOperator(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.spin, psi.num_spins)


def expectation(rho: DenseOperator, f: DenseOperator) -> complex:
    """Tr(rho F)."""
    rho._check_compatible(f)
    return complex(np.einsum("ij,ji->", rho.mat, f.mat))


def qm_average(f: DenseOperator) -> complex:
    """Tr(F) / dim."""
    return f.trace() / f.dim


def singlet_correlation(j, a, b) -> float:
    """<phi|(J1.a)(J2.b)|phi> from the dense two-spin trace."""
    rho = density_matrix(singlet_state(j))
    g = tensor(spin_component(j, a), spin_component(j, b))
    return expectation(rho, g).real


def random_hermitian(j, rng: np.random.Generator, num_spins: int = 1) -> DenseOperator:
    spin = as_spin(j)
    d = spin.dim**num_spins
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return DenseOperator((a + a.conj().T) / 2, spin, num_spins)
