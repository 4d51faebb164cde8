"""Q and Weyl symbols of spin operators on the sphere.

The Q symbol is sampled directly from coherent-state expectation values. It is
projected onto spherical harmonics with an exact product quadrature, and the
Q -> Weyl kernel is applied as a per-degree rescaling by 1/S_{j,l}. Two-spin
functions carry one harmonic axis per sphere and the kernel acts on each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .specfun import gauss_legendre, harmonic_index, sph_harm_table
from .spin_core import DenseOperator, SpinQuantumNumber, as_spin, coherent_amplitudes

FOUR_PI = 4.0 * math.pi


# ---------------------------------------------------------------------------
# kernel coefficients


def _check_degree(spin: SpinQuantumNumber, l: int):
    if not 0 <= l <= spin.twice_j:
        raise IndexError(f"degree l={l} outside 0..2j={spin.twice_j}")


def log_s_coefficient(j, l: int) -> float:
    spin = as_spin(j)
    _check_degree(spin, l)
    n1 = spin.twice_j + 1
    return 0.5 * math.fsum(math.log((n1 - k) / (n1 + k)) for k in range(1, l + 1))


def s_coefficient(j, l: int) -> float:
    """S_{j,l} = prod_{k=0}^{l} sqrt((2j+1-k)/(2j+1+k)).

    Ratio between the Q and Weyl symbols of the rank-l tensor operators.
    The k = 0 factor is one; the rest are accumulated as logs of ratios.
    """
    return math.exp(log_s_coefficient(j, l))


def log_a_coefficient(j, l: int) -> float:
    # [(2j)!]^2 / ((2j-l)! (2j+l+1)!) = prod_{k<l} (2j-k)/(2j+1+k) / (2j+l+1)
    spin = as_spin(j)
    _check_degree(spin, l)
    n = spin.twice_j
    terms = [math.log((n - k) / (n + 1 + k)) for k in range(l)]
    terms.append(-math.log(n + l + 1))
    return math.fsum(terms)


def a_coefficient(j, l: int) -> float:
    """Legendre weight A_{j,l} = [(2j)!]^2 / ((2j-l)! (2j+l+1)!) of the singlet Q function."""
    return math.exp(log_a_coefficient(j, l))


@dataclass(frozen=True)
class KernelCoefficients:
    """S_{j,l} for l = 0 .. 2j, stored as logs (every S is positive)."""

    spin: SpinQuantumNumber
    log_s: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return np.exp(self.log_s)

    def per_harmonic(self, power: float) -> np.ndarray:
        """S_{j,l}**power expanded over the flat (l, m) index."""
        degrees = np.repeat(np.arange(len(self.log_s)), 2 * np.arange(len(self.log_s)) + 1)
        return np.exp(power * self.log_s[degrees])


@lru_cache(maxsize=256)
def kernel_coefficients(j) -> KernelCoefficients:
    spin = as_spin(j)
    log_s = np.array([log_s_coefficient(spin, l) for l in range(spin.twice_j + 1)])
    return KernelCoefficients(spin, log_s)


# ---------------------------------------------------------------------------
# quadrature and harmonic coefficients


@dataclass(frozen=True)
class SphereQuadrature:
    """Gauss-Legendre in cos(theta) times the trapezoid rule in phi.

    Integrates products of two harmonics of degree <= lmax exactly. Nodes are
    stored flat, theta-major.
    """

    lmax: int
    cos_theta: np.ndarray
    phi: np.ndarray
    directions: np.ndarray
    weights: np.ndarray
    ylm: np.ndarray  # Y_lm at the nodes, shape (size, (lmax + 1)**2)

    @property
    def size(self) -> int:
        return len(self.weights)

    def nodes(self):
        from .spin_core import Direction

        for v, w in zip(self.directions, self.weights):
            yield Direction.normalized(v), float(w)

    def harmonics(self) -> np.ndarray:
        return self.ylm

    def integrate(self, samples) -> complex | float:
        """Integral over the sphere (or over S2 x S2 for a 2-d sample array)."""
        samples = np.asarray(samples)
        if samples.ndim == 1:
            return self.weights @ samples
        return self.weights @ samples @ self.weights

    def average(self, samples):
        """Mean with measure d^2n / 4pi on each sphere."""
        samples = np.asarray(samples)
        return self.integrate(samples) / FOUR_PI**samples.ndim


@lru_cache(maxsize=64)
def build_quadrature(lmax: int) -> SphereQuadrature:
    """Product rule with lmax + 2 Gauss-Legendre and 2 lmax + 3 azimuthal nodes."""
    if lmax < 0:
        raise ValueError("lmax must be non-negative")
    x, wx = gauss_legendre(lmax + 2)
    n_phi = 2 * lmax + 3
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - x**2)
    dirs = np.stack(
        [
            np.outer(st, np.cos(phi)).ravel(),
            np.outer(st, np.sin(phi)).ravel(),
            np.repeat(x, n_phi),
        ],
        axis=1,
    )
    w = np.repeat(wx, n_phi) * (2.0 * math.pi / n_phi)
    ylm = sph_harm_table(lmax, dirs)
    for arr in (x, phi, dirs, w, ylm):
        arr.setflags(write=False)
    return SphereQuadrature(lmax, x, phi, dirs, w, ylm)


def quadrature_for_spin(j) -> SphereQuadrature:
    return build_quadrature(as_spin(j).twice_j)


@dataclass(frozen=True)
class HarmonicCoefficients:
    """Spherical-harmonic coefficients c_{lm}, one flat (l, m) axis per sphere."""

    lmax: int
    c: np.ndarray

    @property
    def num_spheres(self) -> int:
        return self.c.ndim

    def get(self, *lm) -> complex:
        """``get(l, m)`` or ``get(l1, m1, l2, m2)``."""
        idx = tuple(harmonic_index(lm[i], lm[i + 1]) for i in range(0, len(lm), 2))
        return complex(self.c[idx])

    def scaled(self, per_harmonic: np.ndarray) -> "HarmonicCoefficients":
        c = self.c
        for axis in range(c.ndim):
            shape = [1] * c.ndim
            shape[axis] = -1
            c = c * per_harmonic.reshape(shape)
        return HarmonicCoefficients(self.lmax, c)

    def __mul__(self, scalar) -> "HarmonicCoefficients":
        return HarmonicCoefficients(self.lmax, scalar * self.c)

    __rmul__ = __mul__


def project_to_harmonics(samples, lmax: int, quad: SphereQuadrature) -> HarmonicCoefficients:
    """c_{lm} = integral of conj(Y_lm) f over the sphere, on each sphere axis.

    ``samples`` has one axis of length ``quad.size`` per sphere. The rule
    must be exact through degree 2 lmax.
    """
    if lmax > quad.lmax:
        raise ValueError(f"quadrature of order {quad.lmax} cannot resolve lmax={lmax}")
    samples = np.asarray(samples)
    y = quad.harmonics()[:, : (lmax + 1) ** 2]
    b = np.conj(y) * quad.weights[:, None]
    if samples.ndim == 1:
        c = b.T @ samples
    elif samples.ndim == 2:
        c = b.T @ samples @ b
    else:
        raise ValueError("samples must live on one or two spheres")
    return HarmonicCoefficients(lmax, c)


def synthesize(coeffs: HarmonicCoefficients, directions) -> np.ndarray:
    """Evaluate sum c_{lm} Y_lm at the given directions (one set per sphere).

    ``directions`` is a SphereQuadrature, an (N, 3) array, or for two spheres
    a pair of either.
    """

    def table(d):
        if isinstance(d, SphereQuadrature):
            return d.harmonics()[:, : (coeffs.lmax + 1) ** 2]
        return sph_harm_table(coeffs.lmax, d)

    if coeffs.num_spheres == 1:
        return table(directions) @ coeffs.c
    if isinstance(directions, (tuple, list)):
        d1, d2 = directions
    else:
        d1 = d2 = directions
    return table(d1) @ coeffs.c @ table(d2).T


def _real_if_hermitian(values, op: DenseOperator):
    return values.real.copy() if op.is_hermitian(1e-10) else values


def q_transform_oracle(op: DenseOperator, quad: SphereQuadrature) -> np.ndarray:
    """Q symbol <n|F|n> (or <n1, n2|F|n1, n2>) at every quadrature node.

    Returns shape (N,) for one spin and (N, N) for two spins, axis k running
    over the nodes of sphere k. Real-valued for hermitian F.
    """
    amps = coherent_amplitudes(op.spin, quad.directions)
    if op.num_spins == 1:
        vals = np.einsum("ia,ab,ib->i", amps.conj(), op.mat, amps)
    elif op.num_spins == 2:
        d = op.spin.dim
        f = op.mat.reshape(d, d, d, d)  # [a, b, c, e] = <a b|F|c e>
        left = np.einsum("ia,abce,ic->ibe", amps.conj(), f, amps)
        vals = np.einsum("jb,ibe,je->ij", amps.conj(), left, amps)
    else:
        raise ValueError("only one- and two-spin operators are supported")
    return _real_if_hermitian(vals, op)


def _check_band(coeffs: HarmonicCoefficients, spin: SpinQuantumNumber):
    if coeffs.lmax > spin.twice_j:
        raise ValueError(f"band limit exceeded: lmax={coeffs.lmax} > 2j={spin.twice_j}")


def weyl_from_q(coeffs: HarmonicCoefficients, j) -> HarmonicCoefficients:
    """Apply the Q -> Weyl kernel: c_{lm} -> c_{lm} / S_{j,l} on every sphere axis."""
    spin = as_spin(j)
    _check_band(coeffs, spin)
    k = kernel_coefficients(spin).per_harmonic(-1.0)[: (coeffs.lmax + 1) ** 2]
    return coeffs.scaled(k)


def q_from_weyl(coeffs: HarmonicCoefficients, j) -> HarmonicCoefficients:
    """Inverse kernel: c_{lm} -> S_{j,l} c_{lm}."""
    spin = as_spin(j)
    _check_band(coeffs, spin)
    k = kernel_coefficients(spin).per_harmonic(1.0)[: (coeffs.lmax + 1) ** 2]
    return coeffs.scaled(k)


def wigner_normalize(weyl, j, num_spins: int = 1):
    """Scale a Weyl symbol by ((2j+1)/4pi)**num_spins to get a Wigner function."""
    if num_spins not in (1, 2):
        raise ValueError("num_spins must be 1 or 2")
    factor = (as_spin(j).dim / FOUR_PI) ** num_spins
    if isinstance(weyl, HarmonicCoefficients):
        return weyl * factor
    return np.asarray(weyl) * factor


def weyl_symbol_coefficients(op: DenseOperator, quad: SphereQuadrature | None = None) -> HarmonicCoefficients:
    quad = quad or quadrature_for_spin(op.spin)
    q = q_transform_oracle(op, quad)
    return weyl_from_q(project_to_harmonics(q, op.spin.twice_j, quad), op.spin)


def weyl_symbol(op: DenseOperator, quad: SphereQuadrature | None = None) -> np.ndarray:
    """Weyl symbol of F at the quadrature nodes, through Q -> project -> rescale -> synthesize."""
    quad = quad or quadrature_for_spin(op.spin)
    vals = synthesize(weyl_symbol_coefficients(op, quad), quad)
    return _real_if_hermitian(vals, op)


def wigner_function(rho: DenseOperator, quad: SphereQuadrature | None = None) -> np.ndarray:
    """Normalized Wigner function of a density matrix at the quadrature nodes."""
    return wigner_normalize(weyl_symbol(rho, quad), rho.spin, rho.num_spins)


def traciality_check(f: DenseOperator, g: DenseOperator, quad: SphereQuadrature | None = None):
    """Both sides of Tr(FG)/dim = <Phi_F Phi_G>.

    The phase-space side averages over each sphere with d^2n/4pi. Returns
    (lhs, rhs); comparing them is up to the caller.
    """
    f._check_compatible(g)
    quad = quad or quadrature_for_spin(f.spin)
    if quad.lmax < f.spin.twice_j:
        raise ValueError("quadrature too coarse for the product of two symbols")
    lhs = complex(np.einsum("ij,ji->", f.mat, g.mat)) / f.dim
    rhs = complex(quad.average(weyl_symbol(f, quad) * weyl_symbol(g, quad)))
    return lhs, rhs


def kernel_matrix(j, directions, source_directions) -> np.ndarray:
    """Literal Q -> Weyl kernel sum_{l,m} Y_lm(n) conj(Y_lm(n')) / S_{j,l}.

    Dense (N, N') matrix; only used to cross-check the diagonal rescaling.
    """
    spin = as_spin(j)
    inv_s = kernel_coefficients(spin).per_harmonic(-1.0)
    y = sph_harm_table(spin.twice_j, directions)
    yp = sph_harm_table(spin.twice_j, source_directions)
    return (y * inv_s[None, :]) @ yp.conj().T
