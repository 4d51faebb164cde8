"""Closed forms for the Q and Wigner functions of the two-spin-j singlet.

Everything depends on the two directions only through a scalar. The Q
function is written in terms of n1.n2, the Wigner function in terms of
x = -n1.n2 (x = 1 when the spins point in opposite directions), matching
how the functions are usually plotted.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .specfun import bessel_j1, bessel_j1_zero, clenshaw_curtis, gauss_legendre, legendre_values
from .spin_core import SpinQuantumNumber, as_spin
from .transforms import a_coefficient

PREFACTOR = 1.0 / (16.0 * math.pi**2)

# Below this distance from x = 1 the Christoffel-Darboux quotient is 0/0-prone.
CD_FALLBACK = 1e-6

ENVELOPE_LADDER = (10, 20, 40, 80)  # values of 2j
ENVELOPE_WINDOW = (-0.9, 0.9)


def _as_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-12):
        raise ValueError("argument must lie in [-1, 1]")
    return np.clip(x, -1.0, 1.0)


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def q_closed_form(j, x):
    """Singlet Q function (1/(2j+1)) [(1 - x)/2]^(2j) with x = n1.n2."""
    spin = as_spin(j)
    x = _as_x(x)
    if spin.twice_j == 0:
        return _out(np.ones_like(x))
    with np.errstate(divide="ignore"):
        v = np.exp(spin.twice_j * np.log((1.0 - x) / 2.0)) / spin.dim
    return _out(v)


def q_legendre_series(j, x):
    """Q function resummed from its Legendre expansion in -n1.n2 (x = n1.n2)."""
    spin = as_spin(j)
    x = _as_x(x)
    p = legendre_values(-x, spin.twice_j)
    w = np.array([(2 * l + 1) * a_coefficient(spin, l) for l in range(spin.dim)])
    return _out(np.tensordot(w, p, axes=1) / spin.dim)


def wigner_exact_sum(j, x):
    """W(x) = (1/16pi^2) sum_{l=0}^{2j} (2l+1) P_l(x), by direct summation.

    The Legendre recurrence is run in place so memory stays O(len(x)).
    """
    spin = as_spin(j)
    x = _as_x(x)
    p_prev = np.ones_like(x)
    total = p_prev.copy()
    if spin.twice_j >= 1:
        p = x.copy()
        total += 3.0 * p
        for n in range(1, spin.twice_j):
            p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
            total += (2 * n + 3) * p
    return _out(PREFACTOR * total)


def wigner_cd(j, x):
    """W(x) through the Christoffel-Darboux form (2j+1)[P_2j - P_2j+1]/(1 - x).

    Falls back to direct summation within ``CD_FALLBACK`` of x = 1.
    """
    spin = as_spin(j)
    x = _as_x(x)
    n = spin.twice_j
    p = legendre_values(x, n + 1)
    near = (1.0 - x) < CD_FALLBACK
    with np.errstate(divide="ignore", invalid="ignore"):
        v = PREFACTOR * spin.dim * (p[n] - p[n + 1]) / (1.0 - x)
    if np.any(near):
        v = np.where(near, wigner_exact_sum(spin, np.where(near, x, 0.0)), v)
    return _out(v)


def wigner_peak(j) -> float:
    """W at x = 1: (2j+1)^2 / 16pi^2."""
    return as_spin(j).dim ** 2 * PREFACTOR


def wigner_asymptotic(j, gamma):
    """Large-j Bessel form of W at angle gamma, cos(gamma) = x = -n1.n2.

    (2j+1)/16pi^2 * (gamma^3/sin gamma)^(1/2) J1((2j+1) gamma) / (1 - cos gamma).
    gamma = 0 is rejected; its limit is :func:`wigner_peak`. The form is
    singular at gamma = pi, where nan is returned.
    """
    spin = as_spin(j)
    g = np.asarray(gamma, dtype=float)
    if np.any(g <= 0.0) or np.any(g > math.pi + 1e-12):
        raise ValueError("gamma must lie in (0, pi]; use wigner_peak for gamma -> 0")
    s = np.sin(g)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (
            PREFACTOR
            * spin.dim
            * np.sqrt(g**3 / s)
            * bessel_j1(spin.dim * g)
            / (2.0 * np.sin(g / 2) ** 2)
        )
        v = np.where(s > 1e-15, v, np.nan)
    return _out(v)


def wigner_asymptotic_x(j, x):
    """:func:`wigner_asymptotic` on the x axis, with the peak value at x = 1."""
    x = _as_x(x)
    g = np.arccos(x)
    pos = g > 0
    out = np.full(x.shape, wigner_peak(j))
    if np.any(pos):
        out[pos] = wigner_asymptotic(j, g[pos])
    return _out(out)


def asymptotic_envelope(j, gamma):
    """Local oscillation amplitude of the Bessel form.

    :func:`wigner_asymptotic` with |J1| replaced by the Bessel modulus
    sqrt(J1^2 + Y1^2), which is smooth through the zeros of W.
    """
    from scipy.special import j1, y1

    spin = as_spin(j)
    g = np.asarray(gamma, dtype=float)
    z = spin.dim * g
    base = PREFACTOR * spin.dim * np.sqrt(g**3 / np.sin(g)) / (2.0 * np.sin(g / 2) ** 2)
    return _out(base * np.hypot(j1(z), y1(z)))


def asymptotic_relative_error(j, gamma):
    """|W_asym - W_exact| divided by :func:`asymptotic_envelope`."""
    spin = as_spin(j)
    g = np.asarray(gamma, dtype=float)
    exact = wigner_cd(spin, np.cos(g))
    return _out(np.abs(wigner_asymptotic(spin, g) - exact) / asymptotic_envelope(spin, g))


# ---------------------------------------------------------------------------
# zeros


def _bisect(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def first_zero(j) -> tuple[float, float]:
    """Zero of W nearest the peak at x = 1, as (x_zero, 1 - x_zero).

    A grid of 20 (2j+1)^2 points covers the window of width
    ~40/(2j+1)^2 below x = 1, uniform spacing at 10 (2j+1) points covers the
    rest of [-1, 1]; the first bracketing pair is refined by bisection of the
    direct sum to 1e-12.
    """
    spin = as_spin(j)
    if spin.twice_j < 1:
        raise ValueError("W has no zeros for j = 0")
    n1 = spin.dim
    width = min(2.0, 40.0 / n1**2)
    near = 1.0 - width * np.linspace(0.0, 1.0, 20 * n1**2 + 1)
    far = np.linspace(1.0 - width, -1.0, 10 * n1 + 1)[1:]
    grid = np.concatenate([near, far])
    vals = wigner_exact_sum(spin, grid)
    flips = np.nonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))[0]
    if not len(flips):
        raise RuntimeError("no sign change found")
    k = flips[0]
    if vals[k + 1] == 0.0:
        x0 = float(grid[k + 1])
    else:
        x0 = _bisect(lambda t: wigner_exact_sum(spin, t), float(grid[k + 1]), float(grid[k]))
    return x0, 1.0 - x0


def first_zero_gap_asymptotic(j) -> float:
    """j_{1,1}^2 / (2 (2j+1)^2), about 7.34/(2j+1)^2."""
    return bessel_j1_zero(1) ** 2 / (2.0 * as_spin(j).dim ** 2)


def zero_count(j, per_zero: int = 40) -> int:
    """Number of sign changes of W on [-1, 1].

    Scans uniformly in the angle, where the zeros of this degree-2j
    polynomial are roughly evenly spaced.
    """
    spin = as_spin(j)
    theta = np.linspace(0.0, math.pi, per_zero * spin.dim + 1)
    vals = wigner_exact_sum(spin, np.cos(theta))
    signs = np.sign(vals)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


# ---------------------------------------------------------------------------
# envelope


def oscillation_amplitude(j, window=ENVELOPE_WINDOW, points: int = 20001) -> float:
    """max |W| over x in the window."""
    x = np.linspace(window[0], window[1], points)
    return float(np.max(np.abs(wigner_cd(j, x))))


@lru_cache(maxsize=8)
def envelope_exponent(ladder=ENVELOPE_LADDER) -> float:
    """Least-squares slope of log max|W| against log j over the given 2j values."""
    js = np.array(ladder, dtype=float) / 2
    amps = np.array([oscillation_amplitude(SpinQuantumNumber(t)) for t in ladder])
    slope, _ = np.polyfit(np.log(js), np.log(amps), 1)
    return float(slope)


def phase_space_correlation(j, a, b, quad=None) -> float:
    """E(a, b) = <(J1.a)(J2.b)> as a phase-space integral.

    The closed-form singlet Wigner function is integrated against the Weyl
    symbols of J.a and J.b, which are produced by the numerical Q -> Weyl
    pipeline rather than written down. Two-spin traciality with the product
    measure is what makes this equal the operator expectation.
    """
    from .spin_core import spin_component
    from .transforms import build_quadrature, weyl_symbol

    spin = as_spin(j)
    quad = quad or build_quadrature(spin.twice_j)
    phi_a = weyl_symbol(spin_component(spin, a), quad)
    phi_b = weyl_symbol(spin_component(spin, b), quad)
    dirs, w = quad.directions, quad.weights
    total = 0.0
    block = max(1, 2_000_000 // quad.size)
    for start in range(0, quad.size, block):
        sl = slice(start, start + block)
        x = np.clip(-(dirs[sl] @ dirs.T), -1.0, 1.0)
        wig = wigner_exact_sum(spin, x)
        total += (w[sl] * phi_a[sl]) @ wig @ (w * phi_b)
    return float(total)


# ---------------------------------------------------------------------------
# curves and reports


def chebyshev_grid(points: int) -> np.ndarray:
    """Ascending Chebyshev-Lobatto points on [-1, 1], endpoints included."""
    return clenshaw_curtis(points)[0]


@dataclass
class SingletWignerCurve:
    spin: SpinQuantumNumber
    xs: np.ndarray
    ws: np.ndarray
    method: str

    def normalization(self) -> float:
        """8 pi^2 times the Clenshaw-Curtis integral of W over x."""
        x, w = clenshaw_curtis(len(self.xs))
        if not np.allclose(x, self.xs, atol=1e-15):
            raise ValueError("normalization needs the Chebyshev grid")
        return float(8.0 * math.pi**2 * (w @ self.ws))


_METHODS = {
    "exact-sum": wigner_exact_sum,
    "christoffel-darboux": wigner_cd,
    "asymptotic": wigner_asymptotic_x,
}


def singlet_curve(j, points: int = 4000, method: str = "exact-sum") -> SingletWignerCurve:
    spin = as_spin(j)
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    xs = chebyshev_grid(points)
    return SingletWignerCurve(spin, xs, np.asarray(_METHODS[method](spin, xs)), method)


def normalization(j) -> float:
    """8 pi^2 * integral of W over [-1, 1], Gauss-Legendre with 2j + 2 nodes."""
    spin = as_spin(j)
    x, w = gauss_legendre(spin.twice_j + 2)
    return float(8.0 * math.pi**2 * (w @ wigner_exact_sum(spin, x)))


@dataclass
class PropertyReport:
    j: str
    twice_j: int
    value_A: float
    value_A_expected: float
    value_B: float
    value_B_expected: float
    first_zero_location: float | None
    first_zero_gap: float | None
    first_zero_asymptotic: float | None
    oscillation_amplitude: float
    envelope_exponent: float
    zero_count: int
    normalization: float

    def to_dict(self) -> dict:
        return asdict(self)


def property_report(j, ladder=ENVELOPE_LADDER) -> PropertyReport:
    spin = as_spin(j)
    n1 = spin.dim
    if spin.twice_j >= 1:
        x0, gap = first_zero(spin)
        asym = first_zero_gap_asymptotic(spin)
    else:
        x0 = gap = asym = None
    return PropertyReport(
        j=str(spin),
        twice_j=spin.twice_j,
        value_A=wigner_exact_sum(spin, 1.0),
        value_A_expected=n1**2 * PREFACTOR,
        value_B=wigner_exact_sum(spin, -1.0),
        value_B_expected=(-1) ** spin.twice_j * n1 * PREFACTOR,
        first_zero_location=x0,
        first_zero_gap=gap,
        first_zero_asymptotic=asym,
        oscillation_amplitude=oscillation_amplitude(spin),
        envelope_exponent=envelope_exponent(tuple(ladder)),
        zero_count=zero_count(spin),
        normalization=normalization(spin),
    )
