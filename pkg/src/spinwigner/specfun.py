"""Special functions: Legendre polynomials, spherical harmonics, Wigner small-d
matrices, Bessel J1 and log-factorials.

Everything here is a pure function of its arguments. Half-integer spins are
passed as the integer ``twice_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Integer factorials are exact below this; log of an exact int is correctly rounded.
_EXACT_FACTORIAL_MAX = 1000

# Power series for J1 below this argument, Hankel asymptotic expansion above.
BESSEL_SWITCH = 12.0


@dataclass(frozen=True)
class LegendreTable:
    """Legendre polynomials P_0(x) ... P_lmax(x) at a single point."""

    x: float
    values: np.ndarray

    @property
    def lmax(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class WignerDMatrix:
    """Small-d rotation matrix d^j_{m'm}(theta), rows/columns ordered m = j ... -j."""

    twice_j: int
    theta: float
    entries: np.ndarray


def _check_unit_interval(x, tol=1e-12):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + tol):
        raise ValueError(f"Legendre argument outside [-1, 1]: {x}")
    return np.clip(x, -1.0, 1.0)


def legendre_values(x, lmax: int) -> np.ndarray:
    """Legendre polynomials of degree 0..lmax at the point(s) x.

    Upward three-term recurrence, which is stable on [-1, 1].

    Parameters
    ----------
    x : float or ndarray
        evaluation point(s), |x| <= 1
    lmax : int
        highest degree

    Returns
    -------
    ndarray
        shape (lmax + 1, *x.shape)
    """
    if lmax < 0:
        raise ValueError("lmax must be non-negative")
    x = _check_unit_interval(x)
    out = np.empty((lmax + 1,) + x.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = x
    for n in range(1, lmax):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


def legendre_all(x: float, lmax: int) -> LegendreTable:
    """P_0(x) ... P_lmax(x) at a scalar x as a :class:`LegendreTable`."""
    x = float(x)
    return LegendreTable(x=x, values=legendre_values(x, lmax))


def legendre(n: int, x):
    """Single Legendre polynomial P_n(x)."""
    return legendre_values(x, n)[n]


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]; exact through degree 2n - 1."""
    return np.polynomial.legendre.leggauss(n)


def clenshaw_curtis(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Clenshaw-Curtis rule on the n Chebyshev-Lobatto points cos(pi k/(n-1)).

    Nodes are returned in ascending order. Exact for polynomials of degree
    up to n - 1.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    N = n - 1
    theta = np.pi * np.arange(n) / N
    x = np.cos(theta)
    w = np.zeros(n)
    v = np.ones(N - 1)
    inner = slice(1, N)
    if N % 2 == 0:
        w[0] = w[N] = 1.0 / (N**2 - 1)
        for k in range(1, N // 2):
            v -= 2.0 * np.cos(2 * k * theta[inner]) / (4 * k**2 - 1)
        v -= np.cos(N * theta[inner]) / (N**2 - 1)
    else:
        w[0] = w[N] = 1.0 / N**2
        for k in range(1, (N - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * k * theta[inner]) / (4 * k**2 - 1)
    w[inner] = 2.0 * v / N
    return x[::-1].copy(), w[::-1].copy()


def harmonic_index(l: int, m: int) -> int:
    """Flat position of (l, m) in tables ordered l = 0.., m = -l..l."""
    return l * l + l + m


def sph_harm_table(lmax: int, directions) -> np.ndarray:
    """All orthonormal spherical harmonics Y_lm up to degree lmax.

    Condon-Shortley phase. Associated Legendre functions come from the
    fully normalized recurrences, so no factorial ratios are formed.

    Parameters
    ----------
    lmax : int
    directions : array_like, shape (N, 3) or (3,)
        unit vectors

    Returns
    -------
    ndarray
        complex, shape (N, (lmax + 1)**2); column ``harmonic_index(l, m)``
    """
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    z = np.clip(dirs[:, 2], -1.0, 1.0)
    rho = np.hypot(dirs[:, 0], dirs[:, 1])
    phi = np.arctan2(dirs[:, 1], dirs[:, 0])
    npts = dirs.shape[0]

    # pbar[l, m] for m >= 0, including the 1/sqrt(4 pi) factor
    pbar = np.zeros((lmax + 1, lmax + 1, npts))
    pbar[0, 0] = 1.0 / math.sqrt(4.0 * math.pi)
    for m in range(1, lmax + 1):
        pbar[m, m] = -math.sqrt((2 * m + 1) / (2.0 * m)) * rho * pbar[m - 1, m - 1]
    for m in range(0, lmax):
        pbar[m + 1, m] = math.sqrt(2 * m + 3) * z * pbar[m, m]
    for m in range(0, lmax + 1):
        for l in range(m + 2, lmax + 1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            b = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
            pbar[l, m] = a * (z * pbar[l - 1, m] - b * pbar[l - 2, m])

    out = np.empty((npts, (lmax + 1) ** 2), dtype=complex)
    for m in range(0, lmax + 1):
        phase = np.exp(1j * m * phi)
        for l in range(m, lmax + 1):
            y = pbar[l, m] * phase
            out[:, harmonic_index(l, m)] = y
            if m:
                out[:, harmonic_index(l, -m)] = (-1) ** m * np.conj(y)
    return out


def spherical_harmonic(l: int, m: int, n) -> complex:
    """Orthonormal Y_lm at direction n (a unit 3-vector or anything with ``.vec``)."""
    if l < 0 or abs(m) > l:
        raise IndexError(f"invalid harmonic indices l={l}, m={m}")
    vec = getattr(n, "vec", n)
    return complex(sph_harm_table(l, vec)[0, harmonic_index(l, m)])


@lru_cache(maxsize=4096)
def log_factorial(n: int) -> float:
    """ln(n!), correctly rounded for n <= 1000 and via lgamma above."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n)) if n > 1 else 0.0
    return math.lgamma(n + 1.0)


def _j1_series(z):
    # sum_k (-1)^k (z/2)^(2k+1) / (k! (k+1)!)
    half = z / 2.0
    q = -half * half
    term = half.copy()
    total = term.copy()
    for k in range(1, 80):
        term = term * q / (k * (k + 1))
        total += term
        if np.all(np.abs(term) < 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _j1_asymptotic(z):
    # Hankel expansion; each series is cut at its smallest term
    mu = 4.0
    p = np.ones_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    prev = np.full(z.shape, np.inf)
    for k in range(1, 60):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        mag = np.abs(term)
        active &= mag < prev
        if not active.any():
            break
        if k % 2:
            q = np.where(active, q + (-1) ** ((k - 1) // 2) * term, q)
        else:
            p = np.where(active, p + (-1) ** (k // 2) * term, p)
        prev = np.where(active, mag, prev)
    chi = z - 0.75 * np.pi
    return np.sqrt(2.0 / (np.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j1(z):
    """Bessel function of the first kind of order one, for z >= 0.

    Power series below ``BESSEL_SWITCH``, Hankel asymptotic expansion above.
    Absolute accuracy is about 1e-12 up to z = 1e3.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("bessel_j1 is defined here for z >= 0")
    out = np.empty_like(z)
    small = z < BESSEL_SWITCH
    if small.any():
        out[small] = _j1_series(z[small])
    if (~small).any():
        out[~small] = _j1_asymptotic(z[~small])
    return out if out.ndim else float(out)


def bessel_j1_zero(k: int = 1, tol: float = 1e-14) -> float:
    """k-th positive zero of J1, by bisection on :func:`bessel_j1`."""
    # McMahon's estimate brackets the zero to well within half a spacing
    beta = (k + 0.25) * np.pi
    guess = beta - 3.0 / (8 * beta)
    lo, hi = guess - 0.5, guess + 0.5
    flo = bessel_j1(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = bessel_j1(mid)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _log_abs_and_sign(v: float) -> tuple[float, int]:
    if v == 0.0:
        return -math.inf, 0
    return math.log(abs(v)), (1 if v > 0 else -1)


def wigner_d(twice_j: int, theta: float) -> WignerDMatrix:
    """Small Wigner d-matrix for a rotation by theta about the y axis.

    Entry [a, b] is d^j_{m'm}(theta) with m' = j - a and m = j - b, i.e. the
    matrix of exp(-i theta J_y) in the basis ordered m = j ... -j. Terms of
    the factorial sum are formed in log space with explicit sign tracking.
    """
    if twice_j < 0:
        raise ValueError("twice_j must be non-negative")
    n = twice_j
    lc, sc = _log_abs_and_sign(math.cos(theta / 2.0))
    ls, ss = _log_abs_and_sign(math.sin(theta / 2.0))
    d = np.zeros((n + 1, n + 1))
    for a in range(n + 1):
        # j + m' = n - a, j - m' = a
        for b in range(n + 1):
            # j + m = n - b, j - m = b; m' - m = b - a
            pref = 0.5 * (
                log_factorial(n - a) + log_factorial(a) + log_factorial(n - b) + log_factorial(b)
            )
            total = 0.0
            for s in range(max(0, a - b), min(n - b, a) + 1):
                pc = n - (b - a) - 2 * s
                ps = (b - a) + 2 * s
                if (pc and sc == 0) or (ps and ss == 0):
                    continue
                log_mag = (
                    pref
                    - log_factorial(n - b - s)
                    - log_factorial(s)
                    - log_factorial(b - a + s)
                    - log_factorial(a - s)
                    + (pc * lc if pc else 0.0)
                    + (ps * ls if ps else 0.0)
                )
                sign = (-1) ** (b - a + s) * (sc**pc if pc else 1) * (ss**ps if ps else 1)
                total += sign * math.exp(log_mag)
            d[a, b] = total
    return WignerDMatrix(twice_j=n, theta=float(theta), entries=d)
