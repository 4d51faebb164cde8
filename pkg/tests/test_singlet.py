import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinwigner.singlet import (
    PREFACTOR,
    asymptotic_envelope,
    asymptotic_relative_error,
    envelope_exponent,
    first_zero,
    first_zero_gap_asymptotic,
    normalization,
    property_report,
    q_closed_form,
    q_legendre_series,
    singlet_curve,
    wigner_asymptotic,
    wigner_asymptotic_x,
    wigner_cd,
    wigner_exact_sum,
    wigner_peak,
    zero_count,
)
from spinwigner.spin_core import SpinQuantumNumber, density_matrix, random_directions, singlet_state
from spinwigner.transforms import q_transform_oracle, quadrature_for_spin

from conftest import spin

SIXTEEN_PI2 = 16 * math.pi**2


@pytest.mark.parametrize("j", ["0", "1/2", "3", "40"])
def test_q_closed_form_endpoints(j):
    s = spin(j)
    assert q_closed_form(s, -1.0) == pytest.approx(1 / s.dim)
    assert q_closed_form(s, 1.0) == (1.0 if s.twice_j == 0 else 0.0)


def test_q_closed_form_matches_dense_oracle():
    s = spin(2)
    assert q_closed_form(s, 0.0) == pytest.approx(0.0125, rel=1e-15)
    quad = quadrature_for_spin(s)
    q = q_transform_oracle(density_matrix(singlet_state(s)), quad)
    np.testing.assert_allclose(q, q_closed_form(s, np.clip(quad.directions @ quad.directions.T, -1, 1)), atol=1e-14)


def test_q_closed_form_domain():
    with pytest.raises(ValueError):
        q_closed_form(spin(1), 1.5)


@pytest.mark.parametrize("twice_j", range(0, 41))
def test_q_legendre_resynthesis(twice_j):
    s = SpinQuantumNumber(twice_j)
    x = np.linspace(-1, 1, 301)
    np.testing.assert_allclose(q_legendre_series(s, x), q_closed_form(s, x), atol=1e-10)


def test_exact_sum_examples():
    assert wigner_exact_sum(spin(0), 0.3) == pytest.approx(1 / SIXTEEN_PI2)
    assert wigner_exact_sum(spin(5), 1.0) == pytest.approx(121 / SIXTEEN_PI2, rel=1e-14)
    assert wigner_exact_sum(spin("19/2"), -1.0) == pytest.approx(-20 / SIXTEEN_PI2, rel=1e-14)


def test_cd_examples():
    s = spin("1/2")
    x = np.linspace(-1, 0.99, 50)
    np.testing.assert_allclose(wigner_cd(s, x), (1 + 3 * x) / SIXTEEN_PI2, atol=1e-16)
    assert wigner_cd(s, 0.0) == pytest.approx(1 / SIXTEEN_PI2)
    for t in (4, 7, 19):
        assert wigner_cd(SpinQuantumNumber(t), -1.0) == pytest.approx((-1) ** t * (t + 1) / SIXTEEN_PI2, rel=1e-13)


def test_cd_matches_exact_sum_j40(rng):
    s = spin(40)
    x = rng.uniform(-1, 1, 1000)
    np.testing.assert_allclose(wigner_cd(s, x), wigner_exact_sum(s, x), atol=1e-10)


def test_cd_fallback_near_peak():
    s = spin(40)
    x = 1 - np.array([0.0, 1e-9, 5e-7, 2e-6])
    np.testing.assert_allclose(wigner_cd(s, x), wigner_exact_sum(s, x), rtol=1e-9)
    assert wigner_cd(s, 1.0) == pytest.approx(wigner_peak(s))


@pytest.mark.parametrize("twice_j", [1, 10, 50, 120, 200])
def test_cd_deviation_bound(twice_j):
    s = SpinQuantumNumber(twice_j)
    x = np.linspace(-1, 1 - 1e-4, 20001)
    dev = np.max(np.abs(wigner_cd(s, x) - wigner_exact_sum(s, x)))
    assert dev < 1e-10 * s.dim**2


def test_asymptotic_limit_and_zero():
    s = spin(40)
    assert wigner_asymptotic(s, 1e-7) == pytest.approx(wigner_peak(s), rel=1e-6)
    assert wigner_asymptotic_x(s, 1.0) == wigner_peak(s)
    assert abs(wigner_asymptotic(s, 3.8317059702075 / s.dim)) < 1e-12
    with pytest.raises(ValueError):
        wigner_asymptotic(s, 0.0)
    assert math.isnan(wigner_asymptotic(s, math.pi))


def test_asymptotic_error_regression_bound():
    # Measured over [0.05, 1] at j = 40: 0.0411, attained at gamma = 1.
    gamma = np.linspace(0.05, 1.0, 20001)
    err = asymptotic_relative_error(spin(40), gamma)
    assert err.max() < 0.042
    assert err[gamma <= 0.65].max() < 0.02


def test_asymptotic_error_is_the_central_difference_term():
    # J0(z - g/2) - J0(z + g/2) -> 2 sin(g/2) J1(z), not g J1(z); the error is
    # bounded by g^2/24 of the local amplitude and disappears with the swap
    s = spin(40)
    gamma = np.linspace(0.05, 1.0, 5001)
    err = asymptotic_relative_error(s, gamma)
    assert np.all(err <= 1.02 * gamma**2 / 24 + 2e-4)
    assert err[gamma > 0.95].max() == pytest.approx(1.0 / 24, rel=0.03)
    corrected = wigner_asymptotic(s, gamma) * 2 * np.sin(gamma / 2) / gamma
    corrected_err = np.abs(corrected - wigner_cd(s, np.cos(gamma))) / asymptotic_envelope(s, gamma)
    assert corrected_err.max() < 1e-3


def test_first_zero_spin_half():
    x0, gap = first_zero(spin("1/2"))
    assert x0 == pytest.approx(-1 / 3, abs=1e-11)
    assert gap == pytest.approx(4 / 3, abs=1e-11)


def test_first_zero_spin_one():
    # 7.5 x^2 + 3 x - 1.5 = 0
    x0, _ = first_zero(spin(1))
    assert x0 == pytest.approx((-3 + math.sqrt(54)) / 15, abs=1e-11)


@pytest.mark.parametrize("j, rel", [("5", 0.10), ("40", 0.03)])
def test_first_zero_law(j, rel):
    s = spin(j)
    x0, gap = first_zero(s)
    assert abs(wigner_exact_sum(s, x0)) < 1e-9 * wigner_peak(s)
    assert gap == pytest.approx(7.34 / s.dim**2, rel=rel)
    assert first_zero_gap_asymptotic(s) == pytest.approx(7.34 / s.dim**2, rel=1e-3)
    # nothing changes sign between the peak and the reported zero
    xs = np.linspace(x0 + 1e-10, 1, 2001)
    assert np.all(wigner_exact_sum(s, xs) > 0)


def test_first_zero_rejects_spin_zero():
    with pytest.raises(ValueError):
        first_zero(spin(0))


@pytest.mark.parametrize("twice_j", range(0, 81))
def test_zero_count(twice_j):
    assert zero_count(SpinQuantumNumber(twice_j)) == twice_j


@pytest.mark.parametrize("twice_j", range(0, 81, 7))
def test_normalization(twice_j):
    assert normalization(SpinQuantumNumber(twice_j)) == pytest.approx(1.0, abs=1e-9)


def test_curve_invariants():
    for j in ("5", "19/2", "40"):
        s = spin(j)
        for method in ("exact-sum", "christoffel-darboux"):
            curve = singlet_curve(s, 4000, method)
            assert curve.xs[-1] == 1.0 and curve.xs[0] == -1.0
            assert curve.ws[-1] == pytest.approx(wigner_peak(s), rel=1e-10)
            assert curve.normalization() == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        singlet_curve(spin(1), 100, "bogus")


def test_envelope_exponent():
    assert envelope_exponent() == pytest.approx(0.5, abs=0.1)


def test_property_report_j5():
    rep = property_report(spin(5))
    assert rep.value_A == pytest.approx(121 / SIXTEEN_PI2, rel=1e-12)
    assert rep.value_B == pytest.approx(11 / SIXTEEN_PI2, rel=1e-12)
    assert rep.zero_count == 10
    assert rep.first_zero_gap == pytest.approx(7.34 / 121, rel=0.1)
    assert set(rep.to_dict()) >= {"value_A", "value_B", "first_zero_location", "envelope_exponent", "zero_count"}


def test_property_report_spin_zero():
    rep = property_report(spin(0))
    assert rep.first_zero_gap is None
    assert rep.zero_count == 0


@settings(max_examples=30, deadline=None)
@given(twice_j=st.integers(0, 60), seed=st.integers(0, 2**32 - 1))
def test_wigner_depends_only_on_angle(twice_j, seed):
    # rotating both directions together leaves -n1.n2, hence W, unchanged
    from scipy.spatial.transform import Rotation

    rng = np.random.default_rng(seed)
    n1, n2 = random_directions(rng, 2)
    r = Rotation.random(random_state=seed).as_matrix()
    s = SpinQuantumNumber(twice_j)
    w = wigner_exact_sum(s, np.clip(-(n1 @ n2), -1, 1))
    w_rot = wigner_exact_sum(s, np.clip(-((r @ n1) @ (r @ n2)), -1, 1))
    assert w == pytest.approx(w_rot, abs=1e-12 * s.dim**2)
