import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from spinwigner.spin_core import (
    X_AXIS,
    Z_AXIS,
    DenseOperator,
    Direction,
    SpinQuantumNumber,
    StateVector,
    coherent_amplitudes,
    coherent_state,
    density_matrix,
    expectation,
    identity,
    qm_average,
    random_directions,
    rotation_matrix,
    singlet_correlation,
    singlet_state,
    spin_component,
    spin_operators,
    tensor,
)

from conftest import spin


@pytest.mark.parametrize(
    "text, twice_j",
    [("0", 0), ("1/2", 1), ("19/2", 19), ("9.5", 19), ("40", 80), (" 3/2 ", 3)],
)
def test_parse_spin(text, twice_j):
    s = SpinQuantumNumber.parse(text)
    assert s.twice_j == twice_j
    assert s.dim == twice_j + 1


@pytest.mark.parametrize("bad", ["1/3", "0.3", "-1", "x"])
def test_parse_spin_rejects(bad):
    with pytest.raises(ValueError):
        SpinQuantumNumber.parse(bad)


@given(st.integers(0, 10_000))
def test_spin_string_round_trip(twice_j):
    s = SpinQuantumNumber(twice_j)
    assert SpinQuantumNumber.parse(str(s)) == s
    assert s.exact == Fraction(twice_j, 2)


def test_direction_validation():
    with pytest.raises(ValueError):
        Direction([1.0, 1.0, 0.0])
    n = Direction.from_angles(1.0, 2.0)
    assert n.theta == pytest.approx(1.0)
    assert n.phi == pytest.approx(2.0)


def test_spin_half_operators():
    jx, jy, jz = spin_operators(spin("1/2"))
    np.testing.assert_allclose(jz.mat, np.diag([0.5, -0.5]))
    np.testing.assert_allclose(jx.mat @ jy.mat - jy.mat @ jx.mat, 1j * jz.mat, atol=1e-15)


@pytest.mark.parametrize("twice_j", range(0, 21))
def test_commutators_and_casimir(twice_j):
    s = SpinQuantumNumber(twice_j)
    j = [op.mat for op in spin_operators(s)]
    eps = np.zeros((3, 3, 3))
    for a, b, c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[a, b, c], eps[b, a, c] = 1, -1
    for a in range(3):
        for b in range(3):
            comm = j[a] @ j[b] - j[b] @ j[a]
            expected = 1j * sum(eps[a, b, c] * j[c] for c in range(3))
            np.testing.assert_allclose(comm, expected, atol=1e-12)
    casimir = sum(m @ m for m in j)
    np.testing.assert_allclose(casimir, s.casimir * np.eye(s.dim), atol=1e-12)


def test_trace_jz_squared():
    _, _, jz = spin_operators(spin(2))
    assert (jz @ jz).trace().real == pytest.approx(10.0)


def test_coherent_state_north_pole():
    psi = coherent_state(spin("5/2"), Z_AXIS)
    np.testing.assert_array_equal(psi.amplitudes, np.eye(6)[0])
    south = coherent_state(spin("5/2"), Direction([0, 0, -1.0]))
    np.testing.assert_array_equal(south.amplitudes, np.eye(6)[-1])


def test_coherent_state_is_top_eigenstate(rng):
    s = spin("5/2")
    for v in random_directions(rng, 10):
        n = Direction(v)
        psi = coherent_state(s, n).amplitudes
        jn = spin_component(s, n).mat
        np.testing.assert_allclose(jn @ psi, s.j * psi, atol=1e-12)
        assert np.vdot(psi, jn @ psi).real == pytest.approx(s.j)


def test_coherent_state_is_rotated_top_state(rng):
    s = spin(3)
    jx, jy, jz = (op.mat for op in spin_operators(s))
    for v in random_directions(rng, 5):
        n = Direction(v)
        axis = np.cross([0, 0, 1.0], n.vec)
        axis /= np.linalg.norm(axis)
        u = scipy.linalg.expm(-1j * n.theta * (axis[0] * jx + axis[1] * jy + axis[2] * jz))
        np.testing.assert_allclose(coherent_state(s, n).amplitudes, u[:, 0], atol=1e-12)
        np.testing.assert_allclose(rotation_matrix(s, n), u, atol=1e-12)


@pytest.mark.parametrize("twice_j", range(0, 13))
def test_coherent_overlap_law(twice_j, rng):
    s = SpinQuantumNumber(twice_j)
    d1 = random_directions(rng, 50)
    d2 = random_directions(rng, 50)
    a1 = coherent_amplitudes(s, d1)
    a2 = coherent_amplitudes(s, d2)
    overlap = np.abs(np.einsum("ia,ia->i", a1.conj(), a2)) ** 2
    cos = np.einsum("ij,ij->i", d1, d2)
    np.testing.assert_allclose(overlap, ((1 + cos) / 2) ** twice_j, atol=1e-12)


def test_spin_half_singlet():
    psi = singlet_state(spin("1/2"), Z_AXIS).amplitudes
    # basis order |up up>, |up down>, |down up>, |down down>
    np.testing.assert_allclose(psi, np.array([0, 1, -1, 0]) / math.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("twice_j", range(0, 11))
def test_singlet_annihilated_by_total_spin(twice_j):
    s = SpinQuantumNumber(twice_j)
    psi = singlet_state(s).amplitudes
    for op in spin_operators(s):
        total = tensor(op, identity(s)) + tensor(identity(s), op)
        assert np.linalg.norm(total.mat @ psi) < 1e-12


@pytest.mark.parametrize("twice_j", [1, 2, 3, 6])
def test_singlet_independent_of_axis(twice_j, rng):
    s = SpinQuantumNumber(twice_j)
    ref = singlet_state(s, Z_AXIS)
    assert abs(ref.overlap(singlet_state(s, X_AXIS))) == pytest.approx(1.0, abs=1e-12)
    for v in random_directions(rng, 3):
        assert abs(ref.overlap(singlet_state(s, Direction(v)))) == pytest.approx(1.0, abs=1e-12)


def test_trace_algebra_examples():
    s = spin("3/2")
    assert qm_average(identity(s)) == pytest.approx(1.0)
    _, _, jz = spin_operators(s)
    assert qm_average(jz @ jz).real == pytest.approx(1.25)
    one = spin(1)
    rho = density_matrix(singlet_state(one))
    g = tensor(spin_component(one, Z_AXIS), spin_component(one, Z_AXIS))
    assert expectation(rho, g).real == pytest.approx(-2 / 3)


def test_density_matrix_is_a_state():
    rho = density_matrix(singlet_state(spin(2)))
    assert rho.is_hermitian()
    assert rho.trace().real == pytest.approx(1.0)
    assert np.min(np.linalg.eigvalsh(rho.mat)) > -1e-10


@pytest.mark.parametrize("twice_j", range(0, 9))
def test_singlet_correlation_law(twice_j, rng):
    s = SpinQuantumNumber(twice_j)
    for a, b in random_directions(rng, 10).reshape(5, 2, 3):
        assert singlet_correlation(s, a, b) == pytest.approx(-s.casimir / 3 * (a @ b), abs=1e-12)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        expectation(identity(spin(1)), identity(spin(2)))
    with pytest.raises(ValueError):
        identity(spin(1)) @ identity(spin(1), num_spins=2)
    with pytest.raises(ValueError):
        DenseOperator(np.eye(4), spin(1))
    with pytest.raises(ValueError):
        StateVector(np.ones(3), spin(1))
