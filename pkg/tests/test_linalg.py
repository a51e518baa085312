import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab import linalg as LA
from skewlab.errors import (
    ConfigParse,
    DimMismatch,
    NegativeEigenvalue,
    NoConvergence,
    NonFinite,
    NotHermitian,
    NotSquare,
)
from skewlab.sampling import ginibre_density, random_hermitian


def test_as_matrix_rejects_bad_input():
    with pytest.raises(NotSquare):
        LA.as_matrix(np.zeros((2, 3)))
    with pytest.raises(NonFinite):
        LA.as_matrix(np.array([[np.nan, 0], [0, 1]]))
    assert LA.as_matrix([[1, 2], [3, 4]]).dtype == np.complex128


def test_arithmetic_dim_mismatch():
    with pytest.raises(DimMismatch):
        LA.matmul(np.eye(2), np.eye(3))
    with pytest.raises(DimMismatch):
        LA.commutator(np.eye(2), np.eye(3))


def test_commutator_and_norm():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    c = LA.commutator(x, z)
    assert np.allclose(c, [[0, -2], [2, 0]])
    assert LA.frobenius_norm_sq(c) == 8.0
    assert LA.frobenius_norm_sq(np.eye(3)) == 3.0


def test_check_hermitian():
    with pytest.raises(NotHermitian):
        LA.check_hermitian(np.array([[0, 1], [0, 0]]))
    LA.check_hermitian(np.array([[1, 1j], [-1j, 2]]))


def test_jacobi_pauli_y():
    e = LA.hermitian_eigendecompose(np.array([[0, -1j], [1j, 0]]))
    assert np.allclose(e.eigenvalues, [-1, 1], atol=1e-14)
    assert np.allclose(e.reconstruct(), [[0, -1j], [1j, 0]], atol=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_jacobi_matches_lapack(d):
    h = random_hermitian(d, (3, d)).matrix
    e = LA.hermitian_eigendecompose(h)
    assert np.allclose(e.eigenvalues, np.linalg.eigvalsh(h), atol=1e-12)
    v = e.eigenvectors
    assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-12)
    assert np.allclose(e.reconstruct(), h, atol=1e-12)
    assert np.all(np.diff(e.eigenvalues) >= 0)


def test_jacobi_degenerate_and_diagonal():
    e = LA.hermitian_eigendecompose(np.eye(3) * 2.5)
    assert np.array_equal(e.eigenvalues, [2.5, 2.5, 2.5])
    e = LA.hermitian_eigendecompose(np.zeros((2, 2)))
    assert np.array_equal(e.eigenvalues, [0, 0])


def test_jacobi_no_convergence():
    h = random_hermitian(5, 11).matrix
    with pytest.raises(NoConvergence):
        LA.hermitian_eigendecompose(h, max_sweeps=0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       st.lists(st.floats(-5, 5), min_size=6, max_size=6))
def test_jacobi_property(diag, off):
    h = np.diag(diag).astype(complex)
    h[0, 1], h[0, 2], h[1, 2] = complex(off[0], off[1]), complex(off[2], off[3]), complex(off[4], off[5])
    h = np.triu(h) + np.triu(h, 1).conj().T
    e = LA.hermitian_eigendecompose(h)
    scale = max(1.0, np.linalg.norm(h))
    assert np.allclose(e.reconstruct(), h, atol=1e-12 * scale)


def test_clamp_eigenvalues():
    assert np.array_equal(LA.clamp_eigenvalues(np.array([-1e-13, 1e-13, 0.5])), [0, 0, 0.5])
    with pytest.raises(NegativeEigenvalue):
        LA.clamp_eigenvalues(np.array([-1e-6, 1.0]))


def test_scalar_power_zero_conventions():
    w = np.array([0.0, 0.25])
    assert np.array_equal(LA.scalar_power(w, 0), [1.0, 1.0])
    assert np.array_equal(LA.scalar_power(w, 0.5), [0.0, 0.5])


def test_matrix_power_values():
    p = np.diag([0.25, 0.75]).astype(complex)
    assert np.allclose(LA.matrix_power(p, 0.5), np.diag([0.5, math.sqrt(0.75)]), atol=1e-15)
    assert np.allclose(LA.matrix_power(np.eye(2) / 2, 0.5), np.eye(2) / math.sqrt(2), atol=1e-15)
    singular = np.diag([1.0, 0.0]).astype(complex)
    assert np.allclose(LA.matrix_power(singular, 0), np.eye(2))   # P^0 = I even when singular
    assert np.allclose(LA.matrix_power(singular, 0.3), singular)


def test_matrix_power_semigroup(rho3):
    r = rho3.matrix
    a = LA.matrix_power(r, 0.3) @ LA.matrix_power(r, 0.4)
    assert np.allclose(a, LA.matrix_power(r, 0.7), atol=1e-12)
    assert np.allclose(LA.matrix_power(r, 1), r, atol=1e-12)
    with pytest.raises(NegativeEigenvalue):
        LA.matrix_power(np.diag([1.0, -0.5]), 0.5)


def test_matrix_json_roundtrip():
    m = ginibre_density(3, 5).matrix
    back = LA.matrix_from_json(LA.matrix_to_json(m))
    assert np.array_equal(back, m)
    with pytest.raises(ConfigParse):
        LA.matrix_from_json({"dim": 2, "entries": [[1, 2]]})


@pytest.mark.parametrize("g", [5e-324, 1e-310, 1e-200])
def test_jacobi_tiny_off_diagonal(g):
    h = np.array([[5, 3, g], [3, -5, 0], [g, 0, 0.1]], dtype=complex)
    e = LA.hermitian_eigendecompose(h)
    assert np.allclose(e.reconstruct(), h, atol=1e-13)
