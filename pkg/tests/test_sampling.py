import numpy as np
import pytest

from skewlab import sampling as R
from skewlab.quantum import validate_channel


def test_determinism():
    a, b = R.ginibre_density(2, 42), R.ginibre_density(2, 42)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(R.ginibre_density(2, 43).matrix, a.matrix)
    assert np.array_equal(R.haar_unitary(3, (1, 2)).matrix, R.haar_unitary(3, (1, 2)).matrix)


def test_child_seeds_independent():
    assert R.child_seed(1, 3, 4) == (1, 3, 4)
    x = R.make_rng(R.child_seed(1, 0)).standard_normal(4)
    y = R.make_rng(R.child_seed(1, 1)).standard_normal(4)
    assert not np.allclose(x, y)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_generators_valid(d):
    rho = R.ginibre_density(d, d)
    assert abs(np.trace(rho.matrix) - 1) < 1e-12
    assert np.all(rho.eigen.eigenvalues >= 0)
    u = R.haar_unitary(d, d).matrix
    assert np.allclose(u.conj().T @ u, np.eye(d), atol=1e-12)
    h = R.random_hermitian(d, d).matrix
    assert np.allclose(h, h.conj().T)
    for n in (1, 2, 3):
        assert validate_channel(R.random_kraus_channel(d, n, (d, n))) < 1e-12
    r = R.random_pure_bloch(d)
    assert abs(np.linalg.norm(r) - 1) < 1e-12


def test_resolve_seed(monkeypatch):
    monkeypatch.delenv(R.SEED_ENV, raising=False)
    assert R.resolve_seed() == R.DEFAULT_SEED
    monkeypatch.setenv(R.SEED_ENV, "17")
    assert R.resolve_seed() == 17
    assert R.resolve_seed(5) == 5
