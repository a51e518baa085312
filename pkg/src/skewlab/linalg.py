"""Dense complex matrix helpers and a Hermitian Jacobi eigensolver.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
functions here validate shapes and finiteness and raise the exceptions in
:mod:`skewlab.errors` instead of letting numpy broadcast silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    NegativeEigenvalue,
    NegativeExponent,
    NoConvergence,
    NonFinite,
    NotHermitian,
    NotSquare,
)

HERMITIAN_TOL = 1e-10
# Eigenvalues within this distance of zero are treated as exact zeros before
# fractional powers; below -ZERO_EIGENVALUE_TOL a matrix is not PSD.
ZERO_EIGENVALUE_TOL = 1e-12
JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(x) -> np.ndarray:
    """Coerce ``x`` to a finite square complex128 array.

    Objects exposing a ``matrix`` attribute (states, observables, unitaries)
    are unwrapped first.
    """
    x = getattr(x, "matrix", x)
    m = np.array(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotSquare(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has NaN or infinite entries")
    return m


def _check_same_dim(*mats: np.ndarray) -> None:
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise DimMismatch(f"dimension mismatch: {sorted(dims)}")


def hermiticity_residual(m: np.ndarray) -> float:
    """Max-abs entry of ``m - m^dagger``."""
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_residual(as_matrix(m)) <= tol


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitian(f"matrix is not Hermitian (residual {res:.3e} > {tol:g})")
    return m


# --- arithmetic ---------------------------------------------------------

def matmul(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    _check_same_dim(x, y)
    return x @ y


def add(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    _check_same_dim(x, y)
    return x + y


def sub(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    _check_same_dim(x, y)
    return x - y


def scale(c: complex, x) -> np.ndarray:
    return complex(c) * as_matrix(x)


def adjoint(x) -> np.ndarray:
    return as_matrix(x).conj().T


def commutator(x, y) -> np.ndarray:
    """Return ``XY - YX``."""
    x, y = as_matrix(x), as_matrix(y)
    _check_same_dim(x, y)
    return x @ y - y @ x


def frobenius_norm_sq(x) -> float:
    """Hilbert-Schmidt norm squared, ``Tr(X^dagger X)``."""
    x = as_matrix(x)
    return float(np.vdot(x, x).real)


# --- spectral machinery -------------------------------------------------

@dataclass(frozen=True, eq=False)
class HermitianEigen:
    """Eigenpairs of a Hermitian matrix, eigenvalues ascending.

    Column ``k`` of ``eigenvectors`` belongs to ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.vdot(off, off).real))


def hermitian_eigendecompose(h, *, tol: float = HERMITIAN_TOL,
                             max_sweeps: int = JACOBI_MAX_SWEEPS) -> HermitianEigen:
    """Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies a real Givens rotation that annihilates it. Sweeps stop once
    the off-diagonal Frobenius mass drops below ``1e-13 * ||H||_F``.

    Raises
    ------
    NotHermitian
        If ``max|H - H^dagger| > tol``.
    NoConvergence
        If ``max_sweeps`` sweeps do not reach the stopping criterion.
    """
    a = check_hermitian(h, tol)
    # Symmetrize so rounding in the input cannot bias the rotations.
    a = 0.5 * (a + a.conj().T)
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128)
    scale_ = float(np.sqrt(np.vdot(a, a).real))
    threshold = JACOBI_REL_TOL * scale_

    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                g = abs(apq)
                if g <= 1e-30 * threshold:
                    # far below the stopping tolerance; dropping it avoids subnormal arithmetic
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / g
                app = a[p, p].real
                aqq = a[q, q].real
                diff = aqq - app
                if abs(diff) > 1e100 * g:
                    t = g / diff  # limit of the formula below, without overflowing tau
                else:
                    tau = diff / (2.0 * g)
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] acting on (p, q)
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                               dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ rot
    else:
        if _off_diagonal_norm(a) > threshold:
            raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigen(w[order], v[:, order])


def clamp_eigenvalues(w: np.ndarray) -> np.ndarray:
    """Snap near-zero eigenvalues to 0; reject clearly negative ones."""
    w = np.asarray(w, dtype=float)
    if np.any(w < -ZERO_EIGENVALUE_TOL):
        raise NegativeEigenvalue(f"eigenvalue {w.min():.3e} below -{ZERO_EIGENVALUE_TOL:g}")
    return np.where(np.abs(w) <= ZERO_EIGENVALUE_TOL, 0.0, w)


def scalar_power(w: np.ndarray, p: float) -> np.ndarray:
    """Elementwise ``w**p`` with the conventions 0**0 = 1 and 0**p = 0 for p > 0."""
    if p < 0:
        raise NegativeExponent(f"negative exponent {p}")
    if p == 0:
        return np.ones_like(w)
    return np.where(w > 0, np.power(np.maximum(w, 0.0), p), 0.0)


def matrix_power(pmat, p: float, eigen: HermitianEigen | None = None) -> np.ndarray:
    """Fractional power of a PSD Hermitian matrix.

    ``p = 0`` returns the identity even for singular input.
    A precomputed ``eigen`` of ``pmat`` may be passed to skip diagonalization.
    """
    if p < 0:
        raise NegativeExponent(f"negative exponent {p}")
    if eigen is None:
        eigen = hermitian_eigendecompose(pmat)
    if p == 0:
        return np.eye(eigen.dim, dtype=np.complex128)
    w = scalar_power(clamp_eigenvalues(eigen.eigenvalues), p)
    v = eigen.eigenvectors
    out = (v * w) @ v.conj().T
    return 0.5 * (out + out.conj().T)


# --- JSON encoding ------------------------------------------------------

def matrix_to_json(m) -> dict:
    """Encode as ``{"dim": d, "entries": [[[re, im], ...], ...]}`` (row-major)."""
    m = as_matrix(m)
    return {
        "dim": int(m.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_json(obj) -> np.ndarray:
    from .errors import ConfigParse

    try:
        dim = int(obj["dim"])
        rows = obj["entries"]
        m = np.array([[complex(re, im) for re, im in row] for row in rows],
                     dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParse(f"malformed matrix JSON: {exc}") from exc
    if m.shape != (dim, dim):
        raise ConfigParse(f"matrix JSON declares dim {dim} but entries have shape {m.shape}")
    return as_matrix(m)
