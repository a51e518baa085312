"""States, observables, unitaries and Kraus channels used by the examples."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BadIndex,
    BadProbability,
    BlochNormExceeded,
    DimMismatch,
    IncompleteChannel,
    NotDensityMatrix,
    NotUnitary,
)
from .linalg import (
    HERMITIAN_TOL,
    HermitianEigen,
    ZERO_EIGENVALUE_TOL,
    as_matrix,
    check_hermitian,
    hermitian_eigendecompose,
    matrix_power,
)

TRACE_TOL = 1e-10
UNITARY_TOL = 1e-10
COMPLETENESS_TOL = 1e-9
BLOCH_TOL = 1e-12

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state with its eigendecomposition cached.

    Fractional powers are memoized per exponent, so repeated skew-information
    evaluations against the same state only diagonalize once.
    """

    matrix: np.ndarray
    eigen: HermitianEigen
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        m = check_hermitian(m)
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotDensityMatrix(f"trace {tr.real:.12g} differs from 1")
        eigen = hermitian_eigendecompose(m)
        if eigen.eigenvalues[0] < -ZERO_EIGENVALUE_TOL:
            raise NotDensityMatrix(f"negative eigenvalue {eigen.eigenvalues[0]:.3e}")
        return cls(m, eigen)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def power(self, p: float) -> np.ndarray:
        p = float(p)
        cached = self._powers.get(p)
        if cached is None:
            cached = matrix_power(self.matrix, p, eigen=self.eigen)
            self._powers[p] = cached
        return cached


def as_density(rho) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    return DensityMatrix.from_matrix(rho)


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_hermitian(self.matrix, HERMITIAN_TOL))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    matrix: np.ndarray

    def __post_init__(self):
        u = as_matrix(self.matrix)
        res = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if res > UNITARY_TOL:
            raise NotUnitary(f"U^dagger U differs from identity by {res:.3e}")
        object.__setattr__(self, "matrix", u)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def completeness_residual(kraus: Sequence[np.ndarray]) -> float:
    """Frobenius norm of ``sum_i E_i^dagger E_i - I``."""
    ops = [as_matrix(e) for e in kraus]
    d = ops[0].shape[0]
    total = sum(e.conj().T @ e for e in ops)
    return float(np.linalg.norm(total - np.eye(d)))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """An ordered Kraus representation. The order is significant."""

    name: str
    kraus: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(e) for e in self.kraus)
        if not ops:
            raise IncompleteChannel("a channel needs at least one Kraus operator")
        if len({e.shape for e in ops}) != 1:
            raise DimMismatch("Kraus operators have different dimensions")
        object.__setattr__(self, "kraus", ops)
        res = completeness_residual(ops)
        if res > COMPLETENESS_TOL:
            raise IncompleteChannel(
                f"channel {self.name!r} violates completeness (residual {res:.3e})")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    def __len__(self) -> int:
        return len(self.kraus)

    def padded(self, n: int) -> "KrausChannel":
        """Append zero operators up to ``n``; K values and completeness are unchanged."""
        if n <= len(self.kraus):
            return self
        zeros = tuple(np.zeros((self.dim, self.dim), dtype=np.complex128)
                      for _ in range(n - len(self.kraus)))
        return KrausChannel(self.name, self.kraus + zeros)


def validate_channel(channel: KrausChannel | Sequence) -> float:
    kraus = channel.kraus if isinstance(channel, KrausChannel) else channel
    return completeness_residual(kraus)


# --- builders -----------------------------------------------------------

def pauli(j: int) -> Observable:
    """Pauli matrix sigma_j for j in {1, 2, 3}."""
    if j not in (1, 2, 3):
        raise BadIndex(f"Pauli index must be 1, 2 or 3, got {j!r}")
    return Observable(_PAULI[j - 1].copy())


def bloch_matrix(r: Sequence[float]) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise BadIndex(f"Bloch vector must have 3 components, got shape {r.shape}")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + BLOCH_TOL:
        raise BlochNormExceeded(f"|r| = {norm:.15g} exceeds 1")
    return 0.5 * (np.eye(2, dtype=np.complex128) + sum(x * s for x, s in zip(r, _PAULI)))


def density_from_bloch(r: Sequence[float]) -> DensityMatrix:
    """Qubit state (I + r.sigma)/2."""
    return DensityMatrix.from_matrix(bloch_matrix(r))


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix.from_matrix(np.eye(d, dtype=np.complex128) / d)


def _check_probability(q: float) -> float:
    q = float(q)
    if not 0.0 <= q < 1.0:
        raise BadProbability(f"q must satisfy 0 <= q < 1, got {q}")
    return q


def amplitude_damping(q: float) -> KrausChannel:
    q = _check_probability(q)
    a1 = np.diag([1.0, np.sqrt(1.0 - q)]).astype(np.complex128)
    a2 = np.diag([0.0, np.sqrt(q)]).astype(np.complex128)
    return KrausChannel("amplitude_damping", (a1, a2))


def phase_damping(q: float) -> KrausChannel:
    q = _check_probability(q)
    b1 = np.diag([1.0, np.sqrt(1.0 - q)]).astype(np.complex128)
    b2 = np.array([[0.0, np.sqrt(q)], [0.0, 0.0]], dtype=np.complex128)
    return KrausChannel("phase_damping", (b1, b2))


def bit_flip(q: float) -> KrausChannel:
    q = _check_probability(q)
    c1 = np.sqrt(q) * np.eye(2, dtype=np.complex128)
    c2 = np.sqrt(1.0 - q) * _PAULI[0]
    return KrausChannel("bit_flip", (c1, c2))


NAMED_CHANNELS = {
    "amplitude_damping": amplitude_damping,
    "phase_damping": phase_damping,
    "bit_flip": bit_flip,
}


def rotation_unitary(j: int) -> UnitaryOperator:
    """exp(i pi sigma_j / 8), a pi/4 Bloch-sphere rotation about axis j."""
    c, s = np.cos(np.pi / 8), np.sin(np.pi / 8)
    sigma = pauli(j).matrix
    return UnitaryOperator(c * np.eye(2) + 1j * s * sigma)


def printed_u3() -> UnitaryOperator:
    """The z-axis matrix exactly as typeset in the source: diag(e^{i pi/8}, -e^{i pi/8})."""
    z = np.exp(1j * np.pi / 8)
    return UnitaryOperator(np.diag([z, -z]))


def rotation_unitaries(use_printed_u3: bool = False) -> tuple:
    u3 = printed_u3() if use_printed_u3 else rotation_unitary(3)
    return rotation_unitary(1), rotation_unitary(2), u3
