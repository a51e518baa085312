"""Weighted Wigner-Yanase-Dyson skew information and its special cases.

The central quantity is

    K(rho, E) = 1/2 || [W, E] rho^((1 - alpha - beta)/2) ||_F^2,
    W = (1 - gamma) rho^alpha + gamma rho^beta,

defined for alpha, beta >= 0, alpha + beta <= 1 and 0 <= gamma <= 1.
Powers follow :func:`skewlab.linalg.matrix_power` (p = 0 gives the identity).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InvalidParams, NotHermitian
from .linalg import (
    ZERO_EIGENVALUE_TOL,
    as_matrix,
    commutator,
    frobenius_norm_sq,
    is_hermitian,
)
from .quantum import DensityMatrix, KrausChannel, UnitaryOperator, as_density

_PARAM_TOL = 1e-12


@dataclass(frozen=True)
class SkewParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a, b, g = float(self.alpha), float(self.beta), float(self.gamma)
        if not all(np.isfinite([a, b, g])):
            raise InvalidParams("skew parameters must be finite")
        if a < 0 or b < 0:
            raise InvalidParams(f"alpha and beta must be >= 0, got ({a}, {b})")
        if a + b > 1 + _PARAM_TOL:
            raise InvalidParams(f"alpha + beta must be <= 1, got {a + b}")
        if not 0 <= g <= 1:
            raise InvalidParams(f"gamma must lie in [0, 1], got {g}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)

    @property
    def exponent(self) -> float:
        """Power of rho on the right of the commutator, (1 - alpha - beta) / 2.

        Snapped to exactly 0 when alpha + beta rounds to 1, so singular states
        get the identity factor instead of 0**tiny.
        """
        q = 1.0 - self.alpha - self.beta
        return 0.0 if q <= _PARAM_TOL else q / 2.0

    @classmethod
    def wwyd(cls, alpha: float) -> "SkewParams":
        """Parameters that reproduce the weighted WYD functional: (alpha, 1 - alpha, 1/2)."""
        return cls(alpha, 1.0 - alpha, 0.5)

    def swapped(self) -> "SkewParams":
        return SkewParams(self.beta, self.alpha, 1.0 - self.gamma)


def _clamp(value: float) -> float:
    if -ZERO_EIGENVALUE_TOL <= value < 0:
        return 0.0
    return value


def _operand(rho: DensityMatrix, e) -> np.ndarray:
    e = as_matrix(e)
    if e.shape != rho.matrix.shape:
        raise DimMismatch(f"operator shape {e.shape} does not match state {rho.matrix.shape}")
    return e


def weight_operator(rho, p: SkewParams) -> np.ndarray:
    """(1 - gamma) rho^alpha + gamma rho^beta."""
    rho = as_density(rho)
    return (1.0 - p.gamma) * rho.power(p.alpha) + p.gamma * rho.power(p.beta)


def skew_info_operator(rho, e, p: SkewParams) -> float:
    """K for an arbitrary (not necessarily Hermitian) operator ``e``."""
    rho = as_density(rho)
    e = _operand(rho, e)
    w = weight_operator(rho, p)
    block = (w @ e - e @ w) @ rho.power(p.exponent)
    return _clamp(0.5 * frobenius_norm_sq(block))


def skew_info_observable(rho, a, p: SkewParams) -> float:
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitian("observable must be Hermitian")
    return skew_info_operator(rho, a, p)


def skew_info_unitary(rho, u, p: SkewParams) -> float:
    if not isinstance(u, UnitaryOperator):
        u = UnitaryOperator(u)
    return skew_info_operator(rho, u.matrix, p)


def skew_info_channel(rho, channel: KrausChannel, p: SkewParams) -> float:
    """Sum of K over the Kraus operators of ``channel``."""
    rho = as_density(rho)
    return float(sum(skew_info_operator(rho, e, p) for e in channel.kraus))


def skew_info_channel_stacked(rho, channel: KrausChannel, p: SkewParams) -> float:
    """Same quantity as :func:`skew_info_channel`, as 1/2 ||u||^2 of the stacked blocks."""
    rho = as_density(rho)
    w = weight_operator(rho, p)
    right = rho.power(p.exponent)
    u = np.concatenate([(w @ e - e @ w) @ right for e in
                        (_operand(rho, k) for k in channel.kraus)], axis=1)
    return _clamp(0.5 * float(np.vdot(u, u).real))


def spectral_oracle(rho, e, p: SkewParams) -> float:
    """Evaluate K in the eigenbasis of ``rho`` using scalar arithmetic only.

    With rho = V diag(lam) V^dagger and F = V^dagger E V,

        K = 1/2 sum_{j,k} (w_k - w_j)^2 |F_kj|^2 lam_j^(1 - alpha - beta)

    where w = (1 - gamma) lam^alpha + gamma lam^beta. The eigenbasis comes from
    LAPACK rather than the Jacobi solver, so this path shares no numerical
    machinery with :func:`skew_info_operator` beyond the power conventions.
    """
    m = as_matrix(getattr(rho, "matrix", rho))
    e = as_matrix(e)
    if e.shape != m.shape:
        raise DimMismatch(f"operator shape {e.shape} does not match state {m.shape}")
    lam, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    lam = np.where(np.abs(lam) <= ZERO_EIGENVALUE_TOL, 0.0, lam)
    lam = np.maximum(lam, 0.0)
    f = v.conj().T @ e @ v

    def pw(x, q):
        if q == 0:
            return 1.0
        return x ** q if x > 0 else 0.0

    q = 2.0 * p.exponent
    d = len(lam)
    w = [(1 - p.gamma) * pw(lam[k], p.alpha) + p.gamma * pw(lam[k], p.beta) for k in range(d)]
    total = 0.0
    for j in range(d):
        rj = pw(lam[j], q)
        if rj == 0.0:
            continue
        for k in range(d):
            diff = w[k] - w[j]
            z = f[k, j]
            total += diff * diff * (z.real * z.real + z.imag * z.imag) * rj
    return _clamp(0.5 * total)


# --- named special cases ------------------------------------------------
# Each is written out from its own definition rather than routed through
# skew_info_operator, so the reduction identities are real cross-checks.

def _check_unit(name: str, x: float) -> float:
    x = float(x)
    if not 0 <= x <= 1:
        raise InvalidParams(f"{name} must lie in [0, 1], got {x}")
    return x


def ag_mwwyd(rho, e, alpha: float, gamma: float) -> float:
    """(alpha, gamma) modified WWYD: 1/2 ||[(1-gamma) rho^alpha + gamma rho^(1-alpha), E]||^2."""
    alpha, gamma = _check_unit("alpha", alpha), _check_unit("gamma", gamma)
    rho = as_density(rho)
    e = _operand(rho, e)
    w = (1.0 - gamma) * rho.power(alpha) + gamma * rho.power(1.0 - alpha)
    return _clamp(0.5 * frobenius_norm_sq(commutator(w, e)))


def ag_wwyd(rho, a, alpha: float, gamma: float) -> float:
    if not is_hermitian(a):
        raise NotHermitian("observable must be Hermitian")
    return ag_mwwyd(rho, a, alpha, gamma)


def mwwyd(rho, e, alpha: float) -> float:
    """Modified WWYD: 1/2 ||[(rho^alpha + rho^(1-alpha))/2, E]||^2."""
    alpha = _check_unit("alpha", alpha)
    rho = as_density(rho)
    e = _operand(rho, e)
    w = 0.5 * (rho.power(alpha) + rho.power(1.0 - alpha))
    return _clamp(0.5 * frobenius_norm_sq(commutator(w, e)))


def wwyd(rho, a, alpha: float) -> float:
    if not is_hermitian(a):
        raise NotHermitian("observable must be Hermitian")
    return mwwyd(rho, a, alpha)


def wy(rho, a) -> float:
    """Wigner-Yanase skew information 1/2 ||[sqrt(rho), A]||^2."""
    if not is_hermitian(a):
        raise NotHermitian("observable must be Hermitian")
    rho = as_density(rho)
    a = _operand(rho, a)
    return _clamp(0.5 * frobenius_norm_sq(commutator(rho.power(0.5), a)))
