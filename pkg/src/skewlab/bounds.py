"""Sum-uncertainty lower bounds for finite lists of operators.

Every bound here is a function of a :class:`PairwiseKTable`: the skew
information of each element, of each pairwise sum and difference, and of the
total sum. The three weighted norm inequalities are homogeneous of degree two
in the vectors, so substituting ``||u||^2 = 2 K`` turns them into bounds on
``sum K`` with the factor 2 cancelling. The same formulas therefore evaluate
both the raw vector inequalities (via :meth:`PairwiseKTable.from_vectors`)
and the skew-information bounds.

Bound ids
---------
``prior1``, ``prior2``, ``prior3``
    The earlier sum-uncertainty bounds (``prior1`` needs N > 2).
``tight1``, ``tight2``, ``tight3``
    The weighted norm-inequality bounds with regimes M >= L, L >= M, L > M.
``prior``, ``tight``
    Maxima of the corresponding families.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import DimMismatch, RegimeViolation, TooFewElements
from .linalg import as_matrix
from .skew import SkewParams, skew_info_observable, skew_info_operator
from .quantum import as_density

BOUND_ORDER = ("prior1", "prior2", "prior3", "tight1", "tight2", "tight3", "prior", "tight")

M_GE_L = "M>=L"
L_GE_M = "L>=M"
L_GT_M = "L>M"


@dataclass(frozen=True)
class WeightParams:
    M: float
    L: float
    regime: str

    def __post_init__(self):
        m, l = float(self.M), float(self.L)
        if not (m > 0 and l > 0):
            raise RegimeViolation(f"weights must be positive, got M={m}, L={l}")
        ok = {M_GE_L: m >= l, L_GE_M: l >= m, L_GT_M: l > m}
        if self.regime not in ok:
            raise RegimeViolation(f"unknown regime {self.regime!r}")
        if not ok[self.regime]:
            raise RegimeViolation(f"M={m}, L={l} is not in regime {self.regime}")
        object.__setattr__(self, "M", m)
        object.__setattr__(self, "L", l)


DEFAULT_WEIGHTS = (
    WeightParams(2.0, 1.0, M_GE_L),
    WeightParams(1.0, 2.0, L_GE_M),
    WeightParams(1.0, 2.0, L_GT_M),
)


def default_weights() -> tuple:
    return DEFAULT_WEIGHTS


def _require(w: WeightParams, regime: str) -> None:
    if w.regime != regime:
        raise RegimeViolation(f"this bound needs regime {regime}, got {w.regime}")


@dataclass(frozen=True, eq=False)
class PairwiseKTable:
    """K values of the elements, their pairwise sums/differences and total.

    ``k_plus[t, s]`` and ``k_minus[t, s]`` are meaningful for ``t < s`` only.
    """

    k_single: np.ndarray
    k_plus: np.ndarray
    k_minus: np.ndarray
    k_total: float

    @property
    def n_elements(self) -> int:
        return len(self.k_single)

    def _upper(self, a: np.ndarray) -> np.ndarray:
        return a[np.triu_indices(self.n_elements, 1)]

    @property
    def plus(self) -> np.ndarray:
        return self._upper(self.k_plus)

    @property
    def minus(self) -> np.ndarray:
        return self._upper(self.k_minus)

    @property
    def total_k(self) -> float:
        return float(np.sum(self.k_single))

    @classmethod
    def from_pairs(cls, k_single, plus: Mapping, minus: Mapping, k_total: float):
        n = len(k_single)
        kp = np.zeros((n, n))
        km = np.zeros((n, n))
        for (t, s), v in plus.items():
            kp[t, s] = v
        for (t, s), v in minus.items():
            km[t, s] = v
        return cls(np.asarray(k_single, dtype=float), kp, km, float(k_total))

    @classmethod
    def zeros(cls, n: int) -> "PairwiseKTable":
        return cls(np.zeros(n), np.zeros((n, n)), np.zeros((n, n)), 0.0)

    @classmethod
    def from_vectors(cls, vectors: Sequence) -> "PairwiseKTable":
        """Table with ``K := ||.||^2 / 2`` for raw complex vectors."""
        u = [np.asarray(x, dtype=np.complex128).ravel() for x in vectors]
        half = lambda x: 0.5 * float(np.vdot(x, x).real)  # noqa: E731
        n = len(u)
        plus = {(t, s): half(u[t] + u[s]) for t, s in combinations(range(n), 2)}
        minus = {(t, s): half(u[t] - u[s]) for t, s in combinations(range(n), 2)}
        return cls.from_pairs([half(x) for x in u], plus, minus, half(sum(u)))


def _check_n(table: PairwiseKTable, minimum: int = 2) -> int:
    n = table.n_elements
    if n < minimum:
        raise TooFewElements(f"need at least {minimum} elements, got {n}")
    return n


def _root_sum(values: np.ndarray) -> float:
    return float(np.sum(np.sqrt(np.maximum(values, 0.0))))


# --- the three weighted norm inequalities ------------------------------

def norm_bound_sum_roots(table: PairwiseKTable, w: WeightParams) -> float:
    """Bound for M >= L driven by the roots of the pairwise sums.

    1/(MN + (N-2)L) * { 2L/(N(N-1)) (sum sqrt K+)^2 + M sum K- + (M-L) K(total) }
    """
    _require(w, M_GE_L)
    n = _check_n(table)
    m, l = w.M, w.L
    roots = _root_sum(table.plus)
    body = (2 * l / (n * (n - 1)) * roots ** 2 + m * table.minus.sum()
            + (m - l) * table.k_total)
    return float(body / (m * n + (n - 2) * l))


def norm_bound_diff_roots(table: PairwiseKTable, w: WeightParams) -> float:
    """Bound for L >= M driven by the roots of the pairwise differences."""
    _require(w, L_GE_M)
    n = _check_n(table)
    m, l = w.M, w.L
    roots = _root_sum(table.minus)
    body = (2 * m / (n * (n - 1)) * roots ** 2 + l * table.plus.sum()
            + (m - l) * table.k_total)
    return float(body / (m * n + (n - 2) * l))


def norm_bound_mixed(table: PairwiseKTable, w: WeightParams) -> float:
    """Bound for L > M; does not use the total-sum term."""
    _require(w, L_GT_M)
    n = _check_n(table)
    m, l = w.M, w.L
    roots = _root_sum(table.plus)
    body = ((m - l) / (n - 1) ** 2 * roots ** 2 + m * table.minus.sum()
            + l * table.plus.sum())
    return float(body / (m * n + (n - 2) * l))


# --- earlier bounds -----------------------------------------------------

def prior_bound_1(table: PairwiseKTable) -> float | None:
    """None for N = 2, where the 1/(N-2) prefactor is undefined."""
    n = _check_n(table)
    if n == 2:
        return None
    roots = _root_sum(table.plus)
    return float((table.plus.sum() - roots ** 2 / (n - 1) ** 2) / (n - 2))


def prior_bound_2(table: PairwiseKTable) -> float:
    n = _check_n(table)
    roots = _root_sum(table.minus)
    return float(table.k_total / n + 2.0 / (n * n * (n - 1)) * roots ** 2)


def prior_bound_3_branches(table: PairwiseKTable) -> tuple:
    """The x = 0 and x = 1 branches; the bound is their maximum."""
    n = _check_n(table)
    c = 1.0 / (2 * (n - 1))
    pair = 2.0 / (n * (n - 1))
    x0 = c * (pair * _root_sum(table.plus) ** 2 + table.minus.sum())
    x1 = c * (pair * _root_sum(table.minus) ** 2 + table.plus.sum())
    return float(x0), float(x1)


def prior_bound_3(table: PairwiseKTable) -> float:
    return max(prior_bound_3_branches(table))


# --- reports ------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    values: dict
    weights: tuple
    total_k: float
    winner: str | None

    def __getitem__(self, key: str):
        return self.values[key]


def pick_winner(values: Mapping, order: Sequence[str] = BOUND_ORDER) -> str | None:
    """First id (in ``order``) attaining the maximum; absent values are skipped."""
    present = [(k, values[k]) for k in order if values.get(k) is not None]
    present += [(k, v) for k, v in values.items() if k not in order and v is not None]
    if not present:
        return None
    best = max(v for _, v in present)
    return next(k for k, v in present if v == best)


def _family_max(values: Sequence) -> float:
    return max(v for v in values if v is not None)


def prior_bounds_observables(table: PairwiseKTable) -> BoundReport:
    _check_n(table)
    vals = {
        "prior1": prior_bound_1(table),
        "prior2": prior_bound_2(table),
        "prior3": prior_bound_3(table),
    }
    vals["prior"] = _family_max(vals.values())
    return BoundReport(vals, (), table.total_k, pick_winner(vals))


def tightened_bounds_observables(table: PairwiseKTable, w1: WeightParams = DEFAULT_WEIGHTS[0],
                                 w2: WeightParams = DEFAULT_WEIGHTS[1],
                                 w3: WeightParams = DEFAULT_WEIGHTS[2]) -> BoundReport:
    _check_n(table)
    vals = {
        "tight1": norm_bound_sum_roots(table, w1),
        "tight2": norm_bound_diff_roots(table, w2),
        "tight3": norm_bound_mixed(table, w3),
    }
    vals["tight"] = max(vals.values())
    return BoundReport(vals, (w1, w2, w3), table.total_k, pick_winner(vals))


def all_bounds(table: PairwiseKTable, weights: Sequence[WeightParams] = DEFAULT_WEIGHTS) -> BoundReport:
    """Prior and tightened families together."""
    prior = prior_bounds_observables(table)
    tight = tightened_bounds_observables(table, *weights)
    vals = {**prior.values, **tight.values}
    return BoundReport(vals, tuple(weights), table.total_k, pick_winner(vals))


def unitary_bounds(table: PairwiseKTable, w1: WeightParams = DEFAULT_WEIGHTS[0],
                   w2: WeightParams = DEFAULT_WEIGHTS[1],
                   w3: WeightParams = DEFAULT_WEIGHTS[2]) -> BoundReport:
    """Tightened bounds on a unitary table, with the earlier bound shapes as comparison.

    The comparison family reuses the observable formulas on the unitary table.
    """
    return all_bounds(table, (w1, w2, w3))


# --- table builders -----------------------------------------------------

def _build_table(rho, mats: Sequence[np.ndarray], k) -> PairwiseKTable:
    if len(mats) < 2:
        raise TooFewElements(f"need at least 2 elements, got {len(mats)}")
    if len({m.shape for m in mats}) != 1:
        raise DimMismatch("elements have different dimensions")
    n = len(mats)
    pairs = list(combinations(range(n), 2))
    return PairwiseKTable.from_pairs(
        [k(m) for m in mats],
        {(t, s): k(mats[t] + mats[s]) for t, s in pairs},
        {(t, s): k(mats[t] - mats[s]) for t, s in pairs},
        k(sum(mats)),
    )


def build_table_observables(rho, observables: Sequence, p: SkewParams) -> PairwiseKTable:
    rho = as_density(rho)
    mats = [as_matrix(a) for a in observables]
    return _build_table(rho, mats, lambda m: skew_info_observable(rho, m, p))


def build_table_unitaries(rho, unitaries: Sequence, p: SkewParams) -> PairwiseKTable:
    """Sums and differences of unitaries are general operators, so the MWWYD form is used."""
    rho = as_density(rho)
    mats = [as_matrix(u) for u in unitaries]
    return _build_table(rho, mats, lambda m: skew_info_operator(rho, m, p))


def build_table_operators(rho, operators: Sequence, p: SkewParams) -> PairwiseKTable:
    rho = as_density(rho)
    mats = [as_matrix(e) for e in operators]
    return _build_table(rho, mats, lambda m: skew_info_operator(rho, m, p))
