"""Channel sum-uncertainty bounds maximized over Kraus-index permutations.

Given channels Phi_1..Phi_N with n Kraus operators each, an assignment picks
one permutation pi_t per channel and pairs operator ``pi_t(i)`` of channel t
with ``pi_s(i)`` of channel s. Every bound is evaluated per assignment and
maximized independently over assignments.

Bound ids
---------
``prior1..3``, ``prior``
    Earlier channel bounds (``prior1`` needs N > 2).
``kraus1..3``
    Weighted norm inequalities applied per Kraus index i, then summed over i:
    sum_i (sum_{t<s} sqrt K_i)^2.
``stacked1..3``
    Weighted norm inequalities applied to the stacked vector of all Kraus
    blocks: (sum_{t<s} sqrt(sum_i K_i))^2.
``optimal``
    max(stacked1, stacked2, kraus3).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Iterator, Sequence

import numpy as np

from .bounds import (
    DEFAULT_WEIGHTS,
    L_GE_M,
    L_GT_M,
    M_GE_L,
    WeightParams,
    _require,
)
from .errors import DimMismatch, SearchBudgetExceeded, TooFewChannels
from .quantum import KrausChannel, as_density
from .sampling import make_rng
from .skew import SkewParams, skew_info_operator

EXHAUSTIVE_LIMIT = 10 ** 6
HEURISTIC_RESTARTS = 64
DEFAULT_EVAL_BUDGET = 2_000_000

CHANNEL_BOUND_ORDER = (
    "prior1", "prior2", "prior3",
    "kraus1", "kraus2", "kraus3",
    "stacked1", "stacked2", "stacked3",
    "prior", "optimal",
)

Assignment = tuple  # tuple of N permutations, each a tuple of n indices


@dataclass(frozen=True, eq=False)
class ChannelKTable:
    """All K terms for one assignment.

    ``per_i_plus[i, t, s]`` is K(E^t_{pi_t(i)} + E^s_{pi_s(i)}) for t < s
    (zero elsewhere); ``per_i_minus`` likewise with a difference.
    """

    assignment: Assignment
    k_single: np.ndarray
    per_i_plus: np.ndarray
    per_i_minus: np.ndarray
    k_mixed_total: np.ndarray

    @property
    def n_channels(self) -> int:
        return len(self.k_single)

    @property
    def n_kraus(self) -> int:
        return self.per_i_plus.shape[0]

    @property
    def pair_sum_plus(self) -> np.ndarray:
        return self.per_i_plus.sum(axis=0)

    @property
    def pair_sum_minus(self) -> np.ndarray:
        return self.per_i_minus.sum(axis=0)

    @property
    def total_k(self) -> float:
        return float(self.k_single.sum())


@dataclass(frozen=True)
class ChannelBoundReport:
    values: dict          # id -> value (None if not defined)
    assignments: dict     # id -> best assignment
    search_mode: str
    total_k: float
    weights: tuple = ()

    def __getitem__(self, key: str):
        return self.values[key]


# --- assignment enumeration ---------------------------------------------

def count_canonical(n: int, n_channels: int) -> int:
    return math.factorial(n) ** (n_channels - 1)


def assignment_search(n: int, n_channels: int, mode: str = "exhaustive", *,
                      objective: Callable[[Assignment], float] | None = None,
                      seed=0, restarts: int = HEURISTIC_RESTARTS) -> Iterator[Assignment]:
    """Yield permutation assignments.

    ``exhaustive`` fixes the first permutation to the identity; relabeling
    the Kraus index i in every channel at once leaves all sums over i
    unchanged, so nothing is lost. ``unrestricted`` yields every tuple and
    exists as a brute-force reference. ``heuristic`` needs ``objective`` and
    yields the assignments visited by seeded random restarts followed by
    greedy single-swap hill climbing.
    """
    if n < 1 or n_channels < 2:
        raise TooFewChannels(f"need n >= 1 and at least 2 channels, got n={n}, N={n_channels}")
    ident = tuple(range(n))
    if mode == "exhaustive":
        for tail in product(permutations(ident), repeat=n_channels - 1):
            yield (ident,) + tail
    elif mode == "unrestricted":
        yield from product(permutations(ident), repeat=n_channels)
    elif mode == "heuristic":
        if objective is None:
            raise ValueError("heuristic search needs an objective")
        yield from _hill_climb(n, n_channels, objective, seed, restarts)
    else:
        raise ValueError(f"unknown search mode {mode!r}")


def _hill_climb(n, n_channels, objective, seed, restarts):
    rng = make_rng(seed)
    ident = tuple(range(n))
    swaps = list(combinations(range(n), 2))
    for _ in range(restarts):
        current = (ident,) + tuple(tuple(rng.permutation(n).tolist())
                                   for _ in range(n_channels - 1))
        best = objective(current)
        yield current
        improved = True
        while improved:
            improved = False
            for t in range(1, n_channels):
                for a, b in swaps:
                    perm = list(current[t])
                    perm[a], perm[b] = perm[b], perm[a]
                    cand = current[:t] + (tuple(perm),) + current[t + 1:]
                    val = objective(cand)
                    yield cand
                    if val > best:
                        best, current, improved = val, cand, True


# --- K terms --------------------------------------------------------------

def _common_channels(channels: Sequence[KrausChannel]) -> list:
    if len(channels) < 2:
        raise TooFewChannels(f"need at least 2 channels, got {len(channels)}")
    if len({c.dim for c in channels}) != 1:
        raise DimMismatch("channels act on different dimensions")
    n = max(len(c) for c in channels)
    return [c.padded(n) for c in channels]


class _TermCache:
    """Memoized K of single operators, pairwise sums/differences and column totals."""

    def __init__(self, rho, channels: Sequence[KrausChannel], p: SkewParams):
        self.rho = as_density(rho)
        self.channels = _common_channels(channels)
        self.p = p
        self.n = len(self.channels[0])
        self.N = len(self.channels)
        self.pairs = list(combinations(range(self.N), 2))
        self._pair: dict = {}
        self._total: dict = {}
        self.k_each = np.array([[self.k(e) for e in c.kraus] for c in self.channels])
        self.k_single = self.k_each.sum(axis=1)
        self.evaluations = 0

    def k(self, e) -> float:
        return skew_info_operator(self.rho, e, self.p)

    def pair(self, t: int, a: int, s: int, b: int) -> tuple:
        key = (t, a, s, b)
        val = self._pair.get(key)
        if val is None:
            x, y = self.channels[t].kraus[a], self.channels[s].kraus[b]
            val = (self.k(x + y), self.k(x - y))
            self._pair[key] = val
        return val

    def column_total(self, column: tuple) -> float:
        val = self._total.get(column)
        if val is None:
            val = self.k(sum(self.channels[t].kraus[j] for t, j in enumerate(column)))
            self._total[column] = val
        return val

    def table(self, assignment: Assignment) -> ChannelKTable:
        self.evaluations += 1
        n, N = self.n, self.N
        plus = np.zeros((n, N, N))
        minus = np.zeros((n, N, N))
        mixed = np.zeros(n)
        for i in range(n):
            for t, s in self.pairs:
                kp, km = self.pair(t, assignment[t][i], s, assignment[s][i])
                plus[i, t, s] = kp
                minus[i, t, s] = km
            mixed[i] = self.column_total(tuple(assignment[t][i] for t in range(N)))
        return ChannelKTable(assignment, self.k_single.copy(), plus, minus, mixed)


def channel_k_table(rho, channels: Sequence[KrausChannel], assignment: Assignment,
                    p: SkewParams) -> ChannelKTable:
    cache = _TermCache(rho, channels, p)
    return cache.table(tuple(tuple(pi) for pi in assignment))


# --- per-assignment bound formulas ---------------------------------------

def _pair_values(per_i: np.ndarray) -> np.ndarray:
    """(n, P) array of the t < s entries for each Kraus index."""
    n_ch = per_i.shape[1]
    iu = np.triu_indices(n_ch, 1)
    return per_i[:, iu[0], iu[1]]


def _sqrt(x):
    return np.sqrt(np.maximum(np.asarray(x, dtype=float), 0.0))


def evaluate_assignment(table: ChannelKTable,
                        weights: Sequence[WeightParams] = DEFAULT_WEIGHTS) -> dict:
    """Every channel bound for one fixed assignment."""
    w1, w2, w3 = weights
    _require(w1, M_GE_L)
    _require(w2, L_GE_M)
    _require(w3, L_GT_M)
    N = table.n_channels
    plus = _pair_values(table.per_i_plus)      # (n, P)
    minus = _pair_values(table.per_i_minus)
    # Sums over the Kraus index i use fsum, which is exactly order independent,
    # so relabeling i in every channel reproduces bit-identical values.
    isum = math.fsum
    sum_plus = isum(plus.sum(axis=1))
    sum_minus = isum(minus.sum(axis=1))
    mixed = isum(table.k_mixed_total)

    # root-then-square per Kraus index, then summed over i
    kraus_rp = isum(_sqrt(plus).sum(axis=1) ** 2)
    kraus_rm = isum(_sqrt(minus).sum(axis=1) ** 2)
    # sum over i first, then roots of the pair totals
    stack_rp = float(_sqrt([isum(col) for col in plus.T]).sum() ** 2)
    stack_rm = float(_sqrt([isum(col) for col in minus.T]).sum() ** 2)

    pair = 2.0 / (N * (N - 1))
    vals = {}
    vals["prior1"] = (None if N == 2 else
                      (sum_plus - kraus_rp / (N - 1) ** 2) / (N - 2))
    vals["prior2"] = mixed / N + 2.0 / (N * N * (N - 1)) * kraus_rm
    c = 1.0 / (2 * (N - 1))
    vals["prior3"] = max(c * (pair * kraus_rp + sum_minus),
                         c * (pair * kraus_rm + sum_plus))

    def tight(rp, rm, tag):
        m, l = w1.M, w1.L
        vals[tag + "1"] = (l * pair * rp + m * sum_minus + (m - l) * mixed) / (m * N + (N - 2) * l)
        m, l = w2.M, w2.L
        vals[tag + "2"] = (m * pair * rm + l * sum_plus + (m - l) * mixed) / (m * N + (N - 2) * l)
        m, l = w3.M, w3.L
        vals[tag + "3"] = ((m - l) / (N - 1) ** 2 * rp + m * sum_minus + l * sum_plus) / (m * N + (N - 2) * l)

    tight(kraus_rp, kraus_rm, "kraus")
    tight(stack_rp, stack_rm, "stacked")
    return {k: (None if v is None else float(v)) for k, v in vals.items()}


_PER_ASSIGNMENT_IDS = ("prior1", "prior2", "prior3", "kraus1", "kraus2", "kraus3",
                       "stacked1", "stacked2", "stacked3")


def _finish(best: dict, where: dict, mode: str, total_k: float, weights) -> ChannelBoundReport:
    vals = dict(best)
    assigns = dict(where)
    prior_ids = [k for k in ("prior1", "prior2", "prior3") if vals.get(k) is not None]
    top = max(prior_ids, key=lambda k: (vals[k], -prior_ids.index(k)))
    vals["prior"], assigns["prior"] = vals[top], assigns[top]
    opt_ids = ["stacked1", "stacked2", "kraus3"]
    top = max(opt_ids, key=lambda k: (vals[k], -opt_ids.index(k)))
    vals["optimal"], assigns["optimal"] = vals[top], assigns[top]
    return ChannelBoundReport(vals, assigns, mode, total_k, tuple(weights))


def channel_bounds(rho, channels: Sequence[KrausChannel], p: SkewParams,
                   weights: Sequence[WeightParams] = DEFAULT_WEIGHTS, *,
                   mode: str = "auto", seed=0, restarts: int = HEURISTIC_RESTARTS,
                   max_evaluations: int = DEFAULT_EVAL_BUDGET) -> ChannelBoundReport:
    """All channel bounds, each maximized over assignments on its own.

    ``mode="auto"`` is exhaustive while (n!)^(N-1) <= 10^6 and heuristic
    beyond that. Ties keep the first assignment in enumeration order.
    """
    cache = _TermCache(rho, channels, p)
    n, N = cache.n, cache.N
    if mode == "auto":
        mode = "exhaustive" if count_canonical(n, N) <= EXHAUSTIVE_LIMIT else "heuristic"

    best: dict = {}
    where: dict = {}

    def consider(assignment, vals):
        for k in _PER_ASSIGNMENT_IDS:
            v = vals[k]
            if v is None:
                best.setdefault(k, None)
                where.setdefault(k, assignment)
            elif best.get(k) is None or v > best[k]:
                best[k], where[k] = v, assignment

    if mode in ("exhaustive", "unrestricted"):
        for a in assignment_search(n, N, mode):
            consider(a, evaluate_assignment(cache.table(a), weights))
        return _finish(best, where, mode, cache.k_single.sum(), weights)

    if mode != "heuristic":
        raise ValueError(f"unknown search mode {mode!r}")
    memo: dict = {}

    def vals_of(a):
        v = memo.get(a)
        if v is None:
            if cache.evaluations >= max_evaluations:
                partial = _finish(best, where, mode, cache.k_single.sum(), weights) if best else None
                raise SearchBudgetExceeded(
                    f"heuristic search exceeded {max_evaluations} evaluations", best=partial)
            v = evaluate_assignment(cache.table(a), weights)
            memo[a] = v
        return v

    for k in _PER_ASSIGNMENT_IDS:
        def objective(a, k=k):
            v = vals_of(a)[k]
            return -math.inf if v is None else v
        for a in assignment_search(n, N, "heuristic", objective=objective,
                                   seed=seed, restarts=restarts):
            consider(a, vals_of(a))
    return _finish(best, where, mode, cache.k_single.sum(), weights)


def _subset(report: ChannelBoundReport, ids: Sequence[str]) -> ChannelBoundReport:
    return ChannelBoundReport({k: report.values[k] for k in ids},
                              {k: report.assignments[k] for k in ids},
                              report.search_mode, report.total_k, report.weights)


def prior_channel_bounds(rho, channels, p, **kw) -> ChannelBoundReport:
    return _subset(channel_bounds(rho, channels, p, **kw), ("prior1", "prior2", "prior3", "prior"))


def kraus_wise_bounds(rho, channels, p, w1=DEFAULT_WEIGHTS[0], w2=DEFAULT_WEIGHTS[1],
                      w3=DEFAULT_WEIGHTS[2], **kw) -> ChannelBoundReport:
    """Norm inequalities applied per Kraus index and summed over the index."""
    rep = channel_bounds(rho, channels, p, (w1, w2, w3), **kw)
    return _subset(rep, ("kraus1", "kraus2", "kraus3"))


def stacked_bounds(rho, channels, p, w1=DEFAULT_WEIGHTS[0], w2=DEFAULT_WEIGHTS[1],
                   w3=DEFAULT_WEIGHTS[2], **kw) -> ChannelBoundReport:
    """Norm inequalities applied to the stacked Kraus-block vectors."""
    rep = channel_bounds(rho, channels, p, (w1, w2, w3), **kw)
    return _subset(rep, ("stacked1", "stacked2", "stacked3"))


def optimal_channel_bound(rho, channels, p, w1=DEFAULT_WEIGHTS[0], w2=DEFAULT_WEIGHTS[1],
                          w3=DEFAULT_WEIGHTS[2], **kw) -> ChannelBoundReport:
    rep = channel_bounds(rho, channels, p, (w1, w2, w3), **kw)
    return _subset(rep, ("stacked1", "stacked2", "kraus3", "optimal"))
