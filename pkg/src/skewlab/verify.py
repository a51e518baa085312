"""Seeded property sweeps behind ``skewlab verify``.

Each family draws ``count`` random instances from its own child seed stream,
checks its properties, and records counterexamples (matrices in the matrix
JSON encoding) for any instance that fails.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import bounds as B
from . import channels as C
from .linalg import (
    commutator,
    frobenius_norm_sq,
    hermitian_eigendecompose,
    matrix_power,
    matrix_to_json,
)
from .quantum import (
    KrausChannel,
    amplitude_damping,
    bit_flip,
    density_from_bloch,
    phase_damping,
    validate_channel,
)
from .sampling import (
    child_seed,
    ginibre_density,
    haar_unitary,
    make_rng,
    random_hermitian,
    random_kraus_channel,
    random_operator,
)
from .skew import (
    SkewParams,
    ag_mwwyd,
    mwwyd,
    skew_info_channel,
    skew_info_channel_stacked,
    skew_info_operator,
    skew_info_unitary,
    spectral_oracle,
    wy,
)

DOMINANCE_TOL = 1e-9


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, index: int, detail: str, **matrices) -> None:
        self.failures.append({
            "family": self.name,
            "index": index,
            "detail": detail,
            "matrices": {k: matrix_to_json(v) for k, v in matrices.items()},
        })


@dataclass
class VerifyOptions:
    seed: int = 1
    count: int = 500
    dims: tuple = (2, 3, 4)
    n_range: tuple = (2, 3, 4)
    expect_fail: bool = False


def close(a: float, b: float, rel: float = 1e-10, abs_small: float = 1e-12,
          small: float = 1e-8) -> bool:
    if max(abs(a), abs(b)) < small:
        return abs(a - b) <= abs_small
    return abs(a - b) <= rel * max(abs(a), abs(b))


def random_params(rng) -> SkewParams:
    a = rng.uniform(0, 1)
    b = rng.uniform(0, 1 - a)
    return SkewParams(a, b, rng.uniform(0, 1))


def random_weights(rng) -> tuple:
    lo, hi = sorted(rng.uniform(0.1, 5.0, size=2))
    lo2, hi2 = sorted(rng.uniform(0.1, 5.0, size=2))
    lo3, hi3 = sorted(rng.uniform(0.1, 5.0, size=2))
    if hi3 == lo3:
        hi3 = lo3 + 0.5
    return (B.WeightParams(hi, lo, B.M_GE_L),
            B.WeightParams(lo2, hi2, B.L_GE_M),
            B.WeightParams(lo3, hi3, B.L_GT_M))


# --- families -------------------------------------------------------------

def fam_matrix_core(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(opts.count):
        s = child_seed(opts.seed, 1, i)
        rng = make_rng(s)
        d = int(rng.integers(1, 7))
        h = random_hermitian(d, s + (0,)).matrix
        e = hermitian_eigendecompose(h)
        v = e.eigenvectors
        if (np.linalg.norm(e.reconstruct() - h) > 1e-10
                or np.linalg.norm(v.conj().T @ v - np.eye(d)) > 1e-10):
            res.fail(i, "eigendecomposition residual", h=h)
        rho = ginibre_density(d, s + (1,)).matrix
        a, b = rng.uniform(0, 2, size=2)
        lhs = matrix_power(rho, a) @ matrix_power(rho, b)
        if np.linalg.norm(lhs - matrix_power(rho, a + b)) > 1e-10:
            res.fail(i, f"power semigroup a={a}, b={b}", rho=rho)
        if np.linalg.norm(matrix_power(rho, 1) - rho) > 1e-12:
            res.fail(i, "power 1", rho=rho)
        x = random_operator(d, s + (2,))
        u1, u2 = haar_unitary(d, s + (3,)).matrix, haar_unitary(d, s + (4,)).matrix
        if abs(frobenius_norm_sq(u1 @ x @ u2) - frobenius_norm_sq(x)) > 1e-10 * max(1, frobenius_norm_sq(x)):
            res.fail(i, "unitary invariance", x=x, u1=u1, u2=u2)
        y = random_operator(d, s + (5,))
        if np.max(np.abs(commutator(x, y) + commutator(y, x))) > 1e-14 * max(1, np.abs(x).max() * np.abs(y).max() * d):
            res.fail(i, "commutator antisymmetry", x=x, y=y)
        res.checked += 1


def fam_quantum_model(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(opts.count):
        rng = make_rng(child_seed(opts.seed, 2, i))
        v = rng.standard_normal(3)
        r = v / np.linalg.norm(v) * rng.uniform(0, 1)
        rho = density_from_bloch(r)
        nr = np.linalg.norm(r)
        if np.max(np.abs(rho.eigen.eigenvalues - [(1 - nr) / 2, (1 + nr) / 2])) > 1e-12:
            res.fail(i, f"Bloch eigenvalues for r={r.tolist()}", rho=rho.matrix)
        pure = density_from_bloch(v / np.linalg.norm(v))
        if np.max(np.abs(pure.eigen.eigenvalues - [0, 1])) > 1e-12:
            res.fail(i, "pure-state eigenvalues", rho=pure.matrix)
        res.checked += 1
    for q in np.round(np.arange(0, 1.0, 0.1), 10):
        for ch in (amplitude_damping(q), phase_damping(q), bit_flip(q)):
            if validate_channel(ch) >= 1e-12:
                res.fail(-1, f"{ch.name}({q}) incomplete", **{f"k{j}": k for j, k in enumerate(ch.kraus)})
            res.checked += 1


def fam_oracle(opts: VerifyOptions, res: FamilyResult) -> None:
    dims = [d for d in opts.dims if d in (2, 3, 4)] or [2, 3, 4]
    for i in range(opts.count):
        s = child_seed(opts.seed, 3, i)
        rng = make_rng(s)
        d = dims[i % len(dims)]
        rho = ginibre_density(d, s + (0,))
        e = random_operator(d, s + (1,))
        p = random_params(rng)
        a, b = skew_info_operator(rho, e, p), spectral_oracle(rho, e, p)
        if not close(a, b):
            res.fail(i, f"operator {a!r} vs oracle {b!r} at {p}", rho=rho.matrix, e=e)
        res.checked += 1


def fam_reductions(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(opts.count):
        s = child_seed(opts.seed, 4, i)
        rng = make_rng(s)
        d = opts.dims[i % len(opts.dims)]
        rho = ginibre_density(d, s + (0,))
        e = random_operator(d, s + (1,))
        h = random_hermitian(d, s + (2,)).matrix
        a, g = rng.uniform(0, 1), rng.uniform(0, 1)
        k = skew_info_operator(rho, e, SkewParams(a, 1 - a, g))
        if abs(k - ag_mwwyd(rho, e, a, g)) > 1e-12 * max(1, k):
            res.fail(i, f"beta=1-alpha reduction, alpha={a}, gamma={g}", rho=rho.matrix, e=e)
        if abs(ag_mwwyd(rho, e, a, 0.5) - mwwyd(rho, e, a)) > 1e-12 * max(1, k):
            res.fail(i, f"gamma=1/2 reduction, alpha={a}", rho=rho.matrix, e=e)
        if abs(mwwyd(rho, h, 0.5) - wy(rho, h)) > 1e-12 * max(1, k):
            res.fail(i, "alpha=1/2 reduction", rho=rho.matrix, h=h)
        res.checked += 1


def fam_symmetry_scaling(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(opts.count):
        s = child_seed(opts.seed, 5, i)
        rng = make_rng(s)
        d = opts.dims[i % len(opts.dims)]
        rho = ginibre_density(d, s + (0,))
        e = random_operator(d, s + (1,))
        p = random_params(rng)
        k = skew_info_operator(rho, e, p)
        if k < 0:
            res.fail(i, "negative K", rho=rho.matrix, e=e)
        if abs(k - skew_info_operator(rho, e, p.swapped())) > 1e-12 * max(1, k):
            res.fail(i, f"(a,b,g)->(b,a,1-g) symmetry at {p}", rho=rho.matrix, e=e)
        c = rng.uniform(-3, 3)
        if abs(skew_info_operator(rho, c * e, p) - c * c * k) > 1e-12 * max(1, c * c * k):
            res.fail(i, f"quadratic scaling c={c}", rho=rho.matrix, e=e)
        u = haar_unitary(d, s + (2,))
        phi = rng.uniform(0, 2 * np.pi)
        ku = skew_info_unitary(rho, u, p)
        if abs(skew_info_operator(rho, np.exp(1j * phi) * u.matrix, p) - ku) > 1e-12 * max(1, ku):
            res.fail(i, "global phase invariance", rho=rho.matrix, u=u.matrix)
        if skew_info_channel(rho, KrausChannel("unitary", (u.matrix,)), p) != ku:
            res.fail(i, "unitary channel consistency", rho=rho.matrix, u=u.matrix)
        ch = random_kraus_channel(d, 2, s + (3,))
        k1, k2 = skew_info_channel(rho, ch, p), skew_info_channel_stacked(rho, ch, p)
        if abs(k1 - k2) > 1e-12 * max(1, k1):
            res.fail(i, "channel sum vs stacked form", rho=rho.matrix,
                     **{f"kraus{j}": m for j, m in enumerate(ch.kraus)})
        res.checked += 1


def fam_norm_inequalities(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(opts.count):
        s = child_seed(opts.seed, 6, i)
        rng = make_rng(s)
        N = int(rng.integers(2, 6))
        dim = int(rng.integers(1, 21))
        u = rng.standard_normal((N, dim)) + 1j * rng.standard_normal((N, dim))
        lhs = float(np.sum(np.abs(u) ** 2))
        # K := ||.||^2 / 2 turns each bound on sum K into the vector inequality
        table = B.PairwiseKTable.from_vectors(u)
        w1, w2, w3 = random_weights(rng)
        for name, val in (("sum_roots", B.norm_bound_sum_roots(table, w1)),
                          ("diff_roots", B.norm_bound_diff_roots(table, w2)),
                          ("mixed", B.norm_bound_mixed(table, w3))):
            if lhs - 2 * val < -1e-12:
                res.fail(i, f"{name} inequality slack {lhs - 2 * val!r}", vectors=_pad(u))
        res.checked += 1


def _pad(u: np.ndarray) -> np.ndarray:
    side = max(u.shape)
    out = np.zeros((side, side), dtype=np.complex128)
    out[: u.shape[0], : u.shape[1]] = u
    return out


def fam_observable_dominance(opts: VerifyOptions, res: FamilyResult) -> None:
    dims = [d for d in opts.dims if d in (2, 3)] or [2, 3]
    for i in range(opts.count):
        s = child_seed(opts.seed, 7, i)
        rng = make_rng(s)
        d = dims[i % len(dims)]
        N = opts.n_range[i % len(opts.n_range)]
        rho = ginibre_density(d, s + (0,))
        obs = [random_hermitian(d, s + (1, t)) for t in range(N)]
        p = random_params(rng)
        w = random_weights(rng)
        table = B.build_table_observables(rho, obs, p)
        rep = B.all_bounds(table, w)
        for k, v in rep.values.items():
            if v is not None and v > table.total_k + DOMINANCE_TOL:
                res.fail(i, f"{k}={v!r} exceeds sum {table.total_k!r}", rho=rho.matrix,
                         **{f"A{t}": a.matrix for t, a in enumerate(obs)})
        if rep.values[rep.winner] != max(v for v in rep.values.values() if v is not None):
            res.fail(i, "winner does not attain maximum", rho=rho.matrix)
        m = rng.uniform(0.1, 5)
        x0, x1 = B.prior_bound_3_branches(table)
        c1 = B.norm_bound_sum_roots(table, B.WeightParams(m, m, B.M_GE_L))
        c2 = B.norm_bound_diff_roots(table, B.WeightParams(m, m, B.L_GE_M))
        if abs(c1 - x0) > 1e-12 * max(1, x0) or abs(c2 - x1) > 1e-12 * max(1, x1):
            res.fail(i, "M=L collapse", rho=rho.matrix)
        # larger M / smaller L never lowers the sum-roots and mixed bounds
        lo = B.norm_bound_sum_roots(table, B.WeightParams(1.0, 1.0, B.M_GE_L))
        hi = B.norm_bound_sum_roots(table, B.WeightParams(3.0, 1.0, B.M_GE_L))
        if hi < lo - 1e-12:
            res.fail(i, "monotonicity in M", rho=rho.matrix)
        res.checked += 1


def fam_channel_dominance(opts: VerifyOptions, res: FamilyResult) -> None:
    dims = [d for d in opts.dims if d in (2, 3)] or [2, 3]
    ns = [N for N in opts.n_range if N in (2, 3)] or [2, 3]
    for i in range(opts.count):
        s = child_seed(opts.seed, 8, i)
        rng = make_rng(s)
        d = dims[i % len(dims)]
        N = ns[(i // len(dims)) % len(ns)]
        rho = ginibre_density(d, s + (0,))
        chans = [random_kraus_channel(d, 2, s + (1, t)) for t in range(N)]
        p = random_params(rng)
        w = random_weights(rng)
        rep = C.channel_bounds(rho, chans, p, w)
        mats = {f"E{t}_{j}": k for t, ch in enumerate(chans) for j, k in enumerate(ch.kraus)}
        for k, v in rep.values.items():
            if v is not None and v > rep.total_k + DOMINANCE_TOL:
                res.fail(i, f"{k}={v!r} exceeds sum {rep.total_k!r}", rho=rho.matrix, **mats)
        if C.count_canonical(2, N) * 2 <= 10 ** 4:
            brute = C.channel_bounds(rho, chans, p, w, mode="unrestricted")
            for k, v in rep.values.items():
                if v != brute.values[k]:
                    res.fail(i, f"canonical {k}={v!r} vs unrestricted {brute.values[k]!r}",
                             rho=rho.matrix, **mats)
        swapped = [KrausChannel(ch.name, ch.kraus[::-1]) for ch in chans]
        rel = C.channel_bounds(rho, swapped, p, w)
        for k, v in rep.values.items():
            if v is not None and abs(v - rel.values[k]) > 1e-12 * max(1, abs(v)):
                res.fail(i, f"relabeling changed {k}", rho=rho.matrix, **mats)
        res.checked += 1


def fam_random_suite(opts: VerifyOptions, res: FamilyResult) -> None:
    for i in range(min(opts.count, 50)):
        s = child_seed(opts.seed, 9, i)
        d = 1 + i % 4
        pairs = [
            (ginibre_density(d, s).matrix, ginibre_density(d, s).matrix),
            (random_hermitian(d, s).matrix, random_hermitian(d, s).matrix),
            (haar_unitary(d, s).matrix, haar_unitary(d, s).matrix),
        ]
        if any(not np.array_equal(a, b) for a, b in pairs):
            res.fail(i, "generator not deterministic")
        ch = random_kraus_channel(d, 2, s)
        if validate_channel(ch) > 1e-10:
            res.fail(i, "random channel incomplete")
        res.checked += 1


def fam_injected(opts: VerifyOptions, res: FamilyResult) -> None:
    """Always fails; exercises the counterexample dump path."""
    rho = ginibre_density(2, child_seed(opts.seed, 99, 0))
    res.checked += 1
    res.fail(0, "injected failure (--expect-fail)", rho=rho.matrix)


FAMILIES: dict = {
    "matrix_core": fam_matrix_core,
    "quantum_model": fam_quantum_model,
    "oracle_equivalence": fam_oracle,
    "reduction_identities": fam_reductions,
    "symmetry_scaling_phase": fam_symmetry_scaling,
    "norm_inequalities": fam_norm_inequalities,
    "observable_dominance": fam_observable_dominance,
    "channel_dominance": fam_channel_dominance,
    "random_suite": fam_random_suite,
}


def run_verify(opts: VerifyOptions, out_dir=None,
               echo: Callable[[str], None] | None = print) -> list:
    families = dict(FAMILIES)
    if opts.expect_fail:
        families["injected"] = fam_injected
    results = []
    for name, fn in families.items():
        res = FamilyResult(name)
        t0 = time.perf_counter()
        try:
            fn(opts, res)
        except Exception as exc:  # a crash is a failure of the family, not of verify
            res.failures.append({"family": name, "index": -1,
                                 "detail": f"{type(exc).__name__}: {exc}", "matrices": {}})
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if echo:
            status = "PASS" if res.passed else "FAIL"
            echo(f"[{status}] {name}: {res.checked} checked, "
                 f"{len(res.failures)} failed ({res.seconds:.2f}s)")
        if res.failures and out_dir is not None:
            path = write_counterexamples(out_dir, res, opts.seed)
            if echo:
                echo(f"        seed={opts.seed}; counterexamples -> {path}")
    return results


def write_counterexamples(out_dir, res: FamilyResult, seed: int) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"counterexample_{res.name}.json"
    path.write_text(json.dumps({"seed": seed, "family": res.name,
                                "failures": res.failures}, indent=2) + "\n")
    return path
