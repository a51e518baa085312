import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab import bounds as B
from skewlab.errors import RegimeViolation, TooFewElements
from skewlab.quantum import density_from_bloch, maximally_mixed, pauli, rotation_unitaries
from skewlab.sampling import make_rng, random_hermitian
from skewlab.skew import SkewParams, skew_info_operator, spectral_oracle

W1 = B.WeightParams(2, 1, B.M_GE_L)
W2 = B.WeightParams(1, 2, B.L_GE_M)
W3 = B.WeightParams(1, 2, B.L_GT_M)


def test_weight_regimes():
    with pytest.raises(RegimeViolation):
        B.WeightParams(1, 2, B.M_GE_L)
    with pytest.raises(RegimeViolation):
        B.WeightParams(2, 2, B.L_GT_M)
    with pytest.raises(RegimeViolation):
        B.WeightParams(0, 1, B.L_GE_M)
    with pytest.raises(RegimeViolation):
        B.norm_bound_sum_roots(B.PairwiseKTable.zeros(3), W2)


def test_orthogonal_pair_equality():
    t = B.PairwiseKTable.from_vectors([[1, 0], [0, 1]])
    w = B.WeightParams(1, 1, B.M_GE_L)
    assert 2 * B.norm_bound_sum_roots(t, w) == pytest.approx(2.0)


def test_mixed_toy_table():
    # k_plus = k_minus = 1, k_total = 1, N = 2, M = 1, L = 2: (-1 + 1 + 2) / (2 + 0) = 1
    t = B.PairwiseKTable.from_pairs([0.5, 0.5], {(0, 1): 1.0}, {(0, 1): 1.0}, 1.0)
    assert B.norm_bound_mixed(t, W3) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_zero_table(n):
    z = B.PairwiseKTable.zeros(n)
    rep = B.all_bounds(z)
    assert all(v in (0.0, None) for v in rep.values.values())
    for f, w in ((B.norm_bound_sum_roots, W1), (B.norm_bound_diff_roots, W2), (B.norm_bound_mixed, W3)):
        assert f(z, w) == 0


def test_prior1_absent_for_two():
    t = B.PairwiseKTable.from_vectors([[1, 2j], [0.5, 1]])
    assert B.prior_bound_1(t) is None
    rep = B.all_bounds(t)
    assert rep.values["prior1"] is None and rep.winner is not None
    with pytest.raises(TooFewElements):
        B.all_bounds(B.PairwiseKTable.zeros(1))


def test_prior_equals_tight_at_equal_weights():
    rng = make_rng(3)
    u = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
    t = B.PairwiseKTable.from_vectors(u)
    x0, x1 = B.prior_bound_3_branches(t)
    for m in (0.5, 1.0, 3.0):
        assert B.norm_bound_sum_roots(t, B.WeightParams(m, m, B.M_GE_L)) == pytest.approx(x0, rel=1e-12)
        assert B.norm_bound_diff_roots(t, B.WeightParams(m, m, B.L_GE_M)) == pytest.approx(x1, rel=1e-12)
    assert B.prior_bound_3(t) == max(x0, x1)


def test_mixed_matches_sum_roots_with_swapped_table():
    # at M = L the mixed form coincides with the sum-roots form on the table with plus/minus exchanged
    rng = make_rng(8)
    u = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    t = B.PairwiseKTable.from_vectors(u)
    sw = B.PairwiseKTable(t.k_single, t.k_minus, t.k_plus, t.k_total)
    m = 1.7
    a = (m * np.sum(t.minus) + m * np.sum(t.plus)) / (m * 3 + m)
    assert B.norm_bound_sum_roots(sw, B.WeightParams(m, m, B.M_GE_L)) == pytest.approx(
        B.norm_bound_diff_roots(t, B.WeightParams(m, m, B.L_GE_M)), rel=1e-12)
    assert a > 0


def test_identical_vectors_equality():
    v = np.array([1.0, 2j, -0.5])
    t = B.PairwiseKTable.from_vectors([v, v, v])
    assert 2 * B.norm_bound_sum_roots(t, W1) == pytest.approx(3 * np.vdot(v, v).real, rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 5), st.integers(1, 20), st.integers(0, 10 ** 6),
       st.floats(0.1, 5), st.floats(0.1, 5))
def test_norm_inequalities(n, dim, seed, a, b):
    rng = make_rng(seed)
    u = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    lhs = float(np.sum(np.abs(u) ** 2))
    t = B.PairwiseKTable.from_vectors(u)
    lo, hi = sorted((a, b))
    assert lhs - 2 * B.norm_bound_sum_roots(t, B.WeightParams(hi, lo, B.M_GE_L)) >= -1e-12 * lhs
    assert lhs - 2 * B.norm_bound_diff_roots(t, B.WeightParams(lo, hi, B.L_GE_M)) >= -1e-12 * lhs
    if hi > lo:
        assert lhs - 2 * B.norm_bound_mixed(t, B.WeightParams(lo, hi, B.L_GT_M)) >= -1e-12 * lhs


def test_build_tables():
    z = B.build_table_observables(maximally_mixed(2), [pauli(1), pauli(2)], SkewParams(0.3, 0.7, 0.5))
    assert np.all(z.k_single == 0) and z.k_total == 0
    rho = density_from_bloch([0.3, 0.4, 0.2])
    a = random_hermitian(2, 5)
    p = SkewParams(0.3, 0.5, 0.2)
    t = B.build_table_observables(rho, [a, -1 * a.matrix], p)
    assert t.k_plus[0, 1] == pytest.approx(0, abs=1e-15)
    assert t.k_minus[0, 1] == pytest.approx(4 * t.k_single[0], rel=1e-12)
    ones = B.build_table_unitaries(rho, [np.eye(2)] * 3, p)
    assert np.allclose(ones.k_single, 0) and np.allclose(ones.k_minus, 0)


def test_example1_table_entries():
    s = math.sqrt(2) / 2
    rho = density_from_bloch([s, 0, s])
    p = SkewParams(1 / 3, 2 / 3, 0.5)
    obs = [pauli(j) for j in (1, 2, 3)]
    t = B.build_table_observables(rho, obs, p)
    for i, a in enumerate(obs):
        assert t.k_single[i] == pytest.approx(spectral_oracle(rho, a, p), rel=1e-10)
    assert t.k_plus[0, 2] == pytest.approx(spectral_oracle(rho, obs[0].matrix + obs[2].matrix, p), rel=1e-10)
    assert t.k_minus[1, 2] == pytest.approx(spectral_oracle(rho, obs[1].matrix - obs[2].matrix, p), rel=1e-10)
    assert t.k_total == pytest.approx(spectral_oracle(rho, sum(o.matrix for o in obs), p), rel=1e-10)
    assert t.total_k == pytest.approx(2.0, rel=1e-12)   # pure state: sum of Pauli variances


def test_example3_table_entries():
    rho = density_from_bloch([math.sqrt(2) / 2, 0, 0])
    p = SkewParams(1 / 3, 2 / 3, 0.5)
    us = rotation_unitaries()
    t = B.build_table_unitaries(rho, us, p)
    for i, u in enumerate(us):
        assert t.k_single[i] == pytest.approx(spectral_oracle(rho, u, p), rel=1e-10)
    assert t.k_plus[0, 1] == pytest.approx(skew_info_operator(rho, us[0].matrix + us[1].matrix, p), rel=1e-12)


def test_report_and_winner():
    rng = make_rng(1)
    u = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    t = B.PairwiseKTable.from_vectors(u)
    rep = B.all_bounds(t)
    assert set(rep.values) == set(B.BOUND_ORDER)
    assert rep.values["prior"] == max(rep.values[k] for k in ("prior1", "prior2", "prior3"))
    assert rep.values["tight"] == max(rep.values[k] for k in ("tight1", "tight2", "tight3"))
    assert rep.values[rep.winner] == max(rep.values.values())
    assert B.pick_winner({"a": 1.0, "b": 1.0}, ("a", "b")) == "a"
    assert B.unitary_bounds(t).values == rep.values
