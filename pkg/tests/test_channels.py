import numpy as np
import pytest

from skewlab import channels as C
from skewlab.bounds import DEFAULT_WEIGHTS
from skewlab.errors import SearchBudgetExceeded, TooFewChannels
from skewlab.quantum import (
    KrausChannel,
    amplitude_damping,
    bit_flip,
    density_from_bloch,
    maximally_mixed,
    phase_damping,
)
from skewlab.sampling import ginibre_density, haar_unitary, random_kraus_channel
from skewlab.skew import SkewParams, skew_info_channel, spectral_oracle

P = SkewParams(0.25, 0.75, 0.5)


def test_counting():
    assert len(list(C.assignment_search(2, 3))) == 4
    assert list(C.assignment_search(1, 4)) == [((0,),) * 4]
    assert len(list(C.assignment_search(3, 2))) == 6
    assert len(list(C.assignment_search(3, 2, "unrestricted"))) == 36
    assert C.count_canonical(3, 3) == 36
    with pytest.raises(TooFewChannels):
        list(C.assignment_search(2, 1))


def test_brute_force_equivalence():
    rho = ginibre_density(2, 4)
    chans = [random_kraus_channel(2, 3, (4, t)) for t in range(2)]
    a = C.channel_bounds(rho, chans, P)
    b = C.channel_bounds(rho, chans, P, mode="unrestricted")
    assert a.search_mode == "exhaustive"
    assert a.values == b.values


def test_example2_entries():
    rho = density_from_bloch([np.sqrt(3) / 2, 0, 0])
    chans = [amplitude_damping(0.3), phase_damping(0.3), bit_flip(0.3)]
    t = C.channel_k_table(rho, chans, ((0, 1),) * 3, P)
    for i, ch in enumerate(chans):
        assert t.k_single[i] == pytest.approx(sum(spectral_oracle(rho, e, P) for e in ch.kraus), rel=1e-10)
    e = chans[0].kraus[1] + chans[2].kraus[1]
    assert t.per_i_plus[1, 0, 2] == pytest.approx(spectral_oracle(rho, e, P), rel=1e-10)
    col = sum(ch.kraus[0] for ch in chans)
    assert t.k_mixed_total[0] == pytest.approx(spectral_oracle(rho, col, P), rel=1e-10)


def test_zero_state_and_same_channel():
    chans = [amplitude_damping(0.3), bit_flip(0.2)]
    rep = C.channel_bounds(maximally_mixed(2), chans, P)
    assert all(v == pytest.approx(0, abs=1e-15) for v in rep.values.values() if v is not None)
    rho = ginibre_density(2, 1)
    ch = random_kraus_channel(2, 2, 3)
    t = C.channel_k_table(rho, [ch, ch], ((0, 1), (0, 1)), P)
    assert np.allclose(t.pair_sum_minus, 0, atol=1e-15)


def test_dominance_and_composites():
    rho = ginibre_density(3, 2)
    chans = [random_kraus_channel(3, 2, (2, t)) for t in range(3)]
    rep = C.channel_bounds(rho, chans, P)
    assert rep.total_k == pytest.approx(sum(skew_info_channel(rho, c, P) for c in chans))
    for k in C.CHANNEL_BOUND_ORDER:
        assert rep[k] is None or rep[k] <= rep.total_k + 1e-9
    v = rep.values
    assert v["prior"] == max(v["prior1"], v["prior2"], v["prior3"])
    assert v["optimal"] == max(v["stacked1"], v["stacked2"], v["kraus3"])
    assert C.optimal_channel_bound(rho, chans, P).values["optimal"] == v["optimal"]
    assert set(C.stacked_bounds(rho, chans, P).values) == {"stacked1", "stacked2", "stacked3"}
    assert C.prior_channel_bounds(rho, chans, P).values["prior2"] == v["prior2"]


def test_prior1_absent_for_two_channels():
    rho = ginibre_density(2, 5)
    rep = C.channel_bounds(rho, [amplitude_damping(0.3), bit_flip(0.3)], P)
    assert rep["prior1"] is None


def test_single_kraus_collapse():
    # unitary channels: kraus-wise and stacked forms coincide
    rho = ginibre_density(2, 6)
    chans = [KrausChannel("u", (haar_unitary(2, (6, t)).matrix,)) for t in range(3)]
    v = C.channel_bounds(rho, chans, P).values
    for j in (1, 2, 3):
        assert v[f"kraus{j}"] == pytest.approx(v[f"stacked{j}"], rel=1e-12)


def test_relabeling_invariance_exact():
    rho = ginibre_density(3, 3)
    chans = [random_kraus_channel(3, 2, (3, t)) for t in range(3)]
    a = C.channel_bounds(rho, chans, P).values
    b = C.channel_bounds(rho, [KrausChannel(c.name, c.kraus[::-1]) for c in chans], P).values
    assert a == b


def test_zero_padding():
    rho = ginibre_density(2, 7)
    chans = [KrausChannel("id", (np.eye(2, dtype=complex),)), random_kraus_channel(2, 2, 7)]
    rep = C.channel_bounds(rho, chans, P)
    assert rep.values["optimal"] <= rep.total_k + 1e-9


def test_heuristic_mode_and_budget():
    rho = ginibre_density(2, 8)
    chans = [random_kraus_channel(2, 3, (8, t)) for t in range(3)]
    ex = C.channel_bounds(rho, chans, P)
    h = C.channel_bounds(rho, chans, P, mode="heuristic", seed=1, restarts=8)
    assert h.search_mode == "heuristic"
    for k, v in h.values.items():
        assert v is None or v <= ex.values[k] + 1e-15
    again = C.channel_bounds(rho, chans, P, mode="heuristic", seed=1, restarts=8)
    assert again.values == h.values
    with pytest.raises(SearchBudgetExceeded) as info:
        C.channel_bounds(rho, chans, P, mode="heuristic", seed=1, max_evaluations=3)
    assert info.value.best is not None


def test_default_weights_used():
    rho = ginibre_density(2, 9)
    chans = [amplitude_damping(0.1), phase_damping(0.2)]
    assert C.channel_bounds(rho, chans, P).weights == tuple(DEFAULT_WEIGHTS)
