import math

import pytest

from dilemma import (
    BLOCK_TRIALS,
    InvalidParameterError,
    PerVoter,
    SimulationSpec,
    State,
    classical_rule,
    rule_fp,
    simulate,
    table_law,
)


def test_spec_validation():
    with pytest.raises(InvalidParameterError):
        SimulationSpec(4, "PQ", 0.6, 100, 1)
    with pytest.raises(InvalidParameterError):
        SimulationSpec(3, "XX", 0.6, 100, 1)
    with pytest.raises(InvalidParameterError):
        SimulationSpec(3, "PQ", 0.6, 0, 1)
    with pytest.raises(InvalidParameterError):
        SimulationSpec(3, "PQ", 0.6, 100, 1.5)
    with pytest.raises(InvalidParameterError):
        SimulationSpec(3, "PQ", 1.2, 100, 1)
    with pytest.raises(InvalidParameterError):
        SimulationSpec(3, "PQ", 0.6, 100, 1, rule=classical_rule("pb", 5))


def test_counts_sum_to_trials():
    for trials in (1, 1000, BLOCK_TRIALS + 17):
        res = simulate(SimulationSpec(3, "PQ", 0.6, trials, 42))
        assert sum(res.counts.values()) == trials
        assert all(c > 0 for c in res.counts.values())
        for T, c in res.counts.items():
            assert T.n == 3
            assert res.frequencies[T] == c / trials


def test_same_seed_same_result():
    spec = SimulationSpec(3, "PnQ", 0.6, 2 * BLOCK_TRIALS + 5, 99)
    assert simulate(spec).counts == simulate(spec).counts
    other = SimulationSpec(3, "PnQ", 0.6, 2 * BLOCK_TRIALS + 5, 100)
    assert simulate(other).counts != simulate(spec).counts


def test_frequencies_track_the_closed_form_law():
    trials = 200_000
    for state in ("PQ", "PnQ"):
        res = simulate(SimulationSpec(3, state, 0.6, trials, 7))
        law = table_law(3, state, 0.6)
        for T, p in law.items():
            f = res.frequencies.get(T, 0.0)
            sigma = math.sqrt(p * (1.0 - p) / trials)
            assert abs(f - p) <= 5.0 * sigma + 1e-9, (state, tuple(T))


def test_per_voter_frequencies_track_the_law():
    trials = 200_000
    profile = PerVoter((0.55, 0.7, 0.85))
    res = simulate(SimulationSpec(3, "PnQ", profile, trials, 11))
    law = table_law(3, "PnQ", profile)
    for T, p in law.items():
        f = res.frequencies.get(T, 0.0)
        sigma = math.sqrt(p * (1.0 - p) / trials)
        assert abs(f - p) <= 5.0 * sigma + 1e-9


def test_rule_positive_rate_tracks_false_positive_probability():
    trials = 200_000
    pb = classical_rule("pb", 3)
    res = simulate(SimulationSpec(3, "PnQ", 0.6, trials, 13, rule=pb))
    p = rule_fp(pb, 0.6)
    sigma = math.sqrt(p * (1.0 - p) / trials)
    assert res.positives == sum(c for T, c in res.counts.items()
                                if pb.decides(T))
    assert abs(res.positive_rate - p) <= 5.0 * sigma
    assert res.positive_stderr == pytest.approx(
        math.sqrt(res.positive_rate * (1 - res.positive_rate) / trials))


def test_result_json_shape():
    pb = classical_rule("pb", 3)
    spec = SimulationSpec(3, State.PnQ, 0.6, 5000, 21, rule=pb)
    rec = simulate(spec).to_json()
    assert rec["rng"] == "pcg64"
    assert rec["block_trials"] == BLOCK_TRIALS == 65536
    assert rec["spec"]["n"] == 3
    assert rec["spec"]["state"] == "PnQ"
    assert rec["spec"]["thetas"] == [0.6, 0.6, 0.6]
    assert rec["spec"]["rule"] == [[2, 0, 0, 1], [1, 1, 1, 0]]
    assert sum(e["count"] for e in rec["tables"]) == 5000
    rhos = [e["table"][0] - e["table"][3] for e in rec["tables"]]
    assert rhos == sorted(rhos, reverse=True)
    assert rec["positive"]["count"] == sum(
        e["count"] for e in rec["tables"]
        if pb.decides(tuple(e["table"])))


def test_results_without_rule_have_no_positive_block():
    res = simulate(SimulationSpec(3, "PQ", 0.6, 1000, 3))
    assert res.positives is None and res.positive_rate is None
    assert "positive" not in res.to_json()
