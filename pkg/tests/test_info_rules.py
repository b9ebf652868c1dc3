import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infomenu.game_core import GameConfig, ZeroEvidenceError, strategy
from infomenu.info_rules import (
    M0,
    M1,
    DirectRule,
    concentrate,
    externality_cost,
    feasible_band,
    gain,
    informativeness,
    message_marginal,
    message_posterior,
    obedience_check,
)
from infomenu.oracle import exact_gain, rule_value

informativeness_values = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
beliefs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_direct_rule_requires_directness():
    DirectRule(0.6, 0.4)
    with pytest.raises(ValueError):
        DirectRule(0.4, 0.4)
    with pytest.raises(ValueError):
        DirectRule(1.2, 0.4)


def test_concentrate_examples():
    assert concentrate(0.0) == DirectRule(1.0, 1.0)
    assert concentrate(0.5) == DirectRule(1.0, 0.5)
    assert concentrate(-0.5) == DirectRule(0.5, 1.0)


@given(value=informativeness_values)
def test_concentrate_round_trips(value):
    # 1 - (1 - I) double-rounds for small positive I, so exactness holds to
    # half an ulp at 1; the subtraction itself is exact (Sterbenz)
    assert informativeness(concentrate(value)) == pytest.approx(value, abs=2.3e-16)


def test_informativeness_examples():
    assert informativeness(DirectRule(1.0, 1.0)) == 0.0
    assert informativeness(DirectRule(1.0, 0.5)) == 0.5
    assert informativeness(DirectRule(0.5, 1.0)) == -0.5


def test_message_marginal_examples():
    assert message_marginal(DirectRule(1.0, 1.0), 0.3) == (0.3, 0.7)
    assert message_marginal(DirectRule(1.0, 0.5), 0.75) == (0.875, 0.125)
    assert message_marginal(DirectRule(0.5, 1.0), 0.5) == (0.25, 0.75)


@given(value=informativeness_values, belief=beliefs)
@settings(max_examples=300)
def test_concentrated_marginal_closed_form(value, belief):
    _, p_m1 = message_marginal(concentrate(value), belief)
    closed = 1.0 - belief - belief * value - (1.0 - 2.0 * belief) * max(value, 0.0)
    assert p_m1 == pytest.approx(closed, abs=1e-12)


def test_message_posterior_examples():
    rule = DirectRule(1.0, 0.5)
    assert message_posterior(rule, 0.75, M0) == pytest.approx(6.0 / 7.0, abs=1e-15)
    assert message_posterior(rule, 0.75, M1) == 0.0
    assert message_posterior(DirectRule(1.0, 1.0), 0.3, M0) == 1.0
    with pytest.raises(ZeroEvidenceError):
        message_posterior(concentrate(1.0), 0.3, M1)
    with pytest.raises(ValueError):
        message_posterior(rule, 0.75, 2)


def test_feasible_band_examples():
    band = feasible_band(1.0 / 3.0)
    assert band.lo == -1.0 and band.hi == pytest.approx(0.5, abs=1e-15)
    band = feasible_band(2.0 / 3.0)
    assert band.lo == pytest.approx(-0.5, abs=1e-15) and band.hi == 1.0
    band = feasible_band(0.5)
    assert band.lo == -1.0 and band.hi == pytest.approx(1.0, abs=1e-15)


def test_gain_examples():
    assert gain(0.0, 0.5) == 0.5
    assert gain(0.0, 0.0) == 0.0
    assert gain(-1.0, 0.0) == 0.0
    assert gain(0.5, 0.75) == pytest.approx(0.125, abs=1e-15)


@given(belief=beliefs, position=st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=300)
def test_gain_nonnegative_and_exact_on_band(belief, position):
    band = feasible_band(belief)
    value = band.lo + position * (band.hi - band.lo)
    assert gain(value, belief) >= -1e-12
    # dual route: message enumeration reproduces the closed form on the band
    assert exact_gain(value, belief) == pytest.approx(gain(value, belief), abs=1e-12)


def test_gain_formula_only_valid_inside_band():
    # outside the band the buyer disobeys and true gain is 0, not the formula
    assert gain(0.9, 0.1) < 0.0
    assert exact_gain(0.9, 0.1) == pytest.approx(0.0, abs=1e-15)


def test_externality_cost_examples():
    cfg = GameConfig(0.8, 0.3)
    assert externality_cost(1.0, cfg) == pytest.approx(0.8 * 0.3, abs=1e-15)
    assert externality_cost(-1.0, cfg) == pytest.approx(0.8 * 0.7, abs=1e-15)
    cfg = GameConfig(1.0, 0.3)
    assert externality_cost(0.0, cfg) == pytest.approx(0.3**2 + 0.7**2, abs=1e-15)
    for value in (-0.8, -0.2, 0.0, 0.37, 1.0):
        assert externality_cost(value, GameConfig(1.0, 0.5)) == pytest.approx(
            0.5, abs=1e-15
        )


@given(
    value=informativeness_values,
    tau=st.floats(min_value=0.0, max_value=5.0, allow_nan=False),
    v_s=beliefs,
)
@settings(max_examples=300)
def test_cost_bounds(value, tau, v_s):
    cost = externality_cost(value, GameConfig(tau, v_s))
    assert -1e-12 <= cost <= tau + 1e-12


def test_obedience_examples():
    for belief in (0.0, 0.2, 0.5, 0.9, 1.0):
        assert obedience_check(DirectRule(1.0, 1.0), belief)
    assert obedience_check(DirectRule(1.0, 0.5), 0.75)
    assert not obedience_check(concentrate(0.9), 0.1)


@given(value=informativeness_values, belief=beliefs)
@settings(max_examples=300)
def test_obedience_matches_feasible_band(value, belief):
    band = feasible_band(belief)
    if band.contains(value, -1e-9):  # strictly inside
        assert obedience_check(concentrate(value), belief)
    elif not band.contains(value, 1e-9):  # strictly outside
        assert not obedience_check(concentrate(value), belief)


def _merge_by_action(table: np.ndarray, belief: float) -> np.ndarray:
    """Merge messages inducing the same action for type ``belief``."""
    merged = np.zeros((2, 2))
    for m in range(table.shape[1]):
        mass0 = belief * table[0, m]
        mass1 = (1.0 - belief) * table[1, m]
        action = 0 if mass0 >= mass1 else 1
        merged[:, action] += table[:, m]
    return merged


def test_garbling_merge_dominance():
    # merging messages by the true type's induced action keeps that type's
    # value and weakly lowers everyone else's (Blackwell garbling)
    rng = np.random.default_rng(20250810)
    grid = np.linspace(0.0, 1.0, 21)
    for _ in range(60):
        n_messages = int(rng.integers(3, 6))
        table = rng.dirichlet(np.ones(n_messages), size=2)
        true_type = float(rng.uniform(0.0, 1.0))
        merged = _merge_by_action(table, true_type)
        assert rule_value(merged, true_type) == pytest.approx(
            rule_value(table, true_type), abs=1e-12
        )
        for other in grid:
            assert rule_value(merged, other) <= rule_value(table, other) + 1e-12


def test_concentration_weakly_dominates():
    # a direct rule is a garbling of the concentrated rule with the same
    # informativeness, so concentration can only raise a type's value
    rng = np.random.default_rng(7)
    grid = np.linspace(0.0, 1.0, 41)
    for _ in range(60):
        i0 = float(rng.uniform(0.0, 1.0))
        i1 = float(rng.uniform(max(0.0, 1.0 - i0), 1.0))
        original = np.array([[i0, 1.0 - i0], [1.0 - i1, i1]])
        rule = concentrate(i0 - i1)
        concentrated = np.array([[rule.i0, 1.0 - rule.i0], [1.0 - rule.i1, rule.i1]])
        for belief in grid:
            assert rule_value(concentrated, belief) >= rule_value(original, belief) - 1e-12


def test_gain_via_simulated_strategy_consistency():
    # strategy(message_posterior(...)) is the recommendation inside the band
    for value, belief in [(0.5, 0.75), (-0.4, 0.3), (0.2, 0.5)]:
        rule = concentrate(value)
        assert strategy(message_posterior(rule, belief, M0)) == 0
        assert strategy(message_posterior(rule, belief, M1)) == 1
