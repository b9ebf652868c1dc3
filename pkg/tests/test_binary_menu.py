import math

import numpy as np
import pytest

from infomenu.binary_menu import (
    BinaryScenario,
    Congruence,
    boundaries,
    boundary_grid,
    classify,
    ibar,
    regime_label,
    solve,
)
from infomenu.game_core import GameConfig
from infomenu.info_rules import feasible_band, gain
from infomenu.oracle import brute_force_binary

CONGRUENT = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.0, 0.0))
NONCONGRUENT = BinaryScenario(1.0 / 6.0, 2.0 / 3.0, 0.5, GameConfig(0.0, 1.0))


def test_scenario_invariants():
    with pytest.raises(ValueError):
        BinaryScenario(0.5, 2.0 / 3.0, 0.5, GameConfig(0.0, 0.0))  # low type less precise
    with pytest.raises(ValueError):
        BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.5, GameConfig(0.0, 0.0))


def test_classify():
    assert classify(CONGRUENT) is Congruence.CONGRUENT
    assert classify(NONCONGRUENT) is Congruence.NONCONGRUENT
    with pytest.raises(ValueError):
        classify(BinaryScenario(5.0 / 6.0, 0.5, 0.5, GameConfig(0.0, 0.0)))
    # mirrored scenarios classify the same way
    assert classify(BinaryScenario(1.0 / 6.0, 1.0 / 3.0, 0.5, GameConfig(0.0, 0.0))) is (
        Congruence.CONGRUENT
    )


def test_congruent_zero_tau_full_information():
    menu = solve(CONGRUENT)
    assert menu.i_low == 0.0 and menu.i_high == 0.0
    assert menu.t_low == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert menu.t_high == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert menu.expected_profit == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_congruent_high_tau_sells_nothing():
    scenario = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.5, 0.0))
    menu = solve(scenario)
    assert menu.i_low == 1.0 and menu.i_high == 1.0
    # profit is zero minus the no-information menu's cost (zero at v_s = 0)
    assert menu.expected_profit == pytest.approx(0.0, abs=1e-12)


def test_noncongruent_partial_information():
    menu = solve(NONCONGRUENT)
    assert menu.i_low == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert menu.i_high == 0.0
    assert ibar(NONCONGRUENT) == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert menu.t_low == pytest.approx(1.0 / 9.0, abs=1e-12)
    assert menu.t_high == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_boundaries_congruent():
    bounds = boundaries(CONGRUENT)
    assert bounds.tau_low == pytest.approx(1.0 / 12.0, abs=1e-12)
    assert bounds.tau_high == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_boundaries_singularities():
    half = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.0, 0.5))
    bounds = boundaries(half)
    assert math.isinf(bounds.tau_low) and math.isinf(bounds.tau_high)
    noncon = BinaryScenario(1.0 / 6.0, 2.0 / 3.0, 0.5, GameConfig(0.0, 0.0))
    assert boundaries(noncon).tau_high == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert math.isinf(boundaries(noncon).tau_low)  # v_s = 0 zeroes the denominator


def test_regime_switches_at_closed_form_boundaries():
    # v_s = 0: menus switch (0,0) -> (1,0) at tau_low and (1,0) -> (1,1) at tau_high
    bounds = boundaries(CONGRUENT)
    for tau, expected in [
        (bounds.tau_low - 1e-6, (0.0, 0.0)),
        (bounds.tau_low + 1e-6, (1.0, 0.0)),
        (bounds.tau_high - 1e-6, (1.0, 0.0)),
        (bounds.tau_high + 1e-6, (1.0, 1.0)),
    ]:
        menu = solve(
            BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(tau, 0.0))
        )
        assert (menu.i_low, menu.i_high) == expected


def test_tie_breaks_prefer_more_informative_menu():
    # at tau exactly on a boundary the profits tie; the informative menu wins
    bounds = boundaries(CONGRUENT)
    menu = solve(
        BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(bounds.tau_high, 0.0))
    )
    assert menu.i_high == 0.0


def test_menus_satisfy_ic_and_ir():
    rng = np.random.default_rng(42)
    for _ in range(200):
        v_high = rng.uniform(0.02, 0.98)
        gap = abs(v_high - 0.5)
        side = rng.random() < 0.5
        if side and v_high + gap < 1.0 - 1e-3:
            v_low = rng.uniform(min(v_high + gap + 1e-3, 1.0), 1.0)
        else:
            v_low = rng.uniform(0.0, max(1.0 - v_high - 1e-3, 1e-6))
        if abs(v_high - 0.5) >= abs(v_low - 0.5) or v_high == 0.5 or v_low == 0.5:
            continue
        scenario = BinaryScenario(
            v_low, v_high, rng.uniform(0.0, 1.0), GameConfig(rng.uniform(0, 3), rng.uniform(0, 1))
        )
        menu = solve(scenario)
        rent_low = gain(menu.i_low, scenario.v_low) - menu.t_low
        rent_high = gain(menu.i_high, scenario.v_high) - menu.t_high
        assert rent_low >= -1e-9 and rent_high >= -1e-9
        assert rent_low >= gain(menu.i_high, scenario.v_low) - menu.t_high - 1e-9
        assert rent_high >= gain(menu.i_low, scenario.v_high) - menu.t_low - 1e-9
        assert menu.t_low >= 0.0 and menu.t_high >= 0.0
        assert feasible_band(scenario.v_low).contains(menu.i_low, 1e-9)
        assert feasible_band(scenario.v_high).contains(menu.i_high, 1e-9)


def test_solve_dominates_grid_search():
    rng = np.random.default_rng(3)
    for _ in range(40):
        v_high = rng.uniform(0.55, 0.95)
        v_low = rng.uniform(v_high + 0.02, 1.0) if rng.random() < 0.5 else rng.uniform(
            0.0, 1.0 - v_high - 0.02
        )
        if abs(v_high - 0.5) >= abs(v_low - 0.5):
            continue
        scenario = BinaryScenario(
            v_low, v_high, rng.uniform(0.05, 0.95), GameConfig(rng.uniform(0, 2), rng.uniform(0, 1))
        )
        grid_menu = brute_force_binary(scenario, 101)
        menu = solve(scenario)
        assert menu.expected_profit >= grid_menu.expected_profit - 1e-9
        assert abs(menu.expected_profit - grid_menu.expected_profit) <= 2e-3


def test_mirrored_scenario_reflects():
    base = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 0.4, GameConfig(0.7, 0.2))
    mirror = BinaryScenario(1.0 / 6.0, 1.0 / 3.0, 0.4, GameConfig(0.7, 0.8))
    menu = solve(base)
    mirrored = solve(mirror)
    assert mirrored.i_low == pytest.approx(-menu.i_low, abs=1e-12)
    assert mirrored.i_high == pytest.approx(-menu.i_high, abs=1e-12)
    assert mirrored.t_low == pytest.approx(menu.t_low, abs=1e-12)
    assert mirrored.expected_profit == pytest.approx(menu.expected_profit, abs=1e-12)


def test_boundary_grid_single_cell_matches_solve():
    rows = boundary_grid(CONGRUENT, [0.0], [0.0])
    assert len(rows) == 1
    assert rows[0].menu == solve(CONGRUENT)
    assert rows[0].regime == "full-full"
    with pytest.raises(ValueError):
        boundary_grid(CONGRUENT, [], [0.0])
    with pytest.raises(ValueError):
        boundary_grid(CONGRUENT, [1.5], [0.0])
    with pytest.raises(ValueError):
        boundary_grid(CONGRUENT, [0.5], [-0.5])


def test_boundary_grid_traces_closed_forms_below_half():
    # regime transitions along tau match the closed forms for v_s <= 1/2
    for v_s in (0.0, 0.2, 0.4):
        scenario = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.0, v_s))
        bounds = boundaries(scenario)
        taus = np.linspace(0.0, 1.0, 201)
        rows = boundary_grid(scenario, [v_s], taus)
        labels = [row.regime for row in rows]
        switches = [
            0.5 * (taus[k] + taus[k + 1])
            for k in range(len(taus) - 1)
            if labels[k] != labels[k + 1]
        ]
        step = taus[1] - taus[0]
        expected = [b for b in (bounds.tau_low, bounds.tau_high) if 0.0 <= b <= 1.0]
        assert len(switches) == len(expected)
        for found, target in zip(switches, expected):
            assert abs(found - target) <= step


def test_regime_labels():
    menu = solve(BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.5, 0.0)))
    label = regime_label(
        BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(0.5, 0.0)), menu
    )
    assert label == "none-none"
    # pooling at the low type's zero-gain edge leaves the high type strict surplus
    pooled = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, GameConfig(1.0, 1.0))
    assert regime_label(pooled, solve(pooled)) == "edge-partial"
