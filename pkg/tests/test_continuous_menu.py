import math

import numpy as np
import pytest

from infomenu.continuous_menu import (
    IrregularDistributionError,
    MenuRegime,
    StepMenu,
    TypeDistribution,
    allocation,
    beta_distribution,
    bimodal_distribution,
    expected_profit,
    expected_transfer_and_cost,
    exponential_distribution,
    gaussian_distribution,
    profit_baselines,
    regularity_check,
    solve_dual,
    tau_prime,
    tilted_distribution,
    transfer,
    uniform_distribution,
    virtual_values,
)
from infomenu.game_core import GameConfig
from infomenu.info_rules import externality_cost, gain

UNIFORM = uniform_distribution()


def test_distribution_validation_catches_mismatched_pair():
    broken = TypeDistribution(
        density=lambda v: np.ones_like(np.asarray(v, dtype=float)),
        cdf=lambda v: np.asarray(v, dtype=float) ** 2,
        name="broken",
    )
    with pytest.raises(ValueError):
        broken.validate()


def test_builtin_distributions_validate():
    dists = (
        UNIFORM,
        beta_distribution(2.0, 3.0),
        tilted_distribution(0.3),
        exponential_distribution(0.4),
        gaussian_distribution(0.5, 1.2),
        bimodal_distribution(),
    )
    for dist in dists:
        dist.validate()


def test_regularity():
    assert regularity_check(UNIFORM, GameConfig(0.7, 0.3), 1001)
    assert regularity_check(UNIFORM, GameConfig(0.0, 0.0), 2)
    assert not regularity_check(bimodal_distribution(), GameConfig(0.0, 0.5), 1001)


def test_beta_with_vanishing_endpoint_density_is_irregular():
    # p(1)=0 pulls pi_minus back down to F(1) at the top: no ironing, rejected
    assert not regularity_check(beta_distribution(2.0, 2.0), GameConfig(0.0, 0.5), 1001)
    assert regularity_check(tilted_distribution(0.3), GameConfig(2.0, 0.9), 1001)


def test_irregular_error_names_grid_point():
    with pytest.raises(IrregularDistributionError, match=r"v_b = 0\.\d+"):
        solve_dual(bimodal_distribution(), GameConfig(0.0, 0.5))


def test_virtual_values_uniform():
    vv = virtual_values(UNIFORM, GameConfig(0.0, 0.3))
    grid = np.linspace(0.0, 1.0, 11)
    assert np.allclose(vv.minus(grid), 2.0 * grid, atol=1e-15)
    assert np.allclose(vv.plus(grid), 2.0 * grid - 1.0, atol=1e-15)
    # tau = tau' collapse: v_s = 0, tau = 1 makes both virtual values 2v
    vv = virtual_values(UNIFORM, GameConfig(1.0, 0.0))
    assert np.allclose(vv.minus(grid), 2.0 * grid, atol=1e-15)
    assert np.allclose(vv.plus(grid), 2.0 * grid, atol=1e-15)


@pytest.mark.parametrize("dist_name", ["uniform", "beta"])
@pytest.mark.parametrize("tau", [0.0, 0.8, 2.5])
@pytest.mark.parametrize("v_s", [0.0, 0.25, 0.5, 0.9])
def test_virtual_value_gap_identity(dist_name, tau, v_s):
    dist = UNIFORM if dist_name == "uniform" else beta_distribution(2.0, 2.0)
    cfg = GameConfig(tau, v_s)
    vv = virtual_values(dist, cfg)
    grid = np.linspace(0.0, 1.0, 101)
    gap = np.asarray(vv.minus(grid)) - np.asarray(vv.plus(grid))
    expected = np.asarray(dist.density(grid)) * (1.0 - tau * (1.0 - 2.0 * v_s) ** 2)
    assert np.allclose(gap, expected, atol=1e-12)


def test_tau_prime():
    assert tau_prime(GameConfig(0.0, 0.8)) == pytest.approx(25.0 / 9.0, abs=1e-12)
    assert math.isinf(tau_prime(GameConfig(0.0, 0.5)))
    assert tau_prime(GameConfig(0.0, 0.0)) == 1.0


def test_solve_dual_uniform_zero_tau():
    for v_s in (0.0, 0.3, 0.8):
        menu = solve_dual(UNIFORM, GameConfig(0.0, v_s))
        assert menu.regime is MenuRegime.SCREENING
        assert menu.v_lo == 0.25 and menu.v_hi == 0.75
        assert menu.lambda_star == 0.5


def test_solve_dual_paths_agree():
    for tau, v_s in [(0.0, 0.3), (1.2, 0.8), (0.9, 0.1), (2.0, 0.62)]:
        cfg = GameConfig(tau, v_s)
        if cfg.tau >= tau_prime(cfg):
            continue
        closed = solve_dual(UNIFORM, cfg, method="closed_form")
        bisected = solve_dual(UNIFORM, cfg, method="bisection")
        assert closed.lambda_star == pytest.approx(bisected.lambda_star, abs=1e-9)
        assert closed.v_lo == pytest.approx(bisected.v_lo, abs=1e-9)
        assert closed.v_hi == pytest.approx(bisected.v_hi, abs=1e-9)
    with pytest.raises(ValueError, match="closed-form"):
        solve_dual(tilted_distribution(0.2), GameConfig(0.0, 0.5), method="closed_form")


def test_no_information_regime():
    cfg = GameConfig(25.0 / 9.0, 0.8)
    menu = solve_dual(UNIFORM, cfg)
    assert menu.regime is MenuRegime.NO_INFORMATION
    assert menu.v_lo == 0.5 and menu.v_hi == 0.5
    vv = virtual_values(UNIFORM, cfg)
    assert menu.lambda_star == pytest.approx(float(vv.plus(0.5)), abs=1e-15)


def test_half_seller_belief_is_tau_invariant():
    base = solve_dual(UNIFORM, GameConfig(0.0, 0.5))
    for tau in (0.5, 2.0, 10.0):
        menu = solve_dual(UNIFORM, GameConfig(tau, 0.5))
        assert menu.regime is MenuRegime.SCREENING
        assert menu.v_lo == pytest.approx(base.v_lo, abs=1e-12)
        assert menu.v_hi == pytest.approx(base.v_hi, abs=1e-12)


def test_allocation_and_ties():
    menu = solve_dual(UNIFORM, GameConfig(0.0, 0.3))
    assert allocation(menu, 0.5) == 0.0
    assert allocation(menu, 0.1) == -1.0
    assert allocation(menu, 0.9) == 1.0
    assert allocation(menu, 0.25) == 0.0 and allocation(menu, 0.75) == 0.0
    no_info = solve_dual(UNIFORM, GameConfig(3.0, 0.8))
    assert allocation(no_info, 0.9) == 1.0
    assert allocation(no_info, 0.5) == -1.0


def test_transfer_examples():
    menu = solve_dual(UNIFORM, GameConfig(0.0, 0.3))
    assert transfer(menu, 0.5) == 0.25
    assert transfer(menu, 0.1) == 0.0
    assert transfer(menu, 0.9) == 0.0
    # closed form matches the envelope formula evaluated directly
    for v in (0.1, 0.3, 0.5, 0.8, 0.97):
        level = allocation(menu, v)
        if v <= menu.v_lo:
            integral = -v
        elif v <= menu.v_hi:
            integral = -menu.v_lo
        else:
            integral = -menu.v_lo + (v - menu.v_hi)
        envelope = level * (v - (1.0 if level >= 0 else 0.0)) - integral
        assert transfer(menu, v) == pytest.approx(envelope, abs=1e-12)


def test_expected_profit_uniform():
    cfg = GameConfig(0.0, 0.3)
    menu = solve_dual(UNIFORM, cfg)
    assert expected_profit(menu, UNIFORM, cfg) == pytest.approx(0.125, abs=1e-12)
    e_transfer, e_cost = expected_transfer_and_cost(menu, UNIFORM, cfg)
    assert e_cost == 0.0
    assert expected_profit(menu, UNIFORM, cfg) == pytest.approx(e_transfer, abs=1e-12)


def test_expected_profit_no_information_menu():
    for tau, v_s in [(3.0, 0.8), (4.0, 0.1)]:
        cfg = GameConfig(tau, v_s)
        menu = solve_dual(UNIFORM, cfg)
        assert menu.regime is MenuRegime.NO_INFORMATION
        assert expected_profit(menu, UNIFORM, cfg) == pytest.approx(-tau / 2.0, abs=1e-12)


def test_profit_baselines():
    base = profit_baselines(UNIFORM, GameConfig(0.0, 0.3))
    assert base.versioning == pytest.approx(0.125, abs=1e-12)
    assert base.full_info == 0.0 and base.no_info == 0.0
    cfg = GameConfig(25.0 / 9.0, 0.8)
    base = profit_baselines(UNIFORM, cfg)
    assert base.versioning == pytest.approx(base.no_info, abs=1e-9)
    for tau in np.linspace(0.0, 4.0, 9):
        for v_s in (0.1, 0.5, 0.9):
            b = profit_baselines(UNIFORM, GameConfig(tau, v_s))
            assert b.no_info >= b.full_info - 1e-12
            assert b.versioning >= b.no_info - 1e-9


def test_step_menu_invariants():
    menu = solve_dual(tilted_distribution(0.3), GameConfig(0.6, 0.7))
    assert menu.allocation_integral() == 0.0
    grid = np.linspace(0.0, 1.0, 401)
    allocations = [allocation(menu, v) for v in grid]
    assert all(b >= a for a, b in zip(allocations, allocations[1:]))
    with pytest.raises(ValueError):
        StepMenu(0.3, 0.6, 0.0, MenuRegime.SCREENING)  # v_lo != 1 - v_hi
    with pytest.raises(ValueError):
        StepMenu(0.7, 0.3, 0.0, MenuRegime.SCREENING)


def test_rent_is_zero_at_extremes_and_truthful():
    for cfg in (GameConfig(0.0, 0.3), GameConfig(1.4, 0.75), GameConfig(0.5, 0.5)):
        menu = solve_dual(UNIFORM, cfg)

        def rent(report, belief):
            return gain(allocation(menu, report), belief) - transfer(menu, report)

        assert rent(0.0, 0.0) == 0.0
        assert rent(1.0, 1.0) == 0.0
        reports = np.linspace(0.0, 1.0, 41)
        for belief in np.linspace(0.0, 1.0, 41):
            truthful = rent(belief, belief)
            assert truthful >= -1e-9
            assert truthful >= max(rent(b, belief) for b in reports) - 1e-9
