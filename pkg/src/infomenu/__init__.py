"""Menus of priced information products sold to a competing decision-maker.

Lay of the land:

- :mod:`infomenu.game_core` — the binary game, beliefs, Bayes updates.
- :mod:`infomenu.info_rules` — communication rules, gain, externality cost.
- :mod:`infomenu.binary_menu` — exact two-type screening menus.
- :mod:`infomenu.continuous_menu` — Myersonian step menus for continuous types.
- :mod:`infomenu.oracle` — Monte-Carlo and grid-search verification.
- :mod:`infomenu.cli` — command-line entry point (``infomenu``).
"""

from .binary_menu import (
    BinaryMenu,
    BinaryScenario,
    Boundaries,
    Congruence,
    boundaries,
    boundary_grid,
    classify,
    solve,
)
from .continuous_menu import (
    MenuRegime,
    ProfitBaselines,
    StepMenu,
    TypeDistribution,
    allocation,
    beta_distribution,
    bimodal_distribution,
    expected_profit,
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
from .game_core import GameConfig, no_info_value, posterior_update, strategy, utility
from .info_rules import (
    DirectRule,
    FeasibleBand,
    concentrate,
    externality_cost,
    feasible_band,
    gain,
    informativeness,
    message_marginal,
    message_posterior,
    obedience_check,
)
from .oracle import (
    McConfig,
    OracleReport,
    brute_force_binary,
    brute_force_continuous,
    envelope_check,
    mc_cost,
    mc_gain,
)

__version__ = "0.1.0"
