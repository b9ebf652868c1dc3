"""Exact solver for the two-type screening problem.

A menu for types ``{v_low, v_high}`` is a pair of concentrated rules with
prices, ``(I_k, t_k)``, maximizing

    phi·(t_high − c(I_high)) + (1−phi)·(t_low − c(I_low))

subject to individual rationality and incentive compatibility for both
types, with ``c`` the seller's externality cost.  ``v_high`` is the less
precise type (closer to 1/2) and therefore values the fully informative
rule more.  Scenarios with ``v_high < 1/2`` are handled by reflecting all
beliefs (``v ↦ 1−v``, ``v_s ↦ 1−v_s``) and flipping the sign of the
returned allocations.

The objective and the gain are piecewise linear in ``(I_low, I_high)``, so
the optimum sits on a small set of candidate allocations: full information
(0), the uninformative endpoints (±1), each type's zero-gain band edge, and
the allocation at which the high type's incentive constraint binds under
full surplus extraction,

    Ī = (v_low + v_high − 1) / (v_high − v_low).

For each candidate pair, transfers are pinned by the componentwise maximum
of the two-variable IR/IC polytope (profit weights are nonnegative, so the
maximum is optimal regardless of ``phi``); infeasible pairs are discarded.
This enumeration is exact where the closed-form regime descriptions apply
(``v_s ≤ 1/2``) and remains exact in the high-``tau``, ``v_s > 1/2`` region
where cost minimization pools both types on a zero-gain partially
obfuscating rule.

Closed-form decision boundaries ``tau_low``/``tau_high`` are exposed
separately; their regime reading is unambiguous only for ``v_s ≤ 1/2``.

Everything here is pure; grid sweeps are independent per cell and are
emitted in deterministic row order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .game_core import GameConfig, _check_probability
from .info_rules import externality_cost, feasible_band, gain

__all__ = [
    "BinaryMenu",
    "BinaryScenario",
    "Boundaries",
    "Congruence",
    "InfeasibleScenarioError",
    "MenuGridRow",
    "boundaries",
    "boundary_grid",
    "classify",
    "ibar",
    "regime_label",
    "solve",
]

_FEAS_TOL = 1e-12
_TIE_TOL = 1e-12


class Congruence(Enum):
    """Whether both types take the same action on their priors alone."""

    CONGRUENT = "congruent"
    NONCONGRUENT = "noncongruent"


class InfeasibleScenarioError(RuntimeError):
    """No candidate menu was feasible; cannot occur for a valid scenario."""


@dataclass(frozen=True)
class BinaryScenario:
    """Two-type market: beliefs, high-type probability, game configuration.

    ``v_low`` is the more precise type (farther from 1/2) and ``v_high`` the
    less precise one; ``phi`` is the probability of the high type.
    """

    v_low: float
    v_high: float
    phi: float
    cfg: GameConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "v_low", _check_probability("v_low", self.v_low))
        object.__setattr__(self, "v_high", _check_probability("v_high", self.v_high))
        object.__setattr__(self, "phi", _check_probability("phi", self.phi))
        if abs(self.v_high - 0.5) >= abs(self.v_low - 0.5):
            raise ValueError(
                "v_high must be less precise (closer to 1/2) than v_low, got "
                f"v_low={self.v_low!r}, v_high={self.v_high!r}"
            )


@dataclass(frozen=True)
class BinaryMenu:
    """Allocations, transfers, and expected profit of a two-type menu."""

    i_low: float
    i_high: float
    t_low: float
    t_high: float
    expected_profit: float


@dataclass(frozen=True)
class Boundaries:
    """Closed-form decision boundaries in competition intensity.

    ``+inf`` stands in for a vanishing denominator (``v_s`` at a singular
    value); negative values can legitimately occur for ``v_s > 1/2``, where
    the printed closed forms stop describing the regimes.
    """

    tau_low: float
    tau_high: float


@dataclass(frozen=True)
class MenuGridRow:
    """One solved sweep cell plus its plotting regime label."""

    v_s: float
    tau: float
    phi: float
    menu: BinaryMenu
    regime: str


def classify(scenario: BinaryScenario) -> Congruence:
    """Congruent iff both types act identically on their priors.

    Undefined (raises) when either type sits exactly at 1/2.
    """
    if scenario.v_low == 0.5 or scenario.v_high == 0.5:
        raise ValueError("classification undefined for a type exactly at 1/2")
    same_side = (scenario.v_low - 0.5) * (scenario.v_high - 0.5) > 0.0
    return Congruence.CONGRUENT if same_side else Congruence.NONCONGRUENT


def ibar(scenario: BinaryScenario) -> float:
    """Low-type allocation at which IC of the high type binds under binding IR.

    ``(v_low + v_high − 1)/(v_high − v_low)`` on the normalized (``v_high >
    1/2``) orientation; reflected scenarios flip its sign.
    """
    s, reflected = _normalized(scenario)
    value = (s.v_low + s.v_high - 1.0) / (s.v_high - s.v_low)
    return -value if reflected else value


def _normalized(scenario: BinaryScenario) -> tuple[BinaryScenario, bool]:
    """Reflect beliefs so that v_high > 1/2 (identity when already so)."""
    if scenario.v_high >= 0.5:
        return scenario, False
    cfg = GameConfig(scenario.cfg.tau, 1.0 - scenario.cfg.seller_belief)
    reflected = BinaryScenario(
        1.0 - scenario.v_low, 1.0 - scenario.v_high, scenario.phi, cfg
    )
    return reflected, True


def _max_transfers(
    d_ll: float, d_hh: float, d_lh: float, d_hl: float
) -> tuple[float, float] | None:
    """Componentwise-max transfers of the IR/IC polytope, or None if empty.

    Arguments are the gains of contract j to type k: ``d_jk``.  The polytope
    is ``t_l ≤ d_ll``, ``t_h ≤ d_hh``, ``t_h − t_l ≤ d_hh − d_lh``,
    ``t_l − t_h ≤ d_ll − d_hl``, ``t ≥ 0``; the componentwise maximum exists
    (difference constraints form a lattice) and is profit-optimal for any
    nonnegative type weights.
    """
    g_h = d_hh - d_lh
    g_l = d_ll - d_hl
    if g_h + g_l < -_FEAS_TOL:
        return None
    t_l = min(d_ll, d_hh + g_l)
    t_h = min(d_hh, d_ll + g_h)
    if t_l < -_FEAS_TOL or t_h < -_FEAS_TOL:
        return None
    return max(t_l, 0.0), max(t_h, 0.0)


def _gain_level_solutions(level: float, belief: float) -> list[float]:
    """Allocations at which type ``belief``'s gain equals ``level`` (per sign branch)."""
    out: list[float] = []
    if belief > 0.5:
        # gain = 1 - belief + I*belief on I<0, (1-belief)*(1-I) on I>=0
        candidate = (level - (1.0 - belief)) / belief
        if candidate <= _FEAS_TOL:
            out.append(min(candidate, 0.0))
        if belief < 1.0:
            candidate = 1.0 - level / (1.0 - belief)
            if candidate >= -_FEAS_TOL:
                out.append(max(candidate, 0.0))
    else:
        # gain = belief*(1+I) on I<0, belief - I*(1-belief) on I>=0
        if belief > 0.0:
            candidate = level / belief - 1.0
            if candidate <= _FEAS_TOL:
                out.append(min(candidate, 0.0))
        candidate = (belief - level) / (1.0 - belief)
        if candidate >= -_FEAS_TOL:
            out.append(max(candidate, 0.0))
    return [v for v in out if -1.0 <= v <= 1.0]


def _candidate_allocations(s: BinaryScenario) -> tuple[list[float], list[float]]:
    band_low = feasible_band(s.v_low)
    band_high = feasible_band(s.v_high)
    base = {-1.0, 0.0, 1.0, band_low.lo, band_low.hi, band_high.lo, band_high.hi}
    ib = (s.v_low + s.v_high - 1.0) / (s.v_high - s.v_low)
    if -1.0 <= ib <= 1.0:
        base.add(ib)

    # Decoy allocations: vertices of the zero-transfer feasibility boundary,
    # where one type holds a fully extracting contract J and the other's free
    # contract is obfuscated until the J-holder's envy constraint binds.
    low_values = set(base)
    high_values = set(base)
    for j in base:
        envy_high = gain(j, s.v_high) - gain(j, s.v_low)
        if envy_high >= -_FEAS_TOL:
            high_values.update(_gain_level_solutions(max(envy_high, 0.0), s.v_high))
        envy_low = gain(j, s.v_low) - gain(j, s.v_high)
        if envy_low >= -_FEAS_TOL:
            low_values.update(_gain_level_solutions(max(envy_low, 0.0), s.v_low))

    def within(values, band):
        kept = {min(max(v, band.lo), band.hi) for v in values if band.contains(v, _FEAS_TOL)}
        return sorted(kept)

    return within(low_values, band_low), within(high_values, band_high)


def solve(scenario: BinaryScenario) -> BinaryMenu:
    """Profit-maximizing two-type menu by exact candidate enumeration.

    Ties in profit (within 1e-12) resolve to the most informative menu,
    lexicographically on ``(|I_high|, |I_low|)``.
    """
    s, reflected = _normalized(scenario)
    classify(s)
    cand_low, cand_high = _candidate_allocations(s)

    gain_low = {i: gain(i, s.v_low) for i in set(cand_low) | set(cand_high)}
    gain_high = {i: gain(i, s.v_high) for i in set(cand_low) | set(cand_high)}
    cost = {i: externality_cost(i, s.cfg) for i in set(cand_low) | set(cand_high)}

    candidates: list[BinaryMenu] = []
    for i_low in cand_low:
        for i_high in cand_high:
            transfers = _max_transfers(
                gain_low[i_low], gain_high[i_high], gain_high[i_low], gain_low[i_high]
            )
            if transfers is None:
                continue
            t_low, t_high = transfers
            profit = s.phi * (t_high - cost[i_high]) + (1.0 - s.phi) * (
                t_low - cost[i_low]
            )
            candidates.append(BinaryMenu(i_low, i_high, t_low, t_high, profit))

    if not candidates:
        raise InfeasibleScenarioError(f"no feasible menu for scenario {scenario!r}")

    best_profit = max(menu.expected_profit for menu in candidates)
    contenders = [
        m for m in candidates if m.expected_profit >= best_profit - _TIE_TOL
    ]
    best = min(
        contenders, key=lambda m: (abs(m.i_high), abs(m.i_low), m.i_high, m.i_low)
    )
    if reflected:
        best = replace(best, i_low=-best.i_low, i_high=-best.i_high)
    return best


def boundaries(scenario: BinaryScenario) -> Boundaries:
    """Closed-form ``(tau_low, tau_high)`` for the scenario's congruence class.

    Evaluated on the normalized orientation.  Singular denominators map to
    ``+inf``; values are returned as printed, including negative ones in the
    ``v_s > 1/2`` region where the closed forms are not regime-valid.
    """
    s, _ = _normalized(scenario)
    kind = classify(s)
    v_s = s.cfg.seller_belief
    if kind is Congruence.CONGRUENT:
        denom = (v_s - 1.0) * (2.0 * v_s - 1.0)
        num_low = (1.0 - s.v_low) - s.phi * (1.0 - s.v_high)
        denom_low = (1.0 - s.phi) * denom
        num_high = 1.0 - s.v_high
        denom_high = denom
    else:
        num_low = s.v_low
        denom_low = v_s * (2.0 * v_s - 1.0)
        num_high = 1.0 - s.v_high
        denom_high = (1.0 - v_s) * (1.0 - 2.0 * v_s)
    tau_low = num_low / denom_low if denom_low != 0.0 else math.inf
    tau_high = num_high / denom_high if denom_high != 0.0 else math.inf
    return Boundaries(tau_low, tau_high)


def regime_label(scenario: BinaryScenario, menu: BinaryMenu) -> str:
    """Per-type allocation labels, e.g. ``"full-none"`` for plotting."""

    def label(value: float, belief: float) -> str:
        if abs(value) <= 1e-9:
            return "full"
        if abs(abs(value) - 1.0) <= 1e-9:
            return "none"
        if abs(gain(value, belief)) <= 1e-9:
            return "edge"
        return "partial"

    return f"{label(menu.i_low, scenario.v_low)}-{label(menu.i_high, scenario.v_high)}"


def boundary_grid(
    scenario: BinaryScenario,
    v_s_grid: Sequence[float],
    tau_grid: Sequence[float],
) -> list[MenuGridRow]:
    """Solve the scenario over a ``(v_s, tau)`` grid.

    Cells are independent; rows come out in ``v_s``-major, ``tau``-minor
    order.  Grids must be nonempty, ``v_s`` within [0, 1] and ``tau ≥ 0``.
    """
    v_s_values = [float(v) for v in v_s_grid]
    tau_values = [float(t) for t in tau_grid]
    if not v_s_values or not tau_values:
        raise ValueError("sweep grids must be nonempty")
    if any(not 0.0 <= v <= 1.0 for v in v_s_values):
        raise ValueError("v_s grid values must lie in [0, 1]")
    if any(t < 0.0 for t in tau_values):
        raise ValueError("tau grid values must be nonnegative")

    rows: list[MenuGridRow] = []
    for v_s in v_s_values:
        for tau in tau_values:
            cell = replace(scenario, cfg=GameConfig(tau, v_s))
            menu = solve(cell)
            rows.append(
                MenuGridRow(v_s, tau, scenario.phi, menu, regime_label(cell, menu))
            )
    return rows
