"""Communication rules and their one-dimensional informativeness scale.

A direct binary rule is the likelihood table

    ==========  =========  =========
    state        m0         m1
    ==========  =========  =========
    ``x = 0``    ``i0``     ``1−i0``
    ``x = 1``    ``1−i1``   ``i1``
    ==========  =========  =========

with ``i0 + i1 ≥ 1`` (each message recommends a distinct action).  Rules
revealing at least one state with certainty ("concentrated" rules) are fully
described by the informativeness scalar ``I = i0 − i1 ∈ [−1, 1]``: at
``I = 0`` the rule reveals the state exactly, while ``I = ±1`` sends a
constant message and reveals nothing.  Positive ``I`` obfuscates state 1
(state 0 is always reported truthfully), negative ``I`` obfuscates state 0.

The buyer-side value of a concentrated rule for type ``v`` is the gain

    gain(I, v) = 1 − (v ∨ (1−v)) − I·(1{I ≥ 0} − v),

and the seller-side externality of selling it is

    cost(I) = tau·[v_s·P(m0; v_s) + (1−v_s)·P(m1; v_s)],

the competition intensity times the seller-belief-weighted message marginal,
with the state and the message entering as a product exactly as in the
model's cost reduction (the message marginal and the seller's state belief
are *not* coupled through the joint draw).

``gain`` is deliberately defined on all of ``[−1, 1]`` — solvers may probe
infeasible corners — and can be negative outside :func:`feasible_band`;
callers enforce feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game_core import GameConfig, ZeroEvidenceError, _check_probability, posterior_update

__all__ = [
    "M0",
    "M1",
    "DirectRule",
    "FeasibleBand",
    "concentrate",
    "externality_cost",
    "feasible_band",
    "gain",
    "informativeness",
    "message_marginal",
    "message_posterior",
    "obedience_check",
]

#: Message indices; ``M0`` recommends action 0, ``M1`` recommends action 1.
M0: int = 0
M1: int = 1

_DIRECTNESS_TOL = 1e-12


@dataclass(frozen=True)
class DirectRule:
    """Direct binary communication rule ``(i0, i1)``.

    ``i0 = P(m0 | x=0)`` and ``i1 = P(m1 | x=1)``; directness requires
    ``i0 + i1 ≥ 1``.
    """

    i0: float
    i1: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "i0", _check_probability("i0", self.i0))
        object.__setattr__(self, "i1", _check_probability("i1", self.i1))
        if self.i0 + self.i1 < 1.0 - _DIRECTNESS_TOL:
            raise ValueError(
                f"direct rule requires i0 + i1 >= 1, got {self.i0!r} + {self.i1!r}"
            )


@dataclass(frozen=True)
class FeasibleBand:
    """Type-dependent interval of informativeness values with nonnegative gain."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.lo <= self.hi <= 1.0:
            raise ValueError(f"band must satisfy -1 <= lo <= hi <= 1, got {self!r}")

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= value <= self.hi + tol


def concentrate(value: float) -> DirectRule:
    """Concentrated rule with informativeness ``value``.

    ``I ≥ 0`` maps to ``(1, 1−I)`` and ``I < 0`` to ``(1+I, 1)``; the
    round-trip through :func:`informativeness` is exact.
    """
    value = float(value)
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"informativeness must lie in [-1, 1], got {value!r}")
    if value >= 0.0:
        return DirectRule(1.0, 1.0 - value)
    return DirectRule(1.0 + value, 1.0)


def informativeness(rule: DirectRule) -> float:
    """Informativeness ``I = i0 − i1`` of a direct rule."""
    return rule.i0 - rule.i1


def message_marginal(rule: DirectRule, belief: float) -> tuple[float, float]:
    """Marginal message probabilities ``(P(m0), P(m1))`` under ``belief``.

    Each marginal is accumulated directly from the likelihood table rather
    than via ``1 − P(other)``, so degenerate rules come out exact.
    """
    belief = _check_probability("belief", belief)
    p_m0 = belief * rule.i0 + (1.0 - belief) * (1.0 - rule.i1)
    p_m1 = belief * (1.0 - rule.i0) + (1.0 - belief) * rule.i1
    return p_m0, p_m1


def message_posterior(rule: DirectRule, belief: float, message: int) -> float:
    """Posterior probability of state 0 after receiving ``message``.

    Raises :class:`~infomenu.game_core.ZeroEvidenceError` for a message with
    zero marginal probability.
    """
    if message == M0:
        lik0, lik1 = rule.i0, 1.0 - rule.i1
    elif message == M1:
        lik0, lik1 = 1.0 - rule.i0, rule.i1
    else:
        raise ValueError(f"message must be {M0} or {M1}, got {message!r}")
    return posterior_update(belief, lik0, lik1)


def feasible_band(belief: float) -> FeasibleBand:
    """Informativeness values a truthful type ``belief`` can be sold.

    ``[−1, v/(1−v)]`` for ``v ≤ 1/2`` and ``[−(1−v)/v, 1]`` for ``v > 1/2``;
    the gain is nonnegative exactly on this interval, and the rule's
    recommendations are obeyed.
    """
    belief = _check_probability("belief", belief)
    if belief <= 0.5:
        return FeasibleBand(-1.0, belief / (1.0 - belief))
    return FeasibleBand(-(1.0 - belief) / belief, 1.0)


def gain(value: float, belief: float) -> float:
    """Gain of the concentrated rule ``value`` for a buyer of type ``belief``."""
    value = float(value)
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"informativeness must lie in [-1, 1], got {value!r}")
    belief = _check_probability("belief", belief)
    indicator = 1.0 if value >= 0.0 else 0.0
    return 1.0 - max(belief, 1.0 - belief) - value * (indicator - belief)


def externality_cost(value: float, cfg: GameConfig) -> float:
    """Seller's expected externality from selling the concentrated rule ``value``.

    Equals ``tau·[v_s·P(m0; v_s) + (1−v_s)·P(m1; v_s)]`` with message
    marginals taken under the seller's belief; always within ``[0, tau]``.
    """
    rule = concentrate(value)
    p_m0, p_m1 = message_marginal(rule, cfg.seller_belief)
    return cfg.tau * (cfg.seller_belief * p_m0 + (1.0 - cfg.seller_belief) * p_m1)


def obedience_check(rule: DirectRule, belief: float) -> bool:
    """Whether type ``belief`` follows both recommendations of ``rule``.

    m0 must leave posterior mass ``θ_{m0} ≥ 1/2`` and m1 must leave
    ``θ_{m1} ≤ 1/2``; messages with zero marginal probability are vacuously
    obedient.  Comparisons use unnormalized posteriors to avoid division.
    """
    belief = _check_probability("belief", belief)
    mass0_m0 = belief * rule.i0
    mass1_m0 = (1.0 - belief) * (1.0 - rule.i1)
    if mass0_m0 + mass1_m0 > 0.0 and mass0_m0 < mass1_m0:
        return False
    mass0_m1 = belief * (1.0 - rule.i0)
    mass1_m1 = (1.0 - belief) * rule.i1
    if mass0_m1 + mass1_m1 > 0.0 and mass0_m1 > mass1_m1:
        return False
    return True
