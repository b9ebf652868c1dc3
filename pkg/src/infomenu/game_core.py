"""Binary competitive game primitives: utilities, beliefs, Bayes updates.

Both players face a binary state ``x ∈ {0, 1}`` and pick a binary action.
A player earns 1 for matching the state and loses ``tau`` whenever the
*other* player matches it, so ``tau`` is the intensity of competition
(``tau = 1`` makes the matched-on-both-sides outcome zero-sum).

Beliefs are Bernoulli and are stored throughout as the probability assigned
to state 0 (the paper-side ``v`` convention).  The dominant strategy is to
play the action matching the state with the larger probability mass; the tie
at belief exactly 1/2 resolves to action 0 because the optimal strategy is
the strict indicator ``1{belief < 1/2}``.

All functions here are pure and deterministic; values are freely shareable
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "GameConfig",
    "ZeroEvidenceError",
    "no_info_value",
    "posterior_update",
    "strategy",
    "utility",
]


class ZeroEvidenceError(ValueError):
    """Bayes' rule was conditioned on an event with probability zero."""


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def _check_binary(name: str, value: int) -> int:
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class GameConfig:
    """Competition intensity and the seller's own belief.

    ``tau``            nonnegative competition intensity.
    ``seller_belief``  the seller's posterior probability of state 0; every
                       externality cost is evaluated under this belief.
    """

    tau: float
    seller_belief: float

    def __post_init__(self) -> None:
        if float(self.tau) < 0.0:
            raise ValueError(f"tau must be nonnegative, got {self.tau!r}")
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(
            self, "seller_belief", _check_probability("seller_belief", self.seller_belief)
        )


def utility(a_self: int, a_other: int, x: int, tau: float) -> float:
    """Ex-post payoff ``1{a_self = x} − tau·1{a_other = x}``."""
    a_self = _check_binary("a_self", a_self)
    a_other = _check_binary("a_other", a_other)
    x = _check_binary("x", x)
    if tau < 0.0:
        raise ValueError(f"tau must be nonnegative, got {tau!r}")
    return float(a_self == x) - tau * float(a_other == x)


def posterior_update(prior: float, lik0: float, lik1: float) -> float:
    """Bayes posterior probability of state 0.

    ``lik0``/``lik1`` are the likelihoods of the observed evidence under
    states 0 and 1.  Raises :class:`ZeroEvidenceError` when the evidence has
    zero marginal probability under the prior.
    """
    prior = _check_probability("prior", prior)
    lik0 = _check_probability("lik0", lik0)
    lik1 = _check_probability("lik1", lik1)
    numerator = lik0 * prior
    normalizer = numerator + lik1 * (1.0 - prior)
    if normalizer <= 0.0:
        raise ZeroEvidenceError(
            f"evidence has zero probability under prior {prior!r} "
            f"(likelihoods {lik0!r}, {lik1!r})"
        )
    return numerator / normalizer


def strategy(belief: float) -> int:
    """Dominant strategy: the strict indicator ``1{belief < 1/2}``."""
    belief = _check_probability("belief", belief)
    return 1 if belief < 0.5 else 0


def no_info_value(belief: float) -> float:
    """Expected own-action payoff from acting on the belief alone: ``belief ∨ (1−belief)``."""
    belief = _check_probability("belief", belief)
    return max(belief, 1.0 - belief)
