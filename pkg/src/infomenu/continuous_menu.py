"""Myersonian solver for a continuum of buyer types on the unit interval.

With types ``v ~ F`` (density ``p``) the menu design problem reduces to
choosing a nondecreasing allocation ``I(v) ∈ [−1, 1]`` with
``∫₀¹ I(v) dv = 0``; transfers then follow from the envelope formula

    t(v) = I(v)·(v − 1{I(v) ≥ 0}) − ∫₀^v I(z) dz.

The pointwise marginal profit of raising the allocation is the pair of
virtual values

    π⁻(v) = p(v)·(tau·v_s·(1−2v_s) + v) + F(v)          (raising −1 → 0)
    π⁺(v) = p(v)·(tau·(1−v_s)·(1−2v_s) + v − 1) + F(v)   (raising 0 → +1)

with ``π⁻ − π⁺ = p·(1 − tau·(1−2v_s)²)`` pointwise.  Regularity (both
nondecreasing) guarantees a monotone optimum without ironing; irregular
distributions are rejected, not ironed.

Below the competition threshold ``tau′ = (1−2v_s)⁻²`` the optimum is a step
menu: ``I = −1`` below ``v_lo``, fully informative (``I = 0``) on
``[v_lo, v_hi]``, ``I = +1`` above, with ``v_lo = 1 − v_hi`` forced by the
integral constraint (Lebesgue measure balance) and the dual ``λ*`` solving
``v⁻(λ) + v⁺(λ) = 1`` where ``π∓(v∓) = λ``.  At ``tau ≥ tau′`` selling any
information is unprofitable and the menu collapses to the uninformative
``±1`` split at 1/2.  The dual is solved by nested bisection; the uniform
distribution admits the closed form ``λ* = (π⁻(1/2) + π⁺(1/2))/2``, used as
a fast path there (its validity for other regular distributions is not
established, so it is never applied to them).

Expected profit is reported as true profit ``E[t] − E[c]``.  Note the
virtual-surplus integral ``∫ J dF`` drops the menu-independent constant
``c(0) = tau·(v_s² + (1−v_s)²)``; both routes are computed and reconciled.

Distributions are supplied as (density, cdf) pairs — the CDF appears
directly in the virtual values and numerically integrating a density would
contaminate the dual — and must be vectorized over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy import integrate, special

from .game_core import GameConfig, _check_probability
from .info_rules import externality_cost

__all__ = [
    "BracketingError",
    "IrregularDistributionError",
    "MenuRegime",
    "ProfitBaselines",
    "QuadratureError",
    "StepMenu",
    "TypeDistribution",
    "VirtualValues",
    "allocation",
    "beta_distribution",
    "bimodal_distribution",
    "exponential_distribution",
    "gaussian_distribution",
    "expected_profit",
    "expected_transfer_and_cost",
    "profit_baselines",
    "regularity_check",
    "solve_dual",
    "tau_prime",
    "tilted_distribution",
    "transfer",
    "uniform_distribution",
    "virtual_values",
]


class IrregularDistributionError(ValueError):
    """The virtual values are not monotone; the solver refuses the input."""


class BracketingError(RuntimeError):
    """The dual bisection could not bracket a root."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge to the requested accuracy."""


@dataclass(frozen=True)
class TypeDistribution:
    """Type distribution as a (density, cdf) pair on [0, 1].

    Both callables must accept floats and numpy arrays.  ``validate``
    checks the distribution axioms and the finite-difference consistency of
    the pair; the provided constructors validate on build.
    """

    density: Callable
    cdf: Callable
    name: str

    def validate(self, grid_n: int = 201, fd_step: float = 1e-6, tol: float = 1e-6) -> None:
        grid = np.linspace(0.0, 1.0, grid_n)
        cdf_vals = np.asarray(self.cdf(grid), dtype=float)
        if abs(cdf_vals[0]) > 1e-9 or abs(cdf_vals[-1] - 1.0) > 1e-9:
            raise ValueError(f"{self.name}: cdf must run from 0 at v=0 to 1 at v=1")
        if np.any(np.diff(cdf_vals) < -1e-12):
            raise ValueError(f"{self.name}: cdf must be nondecreasing")
        dens = np.asarray(self.density(grid), dtype=float)
        if np.any(dens < -1e-12):
            raise ValueError(f"{self.name}: density must be nonnegative")
        interior = grid[(grid > 2 * fd_step) & (grid < 1.0 - 2 * fd_step)]
        fd = (
            np.asarray(self.cdf(interior + fd_step), dtype=float)
            - np.asarray(self.cdf(interior - fd_step), dtype=float)
        ) / (2.0 * fd_step)
        dens = np.asarray(self.density(interior), dtype=float)
        scale = np.maximum(1.0, np.abs(dens))
        worst = float(np.max(np.abs(fd - dens) / scale))
        if worst > tol:
            raise ValueError(
                f"{self.name}: cdf' deviates from density by {worst:.3g} (tol {tol:g})"
            )


def uniform_distribution() -> TypeDistribution:
    """Uniform types on [0, 1]."""
    dist = TypeDistribution(
        density=lambda v: np.ones_like(np.asarray(v, dtype=float)),
        cdf=lambda v: np.clip(np.asarray(v, dtype=float), 0.0, 1.0),
        name="uniform",
    )
    dist.validate()
    return dist


def beta_distribution(a: float, b: float) -> TypeDistribution:
    """Beta(a, b) types; regular for moderate shape parameters (check!)."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("beta shape parameters must be positive")
    log_norm = special.betaln(a, b)

    def density(v):
        v = np.asarray(v, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp((a - 1.0) * np.log(v) + (b - 1.0) * np.log1p(-v) - log_norm)
        edge0 = math.exp(-log_norm) if a == 1.0 else (0.0 if a > 1.0 else math.inf)
        edge1 = math.exp(-log_norm) if b == 1.0 else (0.0 if b > 1.0 else math.inf)
        out = np.where(v == 0.0, edge0, out)
        out = np.where(v == 1.0, edge1, out)
        return out

    def cdf(v):
        return special.betainc(a, b, np.clip(np.asarray(v, dtype=float), 0.0, 1.0))

    dist = TypeDistribution(density=density, cdf=cdf, name=f"beta({a:g},{b:g})")
    dist.validate()
    return dist


def tilted_distribution(slope: float) -> TypeDistribution:
    """Linearly tilted density ``p(v) = 1 + slope·(v − 1/2)``, ``|slope| < 2``.

    Gentle tilts keep both virtual values monotone for every game
    configuration; steep densities that vanish at an endpoint (e.g. most
    betas) do not, because the virtual values drop back to ``F`` there.
    """
    if not abs(slope) < 2.0:
        raise ValueError("|slope| must be below 2 for a positive density")

    def density(v):
        v = np.asarray(v, dtype=float)
        return 1.0 + slope * (v - 0.5)

    def cdf(v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        return v + 0.5 * slope * (v * v - v)

    dist = TypeDistribution(density=density, cdf=cdf, name=f"tilted({slope:g})")
    dist.validate()
    return dist


def exponential_distribution(rate: float) -> TypeDistribution:
    """Exponential density truncated to [0, 1]; negative rates tilt upward."""
    if rate == 0.0:
        raise ValueError("rate must be nonzero (use the uniform distribution)")
    mass = -math.expm1(-rate)

    def density(v):
        v = np.asarray(v, dtype=float)
        return rate * np.exp(-rate * v) / mass

    def cdf(v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        return -np.expm1(-rate * v) / mass

    dist = TypeDistribution(density=density, cdf=cdf, name=f"exponential({rate:g})")
    dist.validate()
    return dist


def gaussian_distribution(loc: float, scale: float) -> TypeDistribution:
    """Normal density truncated to [0, 1]; wide scales stay regular."""
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    z0 = special.ndtr((0.0 - loc) / scale)
    z1 = special.ndtr((1.0 - loc) / scale)
    mass = z1 - z0
    norm = scale * math.sqrt(2.0 * math.pi) * mass

    def density(v):
        v = np.asarray(v, dtype=float)
        return np.exp(-0.5 * ((v - loc) / scale) ** 2) / norm

    def cdf(v):
        v = np.clip(np.asarray(v, dtype=float), 0.0, 1.0)
        return (special.ndtr((v - loc) / scale) - z0) / mass

    dist = TypeDistribution(
        density=density, cdf=cdf, name=f"gaussian({loc:g},{scale:g})"
    )
    dist.validate()
    return dist


def bimodal_distribution(
    loc_a: float = 0.05,
    loc_b: float = 0.95,
    scale: float = 0.02,
    weight: float = 0.5,
) -> TypeDistribution:
    """Mixture of two normals truncated to [0, 1]; tight peaks break regularity."""
    if not 0.0 <= weight <= 1.0:
        raise ValueError("mixture weight must lie in [0, 1]")
    if scale <= 0.0:
        raise ValueError("scale must be positive")

    def component(loc):
        z0 = special.ndtr((0.0 - loc) / scale)
        z1 = special.ndtr((1.0 - loc) / scale)
        mass = z1 - z0
        norm = scale * math.sqrt(2.0 * math.pi) * mass

        def pdf(v):
            v = np.asarray(v, dtype=float)
            return np.exp(-0.5 * ((v - loc) / scale) ** 2) / norm

        def cdf(v):
            v = np.asarray(v, dtype=float)
            return (special.ndtr((v - loc) / scale) - z0) / mass

        return pdf, cdf

    pdf_a, cdf_a = component(loc_a)
    pdf_b, cdf_b = component(loc_b)
    dist = TypeDistribution(
        density=lambda v: weight * pdf_a(v) + (1.0 - weight) * pdf_b(v),
        cdf=lambda v: weight * cdf_a(v) + (1.0 - weight) * cdf_b(v),
        name=f"bimodal({loc_a:g},{loc_b:g},{scale:g})",
    )
    dist.validate()
    return dist


@dataclass(frozen=True)
class VirtualValues:
    """Marginal-profit functions π⁻ (raising −1→0) and π⁺ (raising 0→+1)."""

    minus: Callable
    plus: Callable


def virtual_values(dist: TypeDistribution, cfg: GameConfig) -> VirtualValues:
    """Virtual value pair of the distribution under the game configuration."""
    drift_minus = cfg.tau * cfg.seller_belief * (1.0 - 2.0 * cfg.seller_belief)
    drift_plus = cfg.tau * (1.0 - cfg.seller_belief) * (1.0 - 2.0 * cfg.seller_belief)

    def minus(v):
        v = np.asarray(v, dtype=float)
        return dist.density(v) * (drift_minus + v) + dist.cdf(v)

    def plus(v):
        v = np.asarray(v, dtype=float)
        return dist.density(v) * (drift_plus + v - 1.0) + dist.cdf(v)

    return VirtualValues(minus=minus, plus=plus)


def tau_prime(cfg: GameConfig) -> float:
    """Competition threshold ``(1−2v_s)⁻²`` above which no information sells."""
    gap = 1.0 - 2.0 * cfg.seller_belief
    if gap == 0.0:
        return math.inf
    return gap**-2


def _first_irregular_point(
    dist: TypeDistribution, cfg: GameConfig, grid_n: int
) -> float | None:
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    vv = virtual_values(dist, cfg)
    grid = np.linspace(0.0, 1.0, grid_n)
    for fn in (vv.minus, vv.plus):
        vals = np.asarray(fn(grid), dtype=float)
        bad = np.nonzero(np.diff(vals) < -1e-9)[0]
        if bad.size:
            return float(grid[bad[0] + 1])
    return None


def regularity_check(dist: TypeDistribution, cfg: GameConfig, grid_n: int = 1001) -> bool:
    """True iff both virtual values are nondecreasing on a ``grid_n`` grid."""
    return _first_irregular_point(dist, cfg, grid_n) is None


class MenuRegime(Enum):
    SCREENING = "screening"
    NO_INFORMATION = "no_information"


@dataclass(frozen=True)
class StepMenu:
    """Optimal step menu: thresholds, dual variable, and regime.

    Types below ``v_lo`` get ``I = −1``, types in ``[v_lo, v_hi]`` full
    information, types above ``v_hi`` get ``I = +1``.  ``v_lo = 1 − v_hi``
    holds exactly (the integral constraint balances the two uninformative
    segments in Lebesgue measure), so ``allocation_integral`` is exactly 0.
    """

    v_lo: float
    v_hi: float
    lambda_star: float
    regime: MenuRegime

    def __post_init__(self) -> None:
        if not 0.0 <= self.v_lo <= self.v_hi <= 1.0:
            raise ValueError(f"thresholds must satisfy 0 <= v_lo <= v_hi <= 1: {self!r}")
        if self.v_lo != 1.0 - self.v_hi:
            raise ValueError(f"measure balance requires v_lo = 1 - v_hi exactly: {self!r}")
        if self.regime is MenuRegime.NO_INFORMATION and self.v_lo != 0.5:
            raise ValueError("the no-information menu splits at 1/2")

    def segments(self) -> tuple[tuple[float, float, float], ...]:
        """Constant-allocation segments as (start, end, level) triples."""
        return (
            (0.0, self.v_lo, -1.0),
            (self.v_lo, self.v_hi, 0.0),
            (self.v_hi, 1.0, 1.0),
        )

    def allocation_integral(self) -> float:
        """Closed-form ∫₀¹ I(v) dv; exactly 0 by construction."""
        return (1.0 - self.v_hi) - self.v_lo


def allocation(menu: StepMenu, belief: float) -> float:
    """Menu allocation for a type; threshold ties resolve to full information."""
    belief = _check_probability("belief", belief)
    if menu.regime is MenuRegime.NO_INFORMATION:
        return -1.0 if belief <= 0.5 else 1.0
    if belief < menu.v_lo:
        return -1.0
    if belief > menu.v_hi:
        return 1.0
    return 0.0


def transfer(menu: StepMenu, belief: float) -> float:
    """Envelope transfer ``I(v)(v − 1{I≥0}) − ∫₀^v I``, evaluated in closed form.

    Constant on each segment: 0 on both uninformative segments (the upper one
    via ``v_lo + v_hi − 1 = 0``) and ``v_lo`` on the fully informative one.
    """
    level = allocation(menu, belief)
    if level < 0.0:
        return 0.0
    if level == 0.0:
        return menu.v_lo
    return (menu.v_lo + menu.v_hi) - 1.0


def _sup_level_crossing(fn: Callable, lam: float) -> float:
    """sup{v in [0,1] : fn(v) <= lam} for nondecreasing fn, by bisection."""
    if float(fn(0.0)) >= lam:
        return 0.0
    if float(fn(1.0)) <= lam:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(fn(mid)) <= lam:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    return 0.5 * (lo + hi)


def _bisect_dual(
    vv: VirtualValues, outer_tol: float, max_iter: int
) -> tuple[float, float, float]:
    lam_lo = float(vv.plus(0.0))
    lam_hi = float(vv.minus(1.0))

    def balance(lam: float) -> float:
        return (
            _sup_level_crossing(vv.minus, lam)
            + _sup_level_crossing(vv.plus, lam)
            - 1.0
        )

    if balance(lam_lo) > 0.0 or balance(lam_hi) < 0.0:
        raise BracketingError(
            f"dual root not bracketed by lambda in [{lam_lo:g}, {lam_hi:g}]"
        )
    lo, hi = lam_lo, lam_hi
    lam = 0.5 * (lo + hi)
    for _ in range(max_iter):
        lam = 0.5 * (lo + hi)
        value = balance(lam)
        if abs(value) <= outer_tol:
            break
        if value < 0.0:
            lo = lam
        else:
            hi = lam
        if hi - lo <= 1e-14 * max(1.0, abs(hi)):
            break
    return (
        lam,
        _sup_level_crossing(vv.minus, lam),
        _sup_level_crossing(vv.plus, lam),
    )


def solve_dual(
    dist: TypeDistribution,
    cfg: GameConfig,
    method: str = "auto",
    regularity_grid_n: int = 1001,
    outer_tol: float = 1e-10,
    max_iter: int = 200,
) -> StepMenu:
    """Optimal step menu via the dual variable.

    ``method`` is ``"auto"`` (closed form for the uniform distribution,
    bisection otherwise), ``"closed_form"`` (uniform only), or
    ``"bisection"``.  The two paths agree to 1e-9 on the uniform
    distribution; the verification battery asserts this.
    """
    point = _first_irregular_point(dist, cfg, regularity_grid_n)
    if point is not None:
        raise IrregularDistributionError(
            f"{dist.name}: virtual values decrease near v_b = {point:.6g}; "
            "irregular type distributions are not supported (no ironing)"
        )
    vv = virtual_values(dist, cfg)
    if cfg.tau >= tau_prime(cfg):
        return StepMenu(0.5, 0.5, float(vv.plus(0.5)), MenuRegime.NO_INFORMATION)

    if method == "auto":
        method = "closed_form" if dist.name == "uniform" else "bisection"
    if method == "closed_form":
        if dist.name != "uniform":
            raise ValueError(
                "the closed-form dual is established for the uniform distribution only"
            )
        lam = 0.5 * (float(vv.minus(0.5)) + float(vv.plus(0.5)))
        drift_plus = cfg.tau * (1.0 - cfg.seller_belief) * (1.0 - 2.0 * cfg.seller_belief)
        v_hi = 0.5 * (lam + 1.0 - drift_plus)
    elif method == "bisection":
        lam, v_minus, v_plus = _bisect_dual(vv, outer_tol, max_iter)
        v_hi = 0.5 * ((1.0 - v_minus) + v_plus)
    else:
        raise ValueError(f"unknown method {method!r}")
    v_hi = min(max(v_hi, 0.5), 1.0)
    return StepMenu(1.0 - v_hi, v_hi, lam, MenuRegime.SCREENING)


def expected_transfer_and_cost(
    menu: StepMenu, dist: TypeDistribution, cfg: GameConfig
) -> tuple[float, float]:
    """(E[t], E[c]) over the type distribution, segmentwise in closed form."""
    e_transfer = 0.0
    e_cost = 0.0
    for start, end, level in menu.segments():
        if end <= start:
            continue
        mass = float(dist.cdf(end)) - float(dist.cdf(start))
        e_transfer += mass * transfer(menu, 0.5 * (start + end))
        e_cost += mass * externality_cost(level, cfg)
    return e_transfer, e_cost


def expected_profit(menu: StepMenu, dist: TypeDistribution, cfg: GameConfig) -> float:
    """Expected profit ``E[t − c]`` of a menu.

    Integrates the virtual-surplus integrand segmentwise by adaptive
    quadrature, subtracts the cost constant the surplus form drops, and
    reconciles against the transfer/cost route at 1e-7.
    """
    drift_minus = cfg.tau * cfg.seller_belief * (1.0 - 2.0 * cfg.seller_belief)
    bump = cfg.tau * (1.0 - 2.0 * cfg.seller_belief) ** 2 - 1.0
    total = 0.0
    abserr = 0.0
    for start, end, level in menu.segments():
        if end <= start or level == 0.0:
            continue
        kappa = drift_minus + (bump if level >= 0.0 else 0.0)

        def integrand(v, level=level, kappa=kappa):
            dens = float(dist.density(v))
            return level * (v * dens + float(dist.cdf(v)) + kappa * dens)

        result = integrate.quad(
            integrand, start, end, epsabs=1e-12, epsrel=1e-12, limit=200, full_output=1
        )
        total += result[0]
        abserr += result[1]
    if abserr > 1e-9:
        raise QuadratureError(
            f"virtual-surplus quadrature error {abserr:.3g} exceeds 1e-9"
        )
    profit = total - externality_cost(0.0, cfg)
    e_transfer, e_cost = expected_transfer_and_cost(menu, dist, cfg)
    if abs(profit - (e_transfer - e_cost)) > 1e-7:
        raise QuadratureError(
            "profit routes disagree: virtual-surplus route "
            f"{profit!r} vs transfer/cost route {e_transfer - e_cost!r}"
        )
    return profit


@dataclass(frozen=True)
class ProfitBaselines:
    """Profit from screening vs. the two unpriced extremes."""

    versioning: float
    full_info: float
    no_info: float


def profit_baselines(dist: TypeDistribution, cfg: GameConfig) -> ProfitBaselines:
    """Screening profit, altruistic full-information profit, and no-information profit.

    Full information to everyone at zero transfers costs ``c(0)`` per type;
    sharing nothing leaves every buyer acting on the prior.
    """
    menu = solve_dual(dist, cfg)
    versioning = expected_profit(menu, dist, cfg)
    full_info = -externality_cost(0.0, cfg)
    mass_below_half = float(dist.cdf(0.5))
    no_info = -cfg.tau * (
        cfg.seller_belief * (1.0 - mass_below_half)
        + (1.0 - cfg.seller_belief) * mass_below_half
    )
    return ProfitBaselines(versioning, full_info, no_info)
