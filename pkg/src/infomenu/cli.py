"""Command-line interface: scenario configs, figure-data emission, verification.

Subcommands::

    gain-curve   gain of selected rules over a 501-point type grid
    binary       two-type menus: point menu JSON plus (v_s, tau[, phi]) sweeps
    continuous   virtual values, step menu, and profit-comparison CSVs
    verify       oracle battery as JSON lines; exit 0 iff every check passes

Configs are YAML key-trees (see README for the schema); ``--samples`` and
``--seed`` flags override the config's ``mc`` block.  All numeric CSV
fields use 17 significant digits so downstream plotting round-trips
losslessly, and outputs are byte-identical across runs for a fixed config
and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import yaml

from .binary_menu import BinaryScenario, boundaries, boundary_grid, solve
from .continuous_menu import (
    IrregularDistributionError,
    TypeDistribution,
    allocation,
    beta_distribution,
    bimodal_distribution,
    exponential_distribution,
    gaussian_distribution,
    profit_baselines,
    solve_dual,
    tilted_distribution,
    transfer,
    uniform_distribution,
    virtual_values,
)
from .game_core import GameConfig
from .info_rules import gain
from .oracle import McConfig, verify_battery

__all__ = ["ConfigError", "load_config", "main"]

_TYPE_GRID_N = 501

DEFAULT_CONFIG: dict = {
    "game": {"tau": 0.5, "seller_belief": 0.8},
    "buyer": {
        "binary": {"v_low": 5.0 / 6.0, "v_high": 2.0 / 3.0, "phi": 1.0 / 3.0}
    },
    "mc": {"samples": 200_000, "seed": 20250810},
}


class ConfigError(ValueError):
    """Malformed or schema-violating scenario file."""


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(
                ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
                + "\n"
            )


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = yaml.safe_load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must be a mapping")
    return doc


def _require(doc: dict, key: str, context: str) -> object:
    if key not in doc:
        raise ConfigError(f"missing key '{key}' in {context}")
    return doc[key]


def _game_config(doc: dict) -> GameConfig:
    game = _require(doc, "game", "config")
    if not isinstance(game, dict):
        raise ConfigError("'game' must be a mapping")
    try:
        return GameConfig(
            float(_require(game, "tau", "game")),
            float(_require(game, "seller_belief", "game")),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid game block: {exc}") from exc


def _buyer_block(doc: dict) -> tuple[str, dict]:
    buyer = _require(doc, "buyer", "config")
    if not isinstance(buyer, dict):
        raise ConfigError("'buyer' must be a mapping")
    present = [k for k in ("binary", "continuous") if k in buyer]
    if len(present) != 1:
        raise ConfigError("exactly one of buyer.binary / buyer.continuous is required")
    return present[0], buyer[present[0]]


def _binary_scenario(doc: dict) -> BinaryScenario:
    kind, block = _buyer_block(doc)
    if kind != "binary":
        raise ConfigError("this command requires a buyer.binary block")
    cfg = _game_config(doc)
    try:
        return BinaryScenario(
            float(_require(block, "v_low", "buyer.binary")),
            float(_require(block, "v_high", "buyer.binary")),
            float(_require(block, "phi", "buyer.binary")),
            cfg,
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid binary scenario: {exc}") from exc


def _distribution(doc: dict) -> TypeDistribution:
    kind, block = _buyer_block(doc)
    if kind != "continuous":
        raise ConfigError("this command requires a buyer.continuous block")
    name = str(_require(block, "distribution", "buyer.continuous"))
    params = block.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError("buyer.continuous.params must be a mapping")
    try:
        if name == "uniform":
            return uniform_distribution()
        if name == "beta":
            return beta_distribution(float(params["a"]), float(params["b"]))
        if name == "tilted":
            return tilted_distribution(float(params["slope"]))
        if name == "exponential":
            return exponential_distribution(float(params["rate"]))
        if name == "gaussian":
            return gaussian_distribution(float(params["loc"]), float(params["scale"]))
        if name == "bimodal":
            return bimodal_distribution(
                float(params.get("loc_a", 0.05)),
                float(params.get("loc_b", 0.95)),
                float(params.get("scale", 0.02)),
                float(params.get("weight", 0.5)),
            )
    except KeyError as exc:
        raise ConfigError(f"missing distribution parameter {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"invalid distribution parameters: {exc}") from exc
    raise ConfigError(
        f"unknown distribution '{name}' "
        "(uniform, beta, tilted, exponential, gaussian, bimodal)"
    )


def _sweep_axes(doc: dict) -> dict[str, np.ndarray]:
    sweep = doc.get("sweep")
    if sweep is None:
        return {}
    if isinstance(sweep, dict):
        sweep = [sweep]
    if not isinstance(sweep, list):
        raise ConfigError("'sweep' must be a mapping or a list of mappings")
    axes: dict[str, np.ndarray] = {}
    for entry in sweep:
        if not isinstance(entry, dict):
            raise ConfigError("each sweep entry must be a mapping")
        axis = str(_require(entry, "axis", "sweep"))
        if axis not in ("tau", "v_s", "phi"):
            raise ConfigError(f"sweep axis must be one of tau, v_s, phi, got '{axis}'")
        if axis in axes:
            raise ConfigError(f"duplicate sweep axis '{axis}'")
        steps = int(_require(entry, "steps", "sweep"))
        if steps < 1:
            raise ConfigError("sweep steps must be at least 1")
        axes[axis] = np.linspace(
            float(_require(entry, "from", "sweep")),
            float(_require(entry, "to", "sweep")),
            steps,
        )
    return axes


def _mc_config(doc: dict, args: argparse.Namespace) -> McConfig:
    block = doc.get("mc") or {}
    samples = int(getattr(args, "samples", None) or block.get("samples", 100_000))
    seed = getattr(args, "seed", None)
    seed = int(block.get("seed", 0)) if seed is None else int(seed)
    return McConfig(samples=samples, seed=seed)


def cmd_gain_curve(args: argparse.Namespace) -> int:
    try:
        values = [float(tok) for tok in args.I.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"--I must be a comma-separated float list: {exc}") from exc
    if not values:
        raise ConfigError("--I must name at least one informativeness value")
    for value in values:
        if not -1.0 <= value <= 1.0:
            raise ConfigError(f"informativeness {value!r} outside [-1, 1]")
    grid = np.linspace(0.0, 1.0, _TYPE_GRID_N)
    rows = [
        (float(v), float(value), gain(value, float(v)))
        for value in values
        for v in grid
    ]
    _write_csv(Path(args.out), ("v_b", "I", "gain"), rows)
    return 0


def cmd_binary(args: argparse.Namespace) -> int:
    doc = load_config(args.config)
    scenario = _binary_scenario(doc)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    menu = solve(scenario)
    menu_payload = {
        "I_low": menu.i_low,
        "I_high": menu.i_high,
        "t_low": menu.t_low,
        "t_high": menu.t_high,
        "profit": menu.expected_profit,
    }
    (out_dir / "menu.json").write_text(
        json.dumps(menu_payload, indent=2) + "\n", encoding="utf-8"
    )

    axes = _sweep_axes(doc)
    if axes:
        v_s_grid = axes.get("v_s", np.array([scenario.cfg.seller_belief]))
        tau_grid = axes.get("tau", np.array([scenario.cfg.tau]))
        phi_grid = axes.get("phi", np.array([scenario.phi]))
        grid_rows = []
        boundary_rows = []
        for phi in phi_grid:
            template = replace(scenario, phi=float(phi))
            for row in boundary_grid(template, v_s_grid, tau_grid):
                grid_rows.append(
                    (
                        row.v_s,
                        row.tau,
                        row.phi,
                        row.menu.i_low,
                        row.menu.i_high,
                        row.menu.t_low,
                        row.menu.t_high,
                        row.menu.expected_profit,
                        row.regime,
                    )
                )
            for v_s in v_s_grid:
                cell = replace(
                    template, cfg=GameConfig(scenario.cfg.tau, float(v_s))
                )
                bounds = boundaries(cell)
                boundary_rows.append(
                    (float(phi), float(v_s), bounds.tau_low, bounds.tau_high)
                )
        _write_csv(
            out_dir / "grid.csv",
            (
                "v_s",
                "tau",
                "phi",
                "I_low",
                "I_high",
                "t_low",
                "t_high",
                "profit",
                "regime",
            ),
            grid_rows,
        )
        _write_csv(
            out_dir / "boundaries.csv",
            ("phi", "v_s", "tau_low", "tau_high"),
            boundary_rows,
        )
    return 0


def cmd_continuous(args: argparse.Namespace) -> int:
    doc = load_config(args.config)
    dist = _distribution(doc)
    cfg = _game_config(doc)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    menu = solve_dual(dist, cfg)
    vv = virtual_values(dist, cfg)
    grid = np.linspace(0.0, 1.0, _TYPE_GRID_N)
    _write_csv(
        out_dir / "virtual_values.csv",
        ("v_b", "pi_minus", "pi_plus", "lambda_star"),
        (
            (float(v), float(vv.minus(v)), float(vv.plus(v)), menu.lambda_star)
            for v in grid
        ),
    )
    _write_csv(
        out_dir / "menu.csv",
        ("v_b", "I_star", "transfer"),
        (
            (float(v), allocation(menu, float(v)), transfer(menu, float(v)))
            for v in grid
        ),
    )

    axes = _sweep_axes(doc)
    if axes:
        if set(axes) != {"tau"}:
            raise ConfigError("continuous sweeps support the tau axis only")
        profit_rows = []
        for tau in axes["tau"]:
            base = profit_baselines(dist, GameConfig(float(tau), cfg.seller_belief))
            profit_rows.append(
                (float(tau), base.versioning, base.full_info, base.no_info)
            )
        _write_csv(
            out_dir / "profits.csv",
            ("tau", "profit_versioning", "profit_full", "profit_none"),
            profit_rows,
        )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    doc = load_config(args.config) if args.config else DEFAULT_CONFIG
    mc = _mc_config(doc, args)

    scenario = None
    dist = None
    if "buyer" in doc:
        kind, _ = _buyer_block(doc)
        if kind == "binary":
            scenario = _binary_scenario(doc)
        else:
            dist = _distribution(doc)
    cfg = _game_config(doc)
    if scenario is None:
        scenario = BinaryScenario(5.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, cfg)
    if dist is None:
        dist = uniform_distribution()

    reports = verify_battery(
        scenario,
        dist,
        cfg,
        mc,
        binary_grid_n=args.grid,
        threshold_grid_n=args.grid * 2 + 1,
    )
    stream = sys.stdout
    failures = 0
    for report in reports:
        stream.write(report.to_json() + "\n")
        if not report.passed and not report.informational:
            failures += 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infomenu",
        description="Menus of priced information products sold to a competitor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gain = sub.add_parser("gain-curve", help="gain curves over buyer types")
    p_gain.add_argument("--I", required=True, help="comma-separated informativeness values")
    p_gain.add_argument("--out", required=True, help="output CSV path")
    p_gain.set_defaults(handler=cmd_gain_curve)

    p_binary = sub.add_parser("binary", help="two-type menus and decision-boundary sweeps")
    p_binary.add_argument("--config", required=True)
    p_binary.add_argument("--out", required=True, help="output directory")
    p_binary.set_defaults(handler=cmd_binary)

    p_cont = sub.add_parser("continuous", help="continuous-type menu and profit curves")
    p_cont.add_argument("--config", required=True)
    p_cont.add_argument("--out", required=True, help="output directory")
    p_cont.set_defaults(handler=cmd_continuous)

    p_verify = sub.add_parser("verify", help="run the oracle battery")
    p_verify.add_argument("--config", default=None)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--grid", type=int, default=201, help="binary grid size")
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.handler(args)
    except ConfigError as exc:
        parser.exit(2, f"config error: {exc}\n")
    except IrregularDistributionError as exc:
        parser.exit(4, f"irregular distribution: {exc}\n")
    except (ValueError, RuntimeError) as exc:
        parser.exit(3, f"error: {exc}\n")
    if code:
        sys.exit(code)
    return 0


if __name__ == "__main__":
    sys.exit(main())
