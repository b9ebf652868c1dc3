"""Decision-boundary maps over (v_s, tau): regimes shaded, tau_h dashed, tau_l solid.

One congruent figure with a panel per phi, and a single-panel noncongruent
figure; both read the sweep grids and closed-form boundary curves emitted by
the binary command.
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figlib import DATA_DIR, OUTPUT_DIR, load_csv, save

GRID_COLUMNS = (
    "v_s",
    "tau",
    "phi",
    "I_low",
    "I_high",
    "t_low",
    "t_high",
    "profit",
    "regime",
)
BOUNDARY_COLUMNS = ("phi", "v_s", "tau_low", "tau_high")


def _panel(ax, grid_dir, title):
    grid = load_csv(grid_dir / "grid.csv", GRID_COLUMNS)
    bounds = load_csv(grid_dir / "boundaries.csv", BOUNDARY_COLUMNS)

    v_s = np.unique(grid["v_s"])
    tau = np.unique(grid["tau"])
    regimes = list(dict.fromkeys(grid["regime"]))
    codes = {name: k for k, name in enumerate(regimes)}
    field = np.array([codes[name] for name in grid["regime"]]).reshape(
        len(v_s), len(tau)
    )
    mesh = ax.pcolormesh(
        v_s,
        tau,
        field.T,
        cmap="Pastel1",
        vmin=0,
        vmax=max(len(regimes) - 1, 1),
        shading="nearest",
    )

    order = np.argsort(bounds["v_s"])
    for key, style in (("tau_low", "-"), ("tau_high", "--")):
        values = bounds[key][order]
        mask = np.isfinite(values) & (values >= tau.min()) & (values <= tau.max())
        ax.plot(
            bounds["v_s"][order][mask],
            values[mask],
            style,
            color="black",
            label=r"$\tau^l$" if key == "tau_low" else r"$\tau^h$",
        )
    ax.set_xlim(v_s.min(), v_s.max())
    ax.set_ylim(tau.min(), tau.max())
    ax.set_xlabel(r"$v_s$")
    ax.set_ylabel(r"$\tau$")
    ax.set_title(title)
    return regimes


def render_congruent(data_dirs, out_path, titles=None):
    titles = titles or [d.name for d in data_dirs]
    fig, axes = plt.subplots(1, len(data_dirs), figsize=(4 * len(data_dirs), 3.2))
    axes = np.atleast_1d(axes)
    for ax, grid_dir, title in zip(axes, data_dirs, titles):
        _panel(ax, grid_dir, title)
    axes[0].legend(frameon=False, loc="upper left")
    save(fig, out_path)
    return fig


def render_noncongruent(data_dir, out_path):
    fig, ax = plt.subplots(figsize=(4.5, 3.4))
    _panel(ax, data_dir, r"noncongruent types")
    ax.legend(frameon=False, loc="upper left")
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR)
    parser.add_argument("--out", default=OUTPUT_DIR)
    args = parser.parse_args()
    from pathlib import Path

    data, out = Path(args.data), Path(args.out)
    render_congruent(
        [data / f"congruent_{tag}" for tag in ("phi13", "phi12", "phi23")],
        out / "boundaries_congruent.png",
        titles=[r"$\phi = 1/3$", r"$\phi = 1/2$", r"$\phi = 2/3$"],
    )
    render_noncongruent(data / "noncongruent", out / "boundaries_noncongruent.png")


if __name__ == "__main__":
    main()
