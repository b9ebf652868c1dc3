"""Optimal step menus: allocation (solid step) and transfer (dashed) per panel."""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figlib import DATA_DIR, OUTPUT_DIR, load_csv, save

MENU_COLUMNS = ("v_b", "I_star", "transfer")


def render(panel_dirs, out_path, titles=None):
    titles = titles or [Path(d).name for d in panel_dirs]
    fig, axes = plt.subplots(1, len(panel_dirs), figsize=(4 * len(panel_dirs), 3.2))
    axes = np.atleast_1d(axes)
    for ax, panel_dir, title in zip(axes, panel_dirs, titles):
        menu = load_csv(Path(panel_dir) / "menu.csv", MENU_COLUMNS)
        ax.step(menu["v_b"], menu["I_star"], "-", color="black", where="mid",
                label=r"$I^*(v_b)$")
        twin = ax.twinx()
        twin.plot(menu["v_b"], menu["transfer"], "--", color="gray",
                  label=r"$t(v_b)$")
        twin.set_ylim(bottom=0.0)
        ax.set_xlabel(r"$v_b$")
        ax.set_ylim(-1.1, 1.1)
        ax.set_title(title)
    axes[0].set_ylabel(r"$I^*$")
    axes[0].legend(frameon=False, loc="upper left")
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR)
    parser.add_argument("--out", default=OUTPUT_DIR / "step_menus.png")
    args = parser.parse_args()
    data = Path(args.data)
    render(
        [data / "step_tau0", data / "step_tauhalf", data / "step_tauprime"],
        args.out,
        titles=[r"$\tau = 0$", r"$\tau = \tau'/2$", r"$\tau = \tau'$"],
    )


if __name__ == "__main__":
    main()
