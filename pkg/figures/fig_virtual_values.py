"""Virtual values per type with the dual: pi- solid, pi+ dashed, lambda* red,
menu thresholds as blue vertical lines; one panel per competition level."""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figlib import DATA_DIR, OUTPUT_DIR, load_csv, save

VIRTUAL_COLUMNS = ("v_b", "pi_minus", "pi_plus", "lambda_star")
MENU_COLUMNS = ("v_b", "I_star", "transfer")


def menu_thresholds(menu_table) -> list[float]:
    """Allocation switch points read off the emitted step menu."""
    v_b = menu_table["v_b"]
    levels = menu_table["I_star"]
    return [
        float(0.5 * (v_b[k] + v_b[k + 1]))
        for k in range(len(levels) - 1)
        if levels[k] != levels[k + 1]
    ]


def render(panel_dirs, out_path, titles=None):
    titles = titles or [Path(d).name for d in panel_dirs]
    fig, axes = plt.subplots(1, len(panel_dirs), figsize=(4 * len(panel_dirs), 3.2))
    axes = np.atleast_1d(axes)
    for ax, panel_dir, title in zip(axes, panel_dirs, titles):
        panel_dir = Path(panel_dir)
        virtual = load_csv(panel_dir / "virtual_values.csv", VIRTUAL_COLUMNS)
        menu = load_csv(panel_dir / "menu.csv", MENU_COLUMNS)
        ax.plot(virtual["v_b"], virtual["pi_minus"], "-", color="black", label=r"$\pi^-$")
        ax.plot(virtual["v_b"], virtual["pi_plus"], "--", color="black", label=r"$\pi^+$")
        ax.axhline(float(virtual["lambda_star"][0]), color="red", label=r"$\lambda^*$")
        for threshold in menu_thresholds(menu):
            ax.axvline(threshold, color="blue")
        ax.set_xlabel(r"$v_b$")
        ax.set_title(title)
    axes[0].set_ylabel("virtual value")
    axes[0].legend(frameon=False, loc="upper left")
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR)
    parser.add_argument("--out", default=OUTPUT_DIR / "virtual_values.png")
    args = parser.parse_args()
    data = Path(args.data)
    render(
        [data / "step_tau0", data / "step_tauhalf", data / "step_tauprime"],
        args.out,
        titles=[r"$\tau = 0$", r"$\tau = \tau'/2$", r"$\tau = \tau'$"],
    )


if __name__ == "__main__":
    main()
