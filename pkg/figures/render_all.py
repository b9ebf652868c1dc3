"""Render the full figure set from the committed CSVs into output/."""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import fig_boundaries
import fig_gain_curves
import fig_objective
import fig_profit_comparison
import fig_step_menus
import fig_virtual_values
from figlib import DATA_DIR, OUTPUT_DIR


def render_all(data_dir=DATA_DIR, out_dir=OUTPUT_DIR) -> list[Path]:
    data, out = Path(data_dir), Path(out_dir)
    produced = []

    fig_gain_curves.render(data / "gain_curve.csv", out / "gain_curves.png")
    produced.append(out / "gain_curves.png")

    fig_boundaries.render_congruent(
        [data / f"congruent_{tag}" for tag in ("phi13", "phi12", "phi23")],
        out / "boundaries_congruent.png",
        titles=[r"$\phi = 1/3$", r"$\phi = 1/2$", r"$\phi = 2/3$"],
    )
    produced.append(out / "boundaries_congruent.png")

    fig_boundaries.render_noncongruent(
        data / "noncongruent", out / "boundaries_noncongruent.png"
    )
    produced.append(out / "boundaries_noncongruent.png")

    step_dirs = [data / "step_tau0", data / "step_tauhalf", data / "step_tauprime"]
    titles = [r"$\tau = 0$", r"$\tau = \tau'/2$", r"$\tau = \tau'$"]
    fig_virtual_values.render(step_dirs, out / "virtual_values.png", titles=titles)
    produced.append(out / "virtual_values.png")

    fig_step_menus.render(step_dirs, out / "step_menus.png", titles=titles)
    produced.append(out / "step_menus.png")

    fig_profit_comparison.render(
        data / "profit_comparison" / "profits.csv", out / "profit_comparison.png"
    )
    produced.append(out / "profit_comparison.png")

    panels = [
        [data / "objective" / f"{tag}_{k}" / "virtual_values.csv" for k in "abc"]
        for tag in ("vs10", "vs50", "vs90")
    ]
    fig_objective.render(
        panels,
        out / "virtual_surplus.png",
        titles=[r"$v_s = 1/10$", r"$v_s = 1/2$", r"$v_s = 9/10$"],
    )
    produced.append(out / "virtual_surplus.png")

    plt.close("all")
    return produced


if __name__ == "__main__":
    start = time.monotonic()
    files = render_all()
    elapsed = time.monotonic() - start
    for path in files:
        print(path)
    print(f"rendered {len(files)} figures in {elapsed:.1f}s")
