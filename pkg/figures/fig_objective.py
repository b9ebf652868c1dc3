"""Unconstrained virtual surplus of a single type as a function of the rule.

The surplus of allocating rule ``I`` to type ``v_b`` is piecewise linear:
``I * pi_minus(v_b)`` for ``I < 0`` and ``I * pi_plus(v_b)`` for ``I >= 0``
(density 1 under the uniform type distribution the panels use), so the curve
is drawn directly from the emitted virtual-value rows at ``v_b`` — no menu
math is recomputed.  One panel per seller belief, one curve per competition
level: solid, dashed, dotted in panel order.
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figlib import DATA_DIR, OUTPUT_DIR, SchemaError, load_csv, save

VIRTUAL_COLUMNS = ("v_b", "pi_minus", "pi_plus", "lambda_star")
STYLES = ("-", "--", ":")


def surplus_segments(csv_path, v_b: float):
    table = load_csv(csv_path, VIRTUAL_COLUMNS)
    hits = np.nonzero(np.isclose(table["v_b"], v_b, atol=1e-12))[0]
    if hits.size != 1:
        raise SchemaError(f"{csv_path}: expected exactly one row at v_b={v_b:g}")
    row = int(hits[0])
    return float(table["pi_minus"][row]), float(table["pi_plus"][row])


def render(panel_csvs, out_path, v_b=0.4, titles=None, labels=None):
    """``panel_csvs`` is a list of panels, each a list of virtual-value CSVs."""
    titles = titles or [f"panel {k}" for k in range(len(panel_csvs))]
    fig, axes = plt.subplots(1, len(panel_csvs), figsize=(4 * len(panel_csvs), 3.2))
    axes = np.atleast_1d(axes)
    for ax, csvs, title in zip(axes, panel_csvs, titles):
        for style, csv_path in zip(STYLES, csvs):
            slope_minus, slope_plus = surplus_segments(csv_path, v_b)
            grid = np.linspace(-1.0, 1.0, 201)
            surplus = np.where(grid < 0.0, grid * slope_minus, grid * slope_plus)
            name = labels.get(Path(csv_path).parent.name) if labels else None
            ax.plot(grid, surplus, style, color="black", label=name)
        ax.set_xlabel(r"$I$")
        ax.set_title(title)
        if labels:
            ax.legend(frameon=False, fontsize=8)
    axes[0].set_ylabel("virtual surplus")
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR / "objective")
    parser.add_argument("--out", default=OUTPUT_DIR / "virtual_surplus.png")
    args = parser.parse_args()
    data = Path(args.data)
    panels = [
        [data / f"{tag}_{k}" / "virtual_values.csv" for k in "abc"]
        for tag in ("vs10", "vs50", "vs90")
    ]
    render(
        panels,
        args.out,
        titles=[r"$v_s = 1/10$", r"$v_s = 1/2$", r"$v_s = 9/10$"],
    )


if __name__ == "__main__":
    main()
