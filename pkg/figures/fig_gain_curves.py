"""Gain of selected rules across buyer types: I=0 solid, I=1/2 dashed, I=-1/2 dotted."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figlib import DATA_DIR, OUTPUT_DIR, load_csv, save


def style_for(value: float) -> str:
    if value == 0.0:
        return "-"
    return "--" if value > 0.0 else ":"


def render(csv_path, out_path):
    table = load_csv(csv_path, ("v_b", "I", "gain"))
    fig, ax = plt.subplots(figsize=(5, 3.2))
    for value in dict.fromkeys(table["I"]):  # first-appearance order
        mask = table["I"] == value
        ax.plot(
            table["v_b"][mask],
            table["gain"][mask],
            style_for(float(value)),
            color="black",
            label=f"I = {value:g}",
        )
    ax.set_xlabel(r"$v_b$")
    ax.set_ylabel("gain")
    ax.legend(frameon=False)
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR / "gain_curve.csv")
    parser.add_argument("--out", default=OUTPUT_DIR / "gain_curves.png")
    args = parser.parse_args()
    render(args.data, args.out)


if __name__ == "__main__":
    main()
