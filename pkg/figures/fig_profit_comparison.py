"""Expected profit vs competition: versioning solid, full information dashed,
no information dashdot."""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from figlib import DATA_DIR, OUTPUT_DIR, load_csv, save

PROFIT_COLUMNS = ("tau", "profit_versioning", "profit_full", "profit_none")


def render(csv_path, out_path):
    table = load_csv(csv_path, PROFIT_COLUMNS)
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(table["tau"], table["profit_versioning"], "-", color="black",
            label="strategic versioning")
    ax.plot(table["tau"], table["profit_full"], "--", color="black",
            label="full information")
    ax.plot(table["tau"], table["profit_none"], "-.", color="black",
            label="no information")
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel("expected profit")
    ax.legend(frameon=False)
    save(fig, out_path)
    return fig


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default=DATA_DIR / "profit_comparison" / "profits.csv")
    parser.add_argument("--out", default=OUTPUT_DIR / "profit_comparison.png")
    args = parser.parse_args()
    render(args.data, args.out)


if __name__ == "__main__":
    main()
