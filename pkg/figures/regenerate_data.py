"""Rebuild every committed CSV under data/ from the configs via the infomenu CLI.

Each entry below is the exact command for one figure's data; the plot
scripts never recompute any of it.
"""

from __future__ import annotations

import sys
from pathlib import Path

from infomenu.cli import main as infomenu_main

FIGURES_DIR = Path(__file__).resolve().parent
CONFIGS = FIGURES_DIR / "configs"
DATA = FIGURES_DIR / "data"

COMMANDS: list[list[str]] = [
    ["gain-curve", "--I", "0,0.5,-0.5", "--out", str(DATA / "gain_curve.csv")],
]
for tag in ("congruent_phi13", "congruent_phi12", "congruent_phi23", "noncongruent"):
    COMMANDS.append(
        ["binary", "--config", str(CONFIGS / f"{tag}.yaml"), "--out", str(DATA / tag)]
    )
for tag in ("step_tau0", "step_tauhalf", "step_tauprime"):
    COMMANDS.append(
        ["continuous", "--config", str(CONFIGS / f"{tag}.yaml"), "--out", str(DATA / tag)]
    )
COMMANDS.append(
    [
        "continuous",
        "--config",
        str(CONFIGS / "profit_comparison.yaml"),
        "--out",
        str(DATA / "profit_comparison"),
    ]
)
for vs_tag in ("vs10", "vs50", "vs90"):
    for panel in "abc":
        COMMANDS.append(
            [
                "continuous",
                "--config",
                str(CONFIGS / "objective" / f"{vs_tag}_{panel}.yaml"),
                "--out",
                str(DATA / "objective" / f"{vs_tag}_{panel}"),
            ]
        )


def main() -> int:
    for command in COMMANDS:
        print("infomenu " + " ".join(command))
        code = infomenu_main(command)
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
