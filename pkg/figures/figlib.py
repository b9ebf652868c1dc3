"""Shared plumbing for the figure scripts: schema-checked CSV loading.

Rendering is strictly read-only over the committed CSVs; none of the menu
math is recomputed here.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

FIGURES_DIR = Path(__file__).resolve().parent
DATA_DIR = FIGURES_DIR / "data"
OUTPUT_DIR = FIGURES_DIR / "output"


class SchemaError(ValueError):
    """A CSV does not match its documented schema."""


def load_csv(path, columns: tuple[str, ...]) -> dict[str, np.ndarray]:
    """Load a CSV whose header must equal ``columns``; numeric where possible."""
    path = Path(path)
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {columns}") from None
        rows = list(reader)
    for expected, got in zip(columns, header):
        if expected != got:
            raise SchemaError(f"{path}: expected column '{expected}', found '{got}'")
    if len(header) != len(columns):
        raise SchemaError(
            f"{path}: expected {len(columns)} columns, found {len(header)}"
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows under column '{columns[0]}'")
    table: dict[str, np.ndarray] = {}
    for index, name in enumerate(columns):
        raw = [row[index] for row in rows]
        try:
            table[name] = np.array([float(value) for value in raw])
        except ValueError:
            table[name] = np.array(raw)
    return table


def save(fig, out_path) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    return out_path
