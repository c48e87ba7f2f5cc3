#!/usr/bin/env python3
"""Subsample and normalize a raw tabular CSV for the real-data experiments.

Keeps the header, draws a seeded row subsample without replacement, and
rewrites cells that are integral floats ("1.0") as plain integers so the
binary target matches positive-value "1". The acceptance suite looks for
the prepared file at data/heart_disease_health_indicators.csv by default.
"""

import argparse
import csv
from pathlib import Path

import numpy as np


def normalize(cell: str) -> str:
    text = cell.strip()
    try:
        value = float(text)
    except ValueError:
        return text
    if value.is_integer():
        return str(int(value))
    return text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("source", help="raw CSV download")
    ap.add_argument("dest", help="output CSV path")
    ap.add_argument("--rows", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    with open(args.source, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        body = [row for row in reader if row]

    if len(body) > args.rows:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        keep = sorted(rng.choice(len(body), size=args.rows, replace=False))
        body = [body[i] for i in keep]

    dest = Path(args.dest)
    dest.parent.mkdir(parents=True, exist_ok=True)
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([h.strip() for h in header])
        for row in body:
            writer.writerow([normalize(c) for c in row])
    print(f"wrote {dest} ({len(body)} rows, {len(header) - 1} feature columns)")


if __name__ == "__main__":
    main()
