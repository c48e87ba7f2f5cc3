#!/usr/bin/env python3
"""Run the real-data bound-verification sweeps on a local CSV.

Expects a binary-classification CSV with a header row (see
prepare_real_data.py to subsample and normalize a raw download). Runs the
sample-size sweep over the train half and the dimension sweep over
importance-ordered features.
"""

import argparse
import os
import sys

from boostbound.cli import dispatch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("data", help="path to the dataset CSV")
    ap.add_argument("--target-column", default=None,
                    help="label column (default: first column)")
    ap.add_argument("--positive-value", default="1")
    ap.add_argument("--out", default="results/real")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--m-step", type=int, default=250)
    args = ap.parse_args()

    common = ["--data", args.data, "--positive-value", args.positive_value,
              "--seed", str(args.seed), "--workers", str(args.workers)]
    if args.target_column:
        common += ["--target-column", args.target_column]

    for mode, extra in (
        ("real-m", ["--m-step", str(args.m_step)]),
        ("real-d", []),
    ):
        out = os.path.join(args.out, mode)
        print(f"== exp {mode} -> {out}")
        code = dispatch(["exp", mode, *extra, *common, "--out", out])
        if code != 0:
            sys.exit(code)


if __name__ == "__main__":
    main()
