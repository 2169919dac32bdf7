#!/usr/bin/env python3
"""Sweep the two cross-empathy weights over the prisoner's-dilemma fixture and
map which equilibrium outcomes appear where.

Writes the full region CSV and prints a coarse ASCII picture plus the area
share of each outcome label.
"""
import argparse
from collections import Counter
from pathlib import Path

from empathica import prisoners_dilemma, region_map
from empathica.io import region_csv, write_text

GLYPHS = {"22": ".", "11": "#", "12": ">", "21": "<", "12+21+mixed": "~", "mixed": "o"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=60)
    ap.add_argument("--lo", type=float, default=-1.0)
    ap.add_argument("--hi", type=float, default=2.0)
    ap.add_argument("--out", type=Path, default=Path("out/pd_region.csv"))
    args = ap.parse_args()

    g = prisoners_dilemma()
    rmap = region_map(g, (args.lo, args.hi), (args.lo, args.hi), resolution=args.grid)
    write_text(args.out, region_csv(rmap))
    print(f"wrote {args.out} ({args.grid}x{args.grid} cells)")

    counts = Counter(label for _, _, label in rmap.rows())
    total = args.grid * args.grid
    print("\noutcome shares:")
    for label, n in counts.most_common():
        print(f"  {label:16s} {n:5d}  ({100.0 * n / total:5.1f}%)")

    step = max(1, args.grid // 30)
    print("\npicture (l21 increases upward, l12 rightward):")
    for i in range(len(rmap.l21_values) - 1, -1, -step):
        row = "".join(
            GLYPHS.get(rmap.labels[i][j], "?")
            for j in range(0, len(rmap.l12_values), step)
        )
        print(f"  {row}")
    legend = ", ".join(f"{v}={k}" for k, v in GLYPHS.items())
    print(f"  legend: {legend}, ?=other")


if __name__ == "__main__":
    main()
