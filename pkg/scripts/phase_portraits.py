#!/usr/bin/env python3
"""Render SVG phase portraits of the four canonical games under a chosen
revision protocol, with a few seeded trajectories overlaid on the flow."""
import argparse
import random
from pathlib import Path

from empathica import (
    LearningSchedule,
    PopulationState,
    RevisionProtocol,
    anti_coordination_game,
    coordination_game,
    matching_pennies,
    prisoners_dilemma,
    simulate,
    vector_field,
)
from empathica.io import phase_portrait_svg, write_text

GAMES = {
    "coordination": coordination_game,
    "anti_coordination": anti_coordination_game,
    "pd": prisoners_dilemma,
    "matching_pennies": matching_pennies,
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--protocol", default="replicator")
    ap.add_argument("--grid", type=int, default=17)
    ap.add_argument("--trajectories", type=int, default=4)
    ap.add_argument("--steps", type=int, default=20_000)
    ap.add_argument("--rate", type=float, default=0.02)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--outdir", type=Path, default=Path("out"))
    args = ap.parse_args()

    proto = RevisionProtocol.parse(args.protocol)
    sched = LearningSchedule.constant(args.rate)
    rng = random.Random(args.seed)

    for name, make in GAMES.items():
        g = make()
        field = vector_field(proto, g, resolution=args.grid)
        trajs = tuple(
            simulate(
                PopulationState(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)),
                proto, sched, g, steps=args.steps, detect_cycles=False,
            )
            for _ in range(args.trajectories)
        )
        path = args.outdir / f"portrait_{name}.svg"
        write_text(path, phase_portrait_svg(field, trajs))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
