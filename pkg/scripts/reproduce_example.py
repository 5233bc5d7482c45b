"""Six-arc worked example: measure tables at k = 0, 1, 75 and optional SVG figures."""

import argparse
import math
from pathlib import Path

import numpy as np

from blaschke_interp import BlaschkeProduct, Partition, SolverConfig, iterate, separation_constant
from blaschke_interp.plot import render_svg

PI = math.pi
LENGTHS = [PI / 5, 3 * PI / 5, 3 * PI / 5, 3 * PI / 10, PI / 10, PI / 5]


def table(step, anchors):
    zeros = step.radii * np.exp(1j * np.asarray(anchors))
    delta = separation_constant(BlaschkeProduct(tuple(zeros)))
    rows = [f"k = {step.k}   E = {step.error:.4e}   delta = {delta:.4f}"]
    rows.append(f"{'n':>3} {'|z_n|':>8} {'mu':>8}")
    for n, (r, m) in enumerate(zip(step.radii, step.measures), 1):
        rows.append(f"{n:>3} {r:>8.4f} {m:>8.4f}")
    return "\n".join(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--R", type=float, default=0.86, help="common starting radius")
    ap.add_argument("--C", type=float, default=0.7)
    ap.add_argument("--steps", type=int, nargs="+", default=[0, 1, 75])
    ap.add_argument("--svg-dir", type=Path, help="write one SVG per reported step here")
    args = ap.parse_args()

    partition = Partition.from_lengths(LENGTHS, start=-PI / 10)
    anchors = partition.midpoints
    config = SolverConfig(C=args.C, R_override=args.R, epsilon=1e-15)
    wanted = sorted(set(args.steps))
    for step, zeros in iterate(partition, config):
        if step.k in wanted:
            print(table(step, anchors), end="\n\n")
            if args.svg_dir:
                args.svg_dir.mkdir(parents=True, exist_ok=True)
                svg = render_svg(zeros, partition.endpoints, R=args.R, title=f"k = {step.k}")
                (args.svg_dir / f"example_k{step.k:03d}.svg").write_text(svg)
        if step.k >= wanted[-1]:
            break


if __name__ == "__main__":
    main()
