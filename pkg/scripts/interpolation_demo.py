"""Prescribed value at an extra node, then a small finite interpolation problem."""

import argparse
import cmath
import math
from pathlib import Path

import numpy as np

from blaschke_interp import (
    FipProblem,
    InterpolationProblem,
    check_near_one,
    check_radial_rays,
    evaluate,
    separation_constant,
    solve_fip,
    solve_with_target,
)
from blaschke_interp.plot import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=float, nargs="+", default=[0.0, 0.5, 1.1, 1.6],
                    help="node angles in units of pi; the last one is the extra node")
    ap.add_argument("--beta", type=float, default=0.75, help="arg(beta) in units of pi")
    ap.add_argument("--s", type=float, default=0.3)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--svg", type=Path)
    args = ap.parse_args()

    nodes = tuple(math.pi * x for x in args.nodes)
    beta = cmath.exp(1j * math.pi * args.beta)
    problem = InterpolationProblem(nodes, beta, C=0.5, s=args.s, m=args.m)
    B = solve_with_target(problem)
    values = evaluate(B, np.exp(1j * np.array(nodes)))
    print(f"degree {B.degree}, delta {separation_constant(B):.6f}, min |z| {min(B.radii):.6f}")
    for phi, v in zip(args.nodes, values):
        print(f"  B(exp(i {phi:g} pi)) = {v.real:+.10f} {v.imag:+.10f}i")
    print(f"  near one on |z| <= {args.s}: {check_near_one(B, args.s, args.m)}")
    print(f"  near one on node rays:   {check_radial_rays(B, nodes[:-1], args.m)}")
    if args.svg:
        args.svg.write_text(render_svg(B.zeros, nodes[:-1], marked_points=nodes[-1:]))

    targets = tuple(cmath.exp(2j * math.pi * k / len(nodes)) for k in range(1, len(nodes) + 1))
    F = solve_fip(FipProblem(nodes, targets))
    residual = np.max(np.abs(evaluate(F, np.exp(1j * np.array(nodes))) - np.array(targets)))
    n = len(nodes)
    print(f"fip: degree {F.degree} (bound {n * (n - 1)}), max residual {residual:.2e}, "
          f"delta {separation_constant(F):.6f}")


if __name__ == "__main__":
    main()
