"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 non-convergence, 3 target unreachable,
4 verification failed.
"""

from __future__ import annotations

import argparse
import cmath
import dataclasses
import math
import sys

import numpy as np

from . import files
from .disk import evaluate, separation_constant
from .interpolation import (
    TargetUnreachable,
    check_near_one,
    check_radial_rays,
    check_zero_localization,
    induced_partition,
    solve_fip,
    solve_with_target,
)
from .measure import mu_vector
from .plot import render_svg
from .solver import (
    MaxIterationsExceeded,
    NoBracketError,
    SeparationUnreachable,
    error,
    solve,
    verify_solution,
)

OK, INPUT_ERROR, NOT_CONVERGED, UNREACHABLE, VERIFY_FAILED = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _fail(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load_problem(path):
    try:
        return files.load_problem(path)
    except (OSError, files.ProblemError) as exc:
        raise InputError(str(exc)) from None


def _emit(text: str, path) -> None:
    if path:
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc}") from None
    else:
        sys.stdout.write(text)


def _result_text(rec: dict) -> str:
    lines = [f"{'n':>3} {'|z_n|':>10} {'angle':>10} {'mu':>10}"]
    measures = rec.get("measures") or [math.nan] * len(rec["zeros"])
    for i, (z, m) in enumerate(zip(rec["zeros"], measures), 1):
        lines.append(f"{i:>3} {z['radius']:>10.4f} {z['angle']:>10.4f} {m:>10.4f}")
    lines.append(
        f"delta={rec['delta']:.4f} error={rec['error']:.3e} "
        f"iterations={rec['iterations']} converged={str(rec['converged']).lower()}"
    )
    for name, chk in rec.get("checks", {}).items():
        lines.append(f"{name}: {'pass' if chk['passed'] else 'FAIL'} (worst {chk['worst']:.3e})")
    return "\n".join(lines) + "\n"


def _render(rec: dict, fmt: str) -> str:
    return files.dumps(rec) + "\n" if fmt == "json" else _result_text(rec)


def _solver_problem(args):
    problem = _load_problem(args.problem)
    if problem.mode != "partition":
        raise InputError(f"field 'mode': '{args.command}' needs a partition-mode problem, got '{problem.mode}'")
    cfg = problem.config
    changes = {}
    if args.epsilon is not None:
        changes["epsilon"] = args.epsilon
    if args.max_iter is not None:
        changes["max_iterations"] = args.max_iter
    if args.seed_radius is not None:
        changes["R_override"] = args.seed_radius
    try:
        cfg = dataclasses.replace(cfg, **changes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return problem, cfg


def _run_solver(problem, cfg):
    try:
        B, trace = solve(problem.partition, cfg)
        return B, trace, OK
    except MaxIterationsExceeded as exc:
        _fail(str(exc))
        return exc.product, exc.trace, NOT_CONVERGED


def cmd_solve(args) -> int:
    problem, cfg = _solver_problem(args)
    try:
        B, trace, code = _run_solver(problem, cfg)
    except (NoBracketError, SeparationUnreachable) as exc:
        _fail(str(exc))
        return NOT_CONVERGED
    last = trace.steps[-1]
    rec = files.result_record(
        B, last.measures, separation_constant(B), last.error, trace.iterations,
        trace.converged, mode="partition", R=trace.R,
    )
    if args.trace:
        _emit("".join(files.trace_line(s, trace.anchors) + "\n" for s in trace.steps), args.trace)
    _emit(_render(rec, args.format), args.out)
    return code


def cmd_trace(args) -> int:
    problem, cfg = _solver_problem(args)
    try:
        B, trace, code = _run_solver(problem, cfg)
    except (NoBracketError, SeparationUnreachable) as exc:
        _fail(str(exc))
        return NOT_CONVERGED
    if args.format == "json":
        _emit("".join(files.trace_line(s, trace.anchors) + "\n" for s in trace.steps), args.out)
    else:
        lines = []
        for s in trace.steps:
            moved = "-" if s.moved_index is None else str(s.moved_index)
            radii = " ".join(f"{r:.4f}" for r in s.radii)
            mus = " ".join(f"{v:.4f}" for v in s.measures)
            lines.append(f"k={s.k:<5d} moved={moved:>3} E={s.error:.4e} |z|=[{radii}] mu=[{mus}]")
        _emit("\n".join(lines) + "\n", args.out)
    return code


def _check(result) -> dict:
    return {"passed": bool(result.passed), "worst": float(result.worst)}


def _interpolation_record(problem, B) -> dict:
    partition = induced_partition(problem)
    measures = mu_vector(B.zeros, partition)
    nodes = problem.nodes
    first = evaluate(B, np.exp(1j * np.array(nodes[:-1])))
    node_err = float(np.max(np.abs(first - 1.0)))
    beta_err = abs(evaluate(B, cmath.exp(1j * nodes[-1])) - problem.beta)
    delta = separation_constant(B)
    checks = {
        "a_nodes_map_to_one": {"passed": node_err < 1e-6, "worst": node_err},
        "b_extra_node_hits_beta": {"passed": beta_err < 1e-6, "worst": beta_err},
        "e_separation": {"passed": delta > problem.C, "worst": delta},
    }
    if problem.s is not None:
        checks["c_near_one_on_disk"] = _check(check_near_one(B, problem.s, problem.m))
        checks["d_near_one_on_rays"] = _check(check_radial_rays(B, nodes[:-1], problem.m))
        if B.degree >= 2:
            checks["ii_zero_localization"] = _check(check_zero_localization(B, nodes, problem.m))
    return files.result_record(
        B, measures, delta, error(measures), 0, True,
        mode="interpolation", degree=B.degree, R=float(np.min(B.radii)), checks=checks,
    )


def _fip_record(problem, B, C) -> dict:
    values = evaluate(B, np.exp(1j * np.array(problem.nodes)))
    residuals = np.abs(values - np.array(problem.targets))
    n = len(problem.nodes)
    delta = separation_constant(B)
    return files.result_record(
        B, [], delta, float(np.max(residuals)), 0, True,
        mode="fip", degree=B.degree, degree_bound=max(n * (n - 1), 1),
        node_residuals=residuals, R=float(np.min(B.radii)),
        checks={"separation": {"passed": delta > C, "worst": delta}},
    )


def cmd_interpolate(args) -> int:
    problem = _load_problem(args.problem)
    try:
        if problem.mode == "interpolation":
            rec = _interpolation_record(problem.interpolation, solve_with_target(problem.interpolation))
        elif problem.mode == "fip":
            rec = _fip_record(problem.fip, solve_fip(problem.fip, problem.C), problem.C)
        else:
            raise InputError("field 'mode': 'interpolate' needs mode 'interpolation' or 'fip'")
    except TargetUnreachable as exc:
        _fail(str(exc))
        return UNREACHABLE
    _emit(_render(rec, args.format), args.out)
    return OK


def _load_product(path):
    try:
        return files.product_from_record(files.load_result(path))
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None


def cmd_verify(args) -> int:
    B = _load_product(args.result)
    problem = _load_problem(args.problem)
    if problem.mode != "fip" and B.degree != problem.N:
        raise InputError(f"result has degree {B.degree} but the problem has N = {problem.N}")

    if problem.mode == "fip":
        p = problem.fip
        values = evaluate(B, np.exp(1j * np.array(p.nodes)))
        residuals = np.abs(values - np.array(p.targets))
        delta = separation_constant(B)
        report = {
            "passed": bool(np.all(residuals < args.tol) and delta > 0.0),
            "tol": args.tol,
            "node_residuals": residuals.tolist(),
            "max_deviation": float(np.max(residuals)),
            "delta": delta,
        }
    else:
        if problem.mode == "partition":
            partition = problem.partition
        else:
            partition = induced_partition(problem.interpolation)
        rep = verify_solution(B, partition, args.tol)
        report = rep.as_dict()
        if problem.mode == "interpolation":
            p = problem.interpolation
            miss = abs(evaluate(B, cmath.exp(1j * p.nodes[-1])) - p.beta)
            report["target_residual"] = miss
            report["passed"] = bool(report["passed"] and miss < args.tol)

    if args.format == "json":
        sys.stdout.write(files.dumps(report) + "\n")
    else:
        status = "PASS" if report["passed"] else "FAIL"
        print(f"{status}: max deviation {report['max_deviation']:.3e} (tol {args.tol:g}), "
              f"delta {report['delta']:.6f}")
        if "deviations" in report:
            for i, d in enumerate(report["deviations"]):
                print(f"  arc {i}: |1 - mu| = {d:.3e}")
        if "target_residual" in report:
            print(f"  |B(extra) - beta| = {report['target_residual']:.3e}")
        if "node_residuals" in report:
            for i, d in enumerate(report["node_residuals"]):
                print(f"  node {i}: |B - psi| = {d:.3e}")
    return OK if report["passed"] else VERIFY_FAILED


def cmd_plot(args) -> int:
    try:
        rec = files.load_result(args.result)
        B = files.product_from_record(rec)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    problem = _load_problem(args.problem)
    marked = ()
    if problem.mode == "partition":
        ticks = problem.partition.endpoints if len(problem.partition) > 1 else []
    elif problem.mode == "interpolation":
        ticks = list(problem.interpolation.nodes[:-1])
        marked = (problem.interpolation.nodes[-1],)
    else:
        ticks = list(problem.fip.nodes)
    R = None if args.no_annulus else rec.get("R")
    svg = render_svg(B.zeros, ticks, R=R, marked_points=marked)
    _emit(svg, args.out)
    return OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blaschke-interp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("problem")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--max-iter", type=int)
        p.add_argument("--seed-radius", type=float, help="initial radius R (used if valid)")
        p.add_argument("-o", "--out")

    p = sub.add_parser("solve", help="solve a partition problem")
    solver_flags(p)
    p.add_argument("--trace", help="write one JSON record per iteration to this path")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace", help="print the iteration trace of a partition problem")
    solver_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("interpolate", help="solve an interpolation or fip problem")
    p.add_argument("problem")
    p.add_argument("-o", "--out")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("verify", help="check a result file against its problem")
    p.add_argument("result")
    p.add_argument("problem")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="draw a result as SVG")
    p.add_argument("result")
    p.add_argument("problem")
    p.add_argument("--out", required=True)
    p.add_argument("--no-annulus", action="store_true")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; usage errors exit 1
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        _fail(str(exc))
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
