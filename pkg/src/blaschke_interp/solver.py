"""Iterative construction of a Blaschke product with one full turn per arc.

Zeros start on their anchor rays at a common radius R. Each step takes the
arc with the smallest measure and pushes its zero outward along the ray until
that arc's measure is exactly one. Every other arc loses measure while this
happens, so the total error sum |1 - mu_n| never increases.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .disk import (
    TWO_PI,
    BlaschkeProduct,
    Partition,
    boundary_arg_derivative,
    canonical_angle,
    evaluate,
    normalize_rotation,
    separation_constant,
)
from .measure import _omega, min_radius_for_monotonicity, omega_matrix

RADIUS_CAP = 1.0 - 1e-9
BISECTION_TOP = 1.0 - 1e-13
BISECTION_STEPS = 60
MEASURE_TOL = 1e-12


class NoBracketError(RuntimeError):
    """The moved zero cannot raise its arc to measure one before the circle."""


class SeparationUnreachable(RuntimeError):
    pass


class MaxIterationsExceeded(RuntimeError):
    def __init__(self, message, product, trace):
        super().__init__(message)
        self.product = product
        self.trace = trace


@dataclass(frozen=True)
class SolverConfig:
    C: float = 0.5
    epsilon: float = 1e-6
    max_iterations: int = 100_000
    anchors: Optional[tuple] = None
    R_override: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.C < 1.0:
            raise ValueError(f"separation bound C must lie in [0, 1), got {self.C}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be a positive integer")
        if self.R_override is not None and not 0.0 <= self.R_override < 1.0:
            raise ValueError(f"R_override must lie in [0, 1), got {self.R_override}")
        if self.anchors is not None:
            object.__setattr__(self, "anchors", tuple(float(a) for a in self.anchors))


@dataclass(frozen=True)
class TraceStep:
    k: int
    moved_index: Optional[int]
    new_radius: Optional[float]
    measures: np.ndarray
    error: float
    radii: np.ndarray


@dataclass
class SolverTrace:
    R: float
    anchors: tuple
    steps: list = field(default_factory=list)
    converged: bool = False

    def __len__(self):
        return len(self.steps)

    @property
    def errors(self) -> np.ndarray:
        return np.array([s.error for s in self.steps])

    @property
    def radii(self) -> np.ndarray:
        return np.array([s.radii for s in self.steps])

    @property
    def iterations(self) -> int:
        return self.steps[-1].k if self.steps else 0


def resolve_anchors(partition: Partition, anchors: Optional[Sequence[float]]) -> tuple:
    if anchors is None:
        return tuple(partition.midpoints)
    anchors = tuple(canonical_angle(a) for a in anchors)
    if len(anchors) != len(partition):
        raise ValueError(f"expected {len(partition)} anchors, got {len(anchors)}")
    for n, (arc, a) in enumerate(zip(partition, anchors)):
        if not arc.in_interior(a):
            raise ValueError(f"anchor {n} at angle {a:.17g} is not inside its arc")
    return anchors


def _ray_zeros(R: float, anchors) -> np.ndarray:
    return R * np.exp(1j * np.asarray(anchors, dtype=float))


def choose_initial_radius(
    partition: Partition,
    anchors: Optional[Sequence[float]],
    C: float,
    R_override: Optional[float] = None,
) -> float:
    """Common starting radius: past the monotonicity bound and with separation > C.

    A valid ``R_override`` is used as is; otherwise the search keeps halving
    the distance to the circle.
    """
    if not C < 1.0:
        raise ValueError("C must be below 1")
    anchors = resolve_anchors(partition, anchors)
    r_min = min_radius_for_monotonicity(partition)

    def separated(R):
        return separation_constant(BlaschkeProduct(_ray_zeros(R, anchors))) > C

    if R_override is not None and R_override >= r_min and separated(R_override):
        return float(R_override)
    R = max(r_min, 0.5)
    if R_override is not None:
        R = max(R, R_override)
    while not separated(R):
        R = 1.0 - 0.5 * (1.0 - R)
        if R > RADIUS_CAP:
            raise SeparationUnreachable(f"no radius below {RADIUS_CAP} gives separation > {C}")
    return R


def error(measures) -> float:
    """Total deviation of the arc measures from one."""
    return math.fsum(abs(1.0 - v) for v in measures)


def _quadratic_radius(c: float, u: complex, start: float, length: float, r0: float):
    """Radius r >= r0 with omega(r u, arc) == c, from the quadratic it satisfies.

    omega = c means (e^{ib} - z) conj(e^{ia} - z) e^{i psi} is a positive real,
    and its imaginary part is quadratic in r.
    """
    A = cmath.exp(1j * start)
    Bv = cmath.exp(1j * (start + length))
    rot = cmath.exp(1j * (-0.5 * (length + math.pi) - math.pi * (c - 0.5)))
    a2 = rot.imag
    mid = rot * (Bv * u.conjugate() + u * A.conjugate())
    a1 = -mid.imag
    const = rot * Bv * A.conjugate()
    a0 = const.imag
    if a2 == 0.0:
        roots = [-a0 / a1] if a1 != 0.0 else []
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return None
        q = -0.5 * (a1 + math.copysign(math.sqrt(disc), a1))
        roots = [q / a2]
        if q != 0.0:
            roots.append(a0 / q)
    best = None
    for r in roots:
        if not (r0 - 1e-12 <= r < 1.0):
            continue
        if (const - r * mid + r * r * rot).real <= 0.0:
            continue
        if best is None or r < best:
            best = r
    return None if best is None else max(best, r0)


def _radius_for_measure(
    others: float, anchor: float, start: float, length: float, r0: float, method: str = "quadratic"
) -> float:
    u = cmath.exp(1j * anchor)

    def gap(r):
        return _omega(r * u, start, length) + others - 1.0

    if gap(r0) >= 0.0:
        return r0
    if method == "quadratic":
        r = _quadratic_radius(1.0 - others, u, start, length, r0)
        if r is not None and r <= BISECTION_TOP and abs(gap(r)) <= MEASURE_TOL:
            return r
    elif method != "bisect":
        raise ValueError(f"unknown method {method!r}")

    lo, hi = r0, BISECTION_TOP
    g_hi = gap(hi)
    if g_hi < 0.0:
        raise NoBracketError(
            f"arc measure only reaches {1.0 + g_hi!r} at radius {hi!r}; cannot reach 1"
        )
    g_lo = gap(lo)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        g = gap(mid)
        if g < 0.0:
            lo, g_lo = mid, g
        else:
            hi, g_hi = mid, g
        if g_hi <= MEASURE_TOL:
            break
    return hi if abs(g_hi) <= abs(g_lo) else lo


def radial_update(
    zeros: Sequence[complex], partition: Partition, m: int, anchor_m: float, method: str = "quadratic"
) -> float:
    """Radius on the anchor ray of zero ``m`` that gives arc ``m`` measure one.

    ``method="quadratic"`` solves the quadratic equation for the radius
    directly and falls back to bisection if the root fails the residual check.
    ``method="bisect"`` always bisects on [current radius, 1 - 1e-13].
    """
    zs = np.asarray(zeros, dtype=complex)
    arc = partition[m]
    others = math.fsum(
        _omega(complex(z), arc.start, arc.length) for j, z in enumerate(zs) if j != m
    )
    return _radius_for_measure(others, anchor_m, arc.start, arc.length, float(abs(zs[m])), method)


def iterate(
    partition: Partition, config: SolverConfig, initial_radius: Optional[float] = None
) -> Iterator[tuple]:
    """Yield ``(step, zeros)`` for k = 0, 1, ...; stops after the first step with error < epsilon.

    The caller decides when to give up; ``solve`` caps the number of moves.
    ``initial_radius`` skips the radius search entirely (no separation check).
    """
    anchors = resolve_anchors(partition, config.anchors)
    if initial_radius is None:
        R = choose_initial_radius(partition, anchors, config.C, config.R_override)
    else:
        R = float(initial_radius)
    starts = np.array([a.start for a in partition])
    lengths = np.array([a.length for a in partition])
    units = np.exp(1j * np.array(anchors))
    radii = np.full(len(partition), R)
    zeros = radii * units
    W = omega_matrix(zeros, starts, lengths)

    k = 0
    moved = None
    new_radius = None
    while True:
        measures = W.sum(axis=0)
        err = error(measures)
        step = TraceStep(k, moved, new_radius, measures, err, radii.copy())
        yield step, zeros.copy()
        if err < config.epsilon:
            return
        m = int(np.argmin(measures))
        others = math.fsum(W[j, m] for j in range(len(partition)) if j != m)
        r = _radius_for_measure(others, anchors[m], starts[m], lengths[m], radii[m])
        radii[m] = r
        zeros[m] = r * units[m]
        W[m] = omega_matrix(zeros[m : m + 1], starts, lengths)[0]
        k += 1
        moved, new_radius = m, r


def _finish(zeros, partition: Partition) -> BlaschkeProduct:
    return normalize_rotation(BlaschkeProduct(tuple(zeros)), partition[0].start, 1.0)


def solve(
    partition: Partition,
    config: SolverConfig = SolverConfig(),
    initial_radius: Optional[float] = None,
):
    """Run the iteration to ``config.epsilon``.

    Returns ``(product, trace)``; the product sends the start of arc 0 to 1.
    Raises ``MaxIterationsExceeded`` (carrying both) if the error is still at
    least epsilon after ``config.max_iterations`` moves.
    """
    anchors = resolve_anchors(partition, config.anchors)
    trace = None
    zeros = None
    for step, zeros in iterate(partition, config, initial_radius):
        if trace is None:
            trace = SolverTrace(R=float(step.radii[0]), anchors=anchors)
        trace.steps.append(step)
        if step.error < config.epsilon:
            trace.converged = True
            break
        if step.k >= config.max_iterations:
            B = _finish(zeros, partition)
            raise MaxIterationsExceeded(
                f"error {step.error:.3e} still above {config.epsilon:.3e} "
                f"after {config.max_iterations} iterations",
                B,
                trace,
            )
    return _finish(zeros, partition), trace


@dataclass
class VerificationReport:
    deviations: np.ndarray
    delta: float
    endpoint_values: np.ndarray
    endpoint_spread: float
    windings: np.ndarray
    sampled_windings: np.ndarray
    argument_monotone: np.ndarray
    tol: float

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviations))

    @property
    def worst_arc(self) -> int:
        return int(np.argmax(self.deviations))

    @property
    def endpoints_agree(self) -> bool:
        return self.endpoint_spread < self.tol

    @property
    def passed(self) -> bool:
        return bool(np.all(self.deviations < self.tol) and self.delta > 0.0)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "tol": self.tol,
            "max_deviation": self.max_deviation,
            "worst_arc": self.worst_arc,
            "deviations": self.deviations.tolist(),
            "delta": self.delta,
            "endpoint_spread": self.endpoint_spread,
            "endpoints_agree": self.endpoints_agree,
            "windings": self.windings.tolist(),
            "sampled_windings": self.sampled_windings.tolist(),
            "argument_monotone": [bool(x) for x in self.argument_monotone],
        }


def verify_solution(B: BlaschkeProduct, partition: Partition, tol: float, n_samples: int = 256):
    """Check that ``B`` winds exactly once over every arc of ``partition``.

    Passes iff every |1 - mu(arc)| < tol and the zeros are distinct. The
    endpoint images and a sampled argument count are reported alongside.
    """
    if B.degree != len(partition):
        raise ValueError(f"degree {B.degree} does not match {len(partition)} arcs")
    zeros = B.zeros_array
    starts = np.array([a.start for a in partition])
    lengths = np.array([a.length for a in partition])
    windings = omega_matrix(zeros, starts, lengths).sum(axis=0)

    ends = evaluate(B, np.exp(1j * starts))
    spread = float(np.max(np.abs(ends - ends[0])))

    sampled = np.empty(len(partition))
    monotone = np.empty(len(partition), dtype=bool)
    for n, (a, L) in enumerate(zip(starts, lengths)):
        theta = a + L * np.linspace(0.0, 1.0, n_samples + 1)
        vals = evaluate(B, np.exp(1j * theta))
        steps = np.angle(vals[1:] / vals[:-1])
        monotone[n] = bool(np.all(steps >= -1e-12))
        sampled[n] = np.sum(np.mod(steps, TWO_PI)) / TWO_PI
        # a step of a full turn or more folds back to ~0
        dense = boundary_arg_derivative(zeros, theta) * (L / n_samples)
        monotone[n] &= bool(np.all(dense < math.pi))

    return VerificationReport(
        deviations=np.abs(1.0 - windings),
        delta=separation_constant(B),
        endpoint_values=ends,
        endpoint_spread=spread,
        windings=windings,
        sampled_windings=sampled,
        argument_monotone=monotone,
        tol=float(tol),
    )


def convergence_ratio(trace: SolverTrace) -> float:
    """Largest one-step error ratio E_{k+1} / E_k along the trace."""
    if len(trace.steps) < 2:
        raise ValueError("trace too short")
    errs = trace.errors
    ratios = [errs[k + 1] / errs[k] for k in range(len(errs) - 1) if errs[k] > 0.0]
    return float(max(ratios)) if ratios else 0.0
