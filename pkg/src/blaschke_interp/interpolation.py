"""Boundary interpolation with a prescribed value at one extra node.

The first N nodes become the endpoints of a partition. The arc that contains
the extra node gets a zero whose ray angle is left free. For a fixed ray
angle the iterative solver gives a product that takes the value 1 at every
node. The free angle is then chosen by bisection so that the extra node
lands on the requested value. Multiplying such products, one per node,
solves a general boundary interpolation problem.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .disk import (
    ANGLE_TOL,
    TWO_PI,
    Arc,
    BlaschkeProduct,
    Partition,
    canonical_angle,
    ccw_gap,
    evaluate,
    separation_constant,
)
from .measure import omega_matrix
from .solver import (
    RADIUS_CAP,
    MaxIterationsExceeded,
    NoBracketError,
    SolverConfig,
    choose_initial_radius,
    solve,
)

log = logging.getLogger(__name__)

SCAN_POINTS = 32
INNER_EPSILON = 1e-11
FRACTION_TOL = 1e-11
THETA_STEPS = 80


class TargetUnreachable(RuntimeError):
    pass


def _check_distinct(nodes: Sequence[float]) -> None:
    canon = sorted(canonical_angle(x) for x in nodes)
    gaps = [b - a for a, b in zip(canon, canon[1:])]
    if len(canon) > 1:
        gaps.append(canon[0] + TWO_PI - canon[-1])
    if gaps and min(gaps) <= ANGLE_TOL:
        raise ValueError("nodes too close: two nodes coincide")


def _unimodular(value: complex, name: str) -> complex:
    value = complex(value)
    if abs(abs(value) - 1.0) > 1e-12:
        raise ValueError(f"{name} {value!r} is not on the unit circle")
    return value


@dataclass(frozen=True)
class InterpolationProblem:
    """Nodes phi_1..phi_{N+1}: value 1 at the first N, ``beta`` at the last.

    ``s`` and ``m`` are optional. When both are given, the construction also
    keeps pushing zeros outward until the product stays within 2^-(m+2)
    of 1 on the disk |z| <= s and within 2^-m of 1 along the rays to the
    first N nodes.
    """

    nodes: tuple
    beta: complex
    C: float = 0.5
    s: Optional[float] = None
    m: Optional[int] = None

    def __post_init__(self):
        nodes = tuple(float(x) for x in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise ValueError("need at least two nodes (N >= 1 plus the extra node)")
        _check_distinct(nodes)
        beta = _unimodular(self.beta, "beta")
        if abs(beta - 1.0) <= 1e-12:
            raise ValueError("beta must differ from 1")
        object.__setattr__(self, "beta", beta)
        if not 0.0 <= self.C < 1.0:
            raise ValueError(f"C must lie in [0, 1), got {self.C}")
        if (self.s is None) != (self.m is None):
            raise ValueError("s and m must be given together")
        if self.s is not None and not 0.0 < self.s < 1.0:
            raise ValueError(f"s must lie in (0, 1), got {self.s}")
        if self.m is not None and int(self.m) < 0:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")

    @property
    def N(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class FipProblem:
    nodes: tuple
    targets: tuple

    def __post_init__(self):
        nodes = tuple(float(x) for x in self.nodes)
        targets = tuple(_unimodular(t, "target") for t in self.targets)
        if len(nodes) != len(targets):
            raise ValueError(f"{len(nodes)} nodes but {len(targets)} targets")
        if not nodes:
            raise ValueError("need at least one node")
        try:
            _check_distinct(nodes)
        except ValueError:
            raise ValueError("duplicate nodes") from None
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)


class CheckResult(NamedTuple):
    passed: bool
    worst: float


def check_near_one(B: BlaschkeProduct, s: float, m: int, n_radii: int = 64, n_angles: int = 256) -> CheckResult:
    """Sampled test of |1 - B(z)| < 2^-(m+2) on the disk |z| <= s."""
    if not s < 1.0:
        raise ValueError("s must be below 1")
    r = np.linspace(0.0, s, n_radii)
    t = np.linspace(0.0, TWO_PI, n_angles, endpoint=False)
    z = r[:, None] * np.exp(1j * t)[None, :]
    worst = float(np.max(np.abs(1.0 - evaluate(B, z))))
    return CheckResult(worst < 2.0 ** (-m - 2), worst)


def check_radial_rays(B: BlaschkeProduct, nodes: Sequence[float], m: int, n_points: int = 10_000) -> CheckResult:
    """Sampled test of |1 - B(r e^{i phi})| < 2^-m for 0 < r <= 1 on each node ray."""
    r = np.linspace(1.0 / n_points, 1.0, n_points)
    z = r[None, :] * np.exp(1j * np.asarray(nodes, dtype=float))[:, None]
    worst = float(np.max(np.abs(1.0 - evaluate(B, z))))
    return CheckResult(worst < 2.0 ** (-m), worst)


def check_zero_localization(B: BlaschkeProduct, nodes: Sequence[float], m: int) -> CheckResult:
    """(1 - |z_j|) / |z_j - e^{i phi_k}| <= 2^-m for all zeros but the last.

    The last zero is the one allowed to sit near the extra node.
    """
    if B.degree < 2:
        raise ValueError("zero localization needs degree >= 2")
    z = B.zeros_array[:-1, None]
    w = np.exp(1j * np.asarray(nodes, dtype=float))[None, :]
    ratios = (1.0 - np.abs(z)) / np.abs(z - w)
    worst = float(np.max(ratios))
    return CheckResult(worst <= 2.0 ** (-m), worst)


class _Setup(NamedTuple):
    partition: Partition
    sector: Arc
    extra: float
    base_anchors: tuple
    target: float


def _setup(problem: InterpolationProblem, anchor_fraction: float) -> _Setup:
    *first, extra = problem.nodes
    extra = canonical_angle(extra)
    # relabel so the extra node sits in the last arc, between phi_N and phi_1
    order = sorted(first, key=lambda x: ccw_gap(extra, x))
    partition = Partition.from_points(order)
    sector = partition[len(partition) - 1]
    base = tuple(
        canonical_angle(arc.start + anchor_fraction * arc.length)
        for arc in partition.arcs[:-1]
    )
    beta_arg = canonical_angle(cmath.phase(problem.beta))
    return _Setup(partition, sector, extra, base, beta_arg / TWO_PI)


def induced_partition(problem: InterpolationProblem) -> Partition:
    """Partition cut by the first N nodes, ordered so its last arc holds the extra node."""
    return _setup(problem, 0.5).partition


class _Probe:
    """Evaluates the solved product for a given free ray angle at fixed R."""

    def __init__(self, setup: _Setup, R: float, epsilon: float):
        self.setup = setup
        self.R = R
        self.epsilon = epsilon
        self.head = Arc(setup.sector.start, setup.extra)

    def anchors(self, theta):
        return self.setup.base_anchors + (canonical_angle(theta),)

    def __call__(self, theta):
        """Return ``(fraction - target, product)``, or ``(nan, None)`` if the solve fails."""
        cfg = SolverConfig(C=0.0, epsilon=self.epsilon, anchors=self.anchors(theta))
        try:
            B, _ = solve(self.setup.partition, cfg, initial_radius=self.R)
        except (MaxIterationsExceeded, NoBracketError) as exc:
            log.debug("probe at theta=%.6f failed: %s", theta, exc)
            return math.nan, None
        # winding of B from phi_N to the extra node, i.e. arg B(extra) / 2π
        frac = float(omega_matrix(B.zeros_array, [self.head.start], [self.head.length]).sum())
        return frac - self.setup.target, B


def _theta_grid(sector: Arc, n: int) -> list:
    return [sector.start + sector.length * (i + 0.5) / n for i in range(n)]


def _search_theta(probe: _Probe, sector: Arc) -> Optional[BlaschkeProduct]:
    mid = sector.start + 0.5 * sector.length
    d_mid, B_mid = probe(mid)
    if B_mid is not None and abs(d_mid) < FRACTION_TOL:
        return B_mid

    grid = _theta_grid(sector, SCAN_POINTS)
    values = [probe(t) for t in grid]
    bracket = None
    for i in range(len(grid) - 1):
        d0, d1 = values[i][0], values[i + 1][0]
        if math.isnan(d0) or math.isnan(d1):
            continue
        if d0 == 0.0:
            return values[i][1]
        if d0 * d1 < 0.0:
            bracket = i
            break
    if bracket is None:
        return None

    lo, hi = grid[bracket], grid[bracket + 1]
    d_lo, d_hi = values[bracket][0], values[bracket + 1][0]
    best = min((values[bracket], values[bracket + 1]), key=lambda v: abs(v[0]))
    for _ in range(THETA_STEPS):
        assert d_lo * d_hi < 0.0, "free-angle bracket lost its sign change"
        mid = 0.5 * (lo + hi)
        d, B = probe(mid)
        if B is None:
            break
        if abs(d) < abs(best[0]):
            best = (d, B)
        if abs(d) < FRACTION_TOL or hi - lo < 1e-15:
            break
        if (d < 0.0) == (d_lo < 0.0):
            lo, d_lo = mid, d
        else:
            hi, d_hi = mid, d
    return best[1]


def _initial_radius(setup: _Setup, C: float) -> float:
    R = 0.0
    for theta in [setup.sector.start + 0.5 * setup.sector.length] + _theta_grid(setup.sector, SCAN_POINTS):
        anchors = setup.base_anchors + (canonical_angle(theta),)
        R = max(R, choose_initial_radius(setup.partition, anchors, C))
    return R


def _plausible(probe: _Probe, setup: _Setup, problem: InterpolationProblem) -> bool:
    # the (s, m) checks barely depend on the free angle, so a failed
    # mid-sector product means R has to grow before any search is worth it
    _, B = probe(setup.sector.start + 0.5 * setup.sector.length)
    if B is None:
        return True
    return (
        check_near_one(B, problem.s, problem.m).passed
        and check_radial_rays(B, problem.nodes[:-1], problem.m).passed
    )


def _escalate(R: float) -> float:
    return 1.0 - 0.5 * (1.0 - R)


def solve_with_target(
    problem: InterpolationProblem,
    anchor_fraction: float = 0.5,
    R_floor: Optional[float] = None,
    epsilon: float = INNER_EPSILON,
) -> BlaschkeProduct:
    """Degree-N product with B = 1 at the first N nodes and B = beta at the last.

    Zeros on the arcs between the first N nodes sit on rays at
    ``anchor_fraction`` of their arc. R stays fixed during each angle search.
    It is raised (halving 1 - R) when the search cannot bracket beta, when
    the separation is not above C, or when the optional (s, m) checks fail.
    The zeros come out in arc order, with the free zero last.
    """
    if not 0.0 < anchor_fraction < 1.0:
        raise ValueError("anchor_fraction must lie in (0, 1)")
    setup = _setup(problem, anchor_fraction)
    R = _initial_radius(setup, problem.C)
    if R_floor is not None:
        R = max(R, R_floor)

    while True:
        probe = _Probe(setup, R, epsilon)
        B = None
        if problem.s is not None and not _plausible(probe, setup, problem):
            log.debug("R=%.12f: mid-sector product fails the (s, m) checks", R)
        else:
            B = _search_theta(probe, setup.sector)
        if B is not None:
            failures = []
            if abs(evaluate(B, cmath.exp(1j * setup.extra)) - problem.beta) > 1e-8:
                failures.append("target")
            if separation_constant(B) <= problem.C:
                failures.append("separation")
            if problem.s is not None:
                if not check_near_one(B, problem.s, problem.m).passed:
                    failures.append("near-one disk")
                if not check_radial_rays(B, problem.nodes[:-1], problem.m).passed:
                    failures.append("node rays")
            if not failures:
                return B
            log.debug("R=%.12f rejected: %s", R, ", ".join(failures))
        else:
            log.debug("R=%.12f: angle scan found no bracket", R)
        if R >= RADIUS_CAP:
            raise TargetUnreachable(
                f"target unreachable at radius cap {RADIUS_CAP}: beta={problem.beta!r}"
            )
        R = min(_escalate(R), RADIUS_CAP)


def _fip_fraction(k: int, n: int) -> float:
    # distinct rays per factor keep zeros of different factors apart
    return 0.25 + 0.5 * (k + 1) / (n + 1)


def solve_fip(problem: FipProblem, C: float = 0.5) -> BlaschkeProduct:
    """Product of one factor per node: factor k is psi_k at phi_k and 1 at the other nodes.

    Each factor has degree N - 1. Factors whose target is 1 are left out.
    If every target is 1, the result is a degree-N product that equals 1 at
    every node.
    """
    if not C < 1.0:
        raise ValueError("C must be below 1")
    nodes, targets = problem.nodes, problem.targets
    n = len(nodes)
    if n == 1:
        return BlaschkeProduct((0j,), targets[0] * cmath.exp(-1j * nodes[0]))

    active = [k for k in range(n) if abs(targets[k] - 1.0) > 1e-15]
    if not active:
        B, _ = solve(Partition.from_points(nodes), SolverConfig(C=C, epsilon=INNER_EPSILON))
        return B

    R_floor = None
    while True:
        factors = []
        for k in active:
            others = nodes[:k] + nodes[k + 1 :]
            sub = InterpolationProblem(others + (nodes[k],), targets[k], C=C)
            factors.append(solve_with_target(sub, anchor_fraction=_fip_fraction(k, n), R_floor=R_floor))
        B = factors[0]
        for f in factors[1:]:
            B = B * f
        if separation_constant(B) > C:
            return B
        reached = min(float(np.min(f.radii)) for f in factors)
        if reached >= RADIUS_CAP:
            raise TargetUnreachable(f"cannot separate the product zeros beyond C={C}")
        R_floor = min(_escalate(reached), RADIUS_CAP)
        log.debug("product separation too small, raising R floor to %.12f", R_floor)
