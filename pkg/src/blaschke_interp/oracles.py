"""Closed-form solutions for two special partitions, used to check the solver."""

import math

from .disk import TWO_PI, Partition


def equal_arcs_delta(N: int, r: float) -> float:
    """Separation constant of N zeros at radius r on N equally spaced rays."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    denom = math.fsum(r ** (2 * k) for k in range(N))
    return N * r ** (N - 1) / denom


def equal_arcs_partition(N: int, start: float = 0.0) -> Partition:
    return Partition.from_lengths([TWO_PI / N] * N, start=start)


def two_arc_partition(theta: float) -> Partition:
    """Arc of length theta centred on angle 0, plus its complement."""
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, π]")
    return Partition.from_lengths([theta, TWO_PI - theta], start=-0.5 * theta)


def two_arcs_r1(theta: float, r2: float) -> float:
    """Radius of the zero on the short arc when the other zero sits at -r2."""
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, π]")
    if not 0.0 <= r2 < 1.0:
        raise ValueError("r2 must lie in [0, 1)")
    c = math.cos(0.5 * theta)
    return (r2 + c) / (1.0 + r2 * c)


def two_arcs_delta(r1: float, r2: float) -> float:
    """Separation constant of the zeros r1 and -r2."""
    if not (0.0 <= r1 < 1.0 and 0.0 <= r2 < 1.0):
        raise ValueError("radii must lie in [0, 1)")
    return (r1 + r2) / (1.0 + r1 * r2)
