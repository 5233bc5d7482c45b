"""Harmonic measure of boundary arcs and the summed measure of a zero set."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .disk import TWO_PI, Arc, Partition, check_disk_point

SUM_TOL = 1e-8


def _omega(z: complex, start: float, length: float) -> float:
    # Arg of the rotated ratio lies in (-π/2, π/2) for every z in the disk,
    # so there is no branch cut to cross, even when ω is close to 0 or 1.
    if length >= TWO_PI:
        return 1.0
    ratio = (cmath.exp(1j * (start + length)) - z) / (cmath.exp(1j * start) - z)
    return 0.5 + cmath.phase(ratio * cmath.exp(-0.5j * (length + math.pi))) / math.pi


def arc_harmonic_measure(z: complex, arc: Arc) -> float:
    """Harmonic measure of ``arc`` seen from ``z``.

    Closed form: equal to the counterclockwise gap between the images of the
    arc endpoints under ``w -> (w - z) / (1 - conj(z) w)``, divided by 2π.
    """
    z = check_disk_point(z)
    return _omega(z, arc.start, arc.length)


def omega_matrix(zeros, starts, lengths) -> np.ndarray:
    """``out[n, k]`` is the harmonic measure of arc ``k`` at ``zeros[n]``."""
    z = np.asarray(zeros, dtype=complex)[:, None]
    a = np.asarray(starts, dtype=float)[None, :]
    L = np.asarray(lengths, dtype=float)[None, :]
    ratio = (np.exp(1j * (a + L)) - z) / (np.exp(1j * a) - z)
    out = 0.5 + np.angle(ratio * np.exp(-0.5j * (L + math.pi))) / math.pi
    return np.where(L >= TWO_PI, 1.0, out)


def _poisson(z: complex, theta: np.ndarray) -> np.ndarray:
    return (1.0 - abs(z) ** 2) / np.abs(np.exp(1j * theta) - z) ** 2


def _midpoint(f, lo: float, hi: float, n: int) -> float:
    h = (hi - lo) / n
    x = lo + h * (np.arange(n) + 0.5)
    return float(np.sum(f(x)) * h)


def poisson_quadrature_oracle(z: complex, arc: Arc, n_points: int) -> float:
    """Midpoint-rule integral of the Poisson kernel over ``arc``, over 2π.

    For ``z`` near the circle the integration variable is stretched with
    ``x = s sinh(v)`` around ``arg z`` (``s = 1 - |z|``) so the kernel peak is
    resolved; no closed form is used anywhere.
    """
    z = check_disk_point(z)
    if n_points < 16:
        raise ValueError("n_points must be at least 16")
    length = arc.length
    s = 1.0 - abs(z)
    if s >= 0.5:
        return _midpoint(lambda t: _poisson(z, t), arc.start, arc.start + length, n_points) / TWO_PI

    center = cmath.phase(z)
    # arc offsets relative to arg z, cut into pieces inside [-π, π]
    lo = math.remainder(arc.start - center, TWO_PI)
    hi = lo + length
    pieces = [(lo, min(hi, math.pi))]
    if hi > math.pi:
        pieces.append((-math.pi, hi - TWO_PI))

    spans = [(math.asinh(x0 / s), math.asinh(x1 / s)) for x0, x1 in pieces]
    total_v = sum(v1 - v0 for v0, v1 in spans)
    result = 0.0
    for v0, v1 in spans:
        n = max(16, int(round(n_points * (v1 - v0) / total_v)))

        def f(v):
            return _poisson(z, center + s * np.sinh(v)) * s * np.cosh(v)

        result += _midpoint(f, v0, v1, n)
    return result / TWO_PI


def mu(zeros: Sequence[complex], arc: Arc) -> float:
    """Summed harmonic measure of ``arc`` over all zeros."""
    if len(zeros) == 0:
        raise ValueError("need at least one zero")
    return math.fsum(arc_harmonic_measure(z, arc) for z in zeros)


def mu_vector(zeros: Sequence[complex], partition: Partition) -> np.ndarray:
    """Measures of every arc of ``partition``, in partition order."""
    zs = np.array([check_disk_point(z) for z in zeros], dtype=complex)
    if zs.size == 0:
        raise ValueError("need at least one zero")
    starts = [a.start for a in partition]
    lengths = [a.length for a in partition]
    values = omega_matrix(zs, starts, lengths).sum(axis=0)
    if abs(values.sum() - zs.size) > SUM_TOL:
        raise RuntimeError(
            f"measures sum to {values.sum()!r}, expected {zs.size}: partition geometry is broken"
        )
    return values


def min_radius_for_monotonicity(partition: Partition) -> float:
    """Radius beyond which moving a zero outward shrinks every other arc.

    (1 - sin(L/2)) / cos(L/2) = tan(π/4 - L/4), with L the shortest arc;
    clamped at 0 once L >= π.
    """
    L = partition.shortest
    return max(0.0, math.tan(math.pi / 4.0 - L / 4.0))
