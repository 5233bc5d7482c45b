"""Unit disk geometry and the finite Blaschke product value type.

Angles are plain floats in radians. Arcs are half-open and run
counterclockwise from ``start`` to ``end``; an arc whose endpoints coincide
is the full circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

ANGLE_TOL = 1e-12
PARTITION_TOL = 1e-10
# |z| at or above this is treated as sitting on the circle
BOUNDARY_GUARD = 1.0 - 1e-15


def canonical_angle(theta: float) -> float:
    """Representative of ``theta`` in [0, 2π)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


def angles_equal(a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    d = canonical_angle(a - b)
    return min(d, TWO_PI - d) <= tol


def ccw_gap(a: float, b: float) -> float:
    """Counterclockwise angular distance from ``a`` to ``b``, in [0, 2π)."""
    return canonical_angle(b - a)


def check_disk_point(z: complex) -> complex:
    z = complex(z)
    if not (abs(z) < BOUNDARY_GUARD):
        raise ValueError(f"point {z!r} is not strictly inside the unit disk")
    return z


@dataclass(frozen=True)
class Arc:
    start: float
    end: float

    def __post_init__(self):
        object.__setattr__(self, "start", canonical_angle(self.start))
        object.__setattr__(self, "end", canonical_angle(self.end))

    @classmethod
    def from_length(cls, start: float, length: float) -> "Arc":
        if not 0.0 < length <= TWO_PI + PARTITION_TOL:
            raise ValueError(f"arc length {length} outside (0, 2π]")
        arc = cls(start, start + length)
        if length >= TWO_PI - PARTITION_TOL:
            # keep the full circle exact instead of rounding the end
            object.__setattr__(arc, "end", arc.start)
        return arc

    @property
    def length(self) -> float:
        d = ccw_gap(self.start, self.end)
        return TWO_PI if d <= ANGLE_TOL or TWO_PI - d <= ANGLE_TOL else d

    @property
    def is_full_circle(self) -> bool:
        return self.length == TWO_PI

    @property
    def midpoint(self) -> float:
        return canonical_angle(self.start + 0.5 * self.length)

    def offset(self, theta: float) -> float:
        """Counterclockwise distance of ``theta`` past the start point."""
        return ccw_gap(self.start, theta)

    def contains(self, theta: float) -> bool:
        return self.offset(theta) < self.length

    def in_interior(self, theta: float, tol: float = ANGLE_TOL) -> bool:
        off = self.offset(theta)
        if self.is_full_circle:
            return tol < off < TWO_PI - tol
        return tol < off < self.length - tol

    def complement(self) -> "Arc":
        if self.is_full_circle:
            raise ValueError("the full circle has no complementary arc")
        return Arc(self.end, self.start)

    def rotated(self, alpha: float) -> "Arc":
        return Arc.from_length(self.start + alpha, self.length)


@dataclass(frozen=True)
class Partition:
    """Counterclockwise arcs, each ending where the next one starts."""

    arcs: tuple

    def __post_init__(self):
        arcs = tuple(self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if not arcs:
            raise ValueError("a partition needs at least one arc")
        n = len(arcs)
        if n == 1:
            if not arcs[0].is_full_circle:
                raise ValueError(
                    f"single arc must be the full circle, got length {arcs[0].length}"
                )
            return
        for i, arc in enumerate(arcs):
            nxt = arcs[(i + 1) % n]
            if angles_equal(arc.end, nxt.start, PARTITION_TOL):
                continue
            if arc.contains(nxt.start) and not angles_equal(arc.start, nxt.start, PARTITION_TOL):
                raise ValueError(f"arcs overlap at angle {nxt.start:.17g}")
            raise ValueError(f"gap between arcs at angle {arc.end:.17g}")
        total = sum(a.length for a in arcs)
        if abs(total - TWO_PI) > PARTITION_TOL:
            raise ValueError(
                f"arcs overlap at angle {arcs[0].start:.17g} (total length {total:.17g})"
            )

    @classmethod
    def from_lengths(cls, lengths: Sequence[float], start: float = 0.0) -> "Partition":
        lengths = [float(x) for x in lengths]
        total = sum(lengths)
        if abs(total - TWO_PI) > PARTITION_TOL:
            raise ValueError(f"arc lengths sum to {total!r}, not 2π")
        arcs = []
        s = start
        for i, L in enumerate(lengths):
            if i == len(lengths) - 1:
                arcs.append(Arc(s, start) if len(lengths) > 1 else Arc.from_length(s, TWO_PI))
            else:
                arcs.append(Arc.from_length(s, L))
            s += L
        return cls(tuple(arcs))

    @classmethod
    def from_points(cls, points: Sequence[float]) -> "Partition":
        """Partition whose arcs join consecutive points (taken counterclockwise)."""
        pts = [canonical_angle(p) for p in points]
        if len(pts) == 1:
            return cls((Arc.from_length(pts[0], TWO_PI),))
        order = sorted(pts)
        for a, b in zip(order, order[1:]):
            if b - a <= ANGLE_TOL:
                raise ValueError(f"points coincide at angle {a:.17g}")
        # keep the first given point as the start of arc 1
        k = order.index(pts[0])
        order = order[k:] + order[:k]
        n = len(order)
        return cls(tuple(Arc(order[i], order[(i + 1) % n]) for i in range(n)))

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __getitem__(self, i):
        return self.arcs[i]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([a.length for a in self.arcs])

    @property
    def shortest(self) -> float:
        return min(a.length for a in self.arcs)

    @property
    def midpoints(self) -> list:
        return [a.midpoint for a in self.arcs]

    @property
    def endpoints(self) -> list:
        return [a.start for a in self.arcs]

    def rotated(self, alpha: float) -> "Partition":
        return Partition(tuple(a.rotated(alpha) for a in self.arcs))


@dataclass(frozen=True)
class BlaschkeProduct:
    """``rotation * prod (z - a) / (1 - conj(a) z)`` over the zeros ``a``."""

    zeros: tuple
    rotation: complex = 1.0 + 0.0j
    _zarr: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        zs = tuple(check_disk_point(z) for z in self.zeros)
        rot = complex(self.rotation)
        if abs(abs(rot) - 1.0) > 1e-12:
            raise ValueError(f"rotation {rot!r} is not unimodular")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "_zarr", np.array(zs, dtype=complex))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def zeros_array(self) -> np.ndarray:
        return self._zarr.copy()

    @property
    def radii(self) -> np.ndarray:
        return np.abs(self._zarr)

    def __call__(self, z):
        return evaluate(self, z)

    def with_rotation(self, rotation: complex) -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros, rotation)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        rot = self.rotation * other.rotation
        return BlaschkeProduct(self.zeros + other.zeros, rot / abs(rot))


def evaluate(B: BlaschkeProduct, z):
    """Value of ``B`` at ``z`` (scalar or array) in the closed disk."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) > 1.0 + 1e-12):
        raise ValueError("evaluation point outside the closed unit disk")
    a = B._zarr
    if a.size == 0:
        out = np.full(zz.shape, B.rotation, dtype=complex)
    else:
        w = zz[..., None]
        out = B.rotation * np.prod((w - a) / (1.0 - np.conj(a) * w), axis=-1)
    return complex(out) if out.ndim == 0 else out


def pseudo_hyperbolic_distance(a: complex, b: complex) -> float:
    a = check_disk_point(a)
    b = check_disk_point(b)
    return abs(a - b) / abs(1.0 - b.conjugate() * a)


def separation_constant(B: BlaschkeProduct) -> float:
    """Uniform separation constant; 1 for degree one, 0 for repeated zeros."""
    a = B._zarr
    n = a.size
    if n <= 1:
        return 1.0
    d = np.abs(a[:, None] - a[None, :]) / np.abs(1.0 - np.conj(a)[None, :] * a[:, None])
    np.fill_diagonal(d, 1.0)
    return float(np.min(np.prod(d, axis=0)))


def normalize_rotation(B: BlaschkeProduct, phi: float, target: complex = 1.0) -> BlaschkeProduct:
    """Same zeros, rotation chosen so that ``B(e^{i phi}) == target``."""
    target = complex(target)
    if abs(abs(target) - 1.0) > 1e-12:
        raise ValueError(f"target {target!r} is not unimodular")
    value = evaluate(B, np.exp(1j * phi))
    rot = B.rotation * target / value
    return B.with_rotation(rot / abs(rot))


def boundary_arg_derivative(zeros: Sequence[complex], theta):
    """d/dθ arg B(e^{iθ}): the summed Poisson kernels of the zeros."""
    a = np.array([check_disk_point(z) for z in zeros], dtype=complex)
    th = np.asarray(theta, dtype=float)
    w = np.exp(1j * th)[..., None]
    out = np.sum((1.0 - np.abs(a) ** 2) / np.abs(w - a) ** 2, axis=-1)
    return float(out) if out.ndim == 0 else out
