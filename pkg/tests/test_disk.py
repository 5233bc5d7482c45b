import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke_interp import (
    Arc,
    BlaschkeProduct,
    Partition,
    boundary_arg_derivative,
    canonical_angle,
    evaluate,
    normalize_rotation,
    pseudo_hyperbolic_distance,
    separation_constant,
    solve,
    SolverConfig,
)

PI = math.pi

disk_points = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0.0, 0.99),
    st.floats(0.0, 2 * PI),
)
zero_lists = st.lists(disk_points, min_size=1, max_size=8)


def test_canonical_angle():
    assert canonical_angle(-PI / 10) == pytest.approx(2 * PI - PI / 10, abs=1e-15)
    assert canonical_angle(2 * PI) == 0.0
    assert 0.0 <= canonical_angle(-1e-300) < 2 * PI


def test_arc_lengths_and_membership():
    arc = Arc(-PI / 10, PI / 10)
    assert arc.length == pytest.approx(PI / 5, abs=1e-14)
    assert arc.contains(0.0)
    assert arc.contains(-PI / 10)
    assert not arc.contains(PI / 10)
    assert Arc(1.0, 1.0).is_full_circle
    assert Arc.from_length(0.3, 2 * PI).length == 2 * PI


def test_partition_validation(example_partition):
    assert len(example_partition) == 6
    assert example_partition.lengths.sum() == pytest.approx(2 * PI, abs=1e-12)
    with pytest.raises(ValueError, match="overlap"):
        Partition((Arc(0, 2), Arc(1.5, 4), Arc(4, 0)))
    with pytest.raises(ValueError, match="gap"):
        Partition((Arc(0, 2), Arc(2.5, 4), Arc(4, 0)))
    with pytest.raises(ValueError):
        Partition(())


def test_partition_from_points_keeps_first_point():
    p = Partition.from_points([3.0, 1.0, 5.0])
    assert [a.start for a in p] == pytest.approx([3.0, 5.0, 1.0])
    with pytest.raises(ValueError):
        Partition.from_points([1.0, 1.0])


def test_disk_point_rejects_boundary():
    with pytest.raises(ValueError):
        BlaschkeProduct((1.0,))
    with pytest.raises(ValueError):
        BlaschkeProduct((1 - 1e-16,))
    with pytest.raises(ValueError):
        BlaschkeProduct((0.5,), rotation=1.1)


def test_evaluate_identity_and_zero():
    assert evaluate(BlaschkeProduct((0j,)), 0.5) == pytest.approx(0.5)
    B = BlaschkeProduct((0.3 + 0.4j, -0.7j), rotation=1j)
    assert abs(evaluate(B, 0.3 + 0.4j)) < 1e-12


def test_evaluate_matches_per_factor_product(example_partition):
    zeros = [0.86 * cmath.exp(1j * t) for t in example_partition.midpoints]
    B = BlaschkeProduct(zeros)
    z = cmath.exp(0.3j)
    direct = 1.0 + 0j
    for a in zeros:
        direct *= (z - a) / (1 - a.conjugate() * z)
    assert abs(evaluate(B, z) - direct) < 1e-14
    assert abs(abs(evaluate(B, z)) - 1.0) < 1e-12


def test_evaluate_rejects_outside():
    with pytest.raises(ValueError):
        evaluate(BlaschkeProduct((0j,)), 1.5)


@given(zero_lists, st.floats(0.0, 2 * PI))
def test_unimodular_on_circle(zeros, rot_angle):
    B = BlaschkeProduct(zeros, cmath.exp(1j * rot_angle))
    theta = np.random.default_rng(0).uniform(0, 2 * PI, 1000)
    vals = evaluate(B, np.exp(1j * theta))
    assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-10


@given(zero_lists)
def test_vanishes_at_zeros(zeros):
    B = BlaschkeProduct(zeros)
    assert np.all(np.abs(evaluate(B, np.array(zeros))) < 1e-12)


def test_pseudo_hyperbolic_examples():
    assert pseudo_hyperbolic_distance(0, 0) == 0.0
    assert pseudo_hyperbolic_distance(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)
    b = 0.3 - 0.6j
    assert pseudo_hyperbolic_distance(0, b) == pytest.approx(abs(b), abs=1e-15)


@given(disk_points, disk_points, st.floats(0, 2 * PI))
def test_pseudo_hyperbolic_symmetric_and_rotation_invariant(a, b, alpha):
    d = pseudo_hyperbolic_distance(a, b)
    assert 0.0 <= d < 1.0
    assert d == pytest.approx(pseudo_hyperbolic_distance(b, a), abs=1e-12)
    u = cmath.exp(1j * alpha)
    assert pseudo_hyperbolic_distance(u * a, u * b) == pytest.approx(d, abs=1e-12)


def test_separation_examples(example_partition):
    assert separation_constant(BlaschkeProduct((0.4j,))) == 1.0
    assert separation_constant(BlaschkeProduct((0.5, 0.5))) == 0.0
    for R, expected in [(0.86, 0.7025), (0.855, 0.6854)]:
        B = BlaschkeProduct([R * cmath.exp(1j * t) for t in example_partition.midpoints])
        assert separation_constant(B) == pytest.approx(expected, abs=5e-4)


@given(st.lists(disk_points, min_size=2, max_size=8), st.floats(0, 2 * PI), st.randoms())
def test_separation_invariances(zeros, alpha, rnd):
    d = separation_constant(BlaschkeProduct(zeros))
    rotated = [cmath.exp(1j * alpha) * z for z in zeros]
    assert separation_constant(BlaschkeProduct(rotated)) == pytest.approx(d, abs=1e-10)
    shuffled = list(zeros)
    rnd.shuffle(shuffled)
    assert separation_constant(BlaschkeProduct(shuffled)) == pytest.approx(d, abs=1e-12)


def test_normalize_rotation():
    B = normalize_rotation(BlaschkeProduct((0j,)), 0.0, -1.0)
    assert B.rotation == pytest.approx(-1.0)
    assert evaluate(B, 0.5) == pytest.approx(-0.5)
    B2 = BlaschkeProduct((0.2 + 0.1j, -0.5j), rotation=cmath.exp(0.7j))
    target = evaluate(B2, cmath.exp(1.1j))
    assert abs(normalize_rotation(B2, 1.1, target).rotation - B2.rotation) < 1e-12
    with pytest.raises(ValueError):
        normalize_rotation(B2, 0.0, 2.0)


def test_solved_example_endpoints_share_value(example_partition):
    B, _ = solve(example_partition, SolverConfig(C=0.7, R_override=0.86, epsilon=1e-9))
    B = normalize_rotation(B, -PI / 10, 1.0)
    edges = []
    for arc in example_partition:
        edges += [arc.start, arc.start + arc.length]
    vals = evaluate(B, np.exp(1j * np.array(edges)))
    assert len(edges) == 12
    assert np.max(np.abs(vals - 1.0)) < 1e-6


def test_boundary_arg_derivative_examples():
    assert boundary_arg_derivative([0j], 1.234) == pytest.approx(1.0)
    assert boundary_arg_derivative([0.86], 0.0) == pytest.approx(0.2604 / 0.0196, rel=1e-12)


@given(zero_lists)
def test_boundary_arg_derivative_averages_to_degree(zeros):
    theta = np.linspace(0, 2 * PI, 10_000, endpoint=False)
    # periodic trapezoid rule; |z| <= 0.99 keeps the kernel resolved
    avg = np.mean(boundary_arg_derivative(zeros, theta))
    assert avg == pytest.approx(len(zeros), abs=1e-6)
