import cmath
import math

import numpy as np
import pytest

from blaschke_interp import BlaschkeProduct, pseudo_hyperbolic_distance, separation_constant, solve
from blaschke_interp.oracles import (
    equal_arcs_delta,
    equal_arcs_partition,
    two_arc_partition,
    two_arcs_delta,
    two_arcs_r1,
)

PI = math.pi


def test_equal_arcs_delta_examples():
    assert equal_arcs_delta(2, 0.5) == pytest.approx(0.8, abs=1e-15)
    assert equal_arcs_delta(2, 0.5) == pytest.approx(pseudo_hyperbolic_distance(0.5, -0.5), abs=1e-15)
    assert equal_arcs_delta(5, 0.0) == 0.0
    assert equal_arcs_delta(3, 0.9) == pytest.approx(2.43 / 2.4661, abs=1e-14)
    with pytest.raises(ValueError):
        equal_arcs_delta(1, 0.5)
    with pytest.raises(ValueError):
        equal_arcs_delta(3, 1.0)


@pytest.mark.parametrize("n", range(2, 11))
def test_equal_arcs_delta_matches_symmetric_configuration(n):
    for r in np.arange(0.0, 1.0, 0.05):
        zeros = [r * cmath.exp(2j * PI * k / n) for k in range(n)]
        assert separation_constant(BlaschkeProduct(zeros)) == pytest.approx(equal_arcs_delta(n, r), abs=1e-10)


def test_two_arcs_r1_examples():
    for theta in (0.3, 1.0, PI / 2, 2.5):
        assert two_arcs_r1(theta, 0.0) == pytest.approx(math.cos(theta / 2), abs=1e-15)
    for r2 in (0.0, 0.4, 0.99):
        assert two_arcs_r1(PI, r2) == pytest.approx(r2, abs=1e-15)
    assert two_arcs_r1(PI / 2, 0.9) == pytest.approx((0.9 + math.cos(PI / 4)) / (1 + 0.9 * math.cos(PI / 4)), abs=1e-15)
    assert two_arcs_r1(PI / 2, 0.9) == pytest.approx(0.9821, abs=5e-5)
    with pytest.raises(ValueError):
        two_arcs_r1(4.0, 0.5)


def test_two_arcs_r1_not_below_r2():
    rng = np.random.default_rng(1)
    for theta, r2 in zip(rng.uniform(1e-3, PI, 200), rng.uniform(0, 0.999, 200)):
        assert two_arcs_r1(theta, r2) >= r2 - 1e-15


def test_two_arcs_delta_examples():
    assert two_arcs_delta(0.0, 0.0) == 0.0
    assert two_arcs_delta(0.9821, 0.9) == pytest.approx(1.8821 / (1 + 0.9821 * 0.9), abs=1e-14)
    # the printed 0.9991 carries one unit of rounding in the last digit
    assert two_arcs_delta(two_arcs_r1(PI / 2, 0.9), 0.9) == pytest.approx(0.9991, abs=1e-4)
    rng = np.random.default_rng(2)
    for r1, r2 in rng.uniform(0, 0.999, (100, 2)):
        assert two_arcs_delta(r1, r2) == pytest.approx(pseudo_hyperbolic_distance(r1, -r2), abs=1e-14)


def test_partitions():
    p = two_arc_partition(PI / 3)
    assert p[0].midpoint == pytest.approx(0.0, abs=1e-15)
    assert p.lengths == pytest.approx([PI / 3, 5 * PI / 3])
    assert len(equal_arcs_partition(7, 0.1)) == 7


def test_solver_matches_two_arc_closed_form():
    rng = np.random.default_rng(6)
    for theta in rng.uniform(1e-2, PI, 10):
        B, trace = solve(two_arc_partition(theta))
        r1, r2 = trace.steps[-1].radii
        assert r1 == pytest.approx(two_arcs_r1(theta, r2), abs=1e-6)
        assert separation_constant(B) == pytest.approx(two_arcs_delta(r1, r2), abs=1e-6)
