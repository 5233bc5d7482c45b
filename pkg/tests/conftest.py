import math
import sys

import numpy as np
import pytest
from hypothesis import settings

from blaschke_interp import Partition

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

PI = math.pi
# arc lengths of the six-arc worked example; arc 1 is centred on angle 0
EXAMPLE_LENGTHS = [PI / 5, 3 * PI / 5, 3 * PI / 5, 3 * PI / 10, PI / 10, PI / 5]


@pytest.fixture
def example_partition():
    return Partition.from_lengths(EXAMPLE_LENGTHS, start=-PI / 10)


def random_partition(rng, n_max=12, min_length=PI / 64, n_min=2):
    n = int(rng.integers(n_min, n_max + 1))
    spare = 2 * PI - n * min_length
    lengths = min_length + spare * rng.dirichlet(np.ones(n))
    lengths[-1] = 2 * PI - lengths[:-1].sum()
    return Partition.from_lengths(lengths, start=rng.uniform(0, 2 * PI))


def random_nodes(rng, count, min_gap_fraction=0.25):
    """``count`` distinct angles with gaps at least min_gap_fraction * 2π/count, shuffled."""
    while True:
        nodes = np.sort(rng.uniform(0, 2 * PI, count))
        gaps = np.diff(np.r_[nodes, nodes[0] + 2 * PI])
        if gaps.min() > min_gap_fraction * 2 * PI / count:
            rng.shuffle(nodes)
            return [float(x) for x in nodes]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[k])
