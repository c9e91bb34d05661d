import itertools
import sys

import numpy as np
import pytest

from zpkcodes.codes import Code
from zpkcodes.ring import RingSpec


@pytest.fixture
def Z3():
    return RingSpec(3, 1)


@pytest.fixture
def Z9():
    return RingSpec(3, 2)


@pytest.fixture
def Z4():
    return RingSpec(2, 2)


@pytest.fixture
def ternary(Z3):
    """The [3,2] ternary code with columns (1,0), (0,1), (1,1)."""
    return Code([[1, 0, 1], [0, 1, 1]], Z3)


def brute_span(G, spec):
    """All Z_q-combinations of the rows of G, as a set of tuples."""
    G = np.asarray(G) % spec.q
    words = set()
    for coeffs in itertools.product(range(spec.q), repeat=G.shape[0]):
        words.add(tuple(int(x) for x in (np.array(coeffs) @ G) % spec.q))
    return words


def brute_dual(G, spec):
    G = np.asarray(G) % spec.q
    n = G.shape[1]
    return {
        v for v in itertools.product(range(spec.q), repeat=n)
        if not ((G @ np.array(v)) % spec.q).any()
    }


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
