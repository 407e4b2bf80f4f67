from itertools import product

import pytest
from hypothesis import strategies as st

from regsub.module import ModuleShape
from regsub.submodule import span

# Shapes swept by the main equivalence criterion.
SWEEP_SHAPES = [
    (2, (1,)), (2, (2,)), (2, (1, 1)), (2, (2, 1)), (2, (3, 1)), (2, (2, 2)),
    (2, (2, 1, 1)), (2, (3, 2, 1)),
    (3, (1,)), (3, (2,)), (3, (1, 1)), (3, (2, 1)), (3, (3, 1)), (3, (2, 2)),
    (3, (2, 1, 1)),
]

SMALL_SHAPES = [(2, (1,)), (2, (2, 1)), (2, (3, 1)), (2, (2, 2)), (3, (2, 1)), (2, (2, 1, 1))]


@pytest.fixture
def m31():
    return ModuleShape(2, (3, 1))


@pytest.fixture
def bad_w(m31):
    """<(2,1)> in Z/8 + Z/2, the smallest non-regular submodule."""
    return span(m31, [m31.element((2, 1))])


def brute_span(shape, gens):
    """Set of coordinate tuples reached by all integer combinations of gens."""
    ranges = [range(shape.prime ** shape.bound)] * len(gens)
    out = set()
    for coeffs in product(*ranges):
        out.add(tuple(
            sum(c * g.coords[i] for c, g in zip(coeffs, gens)) % m
            for i, m in enumerate(shape.moduli)
        ))
    return out or {(0,) * shape.rank}


shapes = st.sampled_from([ModuleShape(p, e) for p, e in SMALL_SHAPES])


@st.composite
def elements(draw, shape=None):
    shape = shape or draw(shapes)
    return shape.element([draw(st.integers(0, m - 1)) for m in shape.moduli])


@st.composite
def submodules(draw, shape=None, max_gens=3):
    shape = shape or draw(shapes)
    gens = draw(st.lists(elements(shape), max_size=max_gens))
    return span(shape, gens)


@st.composite
def shape_and_two_submodules(draw):
    shape = draw(shapes)
    return shape, draw(submodules(shape)), draw(submodules(shape))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
