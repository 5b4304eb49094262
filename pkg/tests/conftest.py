import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from vertexnet.network import parameter_pairs

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(bound=20, positive=False):
    lo = 1 if positive else -bound
    return st.builds(Fraction, st.integers(lo, bound), st.integers(1, bound))


def matrices(nrows, ncols, bound=9):
    return st.lists(
        st.lists(rationals(bound), min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows
    )


@st.composite
def square_matrices(draw, max_n=5, bound=9):
    n = draw(st.integers(1, max_n))
    return draw(matrices(n, n, bound))


@st.composite
def resistance_maps(draw, n, bound=20):
    return {p: draw(rationals(bound, positive=True)) for p in parameter_pairs(n)}


def to_sympy(m):
    sympy = pytest.importorskip("sympy")

    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.rows()])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.format_results():
        terminalreporter.write_line(line)
