from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fibgf import Params, Poly

MATRIX = [(1, 1), (2, 1), (2, 2), (4, 2), (6, 2), (6, 3)]
NON_DIVIDING = (3, 2)


@pytest.fixture(params=MATRIX, ids=lambda ab: f"a{ab[0]}b{ab[1]}")
def params(request):
    return Params(*request.param)


def fractions(max_num=10**6, max_den=10**6):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def polys(max_degree=8, max_num=50, max_den=12):
    return st.lists(fractions(max_num, max_den), max_size=max_degree + 1).map(Poly)


def int_polys(max_degree=8, bound=20):
    return st.lists(st.integers(-bound, bound), max_size=max_degree + 1).map(Poly)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
