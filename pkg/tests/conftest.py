from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from kleinian.cyclo import get_field
from kleinian.groups import build_group
from kleinian.poly import Poly

settings.register_profile("exact", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("exact")

ALL_GROUPS = [("A", r) for r in range(2, 11)] + [("D", r) for r in range(4, 9)] + [("E", r) for r in (6, 7, 8)]


@lru_cache(maxsize=None)
def group(kind, r):
    return build_group(kind, r)


@pytest.fixture(scope="session")
def groups():
    return group


fractions = st.fractions(min_value=-12, max_value=12, max_denominator=9)


def field_elements(field):
    return st.lists(fractions, min_size=field.degree, max_size=field.degree).map(field.from_coefficients)


def bivariate(field, max_degree=4, max_terms=5):
    term = st.tuples(
        st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)),
        st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool),
    )
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: Poly(field, {e: field(c) for e, c in ts})
    )


def rational_point(rng, field):
    return [field(Fraction(rng.randint(-15, 15), rng.randint(1, 6))) for _ in range(2)]


Q = get_field(1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
