import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from polarsolve.ratpoly import MultiPoly

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def multipolys(draw, nvars=3, max_terms=5, max_exp=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * nvars), small_fractions, max_size=max_terms))
    return MultiPoly(nvars, terms)


def random_poly(rng: random.Random, nvars: int, nterms: int = 4, max_deg: int = 3) -> MultiPoly:
    terms = {}
    for _ in range(nterms):
        exp = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return MultiPoly(nvars, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
