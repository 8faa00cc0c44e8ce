import sys
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from covertwist.multipoly import MultiPoly, parse, var

settings.register_profile("covertwist", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("covertwist")

VARS = [var("x", 1), var("x", 2), var("u", 1), var("w", 1, 1), var("w", 2, 1), var("t")]

small_fracs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def polys(draw, variables=VARS, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        powers = {v: draw(st.integers(0, max_exp)) for v in draw(st.lists(st.sampled_from(variables),
                                                                           max_size=3, unique=True))}
        terms[MultiPoly.monomial(powers).leading_term()[0]] = draw(small_fracs)
    return MultiPoly(terms)


def random_poly(rng: random.Random, variables, max_terms=5, max_exp=5) -> MultiPoly:
    out = MultiPoly()
    for _ in range(rng.randint(1, max_terms)):
        powers = {v: rng.randint(0, max_exp) for v in rng.sample(variables, rng.randint(0, min(3, len(variables))))}
        out = out + MultiPoly.monomial(powers, Fraction(rng.randint(-9, 9), rng.randint(1, 3)))
    return out


@pytest.fixture
def f_cubic():
    return parse("x^3 + 1")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
