import pytest
from hypothesis import strategies as st

from lexseg.monomial import AmbientContext, Monomial
from lexseg.notation import parse_monomial


def mono(text, n):
    return parse_monomial(text, n)


def ends(n, d, u, v):
    return AmbientContext(n, d), mono(u, n), mono(v, n)


@st.composite
def monomials(draw, n=None, d=None, max_n=6, max_d=5):
    n = n if n is not None else draw(st.integers(1, max_n))
    d = d if d is not None else draw(st.integers(0, max_d))
    cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
    bounds = [0] + cuts + [d]
    return Monomial(bounds[i + 1] - bounds[i] for i in range(n))


@st.composite
def segment_ends(draw, max_n=5, max_d=4, min_n=1, min_d=2):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(min_d, max_d))
    a = draw(monomials(n=n, d=d))
    b = draw(monomials(n=n, d=d))
    u, v = (a, b) if a >= b else (b, a)
    return AmbientContext(n, d), u, v


@pytest.fixture
def five_gens():
    """The five generators of the resolution example, in the stated order."""
    return [mono(t, 3) for t in ("x2^3", "x1*x2^2", "x1*x2*x3", "x1*x3^2", "x1^2*x2")]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
