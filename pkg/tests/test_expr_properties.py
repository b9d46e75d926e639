"""
Randomized checks of the expression core over polynomial-times-exponential expressions.
"""
import sympy as sp
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from fpsym.expr.core import canonicalize, diff, substitute
from fpsym.expr.parser import parse
from fpsym.expr.printer import to_text
from tests.helpers import A1, A2, T, X, is_zero

EXAMPLES = 1000
SETTINGS = settings(
    max_examples=EXAMPLES,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

small = st.integers(min_value=-3, max_value=3)
power = st.integers(min_value=0, max_value=3)


@st.composite
def terms(draw):
    """c * x^i * t^j * a1^k * exp(m x + n a2 t)."""
    c = draw(small.filter(lambda v: v != 0))
    i, j, k = draw(power), draw(power), draw(st.integers(min_value=0, max_value=2))
    m, n = draw(st.integers(min_value=-2, max_value=2)), draw(st.integers(min_value=-2, max_value=2))
    return c * X**i * T**j * A1**k * sp.exp(m * X + n * A2 * T)


@st.composite
def expressions(draw):
    return canonicalize(sp.Add(*draw(st.lists(terms(), min_size=1, max_size=4))))


@SETTINGS
@given(expressions())
def test_clairaut(e):
    """Mixed partial derivatives commute."""
    assert is_zero(diff(diff(e, X), T) - diff(diff(e, T), X))


@SETTINGS
@given(expressions(), expressions())
def test_leibniz(f, g):
    """The derivative of a product follows the product rule."""
    assert is_zero(diff(f * g, X) - (diff(f, X) * g + f * diff(g, X)))


@SETTINGS
@given(expressions())
def test_text_round_trip(e):
    """Printing and re-reading gives back the canonical expression."""
    assert is_zero(parse(to_text(e)) - e)


@settings(max_examples=200, deadline=None)
@given(expressions(), expressions(), small)
def test_diff_linear(f, g, c):
    """Differentiation is linear."""
    assert is_zero(diff(c * f + g, T) - (c * diff(f, T) + diff(g, T)))


@settings(max_examples=200, deadline=None)
@given(expressions())
def test_canonicalize_idempotent(e):
    assert canonicalize(e) == e


@settings(max_examples=200, deadline=None)
@given(expressions(), st.integers(min_value=-3, max_value=3).filter(lambda v: v != 0))
def test_substitution_commutes_with_diff(e, value):
    """Binding a2 and differentiating in x can be done in either order."""
    assert is_zero(substitute(diff(e, X), {A2: value}) - diff(substitute(e, {A2: value}), X))
