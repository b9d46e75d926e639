"""
Randomized checks of the symmetry criterion and on-shell reduction for the FPE.
"""
import sympy as sp
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from fpsym.determining import verify_generator
from fpsym.jet.fields import VectorField
from fpsym.model.fpe import FPE_CONTEXT, fpe_delta
from fpsym.model.system import on_shell_reduce
from tests.helpers import A1, T, U, X, is_zero

POINT_IDS = ["V1", "V2", "V3", "V4", "V5", "V6"]
SETTINGS = settings(
    max_examples=20,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

nonzero = st.integers(min_value=-5, max_value=5).filter(lambda v: v != 0)
factors = st.fractions(min_value=-10, max_value=10, max_denominator=7).filter(lambda f: f != 0)
power = st.integers(min_value=0, max_value=2)


def combination(point_generators, weights) -> VectorField:
    total = VectorField.from_components(FPE_CONTEXT, {})
    for generator_id, weight in zip(POINT_IDS, weights):
        total = total + point_generators[generator_id].field.scale(weight)
    return total


@st.composite
def perturbations(draw) -> VectorField:
    """
    A single monomial component that no symmetry of the FPE can have: xi or tau
    depending on u, or eta of degree two or more in u.
    """
    component = draw(st.sampled_from(["x", "t", "u"]))
    degree = draw(st.integers(min_value=2, max_value=3)) if component == "u" else draw(st.integers(min_value=1, max_value=2))
    monomial = draw(nonzero) * X ** draw(power) * T ** draw(power) * U**degree
    return VectorField.from_components(FPE_CONTEXT, {component: monomial})


@st.composite
def jet_polynomials(draw):
    coordinates = FPE_CONTEXT.coordinates()
    terms = []
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        first, second = draw(st.sampled_from(coordinates)), draw(st.sampled_from(coordinates))
        terms.append(draw(nonzero) * X ** draw(power) * A1 ** draw(power) * first * second)
    return sp.Add(*terms)


@SETTINGS
@given(generator_id=st.sampled_from(POINT_IDS), factor=factors)
def test_rescaled_generator_passes(point_generators, generator_id, factor):
    """A nonzero multiple of a symmetry is a symmetry."""
    V = point_generators[generator_id].field.scale(sp.Rational(factor.numerator, factor.denominator))
    assert verify_generator(V, fpe_delta(), label=generator_id).passed


@SETTINGS
@given(weights=st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6))
def test_combination_passes(point_generators, weights):
    """The symmetries form a linear space."""
    assert verify_generator(combination(point_generators, weights), fpe_delta()).passed


@SETTINGS
@given(weights=st.lists(st.integers(min_value=-3, max_value=3), min_size=6, max_size=6), perturbation=perturbations())
def test_perturbed_field_fails(point_generators, weights, perturbation):
    """Adding a non-symmetry to a symmetry never passes the criterion."""
    report = verify_generator(combination(point_generators, weights) + perturbation, fpe_delta())
    assert report.passed is False
    assert report.failing


@settings(max_examples=100, deadline=None)
@given(jet_polynomials())
def test_on_shell_reduce_idempotent(e):
    system = fpe_delta()
    reduced = on_shell_reduce(e, system)
    assert is_zero(on_shell_reduce(reduced, system) - reduced)
    assert not any("t" in s.name.partition("_")[2] for s in reduced.free_symbols)
