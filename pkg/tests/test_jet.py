import itertools

import pytest
import sympy as sp

from fpsym.errors import JetOrderError
from fpsym.expr.core import DerivIndex
from fpsym.jet.context import JetContext, total_derivative, total_derivatives
from fpsym.jet.fields import (
    VectorField,
    apply,
    characteristic,
    lie_bracket,
    prolong,
    second_order_coefficients,
)
from tests.helpers import A2, T, U, X, is_zero, jet, same

CTX = JetContext()


def field(**components) -> VectorField:
    return VectorField.from_components(CTX, components)


class TestJetContext:
    def test_coordinates(self):
        """Coordinates are listed by order, u first."""
        names = [s.name for s in CTX.coordinates()]
        assert names == ["u", "u_x", "u_t", "u_xx", "u_xt", "u_tt"]

    def test_split(self):
        """Jet symbols split into their dependent variable and index."""
        assert CTX.split(sp.Symbol("u_xt")) == ("u", DerivIndex.from_suffix("xt"))
        assert CTX.split(sp.Symbol("u")) == ("u", DerivIndex())
        assert CTX.split(X) is None
        assert CTX.split(sp.Symbol("u_z")) is None

    def test_jet_order(self):
        assert CTX.jet_order(X * jet(CTX, "u", "xx") + jet(CTX, "u", "t")) == 2
        assert CTX.jet_order(X**2) == 0

    def test_invalid_names(self):
        """Variable names are single distinct letters."""
        with pytest.raises(ValueError):
            JetContext(independent=("x", "x"))
        with pytest.raises(ValueError):
            JetContext(independent=("xy",))


class TestTotalDerivative:
    def test_product(self):
        """D_x (x u_x) = u_x + x u_xx."""
        u_x, u_xx = jet(CTX, "u", "x"), jet(CTX, "u", "xx")
        assert total_derivative(X * u_x, "x", CTX) == u_x + X * u_xx

    def test_chain_rule_through_u(self):
        """D_t of a function of u picks up u_t."""
        assert same(total_derivative(sp.exp(A2 * T) * U**2, "t", CTX), A2 * sp.exp(A2 * T) * U**2 + 2 * sp.exp(A2 * T) * U * jet(CTX, "u", "t"))

    def test_commute(self):
        """D_x D_t and D_t D_x agree."""
        e = X * T * U + U**2
        assert is_zero(total_derivatives(e, "xt", CTX) - total_derivatives(e, "tx", CTX))

    def test_order_limit(self):
        """Leaving the truncated jet space raises."""
        with pytest.raises(JetOrderError):
            total_derivative(jet(CTX, "u", "xx"), "x", CTX)

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            total_derivative(U, "z", CTX)


class TestProlongation:
    def test_characteristic(self):
        """Q = eta - xi u_x - tau u_t."""
        V = field(x=X * T, t=T**2, u=X * U)
        expected = X * U - X * T * jet(CTX, "u", "x") - T**2 * jet(CTX, "u", "t")
        assert is_zero(characteristic(V)["u"] - expected)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_audit_clean(self, order):
        """Prolonged coefficients satisfy the characteristic recursion."""
        V = field(x=X * T, t=T**2, u=X * U + sp.exp(A2 * T))
        assert prolong(V, order).audit() == []

    def test_matches_second_order_formulas(self):
        """The general prolongation agrees with the written-out second-order formulas."""
        V = field(x=X * T, t=T**2, u=X * U)
        P = prolong(V, 2)
        for suffix, value in second_order_coefficients(V).items():
            assert is_zero(P.coefficient("u", DerivIndex.from_suffix(suffix)) - value), suffix

    def test_scaling(self):
        """x d/dx prolongs to -u_x d/du_x - 2 u_xx d/du_xx."""
        P = prolong(field(x=X), 2)
        assert P.coefficient_of(jet(CTX, "u", "x")) == -jet(CTX, "u", "x")
        assert P.coefficient_of(jet(CTX, "u", "xx")) == -2 * jet(CTX, "u", "xx")
        assert P.coefficient_of(jet(CTX, "u", "t")) == 0

    def test_apply(self):
        """pr V applied to u_t - u_xx for a time translation vanishes."""
        P = prolong(field(t=1), 2)
        assert apply(P, jet(CTX, "u", "t") - jet(CTX, "u", "xx")) == 0

    def test_apply_needs_order(self):
        with pytest.raises(JetOrderError):
            apply(prolong(field(x=1), 1), jet(CTX, "u", "xx"))

    def test_order_bounds(self):
        with pytest.raises(JetOrderError):
            prolong(field(x=1), -1)

    def test_derivative_coefficients_rejected(self):
        """Coefficients must live on the base space."""
        with pytest.raises(JetOrderError):
            field(x=jet(CTX, "u", "x"))


class TestLieBracket:
    def test_translation_and_scaling(self):
        """[d/dx, x d/dx] = d/dx."""
        assert lie_bracket(field(x=1), field(x=X)).equals(field(x=1))

    def test_antisymmetry(self):
        V = field(x=sp.exp(A2 * T), u=X * U)
        W = field(t=1, u=U)
        assert (lie_bracket(V, W) + lie_bracket(W, V)).is_zero()

    def test_commuting(self):
        """Translations commute."""
        assert lie_bracket(field(x=1), field(t=1)).is_zero()

    def test_components(self):
        V = field(x=X, u=2 * U)
        assert V.component("x") == X
        assert V.component("u") == 2 * U
        with pytest.raises(ValueError):
            field(v=1)

    def test_as_derivation(self):
        """x d/dx + 2u d/du maps x u to 3 x u; calling the field is the same action."""
        V = field(x=X, u=2 * U)
        assert same(V.as_derivation(X * U), 3 * X * U)
        assert V(X * U) == V.as_derivation(X * U)


POINT_IDS = ["V1", "V2", "V3", "V4", "V5", "V6"]


class TestCatalogProlongation:
    def test_linearity(self, point_generators):
        """pr(V + c W) = pr V + c pr W coefficient by coefficient."""
        V, W = point_generators["V3"].field, point_generators["V5"].field
        factor = sp.Rational(-7, 3)
        combined = prolong(V + W.scale(factor), 2)
        first, second = prolong(V, 2), prolong(W, 2)
        for z in V.context.coordinates():
            expected = first.coefficient_of(z) + factor * second.coefficient_of(z)
            assert is_zero(combined.coefficient_of(z) - expected), z

    @pytest.mark.parametrize("first,second", list(itertools.combinations(POINT_IDS, 2)))
    def test_bracket_compatibility(self, point_generators, first, second):
        """pr[V, W] acts on jet coordinates as the commutator of pr V and pr W."""
        V, W = point_generators[first].field, point_generators[second].field
        pr_v, pr_w = prolong(V, 2), prolong(W, 2)
        pr_bracket = prolong(lie_bracket(V, W), 2)
        for z in (X, T, *V.context.coordinates()):
            commutator = apply(pr_v, apply(pr_w, z)) - apply(pr_w, apply(pr_v, z))
            assert is_zero(commutator - apply(pr_bracket, z)), z

    @pytest.mark.parametrize("generator_id", [*POINT_IDS, "Valpha"])
    def test_second_order_formulas(self, point_generators, generator_id):
        V = point_generators[generator_id].field
        P = prolong(V, 2)
        for suffix, value in second_order_coefficients(V).items():
            assert is_zero(P.coefficient("u", DerivIndex.from_suffix(suffix)) - value), suffix
