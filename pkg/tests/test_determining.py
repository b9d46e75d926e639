import pytest
import sympy as sp

from fpsym.claims import get_claim
from fpsym.determining import (
    check_membership,
    derive_determining,
    normalize,
    point_ansatz,
    potential_ansatz,
    substitute_field,
    verify_generator,
)
from fpsym.determining.ansatz import Ansatz
from fpsym.determining.linear import span_contains
from fpsym.expr.parser import parse
from fpsym.jet.fields import VectorField
from fpsym.model.formal import alpha_rule, beta_rule
from fpsym.model.fpe import FPE_CONTEXT, auxiliary_system, fpe_delta
from tests.helpers import A2, T, X, is_zero

POINT = point_ansatz()
POTENTIAL = potential_ansatz()


@pytest.fixture(scope="module")
def point_system():
    return derive_determining(fpe_delta(), POINT)


@pytest.fixture(scope="module")
def potential_system():
    return derive_determining(auxiliary_system(), POTENTIAL)


def point(text: str):
    return parse(text, POINT.declarations())


def potential(text: str):
    return parse(text, POTENTIAL.declarations())


class TestAnsatz:
    def test_names(self):
        """Infinitesimals are named per coordinate."""
        assert POINT.names == ("xi", "tau", "eta")
        assert POTENTIAL.names == ("xi", "tau", "eta", "phi")

    def test_field(self):
        """The ansatz field has unknown functions of every base coordinate."""
        components = POINT.field().components()
        assert components["x"] == sp.Function("xi")(*sp.symbols("x t u"))

    def test_arguments_checked(self):
        with pytest.raises(ValueError):
            Ansatz.build(FPE_CONTEXT, {"x": ["x", "w"]})


class TestDerivePointSystem:
    def test_collection_reconstructs_residual(self, point_system):
        """Collected monomials times coefficients add back up to the residual."""
        assert is_zero(point_system.reconstruct(0) - point_system.residuals[0])

    def test_known_constraints(self, point_system):
        """eta is linear in u and 2 xi_x = tau_t."""
        report = check_membership(
            [point("eta_uu(x,t,u)"), point("2*xi_x(x,t,u) - tau_t(x,t,u)")], point_system
        )
        assert len(report.matched_claimed) == 2
        assert report.claimed_contained

    @pytest.mark.parametrize("text", ["tau_x(x,t,u)", "tau_u(x,t,u)", "xi_u(x,t,u)"])
    def test_vanishing_derivatives(self, point_system, text):
        """tau depends on t only and xi does not depend on u."""
        assert span_contains(point_system.constraints, point(text), POINT.names, point_system.zeros)

    def test_foreign_constraint_rejected(self, point_system):
        """xi = 0 is not a consequence of the determining equations."""
        report = check_membership([point("xi(x,t,u)")], point_system)
        assert report.unmatched_claimed

    @pytest.mark.parametrize("generator_id", ["V1", "V2", "V3", "V4", "V5", "V6"])
    def test_catalog_satisfies_constraints(self, point_system, point_generators, generator_id):
        """Every named point generator solves the derived constraints."""
        field = point_generators[generator_id].field
        for value in substitute_field(point_system.constraints, POINT, field):
            assert is_zero(value)

    def test_formal_generator_satisfies_constraints(self, point_system, point_generators):
        field = point_generators["Valpha"].field
        for value in substitute_field(point_system.constraints, POINT, field, rules=(alpha_rule(),)):
            assert is_zero(value)

    def test_order_below_system(self):
        with pytest.raises(ValueError):
            derive_determining(fpe_delta(), POINT, order=1)


class TestDerivePotentialSystem:
    def test_known_constraints(self, potential_system):
        """phi does not depend on u and is linear in v."""
        report = check_membership(
            [potential("phi_u(x,t,u,v)"), potential("phi_vv(x,t,u,v)")], potential_system
        )
        assert len(report.matched_claimed) == 2
        assert report.complete

    @pytest.mark.parametrize(
        "text",
        [
            "xi_u(x,t,u,v)",
            "xi_v(x,t,u,v)",
            "tau_x(x,t,u,v)",
            "tau_u(x,t,u,v)",
            "tau_v(x,t,u,v)",
            "phi_u(x,t,u,v)",
            "phi_vv(x,t,u,v)",
        ],
    )
    def test_vanishing_derivatives(self, potential_system, text):
        """Consequences of differentiating the constraints, not only their linear span."""
        assert span_contains(
            potential_system.constraints, potential(text), POTENTIAL.names, potential_system.zeros
        )

    def test_linear_span_alone_misses_consequences(self):
        """Without differentiating the constraints only tau_u is forced to vanish."""
        raw = derive_determining(auxiliary_system(), POTENTIAL, depth=0)
        assert potential("tau_u(x,t,u,v)") in raw.zeros
        report = check_membership([potential("phi_u(x,t,u,v)"), potential("tau_v(x,t,u,v)")], raw)
        assert len(report.unmatched_claimed) == 2

    @pytest.mark.parametrize("generator_id", ["W1", "W2", "W3", "W4", "W5", "W6"])
    def test_catalog_satisfies_constraints(self, potential_system, potential_generators, generator_id):
        field = potential_generators[generator_id].field
        for value in substitute_field(potential_system.constraints, POTENTIAL, field):
            assert is_zero(value)

    def test_formal_generator_satisfies_constraints(self, potential_system, potential_generators):
        field = potential_generators["Wbeta"].field
        for value in substitute_field(potential_system.constraints, POTENTIAL, field, rules=(beta_rule(),)):
            assert is_zero(value)


class TestPrintedSystems:
    def test_printed_point_system(self, point_system):
        """The printed point constraints are compared by span, not by text."""
        report = check_membership(get_claim("point-system").parsed(), point_system)
        assert point("eta_uu(x,t,u)") in report.matched_claimed
        assert point("tau_x(x,t,u)") in report.matched_claimed

    def test_printed_potential_system(self, potential_system):
        report = check_membership(get_claim("potential-system").parsed(), potential_system)
        for text in ("xi_u", "xi_v", "tau_x", "tau_u", "tau_v", "phi_u", "phi_vv"):
            assert potential(f"{text}(x,t,u,v)") in report.matched_claimed, text

    def test_printed_phi_tv_row_fails_catalog(self, potential_generators):
        """The printed 4 phi_tv row is violated by W5 and W6, so it is not a consequence."""
        row = get_claim("potential-system").parsed()[-1]
        for generator_id in ("W5", "W6"):
            (value,) = substitute_field([row], POTENTIAL, potential_generators[generator_id].field)
            assert not is_zero(value), generator_id

    @pytest.mark.parametrize("generator_id", ["W1", "W2", "W3", "W4", "W5", "W6"])
    def test_corrected_phi_tv_row(self, potential_generators, generator_id):
        """With -4 (a2 x + a1) (xi_t - a2 xi) the row holds for every catalog generator."""
        row = potential(
            "4*phi_tv(x,t,u,v) + tau_tt(x,t,u,v) + (2*(a2*x + a1)^2 - 2*a2)*tau_t(x,t,u,v)"
            " - 4*(a2*x + a1)*xi_t(x,t,u,v) + 4*a2*(a2*x + a1)*xi(x,t,u,v)"
        )
        (value,) = substitute_field([row], POTENTIAL, potential_generators[generator_id].field)
        assert is_zero(value)


class TestNormalize:
    def test_closure_under_derivatives(self):
        """A vanishing atom kills its derivatives in the other constraints."""
        constraints, zeros = normalize(
            [point("tau_x(x,t,u)"), point("tau_xt(x,t,u) + xi(x,t,u) + eta(x,t,u)")], POINT.names
        )
        assert zeros == [point("tau_x(x,t,u)")]
        assert any(is_zero(c - point("xi(x,t,u) + eta(x,t,u)")) for c in constraints)

    def test_constant_constraint_kept(self):
        """Constraints without unknowns are reported unchanged."""
        constraints, _ = normalize([sp.Integer(3), point("xi(x,t,u)")], POINT.names)
        assert sp.Integer(3) in constraints


class TestVerifyGenerator:
    def test_catalog_passes(self, point_generators, potential_generators):
        for record in list(point_generators.values()) + list(potential_generators.values()):
            assert record.report.passed, record.id

    def test_scaling_fails(self):
        """x d/dx is not a symmetry of the FPE."""
        V = VectorField.from_components(FPE_CONTEXT, {"x": X})
        report = verify_generator(V, fpe_delta(), label="scaling")
        assert report.passed is False
        assert report.failing

    def test_formal_needs_rule(self, point_generators):
        """Valpha only passes once alpha_t is eliminated."""
        field = point_generators["Valpha"].field
        assert verify_generator(field, fpe_delta(), rules=(alpha_rule(),)).passed
        without = verify_generator(field, fpe_delta())
        assert without.passed is not True

    def test_time_dependent_translation(self):
        """exp(a2 t) d/dx passes; exp(-a2 t) d/dx needs a d/du part."""
        growing = VectorField.from_components(FPE_CONTEXT, {"x": sp.exp(A2 * T)})
        decaying = VectorField.from_components(FPE_CONTEXT, {"x": sp.exp(-A2 * T)})
        assert verify_generator(growing, fpe_delta()).passed
        assert not verify_generator(decaying, fpe_delta()).passed
