import logging

import numpy as np
import pytest
import sympy as sp

from fpsym.claims import get_claim
from fpsym.errors import GridError
from fpsym.model.formal import ALPHA
from fpsym.model.params import SYMBOLIC, FpeParams
from fpsym.numeric import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    GridSpec,
    SamplingConfig,
    adjudicate,
    fd_residual,
    identity_probe,
)
from fpsym.numeric import residual
from fpsym.solutions import SolutionRecord, Status
from tests.helpers import A1, A2, T, X, claim_expression

UNIT = FpeParams(1, 1)


def record(expression, id: str = "candidate") -> SolutionRecord:
    return SolutionRecord.seed(id, sp.sympify(expression))


class TestGridSpec:
    def test_defaults(self):
        grid = GridSpec()
        assert (grid.x0, grid.x1, grid.t0, grid.t1, grid.h, grid.levels) == (-2.0, 2.0, 0.1, 1.1, 0.02, 4)
        assert grid.step(3) == pytest.approx(0.0025)

    def test_parse(self):
        assert GridSpec.parse("-1, 1, 0.5, 1, 0.05, 2") == GridSpec(-1.0, 1.0, 0.5, 1.0, 0.05, 2)

    def test_interior_nodes(self):
        """Boundary nodes are excluded so every stencil stays inside the rectangle."""
        x, t = GridSpec(0, 1, 0, 1, 0.25, 2).nodes()
        assert x.shape == (3, 3)
        np.testing.assert_allclose(x[:, 0], [0.25, 0.5, 0.75])
        np.testing.assert_allclose(t[0, :], [0.25, 0.5, 0.75])

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"h": 0},
            {"h": -0.1},
            {"x0": 1, "x1": 1},
            {"t0": 2, "t1": 1},
            {"levels": 1},
            {"x0": 0, "x1": 0.03},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(GridError):
            GridSpec(**kwargs)

    @pytest.mark.parametrize("text", ["-2,2,0.1,1.1,0.02", "a,2,0.1,1.1,0.02,3", "-2,2,0.1,1.1,0.02,3.5"])
    def test_parse_invalid(self, text):
        with pytest.raises(GridError):
            GridSpec.parse(text)


class TestFdResidual:
    def test_solution_converges(self):
        """A true solution shows second-order convergence to zero."""
        report = fd_residual(record(claim_expression("g1")), UNIT)
        assert report.verdict == VERIFIED
        assert 1.7 <= report.order <= 2.3
        assert abs(report.extrapolated) <= 1e-6
        assert len(report.levels) == 4
        assert report.levels[0].max_norm > report.levels[-1].max_norm

    def test_three_levels(self):
        report = fd_residual(record(claim_expression("g1")), UNIT, GridSpec(levels=3))
        assert report.verdict == VERIFIED
        assert len(report.levels) == 3

    @pytest.mark.parametrize("claim_id", ["g1", "g2", "g3", "g4"])
    @pytest.mark.parametrize("params", [FpeParams(1, 1), FpeParams(0, 1), FpeParams(1, 2)], ids=["1-1", "0-1", "1-2"])
    def test_catalog_solutions_converge(self, claim_id, params):
        """Every closed-form solution is verified at second order on the default grid."""
        report = fd_residual(record(claim_expression(claim_id), id=claim_id), params)
        assert report.verdict == VERIFIED, report.to_dict()
        assert 1.7 <= report.order <= 2.3

    def test_extra_level_resolves_fast_decay(self):
        """At a2 = 2 three levels leave g4 short of the tolerance; the fourth settles it."""
        params = FpeParams(1, 2)
        coarse = fd_residual(record(claim_expression("g4")), params, GridSpec(levels=3))
        assert coarse.verdict == INCONCLUSIVE
        fine = fd_residual(record(claim_expression("g4")), params)
        assert abs(fine.extrapolated) < abs(coarse.extrapolated)
        assert fine.verdict == VERIFIED

    def test_zero_solution(self):
        """u = 0 has an identically vanishing residual."""
        report = fd_residual(record(0), UNIT)
        assert report.verdict == VERIFIED

    def test_constant_refuted(self):
        """u = 1 leaves the residual a2 at every level."""
        report = fd_residual(record(1), UNIT)
        assert report.verdict == REFUTED
        assert report.levels[-1].max_norm == pytest.approx(1.0)

    def test_printed_y1_refuted(self):
        candidate = SolutionRecord.from_claim(get_claim("Y1-final"))
        assert fd_residual(candidate, FpeParams(0, 1)).verdict == REFUTED

    def test_printed_y2_refuted(self):
        candidate = SolutionRecord.from_claim(get_claim("Y2-final"))
        assert fd_residual(candidate, FpeParams(0, 2)).verdict == REFUTED

    @pytest.mark.parametrize("claim_id", ["Y1-final", "Y2-final"])
    def test_printed_finals_refuted_with_drift(self, claim_id):
        candidate = SolutionRecord.from_claim(get_claim(claim_id))
        assert fd_residual(candidate, FpeParams(1, 2)).verdict == REFUTED

    def test_symbolic_parameters_rejected(self):
        with pytest.raises(GridError):
            fd_residual(record(claim_expression("g1")), SYMBOLIC)

    def test_formal_rejected(self):
        with pytest.raises(GridError):
            fd_residual(record(ALPHA(X, T)), UNIT)

    def test_unbound_symbol_rejected(self):
        with pytest.raises(GridError, match="lam"):
            fd_residual(record(sp.Symbol("lam") * sp.exp(-A2 * T)), UNIT)

    def test_custom_logger(self, caplog):
        """Refinement progress goes to the logger the caller passes in."""
        caplog.set_level(logging.INFO, logger="oracle")
        fd_residual(record(sp.exp(-A2 * T), id="seed"), UNIT, logger=logging.getLogger("oracle"))
        messages = [r.getMessage() for r in caplog.records if r.name == "oracle"]
        assert len(messages) == 5
        assert messages[-1].endswith("-> verified")

    def test_report_dict(self):
        data = fd_residual(record(sp.exp(-A2 * T)), UNIT).to_dict()
        assert list(data) == ["verdict", "order", "extrapolated", "tolerance", "scale", "clipped", "grid", "levels"]
        assert [list(level) for level in data["levels"]] == [["step", "max", "rms"]] * 4
        assert data["grid"]["h"] == 0.02


class TestAdjudicate:
    def test_unchecked_becomes_numerically_verified(self):
        result = adjudicate(record(claim_expression("g2")), FpeParams(1, 2))
        assert result.status == Status.NUMERICALLY_VERIFIED
        assert result.evidence[-1].verdict == VERIFIED

    def test_unchecked_becomes_refuted(self):
        assert adjudicate(record(1), UNIT).status == Status.REFUTED

    def test_symbolic_status_kept(self):
        """An exact verification is never downgraded by the oracle."""
        verified = record(claim_expression("g3")).with_status(Status.SYMBOLICALLY_VERIFIED, sp.Integer(0))
        result = adjudicate(verified, UNIT)
        assert result.status == Status.SYMBOLICALLY_VERIFIED
        assert len(result.evidence) == 1

    def test_inconclusive_keeps_status(self, monkeypatch):
        monkeypatch.setattr(residual, "_verdict", lambda *args: INCONCLUSIVE)
        assert adjudicate(record(1), UNIT).status == Status.UNCHECKED


class TestIdentityProbe:
    def test_trigonometric_identity(self):
        result = identity_probe(sp.sin(X) ** 2 + sp.cos(X) ** 2, sp.Integer(1))
        assert result.equal is True
        assert result.confidence == 1.0

    def test_difference_detected(self):
        assert identity_probe(sp.sin(X), sp.cos(X)).equal is False

    def test_parameters_sampled(self):
        """a2 is drawn from nonzero values, so 1/a2 stays finite."""
        assert identity_probe(A2 * (X + A1 / A2), A2 * X + A1).equal is True

    def test_formal_skipped(self):
        assert identity_probe(ALPHA(X, T), ALPHA(X, T)).equal is None

    def test_too_few_valid_points(self):
        """The logarithm of a negative quantity is never finite on real samples."""
        config = SamplingConfig(samples=10, min_valid=10)
        result = identity_probe(sp.log(-(X**2) - 1), sp.log(-(X**2) - 1), config)
        assert result.equal is None
        assert result.valid_points == 0
