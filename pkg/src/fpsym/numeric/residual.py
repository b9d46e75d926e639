"""
Finite-difference residual oracle for closed-form solutions of the FPE.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy as sp

from ..errors import GridError
from ..expr.const import T, X
from ..expr.core import Expr, formal_atoms
from ..model.params import FpeParams
from ..solutions.records import SolutionRecord, Status
from .grid import GridSpec

logger = logging.getLogger(__name__)

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

DEFAULT_TOLERANCE = 1e-6
REFUTE_FACTOR = 1e3
MIN_VERIFIED_ORDER = 1.5
MAX_REFUTED_ORDER = 0.5
# Central differences are second order; Richardson extrapolation uses it.
SCHEME_ORDER = 2
# Norms at this level come from rounding alone.
ROUNDOFF_FLOOR = 1e-12


@dataclass(frozen=True)
class LevelNorms:
    step: float
    max_norm: float
    rms: float
    clipped: int


@dataclass(frozen=True)
class ResidualReport:
    levels: Tuple[LevelNorms, ...]
    order: Optional[float]
    extrapolated: float
    verdict: str
    tolerance: float
    scale: float
    grid: GridSpec = field(default_factory=GridSpec)

    @property
    def clipped(self) -> int:
        return max((level.clipped for level in self.levels), default=0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict,
            "order": None if self.order is None else round(self.order, 6),
            "extrapolated": float(f"{self.extrapolated:.6e}"),
            "tolerance": self.tolerance,
            "scale": float(f"{self.scale:.6e}"),
            "clipped": self.clipped,
            "grid": self.grid.to_dict(),
            "levels": [
                {
                    "step": level.step,
                    "max": float(f"{level.max_norm:.6e}"),
                    "rms": float(f"{level.rms:.6e}"),
                }
                for level in self.levels
            ],
        }


def _function(expression: Expr, p: FpeParams):
    bound = p.bind(expression)
    if formal_atoms(bound):
        raise GridError(f"Formal functions must be substituted before a numeric check: {bound}")
    extra = sorted(s.name for s in bound.free_symbols - {X, T})
    if extra:
        raise GridError(f"Unbound symbols in numeric check: {', '.join(extra)}")
    return sp.lambdify((X, T), bound, modules="numpy")


def _evaluate(function, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        values = np.asarray(function(x, t), dtype=float)
    return np.broadcast_to(values, x.shape)


def _level(function, p: FpeParams, x: np.ndarray, t: np.ndarray, step: float, scale: float) -> LevelNorms:
    a1, a2 = float(p.a1), float(p.a2)
    u = _evaluate(function, x, t)
    with np.errstate(all="ignore"):
        u_t = (_evaluate(function, x, t + step) - _evaluate(function, x, t - step)) / (2 * step)
        forward, backward = _evaluate(function, x + step, t), _evaluate(function, x - step, t)
        u_x = (forward - backward) / (2 * step)
        u_xx = (forward - 2 * u + backward) / step**2
        residual = (u_t + a2 * u + (a2 * x + a1) * u_x - 0.5 * u_xx) / scale
    finite = np.isfinite(residual)
    clipped = int(residual.size - finite.sum())
    if not finite.any():
        raise GridError("No grid node evaluates to a finite residual")
    values = np.abs(residual[finite])
    return LevelNorms(step, float(values.max()), float(np.sqrt(np.mean(values**2))), clipped)


def _verdict(norms: List[float], order: Optional[float], extrapolated: float, tolerance: float) -> str:
    if max(norms) <= ROUNDOFF_FLOOR:
        return VERIFIED
    if order is not None and order >= MIN_VERIFIED_ORDER and abs(extrapolated) <= tolerance:
        return VERIFIED
    floor = REFUTE_FACTOR * tolerance
    if norms[-1] >= floor and abs(extrapolated) >= floor and (order is None or order < MAX_REFUTED_ORDER):
        return REFUTED
    return INCONCLUSIVE


def fd_residual(
    s: SolutionRecord,
    p: FpeParams,
    grid: GridSpec = GridSpec(),
    tolerance: float = DEFAULT_TOLERANCE,
    logger: Optional[logging.Logger] = None,
) -> ResidualReport:
    """
    Residual of the FPE on ``s`` by second-order central differences at the interior
    nodes, for each refinement level of ``grid``.

    Raises:
        GridError: If the expression is not evaluable or no node gives a finite value.
    """
    effective_logger = logger or logging.getLogger(__name__)
    if not p.is_numeric:
        raise GridError("Numeric checks need numeric a1 and a2")
    function = _function(s.expression, p)
    x, t = grid.nodes()
    u = _evaluate(function, x, t)
    finite_u = np.abs(u[np.isfinite(u)])
    scale = max(1.0, float(finite_u.max())) if finite_u.size else 1.0

    levels = []
    for level in range(grid.levels):
        norms = _level(function, p, x, t, grid.step(level), scale)
        effective_logger.info(f"{s.id}: level {level} step {norms.step:g} max {norms.max_norm:.3e} rms {norms.rms:.3e}")
        levels.append(norms)

    coarse, fine = levels[-2].max_norm, levels[-1].max_norm
    order = math.log2(coarse / fine) if coarse > 0 and fine > 0 else None
    factor = 2**SCHEME_ORDER
    extrapolated = (factor * fine - coarse) / (factor - 1)
    verdict = _verdict([level.max_norm for level in levels], order, extrapolated, tolerance)
    effective_logger.info(f"{s.id}: order {order} extrapolated {extrapolated:.3e} -> {verdict}")
    return ResidualReport(tuple(levels), order, extrapolated, verdict, tolerance, scale, grid)


def adjudicate(
    s: SolutionRecord, p: FpeParams, grid: GridSpec = GridSpec(), tolerance: float = DEFAULT_TOLERANCE
) -> SolutionRecord:
    """
    Status from the numeric oracle, with the report attached as evidence.

    A symbolically verified record keeps its status; an inconclusive report leaves
    the status unchanged.
    """
    report = fd_residual(s, p, grid, tolerance)
    if s.status == Status.SYMBOLICALLY_VERIFIED:
        if report.verdict == REFUTED:
            logger.warning(f"{s.id}: numeric residual disagrees with the exact check")
        return s.with_status(s.status, evidence=report)
    if report.verdict == VERIFIED:
        return s.with_status(Status.NUMERICALLY_VERIFIED, evidence=report)
    if report.verdict == REFUTED:
        return s.with_status(Status.REFUTED, evidence=report)
    return s.with_status(s.status, evidence=report)
