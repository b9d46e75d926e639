"""
Randomized identity testing for expressions outside the canonical class.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import sympy as sp

from ..expr.const import (
    EQUALITY_SAMPLES,
    EQUALITY_TOLERANCE,
    SAMPLE_A2_VALUES,
    SAMPLE_COORDINATE_RANGE,
    SAMPLE_TIME_RANGE,
)
from ..expr.core import Expr, formal_atoms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SamplingConfig:
    samples: int = EQUALITY_SAMPLES
    tolerance: float = EQUALITY_TOLERANCE
    seed: int = 0
    min_valid: Optional[int] = None
    attempts_factor: int = 4

    @property
    def required(self) -> int:
        return self.min_valid if self.min_valid is not None else (self.samples + 1) // 2


@dataclass(frozen=True)
class ProbeResult:
    equal: Optional[bool]
    confidence: float
    valid_points: int


def _draw(symbol: sp.Symbol, rng: np.random.Generator, size: int) -> np.ndarray:
    if symbol.name == "t":
        return rng.uniform(*SAMPLE_TIME_RANGE, size=size)
    if symbol.name == "a2":
        return rng.choice(np.array(SAMPLE_A2_VALUES), size=size)
    return rng.uniform(*SAMPLE_COORDINATE_RANGE, size=size)


def _values(function, columns, size: int) -> np.ndarray:
    with np.errstate(all="ignore"):
        try:
            raw = function(*columns)
        except (ZeroDivisionError, OverflowError, ValueError):
            return np.full(size, np.nan, dtype=complex)
    return np.broadcast_to(np.asarray(raw, dtype=complex), (size,))


def identity_probe(lhs: Expr, rhs: Expr, config: SamplingConfig = SamplingConfig()) -> ProbeResult:
    """Relative-difference test of ``lhs == rhs`` at random points."""
    if formal_atoms(sp.sympify(lhs)) or formal_atoms(sp.sympify(rhs)):
        logger.debug("Identity probe skipped: formal function symbols present")
        return ProbeResult(None, 0.0, 0)

    symbols = sorted(
        sp.sympify(lhs).free_symbols | sp.sympify(rhs).free_symbols, key=lambda s: s.name
    )
    size = config.samples * config.attempts_factor
    rng = np.random.default_rng(config.seed)
    columns = [_draw(symbol, rng, size) for symbol in symbols]

    left = _values(sp.lambdify(symbols, lhs, modules="numpy"), columns, size)
    right = _values(sp.lambdify(symbols, rhs, modules="numpy"), columns, size)

    with np.errstate(all="ignore"):
        valid = np.isfinite(left) & np.isfinite(right)
        chosen = np.flatnonzero(valid)[: config.samples]
        left, right = left[chosen], right[chosen]
        scale = np.maximum(1.0, np.maximum(np.abs(left), np.abs(right)))
        passed = np.abs(left - right) <= config.tolerance * scale

    valid_points = int(chosen.size)
    confidence = float(passed.mean()) if valid_points else 0.0
    if valid_points < config.required:
        logger.info(
            f"Identity probe inconclusive: {valid_points} valid points, {config.required} required"
        )
        return ProbeResult(None, confidence, valid_points)
    return ProbeResult(bool(passed.all()), confidence, valid_points)
