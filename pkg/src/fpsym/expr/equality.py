from dataclasses import dataclass
from typing import Optional

from .const import EQUALITY_SAMPLES, EQUALITY_TOLERANCE
from .core import Expr, canonicalize, in_canonical_class

CANONICAL = "canonical"
NUMERIC = "numeric"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EqualityResult:
    """Outcome of an equality test and the method that decided it."""

    equal: Optional[bool]
    method: str
    confidence: float = 1.0

    def __bool__(self) -> bool:
        return bool(self.equal)


def equal(
    e1: Expr,
    e2: Expr,
    samples: int = EQUALITY_SAMPLES,
    tolerance: float = EQUALITY_TOLERANCE,
    seed: int = 0,
) -> EqualityResult:
    """Canonical comparison, with randomized sampling outside the canonical class."""
    difference = canonicalize(e1 - e2)
    if difference == 0:
        return EqualityResult(True, CANONICAL)
    if in_canonical_class(difference):
        return EqualityResult(False, CANONICAL)

    from ..numeric.probe import SamplingConfig, identity_probe

    probe = identity_probe(
        e1,
        e2,
        SamplingConfig(samples=samples, tolerance=tolerance, seed=seed, min_valid=samples),
    )
    if probe.equal is None:
        return EqualityResult(None, INCONCLUSIVE, probe.confidence)
    return EqualityResult(probe.equal, NUMERIC, probe.confidence)
