"""
Numeric oracles: finite-difference residuals and randomized identity probes.
"""
from .grid import GridSpec
from .probe import ProbeResult, SamplingConfig, identity_probe
from .residual import (
    DEFAULT_TOLERANCE,
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    LevelNorms,
    ResidualReport,
    adjudicate,
    fd_residual,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "GridSpec",
    "INCONCLUSIVE",
    "LevelNorms",
    "ProbeResult",
    "REFUTED",
    "ResidualReport",
    "SamplingConfig",
    "VERIFIED",
    "adjudicate",
    "fd_residual",
    "identity_probe",
]
