from dataclasses import asdict, dataclass
from typing import Dict, Tuple

import numpy as np

from ..errors import GridError

DEFAULT_X = (-2.0, 2.0)
DEFAULT_T = (0.1, 1.1)
DEFAULT_STEP = 0.02
DEFAULT_LEVELS = 4


@dataclass(frozen=True)
class GridSpec:
    """
    Rectangle [x0, x1] x [t0, t1] sampled with spacing h on both axes.

    Level l of a refinement study uses stencils of width h / 2**l around the
    same interior nodes.
    """

    x0: float = DEFAULT_X[0]
    x1: float = DEFAULT_X[1]
    t0: float = DEFAULT_T[0]
    t1: float = DEFAULT_T[1]
    h: float = DEFAULT_STEP
    levels: int = DEFAULT_LEVELS

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise GridError(f"Grid spacing must be positive, got {self.h}")
        if not self.x1 > self.x0 or not self.t1 > self.t0:
            raise GridError(f"Grid intervals must be non-degenerate: [{self.x0}, {self.x1}] x [{self.t0}, {self.t1}]")
        if self.levels < 2:
            raise GridError(f"At least two refinement levels are needed, got {self.levels}")
        if min(self.x1 - self.x0, self.t1 - self.t0) < 2 * self.h:
            raise GridError(f"Spacing {self.h} leaves no interior nodes")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """From ``x0,x1,t0,t1,h,L``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise GridError(f"Expected x0,x1,t0,t1,h,L, got {text!r}")
        try:
            *bounds, levels = parts
            return cls(*(float(b) for b in bounds), levels=int(levels))
        except ValueError as exc:
            raise GridError(f"Malformed grid {text!r}: {exc}") from exc

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """Interior nodes as a meshgrid (x, t), indexing 'ij'."""
        nx = int(round((self.x1 - self.x0) / self.h))
        nt = int(round((self.t1 - self.t0) / self.h))
        xs = self.x0 + self.h * np.arange(1, nx)
        ts = self.t0 + self.h * np.arange(1, nt)
        return np.meshgrid(xs, ts, indexing="ij")

    def step(self, level: int) -> float:
        return self.h / 2**level

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)
