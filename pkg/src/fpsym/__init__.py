"""
Lie-symmetry engine and verification toolkit for the Fokker-Planck equation
u_t = -a2 u - (a2 x + a1) u_x + u_xx / 2.
"""
from importlib import metadata

try:
    __version__ = metadata.version("fpsym")
except metadata.PackageNotFoundError:
    __version__ = "0.0.0"
