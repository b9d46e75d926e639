import sympy as sp

X = sp.Symbol("x")
T = sp.Symbol("t")
U = sp.Symbol("u")
V = sp.Symbol("v")
Z = sp.Symbol("z")

A1 = sp.Symbol("a1")
A2 = sp.Symbol("a2")

RESERVED_PARAMETERS = ("a1", "a2")

# Canonical ordering of variable letters inside a derivative multi-index.
VARIABLE_ORDER = ("x", "t", "z", "u", "v")

MAX_JET_ORDER = 4
REDUCTION_ORDER_LIMIT = 8

EQUALITY_SAMPLES = 20
EQUALITY_TOLERANCE = 1e-9
SAMPLE_COORDINATE_RANGE = (-2.0, 2.0)
SAMPLE_TIME_RANGE = (0.1, 1.1)
SAMPLE_A2_VALUES = (-1.5, -1.0, -0.5, 0.5, 1.0, 1.5)
