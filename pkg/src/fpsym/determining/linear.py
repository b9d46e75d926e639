"""
Linear algebra over constraints that are linear in unknown-function derivatives.

Coefficients live in the field of rational functions of the coordinates and
parameters; row reduction is exact (``DomainMatrix`` over that field) and span
membership uses exact ranks at random rational specializations.
"""
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.solveset import NonlinearError

from ..expr.core import Expr, canonicalize, formal_atoms, formal_parts
from ..model.system import is_invertible_constant

logger = logging.getLogger(__name__)

# Modulus for the rank tests of differential consequences.
PRIME = 2_147_483_647


def atom_key(atom: Expr) -> Tuple[int, str, str]:
    """Highest derivative first, then by function name and suffix."""
    function, _, index = formal_parts(atom)
    return (-index.order, function.__name__, index.suffix)


def unknown_atoms(equations: Iterable[Expr], names: Sequence[str]) -> List[Expr]:
    found: Set[Expr] = set()
    for e in equations:
        found |= formal_atoms(sp.sympify(e), names)
    return sorted(found, key=atom_key)


def coefficient_matrix(equations: Sequence[Expr], atoms: Sequence[Expr]) -> sp.Matrix:
    """
    Matrix of coefficients of ``atoms``.

    Raises:
        NonlinearError: If an equation is not linear in the atoms.
    """
    dummies = [sp.Dummy(f"a{i}") for i in range(len(atoms))]
    swap = dict(zip(atoms, dummies))
    masked = [sp.sympify(e).xreplace(swap) for e in equations]
    matrix, constant = sp.linear_eq_to_matrix(masked, dummies)
    if any(c != 0 for c in constant):
        raise NonlinearError("Constraints carry terms free of the unknowns")
    return matrix


def reduced_rows(equations: Sequence[Expr], atoms: Sequence[Expr]) -> List[List[Expr]]:
    """Nonzero rows of the reduced row echelon form."""
    if not equations or not atoms:
        return []
    matrix = coefficient_matrix(equations, atoms)
    domain_matrix = DomainMatrix.from_Matrix(matrix).to_field()
    echelon, pivots = domain_matrix.rref()
    rows = echelon.to_Matrix().tolist()
    return [[sp.cancel(entry) for entry in row] for row in rows[: len(pivots)]]


def row_expression(row: Sequence[Expr], atoms: Sequence[Expr]) -> Expr:
    """Constraint for a reduced row, with denominators cleared and leading coefficient made 1 when possible."""
    combined = sp.together(sum((c * a for c, a in zip(row, atoms)), sp.Integer(0)))
    numerator, _ = sp.fraction(combined)
    numerator = canonicalize(numerator)
    pivot = next((i for i, c in enumerate(row) if c != 0), None)
    if pivot is not None:
        scale = canonicalize(sp.diff(numerator, atoms[pivot]))
        if is_invertible_constant(scale):
            numerator = canonicalize(numerator / scale)
    return numerator


def close_under_derivatives(e: Expr, zeros: Iterable[Expr]) -> Expr:
    """Set every derivative of an atom known to vanish to zero."""
    zeros = list(zeros)
    if not zeros:
        return canonicalize(e)
    parts = [formal_parts(z) for z in zeros]
    replacements = {}
    for atom in formal_atoms(sp.sympify(e)):
        function, args, index = formal_parts(atom)
        for zero_function, zero_args, zero_index in parts:
            if function == zero_function and args == zero_args and index.contains(zero_index):
                replacements[atom] = sp.Integer(0)
                break
    return canonicalize(sp.sympify(e).xreplace(replacements))


def minimal_zeros(zeros: Iterable[Expr]) -> List[Expr]:
    """Drop atoms that are derivatives of another vanishing atom."""
    zeros = sorted(set(zeros), key=lambda a: (formal_parts(a)[2].order, str(a)))
    kept: List[Expr] = []
    for atom in zeros:
        if close_under_derivatives(atom, kept) != 0:
            kept.append(atom)
    return kept


def _specialization(symbols: Sequence[sp.Symbol], rng: np.random.Generator) -> Dict[sp.Symbol, Expr]:
    point = {}
    for symbol in symbols:
        numerator = int(rng.integers(1, 12)) * int(rng.choice([-1, 1]))
        denominator = int(rng.integers(1, 8))
        point[symbol] = sp.Rational(numerator, denominator)
    return point


def _rank(rows: Sequence[Sequence[Expr]]) -> int:
    if not rows:
        return 0
    return DomainMatrix.from_Matrix(sp.Matrix(rows)).to_field().rank()


def span_contains(
    basis: Sequence[Expr],
    candidate: Expr,
    names: Sequence[str],
    zeros: Iterable[Expr] = (),
    points: int = 2,
    seed: int = 0,
) -> Optional[bool]:
    """
    True if ``candidate`` is a linear combination of ``basis`` once the vanishing
    atoms and their derivatives are removed; None when the test is inconclusive.
    """
    zeros = list(zeros)
    candidate = close_under_derivatives(candidate, zeros)
    if candidate == 0:
        return True
    basis = [b for b in (close_under_derivatives(b, zeros) for b in basis) if b != 0]
    atoms = unknown_atoms(list(basis) + [candidate], names)
    try:
        matrix = coefficient_matrix(list(basis) + [candidate], atoms) if basis else None
        if matrix is None:
            return False
    except NonlinearError:
        logger.info(f"Span test inconclusive for nonlinear constraint {candidate}")
        return None
    symbols = sorted(matrix.free_symbols, key=lambda s: s.name)
    rng = np.random.default_rng(seed)
    verdicts = set()
    for _ in range(points):
        specialized = matrix.xreplace(_specialization(symbols, rng)).tolist()
        verdicts.add(_rank(specialized[:-1]) == _rank(specialized))
    if len(verdicts) > 1:
        return None
    return verdicts.pop()


def _modular(value: Expr, prime: int) -> int:
    return int(value.p) * pow(int(value.q), -1, prime) % prime


def consequences(
    constraints: Sequence[Expr],
    names: Sequence[str],
    arguments: Sequence[sp.Symbol],
    zeros: Iterable[Expr] = (),
    depth: int = 2,
) -> List[Expr]:
    """The constraints and their partial derivatives up to ``depth``, closed under ``zeros``."""
    zeros = list(zeros)
    rows = []
    for constraint in constraints:
        if not unknown_atoms([constraint], names):
            continue
        for order in range(depth + 1):
            for variables in itertools.combinations_with_replacement(arguments, order):
                row = sp.diff(constraint, *variables) if variables else constraint
                row = close_under_derivatives(row, zeros)
                if row != 0:
                    rows.append(row)
    return rows


def forced_zeros(
    constraints: Sequence[Expr],
    names: Sequence[str],
    arguments: Sequence[sp.Symbol],
    zeros: Iterable[Expr] = (),
    depth: int = 2,
    points: int = 3,
    seed: int = 0,
) -> List[Expr]:
    """
    Unknown derivatives that lie in the span of the constraints and their partial
    derivatives up to ``depth``.

    A derivative is kept when its unit row is a row of the reduced echelon form at
    every random specialization; ranks are taken modulo ``PRIME``.
    """
    rows = consequences(constraints, names, arguments, zeros, depth)
    atoms = unknown_atoms(rows, names)
    if not atoms:
        return []
    column = {atom: j for j, atom in enumerate(atoms)}
    expanded = [sp.expand(row) for row in rows]
    coefficients = [{atom: row.coeff(atom) for atom in formal_atoms(row, names)} for row in expanded]
    symbols = sorted(
        set().union(*(c.free_symbols for row in coefficients for c in row.values())),
        key=lambda s: s.name,
    )
    domain = sp.GF(PRIME)
    rng = np.random.default_rng(seed)
    found: Optional[Set[Expr]] = None
    for _ in range(points):
        point = {s: sp.Integer(int(rng.integers(1, PRIME))) for s in symbols}
        entries: Dict[int, Dict[int, object]] = {}
        for i, row in enumerate(coefficients):
            values = {}
            for atom, coefficient in row.items():
                value = sp.sympify(coefficient).xreplace(point)
                if not value.is_Rational:
                    logger.info(f"Coefficient {coefficient} does not specialize to a rational")
                    return []
                residue = _modular(value, PRIME)
                if residue:
                    values[column[atom]] = domain(residue)
            if values:
                entries[i] = values
        echelon, pivots = DomainMatrix(entries, (len(rows), len(atoms)), domain).rref()
        dense = echelon.to_Matrix()
        singles = {
            atoms[pivot]
            for i, pivot in enumerate(pivots)
            if sum(1 for value in dense.row(i) if value != 0) == 1
        }
        found = singles if found is None else found & singles
    logger.debug(f"{len(found or ())} derivatives forced to vanish by {len(rows)} consequences")
    return sorted(found or (), key=atom_key)
