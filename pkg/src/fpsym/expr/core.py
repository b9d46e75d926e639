"""
Exact expressions on top of sympy.

An expression is a plain ``sympy.Expr``. This module fixes the canonical form
used everywhere else (expanded sums of monomials with merged exponentials),
the derivative multi-index, and the small set of pure operations the rest of
the toolkit is written against.
"""
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Mapping, Optional, Set, Tuple, Union

import sympy as sp
from sympy.core.function import AppliedUndef, UndefinedFunction

from ..errors import CollectionError, CyclicSubstitutionError, EvaluationError
from .const import VARIABLE_ORDER

logger = logging.getLogger(__name__)

Expr = sp.Expr
Binding = Union[sp.Symbol, UndefinedFunction]

_COORDINATE_NAME = re.compile(r"^(?:[xtz]|[uv](?:_[a-z]+)?)$")


def _variable_key(name: str) -> Tuple[int, str]:
    if name in VARIABLE_ORDER:
        return VARIABLE_ORDER.index(name), name
    return len(VARIABLE_ORDER), name


@dataclass(frozen=True)
class DerivIndex:
    """Unordered multi-index of independent-variable names, e.g. ('x', 'x', 't')."""

    variables: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "variables", tuple(sorted(self.variables, key=_variable_key))
        )

    @classmethod
    def from_suffix(cls, suffix: str) -> "DerivIndex":
        return cls(tuple(suffix))

    @property
    def order(self) -> int:
        return len(self.variables)

    @property
    def suffix(self) -> str:
        return "".join(self.variables)

    def extend(self, *names: str) -> "DerivIndex":
        return DerivIndex(self.variables + tuple(names))

    def count(self, name: str) -> int:
        return self.variables.count(name)

    def contains(self, other: "DerivIndex") -> bool:
        """True if ``other`` is a sub-multiset of this index."""
        return not (Counter(other.variables) - Counter(self.variables))

    def minus(self, other: "DerivIndex") -> "DerivIndex":
        if not self.contains(other):
            raise ValueError(f"{other} is not contained in {self}")
        remaining = Counter(self.variables) - Counter(other.variables)
        return DerivIndex(tuple(remaining.elements()))

    def __str__(self) -> str:
        return "{" + ",".join(self.variables) + "}"


def canonicalize(e: Any) -> Expr:
    """Expanded sum of monomials; products of exponentials merged into one."""
    e = sp.sympify(e)
    e = sp.expand(e, power_exp=False, log=False)
    e = sp.powsimp(e, combine="exp", deep=True)
    return sp.expand(e, power_exp=False, log=False)


def is_coordinate_name(name: str) -> bool:
    return bool(_COORDINATE_NAME.match(name))


def is_formal(e: Any) -> bool:
    return isinstance(e, AppliedUndef) or (
        isinstance(e, sp.Derivative) and isinstance(e.expr, AppliedUndef)
    )


def formal_parts(e: Expr) -> Tuple[UndefinedFunction, Tuple[Expr, ...], DerivIndex]:
    """Split a formal atom into (function, arguments, derivative index)."""
    if isinstance(e, AppliedUndef):
        return e.func, tuple(e.args), DerivIndex()
    if isinstance(e, sp.Derivative) and isinstance(e.expr, AppliedUndef):
        names = []
        for variable, count in e.variable_count:
            names.extend([variable.name] * int(count))
        return e.expr.func, tuple(e.expr.args), DerivIndex(tuple(names))
    raise TypeError(f"{e} is not a formal function atom")


def formal_atoms(e: Expr, names: Optional[Iterable[str]] = None) -> Set[Expr]:
    """Formal function applications and their derivatives occurring in ``e``."""
    wanted = set(names) if names is not None else None
    derivatives = {d for d in e.atoms(sp.Derivative) if isinstance(d.expr, AppliedUndef)}
    masked = e.xreplace({d: sp.Dummy() for d in derivatives})
    found = derivatives | set(masked.atoms(AppliedUndef))
    if wanted is None:
        return found
    return {a for a in found if formal_parts(a)[0].__name__ in wanted}


def _parameter_like(base: Expr) -> bool:
    if base.is_Number:
        return True
    return isinstance(base, sp.Symbol) and not is_coordinate_name(base.name)


def _in_class(node: Expr, inside_exp: bool = False) -> bool:
    if node.is_Number:
        return bool(node.is_Rational)
    if isinstance(node, sp.Symbol) or is_formal(node):
        return True
    if isinstance(node, (sp.Add, sp.Mul)):
        return all(_in_class(arg, inside_exp) for arg in node.args)
    if isinstance(node, sp.Pow):
        exponent = node.exp
        if not exponent.is_Integer:
            return False
        if exponent < 0 and not _parameter_like(node.base):
            return False
        return _in_class(node.base, inside_exp)
    if isinstance(node, sp.exp):
        return not inside_exp and _in_class(node.args[0], inside_exp=True)
    return False


def in_canonical_class(e: Expr) -> bool:
    """True for polynomial x exponential-of-polynomial expressions."""
    return _in_class(canonicalize(e))


def diff(e: Expr, v: sp.Symbol, n: int = 1) -> Expr:
    """Partial derivative; jet coordinates are independent symbols."""
    return canonicalize(sp.diff(e, v, n))


def _mentions(value: Expr, key: Binding) -> bool:
    if isinstance(key, sp.Symbol):
        return key in value.free_symbols
    return any(app.func == key for app in value.atoms(AppliedUndef))


def _as_replacement(key: Binding, value: Any, applications: Iterable[AppliedUndef]) -> Any:
    if isinstance(key, sp.Symbol) or isinstance(value, sp.Lambda):
        return sp.sympify(value)
    matching = sorted(
        (a for a in applications if a.func == key and all(isinstance(arg, sp.Symbol) for arg in a.args)),
        key=sp.default_sort_key,
    )
    if not matching:
        return sp.sympify(value)
    return sp.Lambda(matching[0].args, sp.sympify(value))


def _check_acyclic(bindings: Mapping[Binding, Any]) -> None:
    keys = list(bindings)
    depends = {
        k: {j for j in keys if _mentions(sp.sympify(bindings[k]), j)} for k in keys
    }
    for start in keys:
        frontier = set(depends[start])
        for _ in range(len(keys)):
            if start in frontier:
                raise CyclicSubstitutionError(
                    f"Binding for {start} refers back to itself through {sorted(map(str, frontier))}"
                )
            frontier = set().union(*(depends[k] for k in frontier)) if frontier else set()
            if not frontier:
                break


def substitute(e: Expr, bindings: Mapping[Binding, Any]) -> Expr:
    """
    Substitution of formal functions, then of coordinates and parameters.

    Formal functions are replaced application by application so their derivatives
    evaluate; symbol bindings are applied simultaneously afterwards.
    """
    if not bindings:
        return canonicalize(e)
    _check_acyclic(bindings)
    result = sp.sympify(e)
    applications = result.atoms(AppliedUndef).union(
        *(sp.sympify(v).atoms(AppliedUndef) for v in bindings.values())
    )
    mapping = {k: _as_replacement(k, v, applications) for k, v in bindings.items()}
    functions = {k: v for k, v in mapping.items() if not isinstance(k, sp.Symbol) and isinstance(v, sp.Lambda)}
    # one pass per binding: a body may mention another bound function
    for _ in functions:
        for key, value in functions.items():
            result = result.replace(key, value)
    if functions:
        result = result.doit()
    symbols = {k: v for k, v in mapping.items() if isinstance(k, sp.Symbol)}
    if symbols:
        result = result.subs(symbols, simultaneous=True)
    return canonicalize(result)


def _as_symbol(key: Union[str, sp.Symbol]) -> sp.Symbol:
    return sp.Symbol(key) if isinstance(key, str) else key


def evaluate(
    e: Expr, point: Mapping[Union[str, sp.Symbol], Any], precision: int = 15
) -> float:
    """Floating evaluation of a closed expression at a point."""
    if formal_atoms(e):
        raise EvaluationError(
            f"Formal function symbols must be substituted before evaluating {e}"
        )
    bindings: Dict[sp.Symbol, Any] = {
        _as_symbol(k): sp.nsimplify(v) if isinstance(v, float) else v
        for k, v in point.items()
    }
    unbound = sorted(s.name for s in e.free_symbols if s not in bindings)
    if unbound:
        raise EvaluationError(f"Unbound symbols: {', '.join(unbound)}")
    value = sp.sympify(e).evalf(n=precision, subs=bindings)
    if not value.is_number or value.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
        raise EvaluationError(f"{e} does not evaluate to a finite number at {point}")
    real, imag = value.as_real_imag()
    if imag != 0:
        raise EvaluationError(f"{e} is not real at {point}")
    result = float(real)
    if not math.isfinite(result):
        raise EvaluationError(f"Overflow evaluating {e} at {point}")
    return result


def collect_coefficients(
    e: Expr, keys: Iterable[sp.Symbol], split_exponentials: bool = False
) -> Dict[Expr, Expr]:
    """
    Coefficients of the monomials of ``e`` in ``keys``.

    Args:
        e: Expression to collect.
        keys: Symbols acting as polynomial generators.
        split_exponentials: Also treat each distinct exponential as a generator.

    Returns:
        Mapping monomial -> canonical coefficient, zero coefficients dropped.

    Raises:
        CollectionError: If ``e`` is not polynomial in the keys.
    """
    e = canonicalize(e)
    generators = list(dict.fromkeys(keys))
    marks: Dict[Expr, sp.Symbol] = {}
    if split_exponentials:
        exponentials = sorted(e.atoms(sp.exp), key=sp.default_sort_key)
        marks = {ex: sp.Dummy(f"E{i}") for i, ex in enumerate(exponentials)}
        e = e.xreplace(marks)
        generators.extend(marks.values())
    if not generators:
        return {sp.Integer(1): e} if e != 0 else {}
    try:
        poly = sp.Poly(e, *generators)
    except sp.PolynomialError as exc:
        raise CollectionError(f"{e} is not polynomial in {generators}") from exc
    restore = {mark: ex for ex, mark in marks.items()}
    collected: Dict[Expr, Expr] = {}
    for powers, coefficient in poly.terms():
        coefficient = canonicalize(coefficient)
        if coefficient == 0:
            continue
        monomial = sp.Mul(*(g**p for g, p in zip(generators, powers))).xreplace(restore)
        if coefficient.free_symbols & set(generators):
            raise CollectionError(f"Coefficient {coefficient} still depends on {generators}")
        collected[monomial] = canonicalize(collected.get(monomial, 0) + coefficient)
    return collected
