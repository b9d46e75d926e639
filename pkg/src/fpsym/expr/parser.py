"""
Reads expression text into canonical sympy expressions.

The text is first checked against the grammar on Python's own AST (so every
error carries an exact column), then built by ``sympy.parse_expr`` against a
namespace derived from the declarations.
"""
import ast
import logging
from typing import List, Mapping, Tuple

import sympy as sp
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from ..errors import ExpressionSyntaxError, NonIntegerExponentError, UndeclaredSymbolError
from .core import Expr, canonicalize
from .declarations import CLOSED_FORM, Declarations

logger = logging.getLogger(__name__)

_GLOBALS = {
    "__builtins__": {},
    "Integer": sp.Integer,
    "Rational": sp.Rational,
    "Symbol": sp.Symbol,
    "Function": sp.Function,
}
_BINARY = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_UNARY = (ast.USub, ast.UAdd)


def _rewrite_powers(text: str) -> Tuple[str, List[int]]:
    """Spell ``^`` as ``**`` and keep a map from new columns to original ones."""
    rewritten = []
    columns: List[int] = []
    for position, char in enumerate(text):
        if char == "^":
            rewritten.append("**")
            columns.extend([position, position])
        else:
            rewritten.append(char)
            columns.append(position)
    return "".join(rewritten), columns


class _GrammarCheck(ast.NodeVisitor):
    def __init__(self, text: str, columns: List[int], namespace: Mapping[str, object]):
        self.text = text
        self.columns = columns
        self.namespace = namespace

    def _column(self, node: ast.AST) -> int:
        offset = getattr(node, "col_offset", 0)
        return self.columns[min(offset, len(self.columns) - 1)] + 1

    def _fail(self, message: str, node: ast.AST) -> None:
        raise ExpressionSyntaxError(message, self.text, self._column(node))

    def visit_Expression(self, node: ast.Expression) -> None:
        self.visit(node.body)

    def visit_BinOp(self, node: ast.BinOp) -> None:
        if not isinstance(node.op, _BINARY):
            self._fail(f"Operator {type(node.op).__name__} is not allowed", node)
        if isinstance(node.op, ast.Pow) and not _is_integer_literal(node.right):
            raise NonIntegerExponentError(
                f"Exponent at column {self._column(node.right)} must be an integer: {self.text!r}"
            )
        self.visit(node.left)
        self.visit(node.right)

    def visit_UnaryOp(self, node: ast.UnaryOp) -> None:
        if not isinstance(node.op, _UNARY):
            self._fail(f"Operator {type(node.op).__name__} is not allowed", node)
        self.visit(node.operand)

    def visit_Constant(self, node: ast.Constant) -> None:
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            self._fail(f"Literal {node.value!r} is not an integer or ratio", node)

    def visit_Name(self, node: ast.Name) -> None:
        entry = self.namespace.get(node.id)
        if entry is None:
            raise UndeclaredSymbolError(node.id, self._column(node))
        if not isinstance(entry, sp.Symbol):
            self._fail(f"'{node.id}' is a function and needs arguments", node)

    def visit_Call(self, node: ast.Call) -> None:
        if not isinstance(node.func, ast.Name) or node.keywords:
            self._fail("Only plain function calls are allowed", node)
        entry = self.namespace.get(node.func.id)
        if entry is None:
            raise UndeclaredSymbolError(node.func.id, self._column(node.func))
        if isinstance(entry, sp.Symbol):
            self._fail(f"'{node.func.id}' is not a function", node)
        if node.func.id == "exp" and len(node.args) != 1:
            self._fail("exp takes exactly one argument", node)
        for argument in node.args:
            self.visit(argument)

    def generic_visit(self, node: ast.AST) -> None:
        self._fail(f"Unsupported syntax {type(node).__name__}", node)


def _is_integer_literal(node: ast.AST) -> bool:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, _UNARY):
        node = node.operand
    return (
        isinstance(node, ast.Constant)
        and isinstance(node.value, int)
        and not isinstance(node.value, bool)
    )


def parse(text: str, context: Declarations = CLOSED_FORM) -> Expr:
    """
    Parse expression text into a canonical expression.

    Raises:
        ExpressionSyntaxError: Text does not follow the grammar.
        UndeclaredSymbolError: A name is not declared in ``context``.
        NonIntegerExponentError: A power has a non-integer exponent.
    """
    source = text.strip()
    if not source or "\n" in source:
        raise ExpressionSyntaxError("Expected a single-line expression", text, 1)
    rewritten, columns = _rewrite_powers(source)
    try:
        tree = ast.parse(rewritten, mode="eval")
    except SyntaxError as exc:
        offset = (exc.offset or 1) - 1
        position = columns[min(offset, len(columns) - 1)] + 1
        raise ExpressionSyntaxError(exc.msg, source, position) from exc
    namespace = context.namespace()
    _GrammarCheck(source, columns, namespace).visit(tree)
    expression = parse_expr(
        rewritten,
        local_dict=dict(namespace),
        global_dict=dict(_GLOBALS),
        transformations=standard_transformations,
    )
    logger.debug(f"Parsed {source!r} -> {expression}")
    return canonicalize(expression)
