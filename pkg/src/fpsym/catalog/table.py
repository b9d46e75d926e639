"""
Commutator table of the point symmetry algebra, and its comparison with golden data.
"""
import itertools
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy as sp
import yaml

from ..errors import TableViolationError
from ..expr.const import T, U, X
from ..expr.core import Expr, canonicalize, collect_coefficients
from ..expr.declarations import FORMAL
from ..expr.equality import equal
from ..expr.parser import parse
from ..expr.printer import to_text
from ..jet.fields import VectorField, lie_bracket
from ..model.formal import FormalRule, reduce_modulo
from ..model.params import FpeParams
from .generators import GeneratorRecord

logger = logging.getLogger(__name__)

BASIS = ("V1", "V2", "V3", "V4", "V5", "V6")
FORMAL_ID = "Valpha"
TABLE_ANCHOR = "Commutations table of the Lie algebra of symmetries"

Pair = Tuple[str, str]


@dataclass(frozen=True)
class TableEntry:
    """[A, B] as a combination of the basis, or as the image of a formal generator."""

    coefficients: Mapping[str, Expr] = field(default_factory=dict)
    image: Optional[Expr] = None

    def negated(self) -> "TableEntry":
        return TableEntry(
            {k: canonicalize(-v) for k, v in self.coefficients.items()},
            canonicalize(-self.image) if self.image is not None else None,
        )

    def to_text(self) -> str:
        if self.image is not None:
            return f"V[{to_text(self.image)}]"
        terms = [f"({to_text(c)})*{k}" for k, c in self.coefficients.items() if c != 0]
        return " + ".join(terms) if terms else "0"

    def to_dict(self) -> Dict[str, object]:
        if self.image is not None:
            return {"image": to_text(self.image)}
        return {"combination": {k: to_text(c) for k, c in self.coefficients.items() if c != 0}}


@dataclass(frozen=True)
class CommutatorTable:
    entries: Mapping[Pair, TableEntry]

    def __getitem__(self, pair: Pair) -> TableEntry:
        a, b = pair
        if a == b:
            return TableEntry()
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        return self.entries[(b, a)].negated()

    def pairs(self) -> List[Pair]:
        return list(self.entries)

    def bound(self, p: FpeParams) -> "CommutatorTable":
        """The table with a1, a2 replaced by the values ``p`` binds."""
        return CommutatorTable(
            {
                pair: TableEntry(
                    {k: canonicalize(p.bind(c)) for k, c in entry.coefficients.items()},
                    canonicalize(p.bind(entry.image)) if entry.image is not None else None,
                )
                for pair, entry in self.entries.items()
            }
        )

    def to_dict(self) -> List[Dict[str, object]]:
        return [{"pair": list(pair), **entry.to_dict()} for pair, entry in self.entries.items()]


def _combination(bracket: VectorField, basis: Mapping[str, VectorField]) -> Dict[str, Expr]:
    """Solve bracket = sum c_k V_k for constants c_k by coefficient comparison."""
    unknowns = sp.symbols(f"c1:{len(basis) + 1}")
    names = list(basis)
    equations = []
    for component, value in bracket.components().items():
        combined = value - sum(
            (c * basis[name].component(component) for c, name in zip(unknowns, names)),
            sp.Integer(0),
        )
        equations.extend(
            collect_coefficients(combined, [X, T, U], split_exponentials=True).values()
        )
    solutions = sp.linsolve(equations, unknowns)
    if not solutions:
        raise TableViolationError(f"Bracket {bracket} is not in the span of {names}")
    (solution,) = solutions
    free = set().union(*(sp.sympify(v).free_symbols for v in solution))
    if free & set(unknowns) or free & {X, T, U}:
        raise TableViolationError(f"Structure constants of {bracket} are not determined: {solution}")
    return {name: canonicalize(sp.factor(value)) for name, value in zip(names, solution)}


def _image(bracket: VectorField, formal: str) -> Expr:
    components = bracket.components()
    if any(components[name] != 0 for name in ("x", "t")):
        raise TableViolationError(f"Bracket with {formal} has a non-vertical part: {components}")
    return components["u"]


def commutator_table(generators: Iterable[GeneratorRecord]) -> CommutatorTable:
    """
    Every pairwise bracket, expressed in the basis V1..V6; brackets with the formal
    generator are reported by their d/du coefficient.

    Raises:
        TableViolationError: If a bracket of basis elements leaves their span.
    """
    records = {g.id: g for g in generators}
    basis = {name: records[name].field for name in BASIS if name in records}
    entries: Dict[Pair, TableEntry] = {}
    for a, b in itertools.combinations(records, 2):
        bracket = lie_bracket(records[a].field, records[b].field)
        if FORMAL_ID in (a, b):
            entries[(a, b)] = TableEntry(image=_image(bracket, FORMAL_ID))
        else:
            entries[(a, b)] = TableEntry(coefficients=_combination(bracket, basis))
        logger.debug(f"[{a},{b}] = {entries[(a, b)].to_text()}")
    logger.info(f"Computed {len(entries)} brackets")
    return CommutatorTable(entries)


@dataclass(frozen=True)
class TableDiff:
    pair: Pair
    expected: str
    actual: str


def _parse_entry(raw: Mapping[str, object]) -> TableEntry:
    if "image" in raw:
        return TableEntry(image=parse(str(raw["image"]), FORMAL))
    combination = raw.get("combination") or {}
    return TableEntry(coefficients={str(k): parse(str(v)) for k, v in combination.items()})


def load_golden(path: Optional[Path] = None) -> CommutatorTable:
    """Golden table from ``path``, or the copy shipped with the package."""
    if path is None:
        text = resources.files(__package__).joinpath("table.yaml").read_text()
    else:
        text = Path(path).read_text()
    data = yaml.safe_load(text) or {}
    entries = {}
    for raw in data.get("entries", []):
        a, b = raw["pair"]
        entries[(str(a), str(b))] = _parse_entry(raw)
    return CommutatorTable(entries)


def _same(expected: TableEntry, actual: TableEntry, rules: Sequence[FormalRule]) -> bool:
    if (expected.image is None) != (actual.image is None):
        return False
    if expected.image is not None:
        difference = expected.image - actual.image
        if rules:
            difference = reduce_modulo(difference, *rules)
        return canonicalize(difference) == 0
    names = set(expected.coefficients) | set(actual.coefficients)
    return all(
        equal(expected.coefficients.get(n, 0), actual.coefficients.get(n, 0)).equal for n in names
    )


def diff_table(
    computed: CommutatorTable, golden: CommutatorTable, rules: Sequence[FormalRule] = ()
) -> List[TableDiff]:
    """Entries of ``golden`` that the computed table does not reproduce, plus missing pairs."""
    diffs = []
    for pair, expected in golden.entries.items():
        try:
            actual = computed[pair]
        except KeyError:
            diffs.append(TableDiff(pair, expected.to_text(), "missing"))
            continue
        if not _same(expected, actual, rules):
            diffs.append(TableDiff(pair, expected.to_text(), actual.to_text()))
    for pair in computed.pairs():
        if pair not in golden.entries and (pair[1], pair[0]) not in golden.entries:
            diffs.append(TableDiff(pair, "missing", computed[pair].to_text()))
    return diffs
