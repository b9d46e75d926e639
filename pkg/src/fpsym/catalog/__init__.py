"""
Named generators, the potentiality filter and the commutator table.
"""
from .generators import (
    AUXILIARY,
    FPE,
    POTENTIAL,
    GeneratorRecord,
    by_id,
    load_point_generators,
    load_potential_generators,
    potentiality_filter,
    printed_generator_audit,
    printed_potential_symmetries,
    project_potential_symmetries,
)
from .table import (
    BASIS,
    TABLE_ANCHOR,
    CommutatorTable,
    TableDiff,
    TableEntry,
    commutator_table,
    diff_table,
    load_golden,
)

__all__ = [
    "AUXILIARY",
    "BASIS",
    "CommutatorTable",
    "FPE",
    "GeneratorRecord",
    "POTENTIAL",
    "TABLE_ANCHOR",
    "TableDiff",
    "TableEntry",
    "by_id",
    "commutator_table",
    "diff_table",
    "load_golden",
    "load_point_generators",
    "load_potential_generators",
    "potentiality_filter",
    "printed_generator_audit",
    "printed_potential_symmetries",
    "project_potential_symmetries",
]
