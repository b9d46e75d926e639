"""
This module contains the handler functions for the CLI commands.
"""
from .check import check_solution
from .claims import list_claims
from .determining import compare_determining
from .generate import generate_chain, split_ops
from .table import compare_table
from .verify import verify_generators

__all__ = [
    "check_solution",
    "compare_determining",
    "compare_table",
    "generate_chain",
    "list_claims",
    "split_ops",
    "verify_generators",
]
