"""
Exact residual checks and solution-generation chains.
"""
import logging
from typing import Dict, List, Optional, Sequence

import sympy as sp

from ..errors import ChainError
from ..expr.core import Expr, canonicalize, formal_atoms, in_canonical_class
from ..expr.equality import equal
from ..model.formal import ALPHA, alpha_rule, reduce_modulo
from ..model.fpe import fpe_delta
from ..model.params import SYMBOLIC, FpeParams
from ..model.system import residuals
from .operators import OPERATORS, get_operator, transform
from .records import SolutionRecord, Status

logger = logging.getLogger(__name__)


def exact_residual(s: SolutionRecord, p: FpeParams = SYMBOLIC) -> Expr:
    """
    Delta evaluated on ``s``, canonical. A formal alpha is reduced modulo its FPE.

    Residuals outside the canonical class get one rational-function cancellation;
    if that does not settle them they are returned as they are for the numeric oracle.
    """
    expression = p.bind(s.expression)
    (residual,) = residuals(fpe_delta(p), {"u": expression})
    if formal_atoms(residual, [ALPHA.__name__]):
        residual = reduce_modulo(residual, alpha_rule(p))
    if residual != 0 and not in_canonical_class(residual):
        residual = canonicalize(sp.cancel(sp.together(residual)))
    return residual


def check_exact(s: SolutionRecord, p: FpeParams = SYMBOLIC) -> SolutionRecord:
    """Status from the exact residual: zero verifies, a nonzero canonical residual refutes."""
    residual = exact_residual(s, p)
    if residual == 0:
        return s.with_status(Status.SYMBOLICALLY_VERIFIED, residual)
    if in_canonical_class(residual):
        logger.info(f"Solution {s.id} refuted: residual {residual}")
        return s.with_status(Status.REFUTED, residual)
    logger.info(f"Solution {s.id}: residual outside the canonical class, deferring to numeric check")
    return s.with_status(Status.UNCHECKED, residual)


def chain(seed: SolutionRecord, ops: Sequence[str], p: FpeParams = SYMBOLIC) -> List[SolutionRecord]:
    """
    Apply ``ops`` in order starting from ``seed``; every link is checked exactly.

    Raises:
        ChainError: If the seed or a link is refuted; the records computed so far are attached.
    """
    current = seed if seed.status.verified else check_exact(seed, p)
    if current.status == Status.REFUTED:
        raise ChainError(f"Seed {seed.id} is not a solution: residual {current.residual}", [current])
    records = [current]
    for op_id in ops:
        op = get_operator(op_id)
        image = transform(op, current.expression, p)
        link = SolutionRecord(
            id=f"{current.id}.{op.id}",
            expression=image,
            provenance=current.provenance.then(op.id),
            parameters=current.parameters,
        )
        link = check_exact(link, p)
        logger.info(f"Chain link {link.provenance.describe()}: {link.status.value}")
        records.append(link)
        if link.status == Status.REFUTED:
            logger.error(f"Chain halted at {link.id}")
            raise ChainError(f"Link {link.id} is refuted: residual {link.residual}", records)
        current = link
    return records


def identify_operator(
    source: Expr, target: Expr, p: FpeParams = SYMBOLIC
) -> Dict[str, Optional[bool]]:
    """For each operator, whether it maps ``source`` onto ``target``."""
    result = {}
    for op_id, op in OPERATORS.items():
        result[op_id] = equal(transform(op, source, p), p.bind(target)).equal
    return result
