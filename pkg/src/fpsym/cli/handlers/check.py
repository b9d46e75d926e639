import logging
from dataclasses import replace
from typing import Optional

from ...claims import SOLUTION, get_claim
from ...expr.parser import parse
from ...expr.printer import to_text
from ...model.params import FpeParams
from ...numeric.residual import adjudicate, fd_residual
from ...solutions.chain import check_exact
from ...solutions.records import Provenance, SolutionRecord, Status
from ..config import RunConfig
from ..report import Report
from .generate import outcome_of

logger = logging.getLogger(__name__)

RESIDUAL_ANCHOR = "We state the Fokker-Planck equation (FPE) in the following form"
EXPRESSION_ID = "expr"


def _record(expr: Optional[str], claim_id: Optional[str]) -> SolutionRecord:
    if claim_id is not None:
        claim = get_claim(claim_id)
        if claim.kind != SOLUTION:
            raise ValueError(f"Claim {claim_id} is a {claim.kind} claim, not a solution")
        return SolutionRecord.from_claim(claim)
    if expr is None:
        raise ValueError("One of an expression or a claim id is required")
    return SolutionRecord(
        id=EXPRESSION_ID,
        expression=parse(expr),
        provenance=Provenance(seed=EXPRESSION_ID, source="imported", anchor=RESIDUAL_ANCHOR),
    )


def check_solution(
    config: RunConfig,
    expr: Optional[str] = None,
    claim_id: Optional[str] = None,
    numeric: bool = True,
) -> Report:
    """
    Exact residual of a closed form (given as text or by claim id), then the
    finite-difference oracle when ``numeric`` is set or the exact check is undecided.
    A refuted exact check is not overridden by the numeric verdict.
    """
    fixed = get_claim(claim_id).fixed_parameters() if claim_id is not None else {}
    p = FpeParams(fixed.get("a1", config.params.a1), fixed.get("a2", config.params.a2))
    record = _record(expr, claim_id)
    report = Report(
        "check",
        {"expr": expr, "claim": claim_id, "numeric": numeric, **config.echo(), **p.describe()},
    )

    record = check_exact(record, p)
    logger.info(f"{record.id}: exact check {record.status.value}")
    details = {
        "expression": record.text,
        "exact": record.status.value,
        "residual": to_text(record.residual) if record.residual is not None else None,
    }
    if numeric or record.status == Status.UNCHECKED:
        numeric_p = config.numeric_params(**fixed)
        if record.status == Status.REFUTED:
            evidence = fd_residual(record, numeric_p, config.grid, config.tolerance)
            record = replace(record, evidence=record.evidence + (evidence,))
        else:
            record = adjudicate(record, numeric_p, config.grid, config.tolerance)
            evidence = record.evidence[-1]
        details["numeric"] = evidence.to_dict()
        details["numeric_params"] = numeric_p.describe()

    report.add(record.id, outcome_of(record.status), record.provenance.anchor, record.status.value, **details)
    return report
