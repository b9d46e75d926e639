import logging
from typing import List, Sequence

from ...errors import ChainError
from ...expr.parser import parse
from ...expr.printer import to_text
from ...solutions.chain import chain
from ...solutions.operators import get_operator
from ...solutions.records import SolutionRecord, Status
from ..config import RunConfig
from ..report import INCONCLUSIVE, PASS, REFUTED, Report

logger = logging.getLogger(__name__)

CHAIN_ANCHOR = "construct a family of solutions from a trivial solution"
SEED_ID = "seed"


def outcome_of(status: Status) -> str:
    if status.verified:
        return PASS
    if status == Status.REFUTED:
        return REFUTED
    return INCONCLUSIVE


def split_ops(text: str) -> List[str]:
    """Operator ids from ``F1,F2,...``; unknown ids raise KeyError."""
    ops = [op.strip() for op in text.split(",") if op.strip()]
    return [get_operator(op).id for op in ops]


def _add(report: Report, records: Sequence[SolutionRecord]) -> None:
    for record in records:
        report.add(
            record.id,
            outcome_of(record.status),
            record.provenance.anchor or CHAIN_ANCHOR,
            record.status.value,
            expression=record.text,
            provenance=record.provenance.describe(),
            residual=to_text(record.residual) if record.residual is not None else None,
        )


def generate_chain(config: RunConfig, seed: str, ops: Sequence[str]) -> Report:
    """Apply the solution operators ``ops`` to ``seed`` and check every link."""
    p = config.params
    report = Report("generate", {"seed": seed, "ops": list(ops), **config.echo()})
    record = SolutionRecord.seed(SEED_ID, p.bind(parse(seed)), anchor=CHAIN_ANCHOR)
    try:
        records = chain(record, ops, p)
    except ChainError as e:
        logger.error(str(e))
        records = e.records
    _add(report, records)
    return report
