from typing import Optional

from ...claims import load_claims
from ..report import INFO, Report


def list_claims(kind: Optional[str] = None) -> Report:
    """The shipped claim registry, optionally restricted to one kind."""
    report = Report("claims", {"kind": kind})
    for claim in load_claims():
        if kind and claim.kind != kind:
            continue
        summary = claim.expressions[0] if len(claim.expressions) == 1 else f"{len(claim.expressions)} expressions"
        report.add(
            claim.id,
            INFO,
            claim.anchor,
            f"{claim.kind}: {summary}",
            kind=claim.kind,
            context=claim.context,
            expressions=list(claim.expressions),
            parameters=list(claim.parameters),
            fixed=dict(claim.fixed),
        )
    return report
