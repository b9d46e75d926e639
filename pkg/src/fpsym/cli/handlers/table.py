import logging
from pathlib import Path
from typing import Optional

from ...catalog.generators import load_point_generators
from ...catalog.table import TABLE_ANCHOR, commutator_table, diff_table, load_golden
from ...model.formal import alpha_rule
from ..config import RunConfig
from ..report import FAIL, INFO, PASS, Report

logger = logging.getLogger(__name__)


def compare_table(config: RunConfig, golden_path: Optional[Path] = None) -> Report:
    """Compute every bracket of V1..V6, Valpha and diff against the golden table."""
    p = config.params
    report = Report(
        "table",
        {"golden": str(golden_path) if golden_path else "builtin", **config.echo()},
    )
    computed = commutator_table(load_point_generators(p, verify=False))
    golden = load_golden(golden_path).bound(p)
    diffs = {d.pair: d for d in diff_table(computed, golden, rules=(alpha_rule(p),))}

    for pair, expected in golden.entries.items():
        label = f"[{pair[0]},{pair[1]}]"
        diff = diffs.pop(pair, None)
        if diff is None:
            report.add(label, PASS, TABLE_ANCHOR, expected.to_text())
        else:
            report.add(label, FAIL, TABLE_ANCHOR, f"expected {diff.expected}, got {diff.actual}",
                       expected=diff.expected, actual=diff.actual)
    for pair, diff in diffs.items():
        report.add(f"[{pair[0]},{pair[1]}]", FAIL, TABLE_ANCHOR, "not in the golden table", actual=diff.actual)

    report.add("table", INFO, TABLE_ANCHOR, f"{len(computed.entries)} brackets", entries=computed.to_dict())
    logger.info(f"Table diff: {sum(item.outcome == FAIL for item in report.items)} mismatches")
    return report
