"""
Reports produced by the CLI commands, rendered as rich text or as a single
self-describing YAML document.
"""
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

import click
import yaml
from rich.console import Console
from rich.table import Table

from .. import __version__

SCHEMA = {"name": "fpsym-report", "version": 1}

PASS = "pass"
FAIL = "fail"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
INFO = "info"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_STYLES = {
    PASS: "green",
    FAIL: "red",
    REFUTED: "red",
    INCONCLUSIVE: "yellow",
    INFO: "cyan",
}


@dataclass(frozen=True)
class ReportItem:
    id: str
    outcome: str
    anchor: str
    summary: str = ""
    details: Mapping[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"id": self.id, "outcome": self.outcome, "anchor": self.anchor}
        if self.summary:
            data["summary"] = self.summary
        if self.details:
            data["details"] = dict(self.details)
        return data


@dataclass
class Report:
    command: str
    inputs: Mapping[str, Any]
    items: List[ReportItem] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter)
    elapsed: Optional[float] = None

    def add(
        self, id: str, outcome: str, anchor: str, summary: str = "", **details: Any
    ) -> ReportItem:
        item = ReportItem(id, outcome, anchor, summary, details)
        self.items.append(item)
        return item

    def finish(self) -> "Report":
        self.elapsed = time.perf_counter() - self.started
        return self

    def counts(self) -> Dict[str, int]:
        result = {outcome: 0 for outcome in _STYLES}
        for item in self.items:
            result[item.outcome] = result.get(item.outcome, 0) + 1
        return result

    @property
    def exit_code(self) -> int:
        outcomes = {item.outcome for item in self.items}
        if outcomes & {FAIL, REFUTED}:
            return EXIT_FAILURE
        if INCONCLUSIVE in outcomes:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": dict(SCHEMA),
            "version": __version__,
            "command": self.command,
            "inputs": dict(self.inputs),
            "summary": {**self.counts(), "exit_code": self.exit_code},
            "items": [item.to_dict() for item in self.items],
            "timing": {"seconds": round(self.elapsed or 0.0, 3)},
        }

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=False, width=4096)


def render_text(report: Report, console: Optional[Console] = None) -> None:
    console = console or Console()
    table = Table(title=f"fpsym {report.command}")
    table.add_column("Item", style="cyan")
    table.add_column("Outcome")
    table.add_column("Summary", overflow="fold")
    table.add_column("Anchor", style="dim", overflow="fold")
    for item in report.items:
        style = _STYLES.get(item.outcome, "white")
        table.add_row(item.id, f"[{style}]{item.outcome}[/{style}]", item.summary, item.anchor)
    console.print(table)

    for item in report.items:
        numeric = item.details.get("numeric")
        if isinstance(numeric, Mapping) and numeric.get("levels"):
            levels = Table(title=f"{item.id}: refinement ({numeric['verdict']})")
            levels.add_column("step", justify="right")
            levels.add_column("max", justify="right")
            levels.add_column("rms", justify="right")
            for level in numeric["levels"]:
                levels.add_row(f"{level['step']:g}", f"{level['max']:.3e}", f"{level['rms']:.3e}")
            console.print(levels)
            console.print(
                f"  order: {numeric['order']}  extrapolated: {numeric['extrapolated']:.3e}"
                f"  tolerance: {numeric['tolerance']:g}"
            )

    counts = ", ".join(f"{n} {outcome}" for outcome, n in report.counts().items() if n)
    console.print(f"[bold]{counts or 'no items'}[/bold] in {report.elapsed or 0.0:.2f}s")


def emit(report: Report, structured: bool) -> None:
    """Write the finished report to stdout."""
    report = report if report.elapsed is not None else report.finish()
    if structured:
        click.echo(report.to_yaml(), nl=False)
    else:
        render_text(report)
