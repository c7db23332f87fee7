"""
Report utilities for consistent command output
"""
import json
from typing import Any, Dict, Optional

from classified.core.exceptions import ClassifiedError
from classified.schemas.config import OutputFormat
from classified.schemas.report import CheckReport, Failure, FailureKind


def failure(
    law: str,
    inputs: Optional[Dict[str, Any]] = None,
    witness: Any = None,
    kind: FailureKind = FailureKind.LAW,
) -> Failure:
    """
    Create a failure entry

    Args:
        law: Law or check identifier
        inputs: Serialized inputs that replay the case
        witness: Counterexample
        kind: Failure class

    Returns:
        Failure entry
    """
    return Failure(law=law, inputs=inputs or {}, witness=witness, kind=kind)


def error_report(suite: str, error: ClassifiedError, seed: int = 0) -> CheckReport:
    """A one-case failing report describing an error raised by a check"""
    return CheckReport(
        suite=suite,
        seed=seed,
        cases=1,
        failures=[failure(error.kind, witness=error.to_dict(), kind=FailureKind.ERROR)],
    )


def emit_report(report: CheckReport, fmt: OutputFormat = OutputFormat.TEXT) -> str:
    """
    Render a report

    Args:
        report: Report to render
        fmt: text for a human summary, json for a stable-keyed object

    Returns:
        The rendered report
    """
    if OutputFormat(fmt) == OutputFormat.JSON:
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2)
    lines = [
        f"suite: {report.suite}",
        f"status: {report.status.value}",
        f"seed: {report.seed}",
        f"cases: {report.cases}",
        f"failures: {len(report.failures)}",
        f"elapsed: {report.elapsed_ms:.1f} ms",
    ]
    for key in sorted(report.details):
        lines.append(f"{key}: {report.details[key]}")
    for note in report.notes:
        lines.append(f"note: {note}")
    for item in report.failures:
        lines.append(f"- [{item.kind.value}] {item.law}")
        if item.inputs:
            lines.append(f"    inputs: {json.dumps(item.inputs, sort_keys=True)}")
        if item.witness is not None:
            lines.append(f"    witness: {json.dumps(item.witness, sort_keys=True, default=str)}")
    return "\n".join(lines)
