"""Check results and report serialization for the verification CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass

__all__ = ["CheckResult", "emit_report"]


@dataclass
class CheckResult:
    """Outcome of one named check.

    ``gate`` says which error bounds the verdict: "abs" compares abs_err
    against tol, "rel" compares rel_err. ``lhs``/``rhs`` are short printable
    summaries of the compared quantities, for humans reading the markdown.
    """

    check_id: str
    lhs: str
    rhs: str
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    runtime_ms: float
    gate: str = "abs"
    gating: bool = True


def _check_payload(c: CheckResult) -> dict:
    return {
        "check_id": c.check_id,
        "abs_err": float(c.abs_err),
        "rel_err": float(c.rel_err),
        "tol": float(c.tol),
        "passed": bool(c.passed),
        "runtime_ms": float(c.runtime_ms),
    }


def emit_report(
    results: list[CheckResult],
    format: str = "json",
    scenario: str | None = None,
    seed: int | None = None,
) -> bytes:
    """Serialize results with a stable field order.

    JSON: {"version":"1","scenario":...,"seed":...,"checks":[...],"passed":...};
    the version/scenario/seed header is present only when a scenario name is
    given, so bare result lists stay minimal. Markdown: one table row per
    check. runtime_ms is wall-clock and is the only non-reproducible field.
    """
    passed = all(c.passed for c in results)
    if format == "json":
        payload: dict = {}
        if scenario is not None:
            payload["version"] = "1"
            payload["scenario"] = scenario
            payload["seed"] = int(seed if seed is not None else 0)
        payload["checks"] = [_check_payload(c) for c in results]
        payload["passed"] = passed
        return json.dumps(payload, separators=(",", ":")).encode()
    if format == "markdown":
        lines = []
        title = f"# verify {scenario}" if scenario is not None else "# verify"
        lines.append(title)
        if seed is not None:
            lines.append(f"seed: {seed}")
        lines.append("")
        lines.append("| check | lhs | rhs | abs err | rel err | tol | gate | passed |")
        lines.append("|---|---|---|---|---|---|---|---|")
        for c in results:
            lines.append(
                f"| {c.check_id} | {c.lhs} | {c.rhs} | {c.abs_err:.3e} "
                f"| {c.rel_err:.3e} | {c.tol:.1e} | {c.gate} "
                f"| {'yes' if c.passed else 'NO'} |"
            )
        lines.append("")
        lines.append(f"overall: {'passed' if passed else 'FAILED'}")
        lines.append("")
        return "\n".join(lines).encode()
    raise ValueError(f"unknown format {format!r}")
