"""JSON report documents shared by every CLI subcommand."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = "1.0"

STATUS = {0: "ok", 1: "input-error", 2: "resource-error", 3: "identity-violation"}


def load_schema() -> dict:
    text = resources.files("hilbcoeff").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def build_report(name: str, argv: List[str], inputs: Dict[str, Any], results: Optional[dict],
                 exit_code: int = 0, error: Optional[dict] = None, warnings: Optional[List[str]] = None,
                 **extra: Any) -> dict:
    diagnostics: Dict[str, Any] = {"status": STATUS[exit_code], "exit_code": exit_code,
                                   "warnings": list(warnings or [])}
    if error is not None:
        diagnostics["error"] = error
    diagnostics.update(extra)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": {"name": name, "argv": list(argv)},
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    """Plain key/value rendering for terminal use."""
    lines = [f"# {report['command']['name']}"]

    def walk(prefix: str, value: Any) -> None:
        if prefix.endswith("checks") and isinstance(value, list) and all("holds" in v for v in value):
            for c in value:
                lines.append(f"{'PASS' if c['holds'] else 'FAIL'}  {c['name']}: {c['lhs']} vs {c['rhs']}")
        elif isinstance(value, dict):
            for k in value:
                walk(f"{prefix}.{k}" if prefix else str(k), value[k])
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {json.dumps(value)}")

    walk("", report.get("results") or {})
    diag = report["diagnostics"]
    if "error" in diag:
        lines.append(f"error: {diag['error']['type']}: {diag['error']['message']}")
    for w in diag.get("warnings", []):
        lines.append(f"warning: {w}")
    lines.append(f"status: {diag['status']}")
    return "\n".join(lines)
