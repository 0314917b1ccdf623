"""AuditReport assembly, JSON serialization and a plain-text rendering."""

from __future__ import annotations

import json
from collections import Counter
from typing import Any, Iterable

from . import __version__
from .verdict import FAIL, SKIPPED

SCHEMA = "hullkit v1"


def summarize(groups: list[dict[str, Any]]) -> dict[str, Any]:
    verdicts: Counter[str] = Counter()
    by_audit: dict[str, Counter[str]] = {}
    claims: dict[str, Counter[str]] = {}
    failures = []
    for gi, entry in enumerate(groups):
        for rec in entry["audits"]:
            verdicts[rec["verdict"]] += 1
            by_audit.setdefault(rec["name"], Counter())[rec["verdict"]] += 1
            if rec["verdict"] in (FAIL, SKIPPED):
                failures.append({"group": entry["group"]["name"], "audit": rec["name"],
                                 **{k: rec[k] for k in ("subgroup", "component") if k in rec}})
        for rec in entry.get("claims", ()):
            claims.setdefault(rec["name"], Counter())[rec["verdict"]] += 1
    return {
        "status": "fail" if failures else "pass",
        "hard_failures": len(failures),
        "audits": sum(verdicts.values()),
        "verdicts": dict(sorted(verdicts.items())),
        "by_audit": {k: dict(sorted(v.items())) for k, v in sorted(by_audit.items())},
        "claim_audits": {k: dict(sorted(v.items())) for k, v in sorted(claims.items())},
        "failures": failures[:100],
    }


def build_report(command: str, parameters: dict[str, Any],
                 groups: Iterable[dict[str, Any]]) -> dict[str, Any]:
    groups = list(groups)
    return {
        "report": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "parameters": parameters,
        "groups": groups,
        "summary": summarize(groups),
    }


def exit_status(report: dict[str, Any]) -> int:
    return 0 if report["summary"]["hard_failures"] == 0 else 1


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=1, ensure_ascii=False) + "\n"


def _fmt_data(data: dict[str, Any]) -> str:
    parts = []
    for k, v in data.items():
        if isinstance(v, (int, float, str, bool)):
            parts.append(f"{k}={v}")
    return " ".join(parts)


def to_text(report: dict[str, Any], headline: str | None = None, detail: bool = True) -> str:
    lines = [f"report: {report['report']} (tool {report['tool_version']}), "
             f"command {report['command']}"]
    if headline:
        lines.append(headline)
    for entry in report["groups"]:
        g = entry["group"]
        records = entry["audits"] + entry.get("claims", [])
        if detail:
            lines.append(f"group {g['name']} order {g['order']}")
            for rec in records:
                where = " ".join(f"{k}={rec[k]}" for k in ("component", "subgroup") if k in rec)
                line = f"  {rec['name']}: {rec['verdict']}"
                if where:
                    line += f" [{where}]"
                data = _fmt_data(rec.get("data", {}))
                if data:
                    line += f" {data}"
                if "witness" in rec:
                    line += f" witness={json.dumps(rec['witness'])}"
                lines.append(line)
        else:
            counts = Counter(r["verdict"] for r in records)
            tally = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
            lines.append(f"group {g['name']} order {g['order']}: "
                         f"{len(entry.get('subgroups', []))} subgroups, {tally}")
    s = report["summary"]
    lines.append(f"audits {s['audits']}: " + ", ".join(f"{k} {v}" for k, v in s["verdicts"].items()))
    for name, counts in s["claim_audits"].items():
        lines.append(f"claim {name}: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    for f in s["failures"]:
        lines.append(f"FAILED {json.dumps(f)}")
    lines.append(f"status: {s['status']}")
    return "\n".join(lines) + "\n"
