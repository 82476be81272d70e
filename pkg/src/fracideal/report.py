"""Serializable classification reports.

The structured document is plain JSON with insertion-ordered keys; nothing
in it depends on wall-clock time or hash order, so equal inputs give equal
bytes.  Timing is only included when explicitly requested.
"""
from __future__ import annotations

import json
from typing import Any

from . import __version__
from .classify import PROPERTY_ORDER, DomainReport, Verdict, WitnessReport, is_ring, two_generated
from .expr import generator_expr

TOOL = "fracideal"


def _jsonable(x: Any) -> Any:
    # gmpy2 numbers and tuples out, plain ints/strings/lists in
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, float):
        return "inf" if x == float("inf") else x
    try:
        if x.denominator == 1:
            return int(x)
        return str(x)
    except AttributeError:
        return int(x)


def witness_doc(domain, w: WitnessReport) -> dict:
    fmt = domain.format_element
    doc: dict = {
        "kind": w.kind,
        "elements": [fmt(e) for e in w.elements] if w.kind != "essential" else list(map(int, w.elements)),
    }
    if w.kind == "v-domain" and w.ideal is None:
        doc["generated_ideal"] = generator_expr(domain, two_generated(domain, *w.elements))
    elif w.ideal is not None:
        doc["ideal"] = generator_expr(domain, w.ideal)
    if w.lhs is not None:
        doc["lhs"] = generator_expr(domain, w.lhs)
    if w.rhs is not None:
        doc["rhs"] = generator_expr(domain, w.rhs)
    doc["note"] = w.note
    if w.recheck:
        doc["recheck"] = w.recheck
    return doc


def verdict_doc(domain, name: str, v: Verdict) -> dict:
    doc: dict = {
        "property": name,
        "status": v.status.value,
        "basis": v.basis,
        "bound": _jsonable(v.bound),
    }
    if v.witness is not None:
        doc["witness"] = witness_doc(domain, v.witness)
    if v.details:
        doc["details"] = _jsonable(v.details)
    return doc


def report_document(report: DomainReport, spec_echo: dict, timing: dict | None = None) -> dict:
    domain = report.domain
    doc: dict = {
        "tool": {"name": TOOL, "version": __version__},
        "spec": spec_echo,
        "domain": str(domain),
        "system": report.system,
        "parameters": {"bound": report.bound, "samples": report.samples, "seed": report.seed},
        "oracle": _jsonable(report.oracle),
        "verdicts": [verdict_doc(domain, name, report.verdicts[name]) for name in PROPERTY_ORDER if name in report.verdicts],
    }
    if is_ring(domain):
        doc["primes"] = [
            {"p": pa.p, "prime": pa.label, "essential": pa.essential} for pa in report.primes
        ]
    doc["consistency"] = report.check_consistency()
    doc["rechecked"] = dict(report.rechecked)
    if timing is not None:
        doc["timing"] = {k: round(v, 3) for k, v in timing.items()}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"{doc['domain']}  [{doc['system']}]"]
    p = doc["parameters"]
    lines.append(f"  bound {p['bound']}, samples {p['samples']}, seed {p['seed']}")
    lines.append("  oracle: " + ", ".join(f"{k}={v}" for k, v in doc["oracle"].items()))
    width = max(len(v["property"]) for v in doc["verdicts"])
    for v in doc["verdicts"]:
        line = f"  {v['property']:<{width}}  {v['status']:<12} ({v['basis']})"
        lines.append(line)
        w = v.get("witness")
        if w is not None:
            elems = ", ".join(map(str, w["elements"]))
            lines.append(f"      witness [{w['kind']}] {elems}: {w['note']}")
            if "generated_ideal" in w:
                lines.append(f"      F = {w['generated_ideal']}")
            if "lhs" in w:
                lines.append(f"      got {w['lhs']}")
            if "recheck" in w:
                lines.append(f"      recheck: {w['recheck']}")
    for pa in doc.get("primes", []):
        flag = "essential" if pa["essential"] else "NOT essential"
        lines.append(f"  prime {pa['prime']} over {pa['p']}: {flag}")
    if doc["consistency"]:
        lines.append("  implication violations: " + "; ".join(doc["consistency"]))
    else:
        lines.append("  implications: consistent")
    if "timing" in doc:
        lines.append("  time: " + ", ".join(f"{k} {v:.2f}s" for k, v in doc["timing"].items()))
    return "\n".join(lines) + "\n"
