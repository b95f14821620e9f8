"""Deterministic table / CSV / JSON rendering of every report type.

Rules that keep outputs diffable and regression-safe: half-integers
render as exact "k" or "j/2" strings, never as floats; CSV files open
with a "# schema=1" comment line, use comma delimiters, a header row,
LF endings and UTF-8; JSON objects are built in fixed field order with
census-style maps sorted by canonical type string.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Optional, Sequence

from .bounds import BoundReport, DusartReport, WING_IDS, WING_STRICT_GATE
from .halfint import Half
from .model import Decomposition
from .scan import ScanReport
from .taxonomy import StructuralType

FORMATS = ("table", "csv", "json")

SCHEMA_LINE = "# schema=1"


def _csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(SCHEMA_LINE + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _f(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.10g}"


def render_decomposition(dec: Decomposition, fmt: str) -> str:
    fields = [("E", dec.E), ("a", str(dec.a)), ("b", dec.b), ("c", dec.c),
              ("d", str(dec.d)), ("L1", str(dec.L1)), ("L2", str(dec.L2)),
              ("R1", str(dec.R1)), ("R2", str(dec.R2))]
    if fmt == "json":
        return json.dumps(dict(fields), separators=(",", ":")) + "\n"
    if fmt == "csv":
        return _csv_text([k for k, _ in fields], [[v for _, v in fields]])
    t = dec.tallies
    lines = [f"{k}: {v}" for k, v in fields]
    lines.append(f"pairs: nn={t.nn} np={t.np} pn={t.pn} pp={t.pp} "
                 f"self={t.self_kind}")
    return "\n".join(lines) + "\n"


def render_interactions(E: int, pairs: Sequence[tuple[int, int]],
                        fmt: str) -> str:
    if fmt == "json":
        return _json_text({"E": E, "count": len(pairs),
                           "pairs": [list(p) for p in pairs]})
    if fmt == "csv":
        return _csv_text(["x", "y"], pairs)
    lines = [f"{x} + {y}" for x, y in pairs]
    lines.append(f"count: {len(pairs)}")
    return "\n".join(lines) + "\n"


def render_types(types: Sequence[StructuralType], fmt: str) -> str:
    if fmt == "json":
        return _json_text([
            {"type_id": t.type_id, "canonical": t.canonical,
             "category": t.category, "excluded": t.excluded}
            for t in types])
    if fmt == "csv":
        return _csv_text(
            ["type_id", "canonical", "category", "excluded"],
            [[t.type_id, t.canonical, t.category,
              "true" if t.excluded else "false"] for t in types])
    lines = [f"{t.type_id:3d}  {t.canonical:13s} category {t.category}"
             + ("  [excluded]" if t.excluded else "") for t in types]
    return "\n".join(lines) + "\n"


def _excluded_counts(report: ScanReport) -> dict[str, int]:
    counts: dict[str, int] = {}
    for _, canon in report.excluded_hits:
        counts[canon] = counts.get(canon, 0) + 1
    return {k: counts[k] for k in sorted(counts)}


def _wing_rates(report: ScanReport) -> list[tuple[str, str, int, int]]:
    """(id, gate, applicable, failures) per wing rule under both gates."""
    out = []
    for gate_name, gate in (("E>34", 34), ("E>141", int(WING_STRICT_GATE))):
        first = max(report.lo, gate + 2 if gate % 2 == 0 else gate + 1)
        applicable = max(0, (report.hi - first) // 2 + 1) \
            if first <= report.hi else 0
        for name in WING_IDS:
            fails = sum(1 for e in report.bound_failures.get(name, [])
                        if e > gate)
            out.append((name, gate_name, applicable, fails))
    return out


def render_scan(report: ScanReport, fmt: str) -> str:
    if fmt == "json":
        return _json_text(report.to_dict())
    if fmt == "csv":
        rows: list[Sequence] = [
            ("meta", "lo", report.lo),
            ("meta", "hi", report.hi),
            ("meta", "mode", report.mode),
            ("meta", "constant", repr(report.constant)),
            ("meta", "scanned", report.scanned),
        ]
        rows += [("goldbach_failure", e, "") for e in report.goldbach_failures]
        if report.min_d is not None:
            d2, e = report.min_d
            rows.append(("min_d", e, str(Half(d2))))
        rows += [("census", k, report.type_census[k])
                 for k in sorted(report.type_census)]
        rows += [("excluded", k, v)
                 for k, v in _excluded_counts(report).items()]
        rows += [("bound_failure", name, e)
                 for name in sorted(report.bound_failures)
                 for e in report.bound_failures[name]]
        rows += [("identity_failure", name, e)
                 for e, name in report.identity_failures]
        rows += [("marginal", k, report.marginal[k])
                 for k in sorted(report.marginal)]
        rows += [("theorem_violation", e, "") for e in report.theorem_violations]
        return _csv_text(["section", "key", "value"], rows)

    lines = [
        f"scan [{report.lo}, {report.hi}] mode={report.mode} "
        f"constant={report.constant:.10g}",
        f"evens scanned: {report.scanned}",
        f"goldbach failures (d = 0): {report.goldbach_failures or 'none'}",
    ]
    if report.min_d is not None:
        d2, e = report.min_d
        lines.append(f"min d: {Half(d2)} at E={e}")
    if report.type_census:
        lines.append(f"distinct types seen: {len(report.type_census)}")
        for k in sorted(report.type_census):
            lines.append(f"  {k:13s} {report.type_census[k]}")
    exc = _excluded_counts(report)
    if exc:
        lines.append("excluded-structure hits:")
        for k, v in exc.items():
            firsts = [e for e, c in report.excluded_hits if c == k][:3]
            lines.append(f"  {k:13s} {v}  (first at E={firsts})")
    elif report.type_census:
        lines.append("excluded-structure hits: none")
    if report.bound_failures:
        lines.append("bound failures:")
        for name in sorted(report.bound_failures):
            es = report.bound_failures[name]
            lines.append(f"  {name}: {len(es)}  (first: {es[:5]})")
    elif report.mode in ("bounds", "theorem"):
        lines.append("bound failures: none")
        for name, gate, app, fails in _wing_rates(report):
            if app:
                lines.append(
                    f"  {name} under {gate}: {app - fails}/{app} hold")
    if report.marginal:
        lines.append("marginal comparisons: " + ", ".join(
            f"{k}={report.marginal[k]}" for k in sorted(report.marginal)))
    elif report.mode in ("bounds", "theorem"):
        lines.append("marginal comparisons: none")
    if report.identity_failures:
        by_id: dict[str, int] = {}
        for _, name in report.identity_failures:
            by_id[name] = by_id.get(name, 0) + 1
        lines.append("identity failures: " + ", ".join(
            f"{k}={by_id[k]}" for k in sorted(by_id)))
    elif report.mode in ("identities", "theorem"):
        lines.append("identity failures: none")
    if report.mode == "theorem":
        lines.append(
            f"theorem violations (d = 0 on a non-excluded type): "
            f"{report.theorem_violations or 'none'}")
    return "\n".join(lines) + "\n"


def render_census_csv(report: ScanReport) -> str:
    return _csv_text(["type", "count"],
                     [(k, report.type_census[k])
                      for k in sorted(report.type_census)])


def render_goldbach_csv(report: ScanReport) -> str:
    return _csv_text(["E"], [(e,) for e in report.goldbach_failures])


def render_bound_report(rep: BoundReport, fmt: str) -> str:
    if fmt == "json":
        return _json_text({
            "E": rep.E,
            "constant": rep.constant,
            "checks": {name: {"state": chk.state, "lower": chk.lower,
                              "value": chk.value, "upper": chk.upper}
                       for name, chk in rep.checks.items()},
        })
    if fmt == "csv":
        return _csv_text(
            ["bound", "state", "lower", "value", "upper"],
            [(name, chk.state, _f(chk.lower), _f(chk.value), _f(chk.upper))
             for name, chk in rep.checks.items()])
    lines = [f"E = {rep.E}, constant = {rep.constant:.10g}"]
    for name, chk in rep.checks.items():
        span = f"{_f(chk.lower) or '-inf':>14} < {_f(chk.value):>14}"
        span += f" < {_f(chk.upper):>14}" if chk.upper is not None else ""
        lines.append(f"  {name:7s} {chk.state:8s} {span}")
    return "\n".join(lines) + "\n"


def render_dusart(rep: DusartReport, fmt: str) -> str:
    if fmt == "json":
        return _json_text({
            "lo": rep.lo, "hi": rep.hi, "constant": rep.constant,
            "checked": rep.checked,
            "lower_violations": rep.lower_violations,
            "upper_violations": rep.upper_violations,
            "first_upper_violation": rep.first_upper_violation,
            "marginal": rep.marginal,
        })
    if fmt == "csv":
        rows = [("dusart_lower", x) for x in rep.lower_violations]
        rows += [("dusart_upper", x) for x in rep.upper_violations]
        return _csv_text(["bound", "x"], rows)
    lines = [
        f"pi(x) band check on [{rep.lo}, {rep.hi}], "
        f"upper constant {rep.constant:.10g}",
        f"integers checked: {rep.checked}",
        f"lower violations (x >= 17): {len(rep.lower_violations)}"
        + (f" first={rep.lower_violations[:5]}" if rep.lower_violations else ""),
        f"upper violations: {len(rep.upper_violations)}"
        + (f" first={rep.upper_violations[:8]}" if rep.upper_violations else ""),
        f"marginal: lower={rep.marginal['dusart_lower']} "
        f"upper={rep.marginal['dusart_upper']}",
    ]
    return "\n".join(lines) + "\n"


def render_thresholds(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return _json_text(list(rows))
    if fmt == "csv":
        return _csv_text(
            ["function", "bracket_lo", "bracket_hi", "root", "reference",
             "note"],
            [(r["function"], _f(r["bracket"][0]), _f(r["bracket"][1]),
              _f(r["root"]), _f(r["reference"]), r["note"]) for r in rows])
    lines = []
    for r in rows:
        root = _f(r["root"]) if r["root"] is not None else r["note"]
        lines.append(f"{r['function']:14s} bracket [{_f(r['bracket'][0])}, "
                     f"{_f(r['bracket'][1])}]  root: {root}  "
                     f"reference: {_f(r['reference'])}")
    return "\n".join(lines) + "\n"
