"""Check records and verification reports.

Every verification produces a flat list of :class:`CheckRecord`.  A record is
`ok` when its observed status matches its expected status, which lets the
report carry documented mismatches (printed formula variants that direct
computation refutes) without masking genuine regressions: those mismatches are
expected to fail, and a run is healthy only when every record is `ok`.

Reports render deterministically: records are sorted by id, JSON uses sorted
keys, and all symbolic residuals are printed in canonical factored form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from gsmc.symexpr import Expr, factor_poly

PASS = "pass"
FAIL = "fail"


def vanishing_conditions(e: Expr) -> str:
    """Describe where an expression vanishes, as conditions on its symbols.

    Factors the numerator and emits one condition per factor, joined with
    " or ": monomial symbols give "beta = 0", linear one-symbol factors solve
    to "alpha = -1", anything else renders as "<factor> = 0".  The zero
    expression gives "always"; an expression with no vanishing factor gives
    "never".
    """
    if e.is_zero():
        return "always"
    fz = factor_poly(e.table, e.num)
    conditions: list[str] = []
    for name, _ in fz.monomial_powers:
        conditions.append(f"{name} = 0")
    for body, _ in fz.factors:
        conditions.append(_solved_form(body))
    if not conditions:
        return "never"
    return " or ".join(conditions)


def _solved_form(body: Expr) -> str:
    """Render a polynomial factor as a condition, solving linear ones."""
    names = sorted(body.symbols())
    if len(names) == 1:
        name = names[0]
        width = len(body.table.names)
        idx = body.table.names.index(name)
        unit = (0,) * width
        lin = tuple(1 if i == idx else 0 for i in range(width))
        if set(body.num) <= {unit, lin} and lin in body.num:
            root = -body.num.get(unit, Fraction(0)) / body.num[lin]
            return f"{name} = {root}"
    return f"{body} = 0"


@dataclass
class CheckRecord:
    check_id: str
    statement: str
    status: str
    expected: str = PASS
    residual: str = "0"
    worst_index: tuple[int, ...] | None = None
    notes: str = ""

    @property
    def ok(self) -> bool:
        return self.status == self.expected

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "statement": self.statement,
            "status": self.status,
            "expected": self.expected,
            "residual": self.residual,
            "worst_index": list(self.worst_index) if self.worst_index else None,
            "notes": self.notes,
            "ok": self.ok,
        }

    @staticmethod
    def from_json_dict(doc: Mapping[str, Any]) -> "CheckRecord":
        return CheckRecord(
            check_id=doc["check_id"],
            statement=doc["statement"],
            status=doc["status"],
            expected=doc["expected"],
            residual=doc["residual"],
            worst_index=tuple(doc["worst_index"]) if doc.get("worst_index") else None,
            notes=doc.get("notes", ""),
        )


def worst_entry(
    entries: Mapping[tuple[int, ...], Expr]
) -> tuple[tuple[int, ...] | None, Expr | None]:
    """Pick the most complex nonzero entry (deterministic tie-breaking)."""
    nonzero = [(ix, e) for ix, e in entries.items() if not e.is_zero()]
    if not nonzero:
        return None, None
    nonzero.sort(key=lambda it: (-(len(it[1].num) + len(it[1].den)), -len(str(it[1])), it[0]))
    return nonzero[0]


def residual_record(
    check_id: str,
    statement: str,
    entries: Mapping[tuple[int, ...], Expr],
    *,
    expected: str = PASS,
    notes: str = "",
) -> CheckRecord:
    """Build a record from a residual tensor given as index -> expression."""
    ix, e = worst_entry(entries)
    if e is None:
        return CheckRecord(check_id, statement, PASS, expected, "0", None, notes)
    return CheckRecord(
        check_id,
        statement,
        FAIL,
        expected,
        e.factored_str(),
        tuple(i + 1 for i in ix),
        notes,
    )


@dataclass
class VerificationReport:
    subject: str
    alpha: str = "alpha"
    beta: str = "beta"
    variant: str = "both"
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, records: Iterable[CheckRecord]) -> None:
        self.records.extend(records)

    def finalize(self) -> "VerificationReport":
        self.records.sort(key=lambda r: r.check_id)
        return self

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def summary(self) -> dict[str, int]:
        passed = sum(1 for r in self.records if r.status == PASS)
        documented = sum(1 for r in self.records if r.status == FAIL and r.ok)
        unexpected = sum(1 for r in self.records if not r.ok)
        return {
            "total": len(self.records),
            "passed": passed,
            "documented_mismatches": documented,
            "unexpected": unexpected,
        }

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "alpha": self.alpha,
            "beta": self.beta,
            "variant": self.variant,
            "checks": [r.to_json_dict() for r in self.records],
            "summary": {**self.summary(), "ok": self.ok},
        }

    @staticmethod
    def from_json_dict(doc: Mapping[str, Any]) -> "VerificationReport":
        report = VerificationReport(
            subject=doc["subject"],
            alpha=doc["alpha"],
            beta=doc["beta"],
            variant=doc["variant"],
        )
        for rec in doc["checks"]:
            report.add(CheckRecord.from_json_dict(rec))
        return report

    def render_text(self) -> str:
        lines = [
            f"verification report: {self.subject}",
            f"alpha = {self.alpha}   beta = {self.beta}   variant = {self.variant}",
            "",
        ]
        width = max((len(r.check_id) for r in self.records), default=0)
        for r in self.records:
            if r.status == PASS and r.expected == PASS:
                tag = "ok        "
            elif r.ok:
                tag = "mismatch* "
            else:
                tag = "FAIL      "
            line = f"[{tag.strip():>9}] {r.check_id.ljust(width)}  {r.statement}"
            lines.append(line)
            if r.status == FAIL:
                where = (
                    " at (" + ",".join(str(i) for i in r.worst_index) + ")"
                    if r.worst_index
                    else ""
                )
                lines.append(f"{'':>12}residual{where}: {r.residual}")
            if r.notes:
                lines.append(f"{'':>12}note: {r.notes}")
        s = self.summary()
        lines.append("")
        lines.append(
            f"summary: {s['passed']} ok, {s['documented_mismatches']} documented "
            f"mismatches (*), {s['unexpected']} unexpected"
        )
        return "\n".join(lines) + "\n"
