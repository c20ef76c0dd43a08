# report.py
"""
The output envelope and the record builders for each command.

Every value inside a record is a decimal string, so JSON and CSV carry the
same payload and nothing passes through a float.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import config
from duality import ConclusionsReport, PatternReport, SweepRow
from greek import GreekElement, degree
from ideals import InvariantIdeal, ideal_degree_sum
from primes import HeightPrimePair

Record = dict[str, str]

PATTERN_COLUMNS = ("t", "verdict", "witness_family", "witness_N", "witness_params")
PATTERN_DETAIL_COLUMNS = ("t", "coefficients", "verdict", "reason", "termination_N",
                          "checked_N", "potential_witnesses")


@dataclass(frozen=True)
class OutputEnvelope:
    command: str
    context: Record = field(default_factory=dict)
    payload: tuple[Record, ...] = ()
    columns: tuple[str, ...] = ()
    schema_version: str = config.SCHEMA_VERSION

    def __post_init__(self):
        payload = tuple({str(k): str(v) for k, v in r.items()} for r in self.payload)
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "context", {str(k): str(v) for k, v in self.context.items()})
        if not self.columns:
            object.__setattr__(self, "columns", _columns_of(payload))

    # ── JSON ──────────────────────────────────────────────────────────────────
    def to_json(self) -> str:
        body = {"schema_version": self.schema_version, "command": self.command,
                "context": self.context, "columns": list(self.columns),
                "payload": list(self.payload)}
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputEnvelope":
        body = json.loads(text)
        return cls(body["command"], body.get("context", {}), tuple(body.get("payload", ())),
                   tuple(body.get("columns", ())), body["schema_version"])

    # ── CSV ───────────────────────────────────────────────────────────────────
    def to_csv(self) -> str:
        """Header row plus one row per record; the envelope header is not repeated."""
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(self.columns), lineterminator="\n",
                                extrasaction="raise")
        writer.writeheader()
        writer.writerows(self.payload)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, command: str, context: Record | None = None) -> "OutputEnvelope":
        reader = csv.DictReader(io.StringIO(text))
        rows = tuple(dict(row) for row in reader)
        return cls(command, context or {}, rows, tuple(reader.fieldnames or ()))


def _columns_of(payload: Sequence[Record]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for record in payload:
        seen.update(dict.fromkeys(record))
    return tuple(seen)


# ── Record builders ───────────────────────────────────────────────────────────
def pattern_records(reports: Iterable[PatternReport]) -> list[Record]:
    """One row per degree, ascending t; several witnesses are joined by '|'."""
    rows = []
    for report in sorted(reports, key=lambda r: r.query.t):
        shown = report.witnesses
        rows.append({
            "t": str(report.query.t),
            "verdict": report.verdict.value,
            "witness_family": "|".join(w.family.value for w in shown),
            "witness_N": "|".join(str(w.N) for w in shown),
            "witness_params": "|".join(w.params_text() for w in shown),
        })
    return rows


def pattern_detail(report: PatternReport) -> Record:
    """Why a verdict was reached: reason, N-scan bounds, bound-level candidates."""
    checked = report.checked_N_range
    potential = report.potential_witnesses
    return {
        "t": str(report.query.t),
        "coefficients": report.query.coefficients.value,
        "verdict": report.verdict.value,
        "reason": report.reason,
        "termination_N": "" if report.termination_N is None else str(report.termination_N),
        "checked_N": "" if checked is None else f"{checked[0]}..{checked[1]}",
        "potential_witnesses": "|".join(f"{w.family.value}@N={w.N}:{w.params_text()}"
                                        for w in potential),
    }


def pattern_details(reports: Iterable[PatternReport]) -> list[Record]:
    return [pattern_detail(r) for r in sorted(reports, key=lambda r: r.query.t)]


def pair_records(pairs: Iterable[HeightPrimePair]) -> list[Record]:
    return [{"h": str(pair.h), "p": str(pair.p)} for pair in pairs]


def ideal_records(ideals: Iterable[InvariantIdeal]) -> list[Record]:
    rows = []
    for ideal in ideals:
        rows.append({
            "exponents": ",".join(map(str, ideal.exponents)),
            "N": "" if ideal.top is None else str(ideal.top.N),
            "degree_sum": str(ideal_degree_sum(ideal)),
            "certificate": ideal.certificate.value,
            "label": ideal.label(),
        })
    return rows


def greek_records(elements: Iterable[GreekElement]) -> list[Record]:
    rows = []
    for element in elements:
        rows.append({
            "family": element.family.value,
            "s": str(element.s),
            "N": str(element.N),
            "d": ",".join(map(str, element.denominators)),
            "degree": str(degree(element)),
            "level": element.level.value,
            "label": element.label(),
        })
    return rows


def sweep_records(rows: Iterable[SweepRow]) -> list[Record]:
    return [{"N": str(r.N), "e_max": str(r.e_max), "degree_sum": str(r.degree_sum),
             "threshold": str(r.threshold), "holds": str(r.holds).lower()} for r in rows]


def conclusions_records(report: ConclusionsReport) -> list[Record]:
    rows = [{"key": "regime", "holds": "true", "text": report.regime}]
    rows += [{"key": s.key, "holds": str(s.holds).lower(), "text": s.text}
             for s in report.statements]
    return rows
