"""Classification records, class enumeration and the desk-scale theorem check."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .alexander import (
    check_alternating,
    check_ky_form,
    delta_via_phi,
    folded_phi,
    folded_torus,
    is_alternating_table,
    torus_candidates,
)
from .dinvariant import check_pos
from .families import (
    MAIN_THEOREM_TYPES,
    POINCARE_FAMILIES,
    POINCARE_TYPES,
    SPORADIC_BERGE,
    assoc_expectations,
    berge_members,
    family_table,
    match_all,
    quadratic_members,
    reproduce_assoc_table,
    reproduce_tau1_table,
)
from .globalview import a2_points, cyclic_lift
from .modular import canonical_k, dual_class
from .quadratic import UnknotBranch, associated_relation, tau_decompose

WORKERS_ENV = "LENSSURGERY_WORKERS"
FILTERS = ("stable", "alternating", "pos", "matched")
FORMATS = ("jsonl", "csv")

RECORD_FIELDS = (
    "p",
    "k1",
    "dual_class",
    "genus",
    "delta_digest",
    "passes_ky",
    "passes_alternating",
    "passes_pos",
    "relation",
    "decomposition",
    "matches",
    "anomalies",
)


@dataclass
class ClassificationRecord:
    p: int
    k1: int
    dual_class: list[int]
    genus: int
    delta_digest: str
    passes_ky: bool
    passes_alternating: bool
    passes_pos: bool
    relation: dict | None
    decomposition: dict | None
    matches: list[dict] = field(default_factory=list)
    anomalies: list[str] = field(default_factory=list)

    @property
    def stable(self) -> bool:
        return bool(self.decomposition and self.decomposition["stable"])

    @property
    def families(self) -> set[str]:
        return {m["family"] for m in self.matches}

    @property
    def in_main_types(self) -> bool:
        return bool(self.families & MAIN_THEOREM_TYPES)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in RECORD_FIELDS}

    @classmethod
    def from_dict(cls, obj: dict) -> "ClassificationRecord":
        return cls(**{name: obj[name] for name in RECORD_FIELDS})


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def classify(p: int, k: int) -> ClassificationRecord:
    if p < 2:
        raise ValueError("p must be at least 2")
    if gcd(p, k) != 1:
        raise ValueError(f"({p}, {k}) is not a coprime pair")
    k1 = canonical_k(p, k)
    dc = dual_class(p, k1)
    poly = delta_via_phi(p, k1)
    alternating = check_alternating(poly).passed
    ky = check_ky_form(p, k1, poly)
    pos = check_pos(p, k1).passed
    anomalies: list[str] = []
    if ky.reason == "no-torus-representative":
        anomalies.append("no-torus-representative")

    relation = decomposition = None
    try:
        rel = associated_relation(p, k1)
    except UnknotBranch:
        anomalies.append("unknot-branch")
    else:
        dec = tau_decompose(p, k1, rel)
        relation = asdict(rel)
        decomposition = {
            "tau": dec.tau,
            "gamma": dec.gamma,
            "gamma_prime": dec.gamma_prime,
            "n": dec.n,
            "a": dec.a,
            "q2": dec.q2,
            "stable": dec.tau >= 2,
        }
        if rel.a == 1:
            anomalies.append("VII-VIII-branch")
        if gcd(dec.a, dec.n) > 1:
            anomalies.append("branch-unavailable")

    if poly.is_integral() and a2_points(cyclic_lift(poly, k1)):
        anomalies.append("A2-point")

    matches = match_all(p, k1)
    fams = {m.family for m in matches}
    if fams and fams <= set(POINCARE_TYPES) and not pos:
        anomalies.append("poincare-only-pos-fail")

    return ClassificationRecord(
        p=p,
        k1=k1,
        dual_class=sorted(dc.distinct()),
        genus=poly.genus,
        delta_digest=_digest(poly.digest_source()),
        passes_ky=ky.passed,
        passes_alternating=alternating,
        passes_pos=pos,
        relation=relation,
        decomposition=decomposition,
        matches=[asdict(m) for m in matches],
        anomalies=anomalies,
    )


# ------------------------------------------------------------- enumeration


def class_minima(p: int) -> list[int]:
    """Minimal representatives of every dual class mod ``p``, increasing."""
    if p == 2:
        return [1]
    return [k for k in range(1, p // 2 + 1) if gcd(k, p) == 1 and canonical_k(p, k) == k]


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV, "").strip()
    return max(1, int(env)) if env else 1


def _ordered_map(fn, items: Sequence, workers: int) -> Iterator:
    if workers <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=max(1, len(items) // (workers * 16)))


def _records_for(p: int) -> list[ClassificationRecord]:
    return [classify(p, k) for k in class_minima(p)]


def keep(record: ClassificationRecord, filters: Iterable[str]) -> bool:
    for f in filters:
        if f == "stable" and not record.stable:
            return False
        if f == "alternating" and not record.passes_alternating:
            return False
        if f == "pos" and not record.passes_pos:
            return False
        if f == "matched" and not record.matches:
            return False
    return True


def parse_filters(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    out = tuple(f.strip() for f in text.split(",") if f.strip())
    unknown = [f for f in out if f not in FILTERS]
    if unknown:
        raise ValueError(f"unknown filter(s): {', '.join(unknown)}")
    return out


def enumerate_classes(
    p_max: int, filters: Iterable[str] = (), workers: int | None = None, p_min: int = 2
) -> Iterator[ClassificationRecord]:
    """One record per dual class with ``p_min <= p <= p_max``, ordered by ``(p, k1)``."""
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    filters = tuple(filters)
    ps = list(range(max(2, p_min), p_max + 1))
    for batch in _ordered_map(_records_for, ps, worker_count(workers)):
        for rec in batch:
            if keep(rec, filters):
                yield rec


# -------------------------------------------------------------- verification


@dataclass
class TheoremReport:
    p_max: int
    classes: int = 0
    hypothesis: int = 0
    exceptions: list[dict] = field(default_factory=list)
    v_only: list[dict] = field(default_factory=list)
    no_torus: list[dict] = field(default_factory=list)
    type_counts: dict[str, int] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.exceptions

    @property
    def exit_code(self) -> int:
        return 0 if self.holds else 2

    def to_dict(self) -> dict:
        d = asdict(self)
        d["holds"] = self.holds
        return d


def _ky_folded(p: int, k1: int, folded: np.ndarray) -> bool | None:
    """Torus-form check on residue tables; ``None`` when no candidate is coprime."""
    found = False
    for h, g in torus_candidates(p, k1):
        if gcd(h, g) != 1:
            continue
        found = True
        if np.array_equal(folded_torus(p, h, g), folded):
            return True
    return False if found else None


def _verify_p(p: int) -> list[tuple[str, dict, list[str]]]:
    out = []
    for k1 in class_minima(p):
        folded = folded_phi(p, k1)
        if k1 == 1 or not is_alternating_table(folded, p):
            out.append(("skip", {}, []))
            continue
        dec = tau_decompose(p, k1)
        if dec.tau < 2:
            out.append(("skip", {}, []))
            continue
        summary = {"p": p, "k1": k1, "a": dec.a, "n": dec.n, "tau": dec.tau}
        ky = _ky_folded(p, k1, folded)
        if ky is None:
            out.append(("no_torus", summary, []))
            continue
        if not ky:
            out.append(("skip", {}, []))
            continue
        fams = sorted({m.family for m in match_all(p, k1)})
        summary["matches"] = fams
        if set(fams) & MAIN_THEOREM_TYPES:
            out.append(("matched", summary, fams))
        elif fams and set(fams) <= {"V+", "V-"}:
            out.append(("v_only", summary, fams))
        else:
            out.append(("exception", summary, fams))
    return out


def verify_main_theorem(p_max: int, workers: int | None = None) -> TheoremReport:
    """Check ``stable & torus form & alternating => listed type`` for every class."""
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    report = TheoremReport(p_max)
    counts: Counter[str] = Counter()
    for batch in _ordered_map(_verify_p, list(range(2, p_max + 1)), worker_count(workers)):
        for kind, summary, fams in batch:
            report.classes += 1
            if kind == "skip":
                continue
            if kind == "no_torus":
                report.no_torus.append(summary)
                continue
            report.hypothesis += 1
            counts.update(fams)
            if kind == "v_only":
                report.v_only.append(summary)
            elif kind == "exception":
                report.exceptions.append(summary)
    report.type_counts = dict(sorted(counts.items()))
    return report


# ----------------------------------------------------------------- tables

TABLES = ("berge", "poincare", "assoc", "tau1")


@dataclass
class TableDiff:
    which: str
    checked: int = 0
    diffs: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.diffs

    def render(self) -> str:
        lines = list(self.diffs)
        lines.append(f"{self.which}: {self.checked} rows checked, {len(self.diffs)} differences")
        return "\n".join(lines) + "\n"


def _poly_text(c2: int, c1: int, c0: int) -> str:
    return f"{c2}J^2 + {c1}J + {c0}"


def _recognized(p: int, k: int, tag: str, param) -> bool:
    return any(m.family == tag and m.parameter == param for m in match_all(p, k))


def _berge_table(j_max: int, r_max: int) -> TableDiff:
    out = TableDiff("berge")
    for row in family_table("berge"):
        tag = row["family"]
        if tag in SPORADIC_BERGE:
            fam = SPORADIC_BERGE[tag]
            want = (f"p = {_poly_text(*fam.p_coeffs)}", f"k = {fam.k_coeffs[0]}J + {fam.k_coeffs[1]}")
            out.checked += 1
            if (row["condition"], row["constraint"]) != want:
                out.diffs.append(f"{tag}: fixture {row['condition']}; {row['constraint']} vs {want[0]}; {want[1]}")
            for J, p, k in quadratic_members(tag, j_max):
                out.checked += 1
                if not _recognized(p, k, tag, J):
                    out.diffs.append(f"{tag} J={J}: ({p}, {k}) not recognized")
        else:
            for r, param, p in berge_members(tag, r_max, j_max):
                out.checked += 1
                if not _recognized(p, r, tag, param):
                    out.diffs.append(f"{tag} r={r} param={param}: ({p}, {r}) not recognized")
    return out


def _poincare_table(j_max: int) -> TableDiff:
    out = TableDiff("poincare")
    for row in family_table("poincare"):
        tag = row["family"]
        fam = POINCARE_FAMILIES[tag]
        fixture = tuple(int(row[c]) for c in ("p2", "p1", "p0")), tuple(int(row[c]) for c in ("k1", "k0"))
        out.checked += 1
        if fixture != (fam.p_coeffs, fam.k_coeffs):
            out.diffs.append(f"{tag}: fixture {fixture} vs {(fam.p_coeffs, fam.k_coeffs)}")
        for J, p, k in quadratic_members(tag, j_max):
            out.checked += 1
            if not _recognized(p, k, tag, J):
                out.diffs.append(f"{tag} J={J}: ({p}, {k}) not recognized")
    return out


def _assoc_table(j_max: int) -> TableDiff:
    out = TableDiff("assoc")
    families = dict.fromkeys(row["family"] for row in assoc_expectations())
    for tag in families:
        js = [None] if tag == "K" else range(-j_max, j_max + 1)
        for row in reproduce_assoc_table(tag, js):
            if row.expected is None:
                continue
            out.checked += 1
            if not row.agrees:
                where = row.expected_holds_at()
                extra = f"; fixture relation holds at k={where}" if where is not None else ""
                out.diffs.append(
                    f"{tag} J={row.J} ({row.p}, {row.k1}): computed {row.computed}, "
                    f"fixture {row.expected}{extra}"
                )
    return out


def _tau1_table() -> TableDiff:
    out = TableDiff("tau1")
    for row in reproduce_tau1_table():
        out.checked += 1
        if not row.agrees:
            out.diffs.append(
                f"({row.p}, {row.k1}): computed {row.computed} tau={row.tau}, fixture {row.expected}"
            )
        for tag, J in row.unmatched_listings:
            out.diffs.append(
                f"({row.p}, {row.k1}): listed {tag}:{J} not recognized; recognizer finds "
                + " ".join(f"{t}:{j}" for t, j in row.matched)
            )
    return out


def reproduce_table(which: str, j_max: int = 5, r_max: int = 30) -> TableDiff:
    """Re-derive a shipped family table and list every disagreement."""
    if which == "berge":
        return _berge_table(j_max, r_max)
    if which == "poincare":
        return _poincare_table(j_max)
    if which == "assoc":
        return _assoc_table(j_max)
    if which == "tau1":
        return _tau1_table()
    raise ValueError(f"unknown table {which!r}; expected one of {', '.join(TABLES)}")


# ------------------------------------------------------------------- export

CSV_COLUMNS = RECORD_FIELDS


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)) or value is None:
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def export(records: Iterable[ClassificationRecord], fmt: str) -> bytes:
    rows = sorted(records, key=lambda r: (r.p, r.k1))
    if fmt == "jsonl":
        return "".join(
            json.dumps(r.to_dict(), sort_keys=True, separators=(",", ":")) + "\n" for r in rows
        ).encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            d = r.to_dict()
            w.writerow([_csv_cell(d[c]) for c in CSV_COLUMNS])
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _parse_cell(column: str, text: str):
    if column in ("p", "k1", "genus"):
        return int(text)
    if column.startswith("passes_"):
        return text == "true"
    if column == "delta_digest":
        return text
    return json.loads(text)


def import_records(data: bytes, fmt: str) -> list[ClassificationRecord]:
    text = data.decode()
    if fmt == "jsonl":
        return [ClassificationRecord.from_dict(json.loads(line)) for line in text.splitlines() if line]
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        return [
            ClassificationRecord.from_dict({c: _parse_cell(c, row[c]) for c in CSV_COLUMNS})
            for row in reader
        ]
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


__all__ = [
    "ClassificationRecord",
    "FILTERS",
    "FORMATS",
    "TABLES",
    "TableDiff",
    "TheoremReport",
    "WORKERS_ENV",
    "class_minima",
    "classify",
    "enumerate_classes",
    "export",
    "import_records",
    "keep",
    "parse_filters",
    "reproduce_table",
    "verify_main_theorem",
    "worker_count",
]
