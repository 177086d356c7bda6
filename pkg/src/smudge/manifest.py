"""Contamination manifest: what was touched, where, under which seed.

The manifest is a sidecar JSON document bound to one exact CSV file by a
fingerprint (row count, column names, content hash). It is the source of
truth for extended-mode arithmetic and for verification, and it stores every
touched cell's prior value so contamination is always reversible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .dataset import TokenTable
from .errors import ManifestError, ModeError, ValidationError, WriteError

FAMILIES = (
    "missing",
    "noise",
    "outlier",
    "label",
    "duplicate",
    "boolean",
    "datetime-shift",
    "datetime-misformat",
)

# Families whose scope is the whole dataset rather than one column.
DATASET_SCOPE_FAMILIES = frozenset({"label", "duplicate"})

MODES = ("new", "extended")


def round_half_up(x: float) -> int:
    """Half-up rounding of a fraction*count product.

    The product is first rounded to 9 decimals so that binary-float error in
    decimal fractions (0.3 * 10 = 2.9999...96) cannot flip the result.
    """
    return math.floor(round(x, 9) + 0.5)


def target_additional_count(n_rows: int, existing: int, target_fraction: float) -> int:
    """Rows still to contaminate to reach target_fraction of n_rows."""
    if not 0 < target_fraction <= 1:
        raise ValidationError(f"fraction must be in (0, 1], got {target_fraction}")
    if existing > n_rows:
        raise ValidationError("existing contamination exceeds row count")
    additional = round_half_up(target_fraction * n_rows) - existing
    if additional < 0:
        raise ModeError(
            f"target {target_fraction} is below existing contamination "
            f"({existing}/{n_rows}); extended mode cannot remove errors"
        )
    return additional


@dataclass(frozen=True)
class Fingerprint:
    rows: int
    columns: tuple[str, ...]
    sha256: str


@dataclass(frozen=True)
class ContaminationSpec:
    """One requested injection."""

    family: str
    mode: str
    fraction: float
    seed: int
    column: str | None = None  # None = dataset scope
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if not 0 < self.fraction <= 1:
            raise ValidationError(f"fraction must be in (0, 1], got {self.fraction}")
        if self.family in DATASET_SCOPE_FAMILIES:
            if self.column is not None:
                raise ValidationError(f"{self.family} is dataset-scoped; do not pass a column")
        elif self.column is None:
            raise ValidationError(f"{self.family} requires a column")


@dataclass(frozen=True)
class ManifestEntry:
    family: str
    column: str | None  # None = dataset scope
    rows: tuple[int, ...]
    basis_rows: int
    achieved_fraction: float
    seed: int
    params: dict = field(default_factory=dict)
    original_values: tuple[tuple[int, str], ...] | None = None

    def __post_init__(self):
        if list(self.rows) != sorted(set(self.rows)):
            raise ManifestError("entry rows must be sorted and duplicate-free")
        if self.basis_rows > 0:
            expected = len(self.rows) / self.basis_rows
            if self.achieved_fraction != expected:
                raise ManifestError(
                    f"achieved_fraction {self.achieved_fraction} != {len(self.rows)}/{self.basis_rows}"
                )

    @property
    def key(self) -> tuple[str | None, str]:
        return (self.column, self.family)


@dataclass(frozen=True)
class ContaminationManifest:
    fingerprint: Fingerprint | None = None
    entries: tuple[ManifestEntry, ...] = ()
    null_token: str = ""

    def contaminated_rows(self, column: str | None, family: str) -> frozenset[int]:
        rows: set[int] = set()
        for e in self.entries:
            if e.key == (column, family):
                rows.update(e.rows)
        return frozenset(rows)

    def record(self, entry: ManifestEntry) -> "ContaminationManifest":
        existing = self.contaminated_rows(entry.column, entry.family)
        overlap = existing & set(entry.rows)
        if overlap:
            raise ManifestError(
                f"rows {sorted(overlap)} already recorded for "
                f"({entry.column or 'dataset'}, {entry.family})"
            )
        return replace(self, entries=self.entries + (entry,))

    def with_fingerprint(self, fingerprint: Fingerprint) -> "ContaminationManifest":
        return replace(self, fingerprint=fingerprint)

    # --- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        doc: dict = {"null_token": self.null_token, "entries": []}
        if self.fingerprint is not None:
            doc["fingerprint"] = {
                "rows": self.fingerprint.rows,
                "columns": list(self.fingerprint.columns),
                "sha256": self.fingerprint.sha256,
            }
        for e in self.entries:
            entry_doc = {
                "family": e.family,
                "scope": "dataset" if e.column is None else "column",
                "column": e.column,
                "rows": list(e.rows),
                "basis_rows": e.basis_rows,
                "achieved_fraction": e.achieved_fraction,
                "seed": e.seed,
                "params": e.params,
            }
            if e.original_values is not None:
                entry_doc["original_values"] = [[r, t] for r, t in e.original_values]
            doc["entries"].append(entry_doc)
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ContaminationManifest":
        fp = None
        if "fingerprint" in doc:
            f = doc["fingerprint"]
            fp = Fingerprint(f["rows"], tuple(f["columns"]), f["sha256"])
        entries = []
        for e in doc.get("entries", []):
            entries.append(
                ManifestEntry(
                    family=e["family"],
                    column=e["column"],
                    rows=tuple(e["rows"]),
                    basis_rows=e["basis_rows"],
                    achieved_fraction=e["achieved_fraction"],
                    seed=e["seed"],
                    params=e.get("params", {}),
                    original_values=(
                        tuple((r, t) for r, t in e["original_values"])
                        if "original_values" in e
                        else None
                    ),
                )
            )
        return cls(fp, tuple(entries), doc.get("null_token", ""))

    def save(self, path) -> None:
        # canonical key ordering: identical runs produce byte-identical files
        text = json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise WriteError(f"cannot write manifest {path}: {exc}") from None

    @classmethod
    def load(cls, path) -> "ContaminationManifest":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"manifest {path} is not valid JSON: {exc}") from None
        return cls.from_json_dict(doc)


@dataclass
class VerifyReport:
    structure_ok: bool
    hash_ok: bool
    violations: list[str] = field(default_factory=list)
    entry_summaries: list[str] = field(default_factory=list)
    entries_checked: int = 0

    @property
    def fingerprint_ok(self) -> bool:
        return self.structure_ok and self.hash_ok

    @property
    def passed(self) -> bool:
        return self.fingerprint_ok and not self.violations

    def lines(self) -> list[str]:
        out = [
            f"fingerprint structure: {'ok' if self.structure_ok else 'MISMATCH'}",
            f"fingerprint sha256:    {'ok' if self.hash_ok else 'MISMATCH'}",
            f"entries checked:       {self.entries_checked}",
        ]
        out.extend(self.entry_summaries)
        for v in self.violations:
            out.append(f"violation: {v}")
        out.append("result: PASS" if self.passed else "result: FAIL")
        return out


def _change_guaranteed(entry: ManifestEntry) -> bool:
    """Whether the family contract forces the new cell to differ from the prior.

    Numeric noise and numeric outliers are pure distribution draws that may
    land on the prior value; everything else must differ.
    """
    if entry.family in ("noise", "outlier"):
        return entry.params.get("kind") in ("categorical-int", "categorical-string")
    return True


def verify(manifest: ContaminationManifest, table: TokenTable) -> VerifyReport:
    """Check a manifest against the raw token view of a CSV.

    Violations are report content, not exceptions; the report passes only if
    the fingerprint binds and every entry's recorded effect is present.
    """
    fp = manifest.fingerprint
    structure_ok = (
        fp is not None and fp.rows == len(table.rows) and fp.columns == table.header
    )
    hash_ok = fp is not None and fp.sha256 == table.sha256
    report = VerifyReport(structure_ok=structure_ok, hash_ok=hash_ok)
    if not structure_ok:
        return report

    col_index = {name: i for i, name in enumerate(table.header)}

    # Cells later entries touched; the duplicate copy-equality check must
    # skip them (a chained spec may legally edit an appended row).
    touched: set[tuple[int, int]] = set()
    for e in manifest.entries:
        col = e.column if e.column is not None else e.params.get("label_column")
        if e.family != "duplicate" and col in col_index:
            touched.update((r, col_index[col]) for r in e.rows)

    for n, e in enumerate(manifest.entries):
        report.entries_checked += 1
        label = f"entry {n} ({e.column or 'dataset'}/{e.family})"
        bad_rows = [r for r in e.rows if r >= len(table.rows)]
        if bad_rows:
            report.violations.append(f"{label}: rows {bad_rows} out of range")
            continue

        if e.basis_rows <= 0:
            report.violations.append(f"{label}: basis_rows must be positive")
        else:
            recomputed = len(e.rows) / e.basis_rows
            report.entry_summaries.append(
                f"{label}: rows={len(e.rows)} recorded_fraction={e.achieved_fraction:g} "
                f"recomputed={recomputed:g}"
            )
            if e.achieved_fraction != recomputed:
                report.violations.append(
                    f"{label}: achieved_fraction {e.achieved_fraction} != "
                    f"{len(e.rows)}/{e.basis_rows}"
                )

        if e.family == "duplicate":
            sources = e.params.get("sources", [])
            if len(sources) != len(e.rows):
                report.violations.append(f"{label}: sources/rows length mismatch")
                continue
            for r, s in zip(e.rows, sources):
                for j in range(len(table.header)):
                    if (r, j) in touched or (s, j) in touched:
                        continue
                    if table.rows[r][j] != table.rows[s][j]:
                        report.violations.append(
                            f"{label}: appended row {r} differs from source {s} "
                            f"in column {table.header[j]!r}"
                        )
                        break
            continue

        col = e.column if e.column is not None else e.params.get("label_column")
        if col not in col_index:
            report.violations.append(f"{label}: column {col!r} not in dataset")
            continue
        j = col_index[col]

        if e.family == "missing":
            for r in e.rows:
                if table.rows[r][j] != manifest.null_token:
                    report.violations.append(f"{label}: row {r} is not null")

        if e.original_values is not None and _change_guaranteed(e):
            for r, prior in e.original_values:
                if r < len(table.rows) and table.rows[r][j] == prior:
                    report.violations.append(
                        f"{label}: row {r} still holds its prior value"
                    )

    return report
