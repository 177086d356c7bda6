"""Spec dispatch and the file-level contamination pipeline.

apply_spec is a pure transformation (Dataset, spec, manifest) -> (Dataset,
manifest). The file pipeline reads a CSV plus optional sidecar manifest,
applies one spec, and writes both back; the manifest's fingerprint always
binds to the file it sits beside.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from .dataset import (
    ColumnSchema,
    Dataset,
    parse_csv_text,
    render_csv_bytes,
    token_table_from_bytes,
    token_table_from_dataset,
)
from .errors import FingerprintMismatch, ValidationError, WriteError
from .families import duplicate, label, missing, noise, outlier, temporal
from .manifest import (
    ContaminationManifest,
    ContaminationSpec,
    Fingerprint,
    VerifyReport,
    verify,
)
from .selection import SelectionPlan, plan_cell_selection

_APPLIERS = {
    "missing": missing.apply,
    "noise": noise.apply,
    "outlier": outlier.apply,
    "label": label.apply,
    "duplicate": duplicate.apply,
    "boolean": temporal.invert_boolean,
    "datetime-shift": temporal.datetime_shift,
    "datetime-misformat": temporal.datetime_misformat,
}


def apply_spec(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ContaminationManifest]:
    if spec.column is not None and not ds.has_column(spec.column):
        raise ValidationError(f"unknown column {spec.column!r}")
    out, entry = _APPLIERS[spec.family](ds, spec, manifest)
    return out, manifest.record(entry)


def apply_specs(
    ds: Dataset, specs, manifest: ContaminationManifest
) -> tuple[Dataset, ContaminationManifest]:
    """Apply a batch of specs in deterministic order.

    Duplicate specs run last (appending changes row indexing); the sort is
    stable so the caller's order is otherwise preserved.
    """
    ordered = sorted(specs, key=lambda s: s.family == "duplicate")
    for spec in ordered:
        ds, manifest = apply_spec(ds, spec, manifest)
    return ds, manifest


def fingerprint_bytes(data: bytes, rows: int, columns) -> Fingerprint:
    return Fingerprint(rows, tuple(columns), hashlib.sha256(data).hexdigest())


def fingerprint_dataset(ds: Dataset, null_token: str = "") -> Fingerprint:
    data = render_csv_bytes(ds, null_token)
    return fingerprint_bytes(data, ds.row_count, ds.column_names)


def finalize_manifest(
    ds: Dataset, manifest: ContaminationManifest
) -> ContaminationManifest:
    """Stamp the manifest with the dataset's current fingerprint."""
    return manifest.with_fingerprint(fingerprint_dataset(ds, manifest.null_token))


def load_manifest_for_input(
    manifest_path, input_bytes: bytes, null_token: str
) -> ContaminationManifest:
    """Load the sidecar manifest if present, else start fresh.

    An existing manifest must bind to the input file exactly; anything else
    means the caller is mixing files and manifests.
    """
    path = Path(manifest_path)
    if not path.exists():
        return ContaminationManifest(null_token=null_token)
    manifest = ContaminationManifest.load(path)
    if manifest.null_token != null_token:
        raise ValidationError(
            f"manifest null_token {manifest.null_token!r} differs from requested {null_token!r}"
        )
    table = token_table_from_bytes(input_bytes)
    fp = manifest.fingerprint
    if fp is None or fp.sha256 != table.sha256 or fp.rows != len(table.rows) or fp.columns != table.header:
        raise FingerprintMismatch(
            f"manifest {manifest_path} does not match the input CSV"
        )
    return manifest


def contaminate_dataset(
    ds: Dataset,
    spec: ContaminationSpec,
    null_token: str = "",
    manifest: ContaminationManifest | None = None,
) -> tuple[Dataset, ContaminationManifest, bytes]:
    """Apply one spec and return the output with its fingerprinted manifest."""
    if manifest is None:
        manifest = ContaminationManifest(null_token=null_token)
    out, manifest = apply_spec(ds, spec, manifest)
    out_bytes = render_csv_bytes(out, null_token)
    manifest = manifest.with_fingerprint(
        fingerprint_bytes(out_bytes, out.row_count, out.column_names)
    )
    return out, manifest, out_bytes


def contaminate_file(
    input_csv,
    output_csv,
    manifest_path,
    spec: ContaminationSpec,
    overrides: dict[str, ColumnSchema] | None = None,
    null_token: str = "",
) -> tuple[Dataset, ContaminationManifest]:
    input_bytes = Path(input_csv).read_bytes()
    ds = parse_csv_text(
        input_bytes.decode("utf-8"), overrides=overrides, null_token=null_token
    )
    manifest = load_manifest_for_input(manifest_path, input_bytes, null_token)
    out, manifest, out_bytes = contaminate_dataset(ds, spec, null_token, manifest)
    try:
        Path(output_csv).write_bytes(out_bytes)
    except OSError as exc:
        raise WriteError(f"cannot write {output_csv}: {exc}") from None
    manifest.save(manifest_path)
    return out, manifest


@dataclass(frozen=True)
class Plan:
    family: str
    column: str | None
    n_rows: int
    existing: int
    k: int
    eligible: int

    @property
    def shortfall(self) -> int:
        return max(0, self.k - self.eligible)


def plan_spec(ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest) -> Plan:
    """Dry-run arithmetic: how many cells/rows would be touched, and can they be."""
    if spec.family == "duplicate":
        from .families.duplicate import _mode_arithmetic, _original_row_count, coerce_target

        n_orig = _original_row_count(ds, manifest)
        if "target_column" in spec.params:
            col = ds.column(spec.params["target_column"])
            value = coerce_target(col, spec.params.get("target_value"))
            basis = sum(1 for r in range(n_orig) if col.cells[r] == value)
            if basis == 0:
                from .errors import EmptyTargetError

                raise EmptyTargetError(f"no rows match {spec.params['target_column']!r}")
        else:
            basis = n_orig
        k, _ = _mode_arithmetic(spec, manifest, basis)
        existing = sum(len(e.rows) for e in manifest.entries if e.key == (None, "duplicate"))
        # sources draw with replacement, so k never exceeds what basis allows
        return Plan(spec.family, spec.column, basis, existing, k, eligible=basis)
    if spec.family == "label":
        column = spec.params.get("label_column")
        if not column:
            raise ValidationError("label family requires params['label_column']")
    else:
        column = spec.column
    if not ds.has_column(column):
        raise ValidationError(f"unknown column {column!r}")
    plan: SelectionPlan = plan_cell_selection(ds, column, spec, manifest)
    return Plan(spec.family, spec.column, plan.n_rows, plan.existing, plan.k, plan.eligible)


def plan_file(
    input_csv,
    manifest_path,
    spec: ContaminationSpec,
    overrides: dict[str, ColumnSchema] | None = None,
    null_token: str = "",
) -> Plan:
    input_bytes = Path(input_csv).read_bytes()
    ds = parse_csv_text(
        input_bytes.decode("utf-8"), overrides=overrides, null_token=null_token
    )
    manifest = load_manifest_for_input(manifest_path, input_bytes, null_token)
    return plan_spec(ds, spec, manifest)


def verify_file(csv_path, manifest_path) -> VerifyReport:
    manifest = ContaminationManifest.load(manifest_path)
    return verify(manifest, token_table_from_bytes(Path(csv_path).read_bytes()))


def verify_dataset(
    ds: Dataset, manifest: ContaminationManifest
) -> VerifyReport:
    """In-memory verification: the Dataset is rendered with the manifest's
    null token and checked token-for-token."""
    return verify(manifest, token_table_from_dataset(ds, manifest.null_token))
