"""Row duplication, random or targeted at one attribute value.

Copies are appended after the last row in draw order; sources are drawn with
replacement from the original rows only, so extended runs never copy a copy.
Random mode counts its fraction against all original rows, targeted mode
against the matching subset.
"""

from __future__ import annotations

from ..dataset import Column, Dataset, parse_token, render_value
from ..errors import EmptyTargetError, ModeError, ValidationError
from ..manifest import (
    ContaminationManifest,
    ContaminationSpec,
    ManifestEntry,
    round_half_up,
    target_additional_count,
)
from ..sampling import derive_substream


def apply(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    if "target_column" in spec.params:
        return duplicate_targeted(
            ds, spec.params["target_column"], spec.params.get("target_value"), spec, manifest
        )
    return duplicate_random(ds, spec, manifest)


def coerce_target(col: Column, value):
    """CLI callers hand the target value as a raw token; parse it to the
    column's value type so equality against cells means what it should."""
    if isinstance(value, str) and col.schema.kind != "categorical-string":
        return parse_token(value, col.schema)
    return value


def _mode_arithmetic(spec, manifest, basis: int) -> tuple[int, int]:
    """(k, original_row_count) for this run; extended tops up the appended total."""
    prior_entries = [e for e in manifest.entries if e.key == (None, "duplicate")]
    if spec.mode == "new":
        if prior_entries:
            raise ModeError("dataset already has duplicate contamination; use extended mode")
        return round_half_up(spec.fraction * basis), basis
    existing = sum(len(e.rows) for e in prior_entries)
    return target_additional_count(basis, existing, spec.fraction), basis


def _original_row_count(ds, manifest) -> int:
    for e in manifest.entries:
        if e.family == "duplicate":
            return int(e.params["original_row_count"])
    return ds.row_count


def duplicate_random(ds, spec, manifest):
    if ds.row_count < 1:
        raise ValidationError("cannot duplicate rows of an empty dataset")
    n_orig = _original_row_count(ds, manifest)
    k, _ = _mode_arithmetic(spec, manifest, n_orig)
    stream = derive_substream(spec.seed, "", "duplicate")
    sources = [stream.randint_below(n_orig) for _ in range(k)]
    return _append(ds, spec, sources, basis=n_orig, n_orig=n_orig, extra={})


def duplicate_targeted(ds, column, value, spec, manifest):
    col = ds.column(column)  # raises for unknown column
    if value is None:
        raise ValidationError("targeted duplication requires a target value")
    value = coerce_target(col, value)
    n_orig = _original_row_count(ds, manifest)
    matching = [r for r in range(n_orig) if col.cells[r] == value]
    if not matching:
        raise EmptyTargetError(
            f"no rows match {column!r} == {render_value(value, col.schema)!r}"
        )
    k, _ = _mode_arithmetic(spec, manifest, len(matching))
    stream = derive_substream(spec.seed, column, "duplicate")
    sources = [matching[stream.randint_below(len(matching))] for _ in range(k)]
    extra = {
        "target_column": column,
        "target_value": render_value(value, col.schema),
        "matching_rows": len(matching),
    }
    return _append(ds, spec, sources, basis=len(matching), n_orig=n_orig, extra=extra)


def _append(ds, spec, sources, basis, n_orig, extra):
    start = ds.row_count
    out = ds.append_copies(sources)
    rows = tuple(range(start, start + len(sources)))
    params = {"sources": list(sources), "original_row_count": n_orig, **extra}
    entry = ManifestEntry(
        family="duplicate",
        column=None,
        rows=rows,
        basis_rows=basis,
        achieved_fraction=len(rows) / basis,
        seed=spec.seed,
        params=params,
        original_values=None,
    )
    return out, entry
