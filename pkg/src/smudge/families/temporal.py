"""Boolean inversions and datetime corruptions.

Shifts move the instant by a nonzero uniform delta and stay format-valid;
misformatting keeps the instant but re-renders the token in a different
format so it no longer parses under the column's declared one.
"""

from __future__ import annotations

from datetime import datetime, timedelta

from ..dataset import Dataset
from ..errors import ValidationError
from ..manifest import ContaminationManifest, ContaminationSpec, ManifestEntry
from ..selection import select_cell_rows

DEFAULT_MAX_SHIFT_DAYS = 30


def _entry(family, spec, column, rows, plan, priors, params) -> ManifestEntry:
    return ManifestEntry(
        family=family,
        column=column,
        rows=tuple(rows),
        basis_rows=plan.n_rows,
        achieved_fraction=len(rows) / plan.n_rows,
        seed=spec.seed,
        params=params,
        original_values=tuple(priors),
    )


def invert_boolean(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    column = spec.column
    col = ds.column(column)
    if col.schema.kind != "boolean":
        raise ValidationError(f"column {column!r} is {col.schema.kind}, not boolean")
    rows, _, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        updates[r] = (not col.cells[r], None)
    out = ds.replace_cells(column, updates)
    return out, _entry("boolean", spec, column, rows, plan, priors, {})


def _shift_params(spec) -> tuple[int, str]:
    max_shift = int(spec.params.get("max_shift_days", DEFAULT_MAX_SHIFT_DAYS))
    if max_shift < 1:
        raise ValidationError(f"max_shift_days must be >= 1, got {max_shift}")
    unit = spec.params.get("shift_unit", "days")
    if unit not in ("days", "seconds"):
        raise ValidationError(f"shift_unit must be 'days' or 'seconds', got {unit!r}")
    return max_shift, unit


def datetime_shift(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    column = spec.column
    col = ds.column(column)
    if col.schema.kind != "datetime":
        raise ValidationError(f"column {column!r} is {col.schema.kind}, not datetime")
    max_shift, unit = _shift_params(spec)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        t = stream.randint_below(2 * max_shift)
        delta = t - max_shift if t < max_shift else t - max_shift + 1  # never 0
        shifted = col.cells[r] + timedelta(**{unit: delta})
        updates[r] = (shifted, None)
    out = ds.replace_cells(column, updates)
    params = {"max_shift_days": max_shift, "shift_unit": unit}
    return out, _entry("datetime-shift", spec, column, rows, plan, priors, params)


def _alternate_format(fmt: str) -> str:
    """A rendering format deliberately different from the declared one."""
    has_time = any(d in fmt for d in ("%H", "%M", "%S"))
    has_frac = "%f" in fmt
    if fmt.startswith("%d"):
        alt = "%Y-%m-%d" + ("T%H:%M:%S" if has_time else "")
    else:
        alt = "%d/%m/%Y" + (" %H:%M:%S" if has_time else "")
    if has_frac:
        alt += ".%f"
    return alt


def _misformat_token(value: datetime, declared: str, alt: str) -> str:
    token = value.strftime(alt)
    while True:  # must not parse under the declared format
        try:
            datetime.strptime(token, declared)
        except ValueError:
            return token
        token = "@" + token


def datetime_misformat(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    column = spec.column
    col = ds.column(column)
    if col.schema.kind != "datetime":
        raise ValidationError(f"column {column!r} is {col.schema.kind}, not datetime")
    declared = col.schema.datetime_format
    alt = _alternate_format(declared)
    rows, _, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        value = col.cells[r]
        # instant preserved in memory; only the rendered token is corrupted
        updates[r] = (value, _misformat_token(value, declared, alt))
    out = ds.replace_cells(column, updates)
    params = {"format": alt}
    return out, _entry("datetime-misformat", spec, column, rows, plan, priors, params)
