"""Target-variable misclassification: binary swaps and multiclass reassignment."""

from __future__ import annotations

from ..dataset import Dataset
from ..errors import DomainError, ValidationError
from ..manifest import ContaminationManifest, ContaminationSpec, ManifestEntry
from ..selection import original_column_values, select_cell_rows


def apply(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    """Dispatch on label arity: 2 classes swap directly, more reassign randomly."""
    label_column = spec.params.get("label_column")
    if not label_column:
        raise ValidationError("label family requires params['label_column']")
    classes = _classes(ds, manifest, label_column)
    if len(classes) == 2:
        return flip_binary(ds, label_column, spec, manifest)
    return flip_multiclass(ds, label_column, spec, manifest)


def _classes(ds, manifest, label_column) -> list:
    values = original_column_values(ds, manifest, label_column)
    distinct = {v for v in values if v is not None}
    try:
        return sorted(distinct)
    except TypeError:
        return sorted(distinct, key=repr)


def _entry(spec, label_column, rows, plan, priors, classes) -> ManifestEntry:
    return ManifestEntry(
        family="label",
        column=None,
        rows=tuple(rows),
        basis_rows=plan.n_rows,
        achieved_fraction=len(rows) / plan.n_rows,
        seed=spec.seed,
        params={"label_column": label_column, "classes": len(classes)},
        original_values=tuple(priors),
    )


def flip_binary(ds, label_column, spec, manifest):
    """Swap each selected label for the other one; the domain has exactly two."""
    classes = _classes(ds, manifest, label_column)
    if len(classes) != 2:
        raise DomainError(
            f"binary flip needs exactly 2 classes in {label_column!r}, found {len(classes)}"
        )
    a, b = classes
    col = ds.column(label_column)
    rows, _, plan = select_cell_rows(ds, label_column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        updates[r] = (b if col.cells[r] == a else a, None)
    out = ds.replace_cells(label_column, updates)
    return out, _entry(spec, label_column, rows, plan, priors, classes)


def flip_multiclass(ds, label_column, spec, manifest):
    """Reassign each selected label uniformly over the other existing classes."""
    classes = _classes(ds, manifest, label_column)
    if len(classes) < 2:
        raise DomainError(
            f"label flips need >= 2 classes in {label_column!r}, found {len(classes)}"
        )
    col = ds.column(label_column)
    rows, stream, plan = select_cell_rows(ds, label_column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        prior = col.cells[r]
        priors.append((r, col.token_at(r)))
        others = [c for c in classes if c != prior]
        updates[r] = (others[stream.randint_below(len(others))], None)
    out = ds.replace_cells(label_column, updates)
    return out, _entry(spec, label_column, rows, plan, priors, classes)
