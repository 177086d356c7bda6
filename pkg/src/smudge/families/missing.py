"""Null injection at an exact per-column fraction."""

from __future__ import annotations

from ..dataset import Dataset
from ..manifest import ContaminationManifest, ContaminationSpec, ManifestEntry
from ..selection import select_cell_rows


def apply(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    """Replace exactly k currently non-null cells of the column with null."""
    column = spec.column
    col = ds.column(column)
    rows, _, plan = select_cell_rows(ds, column, spec, manifest)
    priors = tuple((r, col.token_at(r)) for r in rows)
    out = ds.replace_cells(column, {r: (None, None) for r in rows})
    entry = ManifestEntry(
        family="missing",
        column=column,
        rows=tuple(rows),
        basis_rows=plan.n_rows,
        achieved_fraction=len(rows) / plan.n_rows,
        seed=spec.seed,
        params={},
        original_values=priors,
    )
    return out, entry
