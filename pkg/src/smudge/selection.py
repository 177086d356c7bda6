"""Row selection and original-column reconstruction shared by all families.

Selection is keyed by (spec seed, column name, family): the substream, the
manifest bookkeeping and the eligibility rules together guarantee that reruns
pick identical rows and that extended mode only ever touches rows no earlier
run of the same (scope, family) touched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import ColumnStats, Dataset, parse_token, stats_from_values
from .errors import ModeError
from .manifest import (
    ContaminationManifest,
    ContaminationSpec,
    round_half_up,
    target_additional_count,
)
from .sampling import RandomStream, derive_substream, sample_rows


@dataclass(frozen=True)
class SelectionPlan:
    n_rows: int
    existing: int
    k: int
    eligible: int


def plan_cell_selection(
    ds: Dataset,
    column: str,
    spec: ContaminationSpec,
    manifest: ContaminationManifest,
) -> SelectionPlan:
    """Mode arithmetic for one cell-editing spec, without drawing anything.

    `column` is the column whose cells are edited (for dataset-scope label
    specs this is the label column); the manifest key is (spec.column, family).
    """
    n = ds.row_count
    prior = manifest.contaminated_rows(spec.column, spec.family)
    if spec.mode == "new":
        if prior:
            raise ModeError(
                f"({spec.column or 'dataset'}, {spec.family}) already contaminated; "
                "use extended mode"
            )
        k = round_half_up(spec.fraction * n)
    else:
        k = target_additional_count(n, len(prior), spec.fraction)
    eligible = n - len(prior | ds.null_rows(column))
    return SelectionPlan(n_rows=n, existing=len(prior), k=k, eligible=eligible)


def select_cell_rows(
    ds: Dataset,
    column: str,
    spec: ContaminationSpec,
    manifest: ContaminationManifest,
) -> tuple[list[int], RandomStream, SelectionPlan]:
    """Pick the rows a cell-editing spec touches.

    Eligible rows are currently non-null and not already recorded for this
    (scope, family). The returned stream has consumed the selection draws and
    is then used for the family's value draws, in ascending row order.
    """
    plan = plan_cell_selection(ds, column, spec, manifest)
    exclude = set(manifest.contaminated_rows(spec.column, spec.family)) | ds.null_rows(column)
    stream = derive_substream(spec.seed, column, spec.family)
    rows = sample_rows(plan.n_rows, plan.k, exclude, stream)
    return sorted(rows), stream, plan


def original_column_values(
    ds: Dataset, manifest: ContaminationManifest, column: str
) -> list:
    """The column's pre-contamination values, reconstructed from the manifest.

    Priors are restored in reverse entry order (later entries may have
    re-contaminated a cell an earlier one touched) and rows appended by
    duplicate entries are dropped.
    """
    col = ds.column(column)
    cells = list(col.cells)
    appended: set[int] = set()
    for e in manifest.entries:
        if e.family == "duplicate":
            appended.update(e.rows)
    for e in reversed(manifest.entries):
        touches = e.column == column or (
            e.column is None and e.params.get("label_column") == column
        )
        if touches and e.original_values:
            for row, token in e.original_values:
                cells[row] = parse_token(token, col.schema) if token is not None else None
    if appended:
        cells = [v for i, v in enumerate(cells) if i not in appended]
    return cells


def original_stats(
    ds: Dataset, manifest: ContaminationManifest, column: str
) -> ColumnStats:
    """Stats of the original (pre-contamination) column; boundary definitions
    must not drift as sequential specs run."""
    values = original_column_values(ds, manifest, column)
    return stats_from_values(values, ds.column(column).schema.kind)
