"""Random distortions, dispatched by column schema kind.

Numeric kinds draw replacement values from a normal centred on the original
column's midpoint with sd = range/6 (so 3 sigma spans the range), clamped into
[min, max]. Categorical-int redraws over the sorted original domain through a
discretized normal; categorical-string injects synthetic out-of-domain labels
whose index follows a half-normal.
"""

from __future__ import annotations

import math

from ..dataset import Dataset
from ..errors import DomainError, ValidationError
from ..manifest import ContaminationManifest, ContaminationSpec, ManifestEntry
from ..sampling import clamped_normal, normal
from ..selection import original_stats, select_cell_rows

_REDRAW_LIMIT = 8


def _half_up(x: float) -> int:
    return math.floor(x + 0.5)


def apply(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    column = spec.column
    kind = ds.column(column).schema.kind
    if kind == "continuous":
        return noise_continuous(ds, column, spec, manifest)
    if kind == "discrete-int":
        return noise_discrete_int(ds, column, spec, manifest)
    if kind == "categorical-int":
        return noise_categorical_int(ds, column, spec, manifest)
    if kind == "categorical-string":
        return noise_categorical_string(ds, column, spec, manifest)
    raise ValidationError(
        f"noise is not defined for {kind} columns (column {column!r}); "
        "use the boolean or datetime families"
    )


def _entry(spec, column, rows, plan, priors, params) -> ManifestEntry:
    return ManifestEntry(
        family="noise",
        column=column,
        rows=tuple(rows),
        basis_rows=plan.n_rows,
        achieved_fraction=len(rows) / plan.n_rows,
        seed=spec.seed,
        params=params,
        original_values=tuple(priors),
    )


def noise_continuous(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    lo, hi = float(st.min), float(st.max)
    mean, sd = (lo + hi) / 2.0, (hi - lo) / 6.0
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        updates[r] = (clamped_normal(stream, mean, sd, lo, hi), None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "continuous", "min": lo, "max": hi}
    return out, _entry(spec, column, rows, plan, priors, params)


def noise_discrete_int(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    lo, hi = int(st.min), int(st.max)
    mean, sd = (lo + hi) / 2.0, (hi - lo) / 6.0
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        v = _half_up(clamped_normal(stream, mean, sd, lo, hi))
        updates[r] = (max(lo, min(hi, v)), None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "discrete-int", "min": lo, "max": hi}
    return out, _entry(spec, column, rows, plan, priors, params)


def noise_categorical_int(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    domain = list(st.distinct)
    d = len(domain)
    if d < 2:
        raise DomainError(
            f"categorical noise on {column!r} needs >= 2 distinct values, found {d}"
        )
    mean, sd = (d - 1) / 2.0, (d - 1) / 6.0
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        prior = col.cells[r]
        priors.append((r, col.token_at(r)))
        chosen = None
        for _ in range(_REDRAW_LIMIT):
            i = max(0, min(d - 1, _half_up(normal(stream, mean, sd))))
            if domain[i] != prior:
                chosen = domain[i]
                break
        if chosen is None:
            # all retries landed on the prior's own index; take its neighbour
            chosen = domain[i - 1] if i > 0 else domain[i + 1]
        updates[r] = (chosen, None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "categorical-int", "distinct_count": d}
    return out, _entry(spec, column, rows, plan, priors, params)


def noise_categorical_string(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    domain = set(st.distinct)
    d = len(domain)
    sd = max(1.0, d / 3.0)
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        # truncate toward zero: the folded bins keep the half-normal mode at 0
        j = abs(int(normal(stream, 0.0, sd)))
        label = f"noise_{j}"
        while label in domain:  # synthetic labels never collide with the domain
            label = "noise_" + label
        updates[r] = (label, None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "categorical-string", "distinct_count": d}
    return out, _entry(spec, column, rows, plan, priors, params)
