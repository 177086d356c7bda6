"""Extreme-value injection using the original column's 3-sigma boundaries.

Numeric injections land strictly outside [mean - 3*std, mean + 3*std], in the
(3, 4] sigma magnitude window, on a fair-coin side. Categorical injections use
an out-of-domain label: the literal "Puck was here" for strings, max + 1 for
integer categories.
"""

from __future__ import annotations

import math

from ..dataset import Dataset
from ..errors import DomainError, ValidationError
from ..manifest import ContaminationManifest, ContaminationSpec, ManifestEntry
from ..selection import original_stats, select_cell_rows

STRING_OUTLIER_LABEL = "Puck was here"


def apply(
    ds: Dataset, spec: ContaminationSpec, manifest: ContaminationManifest
) -> tuple[Dataset, ManifestEntry]:
    column = spec.column
    kind = ds.column(column).schema.kind
    if kind == "continuous":
        return outlier_continuous(ds, column, spec, manifest)
    if kind == "discrete-int":
        return outlier_int(ds, column, spec, manifest)
    if kind == "categorical-int":
        return outlier_categorical_int(ds, column, spec, manifest)
    if kind == "categorical-string":
        return outlier_categorical_string(ds, column, spec, manifest)
    raise ValidationError(
        f"outliers are not defined for {kind} columns (column {column!r})"
    )


def _entry(spec, column, rows, plan, priors, params) -> ManifestEntry:
    return ManifestEntry(
        family="outlier",
        column=column,
        rows=tuple(rows),
        basis_rows=plan.n_rows,
        achieved_fraction=len(rows) / plan.n_rows,
        seed=spec.seed,
        params=params,
        original_values=tuple(priors),
    )


def _side_and_margin(stream) -> tuple[int, float]:
    s = -1 if stream.random() < 0.5 else 1
    u = 1.0 - stream.random()  # (0, 1]: strictly beyond the boundary
    return s, u


def outlier_continuous(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    mean, sd = float(st.mean), float(st.std)
    if sd == 0:
        raise DomainError(
            f"column {column!r} has zero standard deviation; no value lies outside 3 sigma"
        )
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    boundary = 3.0 * sd
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        s, u = _side_and_margin(stream)
        v = mean + s * (3.0 + u) * sd
        while abs(v - mean) <= boundary:  # guard float rounding at the boundary
            v = math.nextafter(v, s * math.inf)
        updates[r] = (v, None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "continuous", "mean": mean, "std": sd}
    return out, _entry(spec, column, rows, plan, priors, params)


def outlier_int(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    mean, sd = float(st.mean), float(st.std)
    if sd == 0:
        raise DomainError(
            f"column {column!r} has zero standard deviation; no value lies outside 3 sigma"
        )
    col = ds.column(column)
    rows, stream, plan = select_cell_rows(ds, column, spec, manifest)
    boundary = 3.0 * sd
    priors, updates = [], {}
    for r in rows:
        priors.append((r, col.token_at(r)))
        s, u = _side_and_margin(stream)
        raw = mean + s * (3.0 + u) * sd
        v = math.ceil(raw) if s > 0 else math.floor(raw)  # round outward
        while abs(v - mean) <= boundary:
            v += s
        updates[r] = (v, None)
    out = ds.replace_cells(column, updates)
    params = {"kind": "discrete-int", "mean": mean, "std": sd}
    return out, _entry(spec, column, rows, plan, priors, params)


def outlier_categorical_string(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    domain = set(st.distinct)
    label = STRING_OUTLIER_LABEL
    n = 1
    while label in domain:
        n += 1
        label = f"{STRING_OUTLIER_LABEL} ({n})"
    col = ds.column(column)
    rows, _, plan = select_cell_rows(ds, column, spec, manifest)
    priors = [(r, col.token_at(r)) for r in rows]
    out = ds.replace_cells(column, {r: (label, None) for r in rows})
    params = {"kind": "categorical-string", "label": label}
    return out, _entry(spec, column, rows, plan, priors, params)


def outlier_categorical_int(ds, column, spec, manifest):
    st = original_stats(ds, manifest, column)
    value = int(max(st.distinct)) + 1  # one unseen class label
    col = ds.column(column)
    rows, _, plan = select_cell_rows(ds, column, spec, manifest)
    priors = [(r, col.token_at(r)) for r in rows]
    out = ds.replace_cells(column, {r: (value, None) for r in rows})
    params = {"kind": "categorical-int", "value": value}
    return out, _entry(spec, column, rows, plan, priors, params)
