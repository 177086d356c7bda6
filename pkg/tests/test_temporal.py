"""Boolean inversions and datetime shift/misformat corruption."""

from __future__ import annotations

from collections import Counter
from datetime import datetime, timedelta

import pytest

from smudge.dataset import ColumnSchema
from smudge.engine import apply_spec
from smudge.errors import ValidationError
from smudge.manifest import ContaminationManifest, ContaminationSpec
from tests.conftest import dataset_from

ISO = ColumnSchema("datetime", "%Y-%m-%d")


def _bool_spec(fraction=0.3, seed=42, mode="new"):
    return ContaminationSpec("boolean", mode, fraction, seed, column="b")


def _dates(n, start="2014-06-15"):
    t0 = datetime.strptime(start, "%Y-%m-%d")
    return [t0 + timedelta(days=i % 200) for i in range(n)]


# --- boolean ------------------------------------------------------------------


def test_boolean_exact_count_negated():
    values = [True, True, False, False, True, True, False, False, True, False]
    ds = dataset_from(("b", "boolean", values))
    out, m = apply_spec(ds, _bool_spec(0.3), ContaminationManifest())
    rows = m.entries[0].rows
    assert len(rows) == 3
    for i, v in enumerate(out.column("b").cells):
        assert v == (not values[i] if i in rows else values[i])


def test_boolean_involution_restores_from_priors():
    values = [True, False] * 10
    ds = dataset_from(("b", "boolean", values))
    out, m = apply_spec(ds, _bool_spec(0.5), ContaminationManifest())
    for row, prior_token in m.entries[0].original_values:
        prior = prior_token == "true"
        assert out.column("b").cells[row] == (not prior)


def test_boolean_on_non_boolean_column_rejected():
    ds = dataset_from(("b", "discrete-int", [1, 2, 3]))
    with pytest.raises(ValidationError):
        apply_spec(ds, _bool_spec(0.5), ContaminationManifest())


def test_boolean_double_application_blocked_by_manifest():
    ds = dataset_from(("b", "boolean", [True, False] * 5))
    out, m = apply_spec(ds, _bool_spec(0.3), ContaminationManifest())
    from smudge.errors import ModeError

    with pytest.raises(ModeError):
        apply_spec(out, _bool_spec(0.3, seed=9), m)


# --- datetime shift -------------------------------------------------------------


def _shift_spec(fraction=0.5, seed=42, mode="new", **params):
    params.setdefault("max_shift_days", 10)
    return ContaminationSpec("datetime-shift", mode, fraction, seed, column="d", params=params)


def test_shift_calendar_arithmetic():
    assert datetime(2014, 6, 15) + timedelta(days=10) == datetime(2014, 6, 25)


def test_shift_delta_bounded_and_nonzero():
    values = _dates(100)
    ds = dataset_from(("d", ISO, values))
    out, m = apply_spec(ds, _shift_spec(1.0), ContaminationManifest())
    for r in m.entries[0].rows:
        delta = (out.column("d").cells[r] - values[r]).days
        assert delta != 0
        assert -10 <= delta <= 10


def test_shift_result_renders_in_declared_format():
    values = _dates(20)
    ds = dataset_from(("d", ISO, values))
    out, m = apply_spec(ds, _shift_spec(1.0), ContaminationManifest())
    for r in m.entries[0].rows:
        token = out.column("d").token_at(r)
        assert datetime.strptime(token, "%Y-%m-%d")  # still format-valid


def test_shift_delta_uniform():
    n = 100_000
    values = _dates(n)
    ds = dataset_from(("d", ISO, values))
    out, m = apply_spec(ds, _shift_spec(1.0, seed=3, max_shift_days=5), ContaminationManifest())
    counts = Counter(
        (out.column("d").cells[r] - values[r]).days for r in m.entries[0].rows
    )
    assert set(counts) == {d for d in range(-5, 6) if d != 0}
    for d, c in counts.items():
        assert abs(c / n - 0.1) < 0.01


def test_shift_requires_positive_span():
    ds = dataset_from(("d", ISO, _dates(10)))
    with pytest.raises(ValidationError):
        apply_spec(ds, _shift_spec(0.5, max_shift_days=0), ContaminationManifest())


def test_shift_seconds_unit():
    fmt = ColumnSchema("datetime", "%Y-%m-%dT%H:%M:%S")
    values = [datetime(2014, 6, 15, 12, 0, 0) + timedelta(hours=i) for i in range(20)]
    ds = dataset_from(("d", fmt, values))
    spec = ContaminationSpec(
        "datetime-shift", "new", 1.0, 42, column="d",
        params={"max_shift_days": 30, "shift_unit": "seconds"},
    )
    out, m = apply_spec(ds, spec, ContaminationManifest())
    for r in m.entries[0].rows:
        delta = (out.column("d").cells[r] - values[r]).total_seconds()
        assert delta != 0 and abs(delta) <= 30


# --- datetime misformat -----------------------------------------------------------


def _misformat_spec(fraction=0.5, seed=42, mode="new"):
    return ContaminationSpec("datetime-misformat", mode, fraction, seed, column="d")


def test_misformat_day_first_rendering():
    values = [datetime(2014, 6, 15)] * 4
    ds = dataset_from(("d", ISO, values))
    out, m = apply_spec(ds, _misformat_spec(1.0), ContaminationManifest())
    for r in m.entries[0].rows:
        assert out.column("d").token_at(r) == "15/06/2014"


def test_misformat_breaks_declared_parse_but_keeps_instant():
    values = _dates(40)
    ds = dataset_from(("d", ISO, values))
    out, m = apply_spec(ds, _misformat_spec(0.5), ContaminationManifest())
    for r in m.entries[0].rows:
        token = out.column("d").token_at(r)
        with pytest.raises(ValueError):
            datetime.strptime(token, "%Y-%m-%d")
        assert datetime.strptime(token, "%d/%m/%Y") == values[r]  # instant preserved
        assert out.column("d").cells[r] == values[r]


def test_misformat_day_first_schema_gets_iso():
    fmt = ColumnSchema("datetime", "%d/%m/%Y")
    values = [datetime(2014, 6, 15)] * 4
    ds = dataset_from(("d", fmt, values))
    out, m = apply_spec(
        ds,
        ContaminationSpec("datetime-misformat", "new", 1.0, 42, column="d"),
        ContaminationManifest(),
    )
    for r in m.entries[0].rows:
        token = out.column("d").token_at(r)
        assert token == "2014-06-15"
        with pytest.raises(ValueError):
            datetime.strptime(token, "%d/%m/%Y")


def test_misformat_zero_k_records_empty_entry():
    ds = dataset_from(("d", ISO, [datetime(2014, 6, 15)]))
    out, m = apply_spec(ds, _misformat_spec(0.3), ContaminationManifest())
    assert out.column("d").token_at(0) == "2014-06-15"
    assert m.entries[0].rows == ()
