"""Manifest bookkeeping: mode arithmetic, recording, serialization, verify."""

from __future__ import annotations

import json

import pytest

from smudge.dataset import render_csv_bytes, token_table_from_bytes
from smudge.engine import contaminate_dataset, fingerprint_bytes
from smudge.errors import ManifestError, ModeError, ValidationError
from smudge.manifest import (
    ContaminationManifest,
    ContaminationSpec,
    Fingerprint,
    ManifestEntry,
    round_half_up,
    target_additional_count,
    verify,
)
from tests.conftest import dataset_from


# --- arithmetic -------------------------------------------------------------


@pytest.mark.parametrize(
    "x,expected",
    [(3.0, 3), (2.5, 3), (2.4999, 2), (0.0, 0), (0.5, 1), (299.9999999999999, 300)],
)
def test_round_half_up(x, expected):
    assert round_half_up(x) == expected


def test_round_half_up_neutralizes_float_fraction_error():
    # 0.3 * 10 is 2.9999999999999996 in binary floating point
    assert round_half_up(0.3 * 10) == 3
    assert round_half_up(0.3 * 1000) == 300
    assert round_half_up(0.15 * 1000) == 150


@pytest.mark.parametrize(
    "n,existing,target,expected",
    [(100, 10, 0.3, 20), (10, 0, 0.3, 3), (100, 30, 0.3, 0)],
)
def test_target_additional_count(n, existing, target, expected):
    assert target_additional_count(n, existing, target) == expected


def test_target_below_existing_is_mode_error():
    with pytest.raises(ModeError):
        target_additional_count(100, 40, 0.3)


# --- record / contaminated_rows ----------------------------------------------


def _entry(column, family, rows, basis=10, seed=1):
    return ManifestEntry(
        family=family,
        column=column,
        rows=tuple(sorted(rows)),
        basis_rows=basis,
        achieved_fraction=len(rows) / basis,
        seed=seed,
    )


def test_record_appends():
    m = ContaminationManifest().record(_entry("age", "missing", [1, 2, 3]))
    assert len(m.entries) == 1
    assert m.contaminated_rows("age", "missing") == {1, 2, 3}


def test_record_overlap_is_integrity_error():
    m = ContaminationManifest().record(_entry("age", "missing", [3]))
    with pytest.raises(ManifestError):
        m.record(_entry("age", "missing", [3]))


def test_record_same_row_across_families_is_legal():
    m = ContaminationManifest().record(_entry("age", "missing", [1]))
    m = m.record(_entry("age", "noise", [1]))
    assert len(m.entries) == 2


def test_contaminated_rows_unions_entries():
    m = ContaminationManifest()
    m = m.record(_entry("age", "missing", [1, 2]))
    m = m.record(_entry("age", "missing", [5]))
    assert m.contaminated_rows("age", "missing") == {1, 2, 5}


def test_contaminated_rows_unknown_scope_empty():
    assert ContaminationManifest().contaminated_rows("nope", "missing") == frozenset()


def test_dataset_scope_ignores_column_entries():
    m = ContaminationManifest().record(_entry("age", "missing", [1]))
    assert m.contaminated_rows(None, "missing") == frozenset()


def test_entry_rows_must_be_sorted_unique():
    with pytest.raises(ManifestError):
        ManifestEntry("missing", "a", (2, 1), 10, 0.2, 1)
    with pytest.raises(ManifestError):
        ManifestEntry("missing", "a", (1, 1), 10, 0.2, 1)


def test_entry_fraction_must_be_exact():
    with pytest.raises(ManifestError):
        ManifestEntry("missing", "a", (1, 2), 10, 0.3, 1)


# --- spec validation ----------------------------------------------------------


def test_spec_fraction_bounds():
    with pytest.raises(ValidationError):
        ContaminationSpec("missing", "new", 0.0, 1, column="a")
    with pytest.raises(ValidationError):
        ContaminationSpec("missing", "new", 1.5, 1, column="a")


def test_spec_scope_rules():
    with pytest.raises(ValidationError):
        ContaminationSpec("missing", "new", 0.5, 1)  # column-scope family needs a column
    with pytest.raises(ValidationError):
        ContaminationSpec("label", "new", 0.5, 1, column="a")  # dataset-scope family
    ContaminationSpec("label", "new", 0.5, 1, params={"label_column": "a"})


def test_spec_unknown_family_and_mode():
    with pytest.raises(ValidationError):
        ContaminationSpec("smear", "new", 0.5, 1, column="a")
    with pytest.raises(ValidationError):
        ContaminationSpec("missing", "rerun", 0.5, 1, column="a")


# --- serialization ------------------------------------------------------------


def test_manifest_json_round_trip(tmp_path):
    m = ContaminationManifest(
        fingerprint=Fingerprint(10, ("a", "b"), "ff" * 32),
        null_token="NA",
    )
    m = m.record(
        ManifestEntry(
            family="noise",
            column="a",
            rows=(1, 4),
            basis_rows=10,
            achieved_fraction=0.2,
            seed=42,
            params={"kind": "continuous", "min": 0.0, "max": 6.0},
            original_values=((1, "2.5"), (4, "3.5")),
        )
    )
    path = tmp_path / "m.json"
    m.save(path)
    assert ContaminationManifest.load(path) == m


def test_manifest_saves_are_byte_identical(tmp_path):
    m = ContaminationManifest(fingerprint=Fingerprint(2, ("a",), "00" * 32))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    m.save(a)
    m.save(b)
    assert a.read_bytes() == b.read_bytes()


def test_manifest_document_shape(tmp_path):
    m = ContaminationManifest(fingerprint=Fingerprint(3, ("x",), "ab" * 32))
    path = tmp_path / "m.json"
    m.save(path)
    doc = json.loads(path.read_text())
    assert set(doc["fingerprint"]) == {"rows", "columns", "sha256"}
    assert doc["entries"] == []


# --- verify -------------------------------------------------------------------


def _contaminated_pair():
    ds = dataset_from(
        ("x", "continuous", [float(i) for i in range(10)]),
        ("s", "categorical-string", [f"v{i % 3}" for i in range(10)]),
    )
    spec = ContaminationSpec("missing", "new", 0.3, 42, column="x")
    return contaminate_dataset(ds, spec)


def test_verify_passes_on_fresh_pair():
    _, manifest, out_bytes = _contaminated_pair()
    report = verify(manifest, token_table_from_bytes(out_bytes))
    assert report.passed
    assert report.violations == []


def test_verify_flags_un_nulled_missing_row():
    out, manifest, out_bytes = _contaminated_pair()
    row = manifest.entries[0].rows[0]
    lines = out_bytes.decode().splitlines()
    cells = lines[1 + row].split(",")
    cells[0] = "99.9"  # resurrect a recorded-missing cell
    lines[1 + row] = ",".join(cells)
    tampered = ("\n".join(lines) + "\n").encode()
    report = verify(manifest, token_table_from_bytes(tampered))
    assert not report.passed
    assert any("is not null" in v for v in report.violations)


def test_verify_fingerprint_mismatch_on_other_file():
    _, manifest, _ = _contaminated_pair()
    other = dataset_from(("z", "discrete-int", [1, 2, 3]))
    report = verify(manifest, token_table_from_bytes(render_csv_bytes(other)))
    assert not report.structure_ok
    assert not report.passed


def test_verify_hash_only_mismatch_is_reported():
    _, manifest, out_bytes = _contaminated_pair()
    # same shape, one byte changed in an untouched cell
    tampered = out_bytes.replace(b"v1", b"v9", 1)
    assert len(tampered) == len(out_bytes)
    report = verify(manifest, token_table_from_bytes(tampered))
    assert report.structure_ok
    assert not report.hash_ok
    assert not report.passed


def test_fingerprint_bytes_matches_sha256():
    data = b"a,b\n1,2\n"
    fp = fingerprint_bytes(data, 1, ("a", "b"))
    import hashlib

    assert fp.sha256 == hashlib.sha256(data).hexdigest()
