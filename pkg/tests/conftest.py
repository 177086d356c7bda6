"""Shared fixture builders for the test suite.

Fixture CSVs are generated with the stdlib csv module and random.Random so
the inputs under test never depend on the code being tested.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

import pytest

from smudge.dataset import ColumnSchema, Column, Dataset


def dataset_from(*cols) -> Dataset:
    """Build an in-memory Dataset from (name, kind_or_schema, values) triples."""
    built = []
    for name, kind, values in cols:
        schema = kind if isinstance(kind, ColumnSchema) else ColumnSchema(kind)
        built.append(Column(name, schema, tuple(values)))
    return Dataset(tuple(built))


def mixed_fixture_rows(n_rows: int, seed: int = 7, include_temporal: bool = True):
    """Header + token rows for a 20-feature + binary-label table.

    With include_temporal, three boolean and three datetime features replace
    six of the numeric ones; without it every feature supports the noise and
    outlier families.
    """
    rng = random.Random(seed)
    header: list[str] = []
    makers = []

    def add(name, fn):
        header.append(name)
        makers.append(fn)

    n_cont = 4 if include_temporal else 8
    n_disc = 4 if include_temporal else 6
    for i in range(n_cont):
        add(f"num{i}", lambda rng, i=i: f"{rng.uniform(-50, 50):.6f}")
    for i in range(n_disc):
        add(f"count{i}", lambda rng, i=i: str(rng.randrange(0, 500)))
    for i in range(3):
        add(f"cat{i}", lambda rng, i=i: str(rng.randrange(0, 5)))
    for i in range(3):
        add(f"name{i}", lambda rng, i=i: rng.choice(["red", "green", "blue", "amber"]))
    if include_temporal:
        for i in range(3):
            add(f"flag{i}", lambda rng, i=i: rng.choice(["true", "false"]))
        for i in range(3):
            add(
                f"when{i}",
                lambda rng, i=i: f"2014-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}",
            )
    add("label", lambda rng: str(rng.randrange(0, 2)))

    rows = [tuple(make(rng) for make in makers) for _ in range(n_rows)]
    assert len(header) == 21
    return header, rows


def write_fixture_csv(path, n_rows: int, seed: int = 7, include_temporal: bool = True):
    header, rows = mixed_fixture_rows(n_rows, seed, include_temporal)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return header, rows


def read_tokens(path):
    """Raw (header, rows) token view of a CSV file."""
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


def count_cell_diffs(rows_a, rows_b):
    """Cell-level diff count over the common row prefix."""
    diffs = 0
    for ra, rb in zip(rows_a, rows_b):
        diffs += sum(1 for a, b in zip(ra, rb) if a != b)
    return diffs


@pytest.fixture
def fixture_csv(tmp_path) -> Path:
    path = tmp_path / "fixture.csv"
    write_fixture_csv(path, 100, seed=11)
    return path
