"""In-memory columnar dataset with CSV I/O, schema inference and column stats.

The model is deliberately token-preserving: every cell read from a file keeps
its source token next to the parsed value, and only cells an operation touches
are re-rendered. Untouched cells therefore survive a read/modify/write cycle
byte-for-byte, which is what makes cell-level diffing against the input a
meaningful check.

A Dataset is an immutable value; operations return new Datasets.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import re
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from .errors import (
    CellParseError,
    InferenceError,
    ParseError,
    StatsError,
    ValidationError,
    WriteError,
)

KINDS = (
    "continuous",
    "discrete-int",
    "categorical-int",
    "categorical-string",
    "boolean",
    "datetime",
)

NUMERIC_KINDS = frozenset({"continuous", "discrete-int", "categorical-int"})

_INT_RE = re.compile(r"[+-]?[0-9]+")
_FLOAT_RE = re.compile(r"[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?")

# Accepted on input without an explicit format override; first format that
# parses every non-null token wins.
ISO_DATETIME_FORMATS = (
    "%Y-%m-%d",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%dT%H:%M:%S.%f",
    "%Y-%m-%d %H:%M:%S.%f",
)

_TRUE_TOKENS = frozenset({"true", "1"})
_FALSE_TOKENS = frozenset({"false", "0"})


@dataclass(frozen=True)
class ColumnSchema:
    kind: str
    datetime_format: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown schema kind {self.kind!r}")
        if self.kind == "datetime" and not self.datetime_format:
            raise ValidationError("datetime schema requires datetime_format")
        if self.kind != "datetime" and self.datetime_format is not None:
            raise ValidationError(f"datetime_format is only valid for datetime columns, not {self.kind}")


@dataclass(frozen=True)
class ColumnStats:
    """Aggregates over the non-null cells of one column.

    min/max/mean/std are populated for numeric kinds only; std is the
    population form (divide by n).
    """

    min: float | None
    max: float | None
    mean: float | None
    std: float | None
    distinct: tuple
    null_count: int


@dataclass(frozen=True)
class Column:
    name: str
    schema: ColumnSchema
    cells: tuple
    # Source tokens aligned with cells; None means "render canonically".
    tokens: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.tokens is None:
            object.__setattr__(self, "tokens", (None,) * len(self.cells))
        if len(self.tokens) != len(self.cells):
            raise ValidationError(f"column {self.name!r}: tokens/cells length mismatch")

    def token_at(self, row: int) -> str:
        """The token a non-null cell renders to (source token if present)."""
        t = self.tokens[row]
        return t if t is not None else render_value(self.cells[row], self.schema)


@dataclass(frozen=True)
class Dataset:
    columns: tuple[Column, ...]

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if any(not n for n in names):
            raise ParseError("column names must be non-empty")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ParseError(f"duplicate column names: {dupes}")
        counts = {len(c.cells) for c in self.columns}
        if len(counts) > 1:
            raise ParseError(f"columns have differing row counts: {sorted(counts)}")

    @property
    def row_count(self) -> int:
        return len(self.columns[0].cells) if self.columns else 0

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise ValidationError(f"unknown column {name!r}")

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    @classmethod
    def from_columns(cls, cols) -> "Dataset":
        """Build from (name, schema, values) triples; tokens render canonically."""
        return cls(tuple(Column(name, schema, tuple(values)) for name, schema, values in cols))

    def replace_cells(self, name: str, updates: dict) -> "Dataset":
        """New Dataset with cells of one column replaced.

        updates maps row -> value or row -> (value, token); a token of None
        means the cell is re-rendered canonically on write.
        """
        col = self.column(name)
        cells = list(col.cells)
        tokens = list(col.tokens)
        for row, new in updates.items():
            value, token = new if isinstance(new, tuple) else (new, None)
            cells[row] = value
            tokens[row] = token
        new_col = Column(col.name, col.schema, tuple(cells), tuple(tokens))
        return Dataset(tuple(new_col if c.name == name else c for c in self.columns))

    def append_copies(self, source_rows) -> "Dataset":
        """New Dataset with exact copies of source_rows appended in order."""
        new_cols = []
        for c in self.columns:
            cells = c.cells + tuple(c.cells[r] for r in source_rows)
            tokens = c.tokens + tuple(c.tokens[r] for r in source_rows)
            new_cols.append(Column(c.name, c.schema, cells, tokens))
        return Dataset(tuple(new_cols))

    def null_rows(self, name: str) -> set[int]:
        return {i for i, v in enumerate(self.column(name).cells) if v is None}


def parse_token(token: str, schema: ColumnSchema):
    """Parse one non-null token under a schema; CellParseError if it does not conform."""
    kind = schema.kind
    if kind == "categorical-string":
        return token
    if kind == "boolean":
        low = token.lower()
        if low in _TRUE_TOKENS:
            return True
        if low in _FALSE_TOKENS:
            return False
        raise CellParseError(f"not a boolean: {token!r}")
    if kind in ("discrete-int", "categorical-int"):
        if not _INT_RE.fullmatch(token):
            raise CellParseError(f"not an integer: {token!r}")
        return int(token)
    if kind == "continuous":
        if not (_FLOAT_RE.fullmatch(token) or _INT_RE.fullmatch(token)):
            raise CellParseError(f"not a number: {token!r}")
        return float(token)
    if kind == "datetime":
        try:
            return datetime.strptime(token, schema.datetime_format)
        except ValueError:
            raise CellParseError(
                f"not a {schema.datetime_format!r} datetime: {token!r}"
            ) from None
    raise ValidationError(f"unknown schema kind {kind!r}")


def render_value(value, schema: ColumnSchema) -> str:
    """Canonical token for a non-null value; floats use round-trip-exact repr."""
    if schema.kind != "categorical-string" and isinstance(value, str):
        return value  # raw token carried through (misformatted / lenient cell)
    kind = schema.kind
    if kind == "boolean":
        return "true" if value else "false"
    if kind == "datetime":
        return value.strftime(schema.datetime_format)
    if kind == "continuous":
        return repr(value) if isinstance(value, float) else str(value)
    return str(value)


def infer_schema(raw_column, null_token: str = "") -> ColumnSchema:
    """Deterministic schema inference over the non-null tokens of one column.

    Rule order: boolean, ISO datetime, integer (categorical vs discrete by
    distinct count), number, else categorical-string.
    """
    nonnull = [t for t in raw_column if t != null_token]
    if not nonnull:
        raise InferenceError("all cells null; schema override required")

    lowered = [t.lower() for t in nonnull]
    if set(lowered) <= (_TRUE_TOKENS | _FALSE_TOKENS) and "true" in lowered and "false" in lowered:
        return ColumnSchema("boolean")

    for fmt in ISO_DATETIME_FORMATS:
        try:
            for t in nonnull:
                datetime.strptime(t, fmt)
        except ValueError:
            continue
        return ColumnSchema("datetime", datetime_format=fmt)

    if all(_INT_RE.fullmatch(t) for t in nonnull):
        distinct = len({int(t) for t in nonnull})
        threshold = max(2, min(20, math.floor(0.05 * len(nonnull))))
        if distinct <= threshold:
            return ColumnSchema("categorical-int")
        return ColumnSchema("discrete-int")

    if all(_FLOAT_RE.fullmatch(t) or _INT_RE.fullmatch(t) for t in nonnull):
        return ColumnSchema("continuous")

    return ColumnSchema("categorical-string")


def parse_csv_text(
    text: str,
    overrides: dict[str, ColumnSchema] | None = None,
    null_token: str = "",
    lenient: bool = False,
) -> Dataset:
    """Parse CSV text into a Dataset.

    With lenient=True, cells that fail to parse under their schema are kept
    as raw string tokens instead of raising; contaminated files (for example
    misformatted datetimes) stay loadable for inspection.
    """
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV: {exc}") from None
    if not rows:
        raise ParseError("missing header row")
    header = rows[0]
    data = rows[1:]
    arity = len(header)
    for i, row in enumerate(data, start=1):
        if len(row) != arity:
            raise ParseError(f"ragged row {i}: expected {arity} fields, got {len(row)}")

    overrides = overrides or {}
    for name in overrides:
        if name not in header:
            raise ValidationError(f"schema override for unknown column {name!r}")

    columns = []
    for j, name in enumerate(header):
        raw = [row[j] for row in data]
        schema = overrides.get(name) or infer_schema(raw, null_token)
        cells = []
        for i, token in enumerate(raw):
            if token == null_token:
                cells.append(None)
                continue
            try:
                cells.append(parse_token(token, schema))
            except CellParseError as exc:
                if lenient:
                    cells.append(token)
                else:
                    raise CellParseError(
                        f"column {name!r}, row {i + 1}: {exc}", row=i + 1, column=name
                    ) from None
        columns.append(Column(name, schema, tuple(cells), tuple(raw)))
    return Dataset(tuple(columns))


def read_csv(
    path,
    overrides: dict[str, ColumnSchema] | None = None,
    null_token: str = "",
    lenient: bool = False,
) -> Dataset:
    text = Path(path).read_bytes().decode("utf-8")
    return parse_csv_text(text, overrides=overrides, null_token=null_token, lenient=lenient)


def render_csv_bytes(ds: Dataset, null_token: str = "") -> bytes:
    """Serialize to RFC-4180 CSV bytes; source tokens pass through unchanged.

    Values must be expressible in the format: NUL characters cannot be
    escaped by the csv layer and are rejected by it.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ds.column_names)
    cols = [(c.cells, c.tokens, c.schema) for c in ds.columns]
    for i in range(ds.row_count):
        row = []
        for cells, tokens, schema in cols:
            v = cells[i]
            if v is None:
                row.append(null_token)
            elif tokens[i] is not None:
                row.append(tokens[i])
            else:
                row.append(render_value(v, schema))
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def write_csv(ds: Dataset, path, null_token: str = "") -> None:
    data = render_csv_bytes(ds, null_token)
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise WriteError(f"cannot write {path}: {exc}") from None


def _sorted_distinct(values) -> tuple:
    distinct = set(values)
    try:
        return tuple(sorted(distinct))
    except TypeError:
        # lenient datasets can mix raw string tokens into typed columns
        strings = sorted(v for v in distinct if isinstance(v, str))
        others = sorted((v for v in distinct if not isinstance(v, str)), key=repr)
        return tuple(others) + tuple(strings)


def stats_from_values(values, kind: str) -> ColumnStats:
    """Stats over raw cell values (None = null) for a column of the given kind."""
    non_null = [v for v in values if v is not None]
    null_count = len(values) - len(non_null)
    if not non_null:
        raise StatsError("zero non-null cells")
    lo = hi = mean = std = None
    if kind in NUMERIC_KINDS:
        nums = [v for v in non_null if isinstance(v, (int, float)) and not isinstance(v, bool)]
        if not nums:
            raise StatsError("zero numeric cells")
        n = len(nums)
        lo = min(nums)
        hi = max(nums)
        mean = sum(nums) / n
        std = math.sqrt(sum((x - mean) ** 2 for x in nums) / n)
    return ColumnStats(
        min=lo,
        max=hi,
        mean=mean,
        std=std,
        distinct=_sorted_distinct(non_null),
        null_count=null_count,
    )


def column_stats(ds: Dataset, column: str) -> ColumnStats:
    col = ds.column(column)
    return stats_from_values(col.cells, col.schema.kind)


@dataclass(frozen=True)
class TokenTable:
    """Raw CSV view: header, row-major tokens, and the content hash."""

    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    sha256: str


def token_table_from_bytes(data: bytes) -> TokenTable:
    digest = hashlib.sha256(data).hexdigest()
    reader = csv.reader(io.StringIO(data.decode("utf-8"), newline=""))
    rows = list(reader)
    if not rows:
        raise ParseError("missing header row")
    return TokenTable(tuple(rows[0]), tuple(tuple(r) for r in rows[1:]), digest)


def token_table_from_file(path) -> TokenTable:
    return token_table_from_bytes(Path(path).read_bytes())


def token_table_from_dataset(ds: Dataset, null_token: str = "") -> TokenTable:
    return token_table_from_bytes(render_csv_bytes(ds, null_token))


def load_schema_overrides(path) -> dict[str, ColumnSchema]:
    """Schema override file: JSON mapping column -> kind or {kind, datetime_format}."""
    import json

    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"schema file {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("schema file must be a JSON object mapping column to kind")
    overrides = {}
    for name, val in doc.items():
        if isinstance(val, str):
            overrides[name] = ColumnSchema(val)
        elif isinstance(val, dict) and "kind" in val:
            overrides[name] = ColumnSchema(val["kind"], val.get("datetime_format"))
        else:
            raise ValidationError(f"schema entry for {name!r} must be a kind string or object")
    return overrides
