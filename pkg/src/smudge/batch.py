"""Config-driven batch contamination: one output CSV + manifest per grid cell.

A config JSON names an input file, an output directory, a master seed and a
grid of (family, columns, fraction) items; "all-features" expands to every
column except the label. Each cell gets its own seed derived from (master
seed, column, family), so a batch is byte-identical to running its cells as
individual invocations with those seeds.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .dataset import ColumnSchema, Dataset, load_schema_overrides, parse_csv_text
from .engine import contaminate_dataset
from .errors import SmudgeError, ValidationError
from .manifest import DATASET_SCOPE_FAMILIES, FAMILIES, ContaminationSpec
from .sampling import derive_seed

INDEX_FILENAME = "batch_index.json"

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]+")


def _safe(name: str) -> str:
    return _UNSAFE.sub("-", name) or "col"


@dataclass(frozen=True)
class BatchConfig:
    input: Path
    out_dir: Path
    seed: int
    grid: tuple[dict, ...]
    label_column: str | None = None
    null_token: str = ""
    overrides: dict[str, ColumnSchema] | None = None


def load_batch_config(path) -> BatchConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from None
    for key in ("input", "out_dir", "seed", "grid"):
        if key not in doc:
            raise ValidationError(f"batch config missing {key!r}")
    base = path.parent
    overrides = None
    schema = doc.get("schema")
    if isinstance(schema, str):
        overrides = load_schema_overrides(base / schema)
    elif isinstance(schema, dict):
        overrides = {
            name: ColumnSchema(v) if isinstance(v, str) else ColumnSchema(v["kind"], v.get("datetime_format"))
            for name, v in schema.items()
        }
    return BatchConfig(
        input=base / doc["input"],
        out_dir=base / doc["out_dir"],
        seed=int(doc["seed"]),
        grid=tuple(doc["grid"]),
        label_column=doc.get("label_column"),
        null_token=doc.get("null_token", ""),
        overrides=overrides,
    )


@dataclass(frozen=True)
class BatchCell:
    family: str
    column: str  # display/key column: label column for label, target or "all" for duplicate
    fraction: float
    spec: ContaminationSpec
    stem: str


def expand_grid(cfg: BatchConfig, ds: Dataset) -> list[BatchCell]:
    cells = []
    for item in cfg.grid:
        family = item.get("family")
        if family not in FAMILIES:
            raise ValidationError(f"grid item has unknown family {family!r}")
        fraction = float(item["fraction"])
        params = dict(item.get("params", {}))
        if family == "label":
            if not cfg.label_column:
                raise ValidationError("label grid item requires label_column in the config")
            params.setdefault("label_column", cfg.label_column)
            columns = [params["label_column"]]
        elif family == "duplicate":
            columns = [params.get("target_column", "all")]
        else:
            columns = item.get("columns")
            if columns == "all-features":
                columns = [c for c in ds.column_names if c != cfg.label_column]
            if not isinstance(columns, list) or not columns:
                raise ValidationError(
                    f"grid item for {family} needs columns: [...] or \"all-features\""
                )
        for column in columns:
            key = "" if (family == "duplicate" and column == "all") else column
            spec = ContaminationSpec(
                family=family,
                mode=item.get("mode", "new"),
                fraction=fraction,
                seed=derive_seed(cfg.seed, key, family),
                column=None if family in DATASET_SCOPE_FAMILIES else column,
                params=params,
            )
            stem = f"{family}_{_safe(column)}_{fraction:g}"
            cells.append(BatchCell(family, column, fraction, spec, stem))
    return cells


@dataclass
class BatchResult:
    index: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    index_path: Path | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def run_batch(config_path) -> BatchResult:
    cfg = load_batch_config(config_path)
    text = cfg.input.read_bytes().decode("utf-8")
    ds = parse_csv_text(text, overrides=cfg.overrides, null_token=cfg.null_token)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    result = BatchResult()
    for cell in expand_grid(cfg, ds):
        csv_name = f"{cell.stem}.csv"
        manifest_name = f"{cell.stem}.manifest.json"
        try:
            _, manifest, out_bytes = contaminate_dataset(ds, cell.spec, cfg.null_token)
            (cfg.out_dir / csv_name).write_bytes(out_bytes)
            manifest.save(cfg.out_dir / manifest_name)
        except (SmudgeError, OSError) as exc:
            result.failures.append(
                {
                    "family": cell.family,
                    "column": cell.column,
                    "fraction": cell.fraction,
                    "error": str(exc),
                }
            )
            continue
        result.index.append(
            {
                "family": cell.family,
                "column": cell.column,
                "fraction": cell.fraction,
                "csv_path": csv_name,
                "manifest_path": manifest_name,
            }
        )

    index_path = cfg.out_dir / INDEX_FILENAME
    index_path.write_text(
        json.dumps(result.index, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    result.index_path = index_path
    return result
