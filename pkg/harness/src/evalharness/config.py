"""Experiment configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .models import MODEL_ROSTER

METRICS = ("accuracy", "f1", "precision", "recall", "auc")


@dataclass(frozen=True)
class ExperimentConfig:
    original_csv: Path
    synthetic_csv: Path
    contaminated_dir: Path  # directory holding batch_index.json and the CSVs
    label_column: str
    out_dir: Path
    test_fraction: float = 0.3
    models: tuple[str, ...] = tuple(MODEL_ROSTER)
    metrics: tuple[str, ...] = METRICS
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.test_fraction < 1:
            raise ValueError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        unknown = [m for m in self.models if m not in MODEL_ROSTER]
        if unknown:
            raise ValueError(f"unknown models: {unknown}; roster is {sorted(MODEL_ROSTER)}")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad:
            raise ValueError(f"unknown metrics: {bad}")


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    base = path.parent

    def _resolve(key):
        return base / doc[key]

    return ExperimentConfig(
        original_csv=_resolve("original_csv"),
        synthetic_csv=_resolve("synthetic_csv"),
        contaminated_dir=_resolve("contaminated_dir"),
        label_column=doc["label_column"],
        out_dir=base / doc.get("out_dir", "harness_out"),
        test_fraction=doc.get("test_fraction", 0.3),
        models=tuple(doc.get("models", list(MODEL_ROSTER))),
        metrics=tuple(doc.get("metrics", list(METRICS))),
        seed=int(doc.get("seed", 0)),
    )
