"""Harness test fixtures.

The contamination grid is produced by invoking the engine CLI in a
subprocess; the harness only ever sees its file outputs.
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest


def make_binary_csv(path: Path, rows: int, seed: int) -> pd.DataFrame:
    """5 numeric features with learnable signal and a binary label."""
    rng = np.random.RandomState(seed)
    X = rng.normal(size=(rows, 5))
    logits = 1.5 * X[:, 0] - 1.0 * X[:, 1] + 0.5 * X[:, 2]
    y = (logits + rng.normal(scale=0.5, size=rows) > 0).astype(int)
    df = pd.DataFrame(X.round(6), columns=[f"f{i}" for i in range(5)])
    df["label"] = y
    df.to_csv(path, index=False)
    return df


def run_contamination_grid(workdir: Path, input_csv: Path, fraction: float = 0.3) -> Path:
    """Build the 16-cell grid (missing/noise/outlier x 5 features + label)
    with the engine CLI; returns the output directory."""
    out_dir = workdir / "contaminated"
    config = {
        "input": str(input_csv),
        "out_dir": str(out_dir),
        "seed": 42,
        "label_column": "label",
        "grid": [
            {"family": "missing", "columns": "all-features", "fraction": fraction},
            {"family": "noise", "columns": "all-features", "fraction": fraction},
            {"family": "outlier", "columns": "all-features", "fraction": fraction},
            {"family": "label", "fraction": fraction},
        ],
    }
    cfg_path = workdir / "grid.json"
    cfg_path.write_text(json.dumps(config))
    proc = subprocess.run(
        [sys.executable, "-m", "smudge", "batch", str(cfg_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    index = json.loads((out_dir / "batch_index.json").read_text())
    assert len(index) == 16
    return out_dir


@pytest.fixture(scope="session")
def experiment_dir(tmp_path_factory) -> Path:
    """500-row original + synthetic CSVs and the 16-cell contaminated grid."""
    root = tmp_path_factory.mktemp("experiment")
    make_binary_csv(root / "original.csv", 500, seed=1)
    make_binary_csv(root / "synthetic.csv", 500, seed=2)
    run_contamination_grid(root, root / "synthetic.csv")
    return root
