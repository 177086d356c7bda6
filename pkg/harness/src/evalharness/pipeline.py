"""Train the roster on clean-synthetic vs contaminated data, evaluate on a
fixed held-out split of the original data.

The test rows are drawn once, seeded, from the original CSV only, and every
trained model is evaluated on that same split; only the training data varies.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from sklearn.compose import ColumnTransformer
from sklearn.impute import SimpleImputer
from sklearn.metrics import (
    accuracy_score,
    f1_score,
    precision_score,
    recall_score,
    roc_auc_score,
)
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import OneHotEncoder

from .config import ExperimentConfig
from .models import build_model


@dataclass(frozen=True)
class ResultRow:
    dataset_id: str
    family: str  # "baseline" for the clean synthetic dataset
    column: str | None
    fraction: float | None
    model: str
    metrics: dict


@dataclass
class ResultTable:
    rows: list[ResultRow] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        records = []
        for r in self.rows:
            rec = {
                "dataset_id": r.dataset_id,
                "family": r.family,
                "column": r.column,
                "fraction": r.fraction,
                "model": r.model,
            }
            rec.update(r.metrics)
            records.append(rec)
        return pd.DataFrame(records)


def _load_index(contaminated_dir: Path) -> list[dict]:
    index_path = contaminated_dir / "batch_index.json"
    return json.loads(index_path.read_text(encoding="utf-8"))


def held_out_indices(n_rows: int, test_fraction: float, seed: int) -> np.ndarray:
    """Seeded test-row selection; identical for every dataset in one run."""
    rng = np.random.RandomState(seed)
    n_test = max(1, int(round(test_fraction * n_rows)))
    return np.sort(rng.permutation(n_rows)[:n_test])


def _split_xy(df: pd.DataFrame, label_column: str):
    if label_column not in df.columns:
        raise ValueError(f"label column {label_column!r} not present")
    y = df[label_column]
    X = df.drop(columns=[label_column])
    return X, y


def _stringify_categoricals(X: pd.DataFrame) -> pd.DataFrame:
    """Make non-numeric columns uniformly str (NaN kept) so encoders behave."""
    X = X.copy()
    for col in X.columns:
        if not pd.api.types.is_numeric_dtype(X[col]):
            X[col] = X[col].where(X[col].isna(), X[col].astype(str))
    return X


def _preprocessor(X_train: pd.DataFrame) -> ColumnTransformer:
    numeric = [c for c in X_train.columns if pd.api.types.is_numeric_dtype(X_train[c])]
    categorical = [c for c in X_train.columns if c not in numeric]
    transformers = []
    if numeric:
        transformers.append(("num", SimpleImputer(strategy="mean"), numeric))
    if categorical:
        transformers.append(
            (
                "cat",
                Pipeline(
                    [
                        ("impute", SimpleImputer(strategy="most_frequent")),
                        ("onehot", OneHotEncoder(handle_unknown="ignore", sparse_output=False)),
                    ]
                ),
                categorical,
            )
        )
    return ColumnTransformer(transformers, remainder="drop")


def _binary_average(y_test) -> tuple[str, object]:
    classes = sorted(pd.unique(pd.Series(y_test).dropna()), key=repr)
    if len(classes) == 2 and set(classes) == {0, 1}:
        return "binary", 1
    return "macro", None


def compute_metrics(y_test, y_pred, scores, wanted) -> dict:
    """Metric dict for one evaluation; AUC needs scores and may be NaN."""
    average, pos_label = _binary_average(y_test)
    out = {}
    kwargs = {"average": average, "zero_division": 0}
    if pos_label is not None:
        kwargs["pos_label"] = pos_label
    if "accuracy" in wanted:
        out["accuracy"] = accuracy_score(y_test, y_pred)
    if "f1" in wanted:
        out["f1"] = f1_score(y_test, y_pred, **kwargs)
    if "precision" in wanted:
        out["precision"] = precision_score(y_test, y_pred, **kwargs)
    if "recall" in wanted:
        out["recall"] = recall_score(y_test, y_pred, **kwargs)
    if "auc" in wanted:
        out["auc"] = _auc(y_test, scores)
    return out


def _auc(y_test, scores) -> float:
    if scores is None:
        return float("nan")
    try:
        if scores.ndim == 1 or scores.shape[1] == 2:
            s = scores if scores.ndim == 1 else scores[:, 1]
            return roc_auc_score(y_test, s)
        return roc_auc_score(y_test, scores, multi_class="ovr")
    except ValueError:
        return float("nan")


def _scores(model, X_test):
    if hasattr(model, "predict_proba"):
        try:
            return model.predict_proba(X_test)
        except Exception:
            pass
    if hasattr(model, "decision_function"):
        try:
            return model.decision_function(X_test)
        except Exception:
            pass
    return None


def evaluate_model(code, train_df, X_test, y_test, label_column, metrics, seed) -> dict:
    """Fit one roster model on one training table, score on the fixed split."""
    X_train, y_train = _split_xy(train_df, label_column)
    keep = y_train.notna()
    X_train, y_train = X_train[keep], y_train[keep]
    X_train = _stringify_categoricals(X_train)
    X_test = X_test[X_train.columns]  # same feature set and order

    pipe = Pipeline([("prep", _preprocessor(X_train)), ("model", build_model(code, seed))])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pipe.fit(X_train, y_train)
        y_pred = pipe.predict(X_test)
        scores = _scores(pipe, X_test)
    return compute_metrics(y_test, y_pred, scores, metrics)


def run_pipeline(config: ExperimentConfig) -> ResultTable:
    original = pd.read_csv(config.original_csv)
    if config.label_column not in original.columns:
        raise ValueError(f"label column {config.label_column!r} not in original data")
    test_idx = held_out_indices(len(original), config.test_fraction, config.seed)
    test_df = original.iloc[test_idx]
    X_test, y_test = _split_xy(test_df, config.label_column)
    X_test = _stringify_categoricals(X_test)

    datasets = [
        {"dataset_id": "synthetic", "family": "baseline", "column": None,
         "fraction": None, "path": Path(config.synthetic_csv)}
    ]
    for item in _load_index(Path(config.contaminated_dir)):
        datasets.append(
            {
                "dataset_id": Path(item["csv_path"]).stem,
                "family": item["family"],
                "column": item["column"],
                "fraction": item["fraction"],
                "path": Path(config.contaminated_dir) / item["csv_path"],
            }
        )

    table = ResultTable()
    for ds in datasets:
        try:
            train_df = pd.read_csv(ds["path"])
            if config.label_column not in train_df.columns:
                raise ValueError(f"label column {config.label_column!r} not present")
        except Exception as exc:
            table.failures.append({"dataset_id": ds["dataset_id"], "error": str(exc)})
            continue
        for code in config.models:
            try:
                metrics = evaluate_model(
                    code, train_df, X_test, y_test,
                    config.label_column, config.metrics, config.seed,
                )
            except Exception as exc:
                table.failures.append(
                    {"dataset_id": ds["dataset_id"], "model": code, "error": str(exc)}
                )
                continue
            table.rows.append(
                ResultRow(ds["dataset_id"], ds["family"], ds["column"], ds["fraction"], code, metrics)
            )
    # deterministic report order regardless of any future parallel scheduling
    table.rows.sort(key=lambda r: (r.dataset_id, r.model))
    return table
