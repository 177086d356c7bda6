"""Best / best-or-equal summaries against the clean-synthetic baseline."""

from __future__ import annotations

from dataclasses import dataclass

import pandas as pd

from .models import MODEL_TYPES
from .pipeline import ResultTable


def _baselines(frame: pd.DataFrame) -> dict[str, float]:
    base = frame[frame["family"] == "baseline"]
    return dict(zip(base["model"], base["accuracy"]))


def _comparable(frame: pd.DataFrame) -> pd.DataFrame:
    """Contaminated rows that have a same-model baseline to compare against."""
    baselines = _baselines(frame)
    rows = frame[frame["family"] != "baseline"].copy()
    rows = rows[rows["model"].isin(baselines)]
    rows["baseline_accuracy"] = rows["model"].map(baselines)
    rows["best"] = rows["accuracy"] > rows["baseline_accuracy"]
    rows["best_or_equal"] = rows["accuracy"] >= rows["baseline_accuracy"]
    return rows


def _percent(x: float) -> float:
    return 100.0 * x


def summarize_best(results: ResultTable) -> dict[str, pd.DataFrame]:
    """Percentages of contaminated-trained models beating (or matching) their
    own clean-synthetic baseline, grouped by error family and by model."""
    frame = results.to_frame()
    if frame.empty:
        empty = pd.DataFrame(columns=["best_or_equal_pct", "best_pct", "runs"])
        return {"by_family": empty, "by_model": empty}
    rows = _comparable(frame)
    if rows.empty:
        empty = pd.DataFrame(columns=["best_or_equal_pct", "best_pct", "runs"])
        return {"by_family": empty, "by_model": empty}

    def group(by: str) -> pd.DataFrame:
        g = rows.groupby(by)
        out = pd.DataFrame(
            {
                "best_or_equal_pct": g["best_or_equal"].mean().map(_percent),
                "best_pct": g["best"].mean().map(_percent),
                "runs": g.size(),
            }
        )
        return out.sort_index()

    by_model = group("model")
    by_model.insert(0, "model_type", [MODEL_TYPES[m] for m in by_model.index])
    return {"by_family": group("family"), "by_model": by_model}


@dataclass(frozen=True)
class Winner:
    family: str
    model: str
    model_type: str
    best_pct: float


def summarize_winners(results: ResultTable) -> list[Winner]:
    """Per error family, the model(s) with the highest Best percentage;
    ties all reported, ordered by model label."""
    frame = results.to_frame()
    if frame.empty:
        return []
    rows = _comparable(frame)
    winners: list[Winner] = []
    for family in sorted(rows["family"].unique()):
        fam = rows[rows["family"] == family]
        pct = fam.groupby("model")["best"].mean().map(_percent)
        if pct.empty:
            continue
        top = pct.max()
        for model in sorted(pct[pct == top].index):
            winners.append(Winner(family, model, MODEL_TYPES[model], float(top)))
    return winners
