"""Summary arithmetic against hand-counted fixtures."""

from __future__ import annotations

import pytest

from evalharness.pipeline import ResultRow, ResultTable
from evalharness.summarize import summarize_best, summarize_winners


def _row(dataset_id, family, model, accuracy):
    return ResultRow(dataset_id, family, None, 0.3, model, {"accuracy": accuracy})


def _table(baseline: dict[str, float], contaminated) -> ResultTable:
    table = ResultTable()
    for model, acc in baseline.items():
        table.rows.append(_row("synthetic", "baseline", model, acc))
    for i, (family, model, acc) in enumerate(contaminated):
        table.rows.append(_row(f"d{i}", family, model, acc))
    return table


def test_mixed_counts_give_expected_percentages():
    # 2 better / 1 equal / 1 worse vs a 0.70 baseline
    table = _table(
        {"DT": 0.70},
        [
            ("missing", "DT", 0.75),
            ("missing", "DT", 0.72),
            ("missing", "DT", 0.70),
            ("missing", "DT", 0.60),
        ],
    )
    by_family = summarize_best(table)["by_family"]
    assert by_family.loc["missing", "best_pct"] == 50.0
    assert by_family.loc["missing", "best_or_equal_pct"] == 75.0
    assert by_family.loc["missing", "runs"] == 4


def test_all_ties_best_zero_best_or_equal_hundred():
    table = _table({"DT": 0.8}, [("noise", "DT", 0.8), ("noise", "DT", 0.8)])
    by_family = summarize_best(table)["by_family"]
    assert by_family.loc["noise", "best_pct"] == 0.0
    assert by_family.loc["noise", "best_or_equal_pct"] == 100.0


def test_single_strictly_better_is_hundred():
    table = _table({"LR": 0.5}, [("outlier", "LR", 0.6)])
    by_family = summarize_best(table)["by_family"]
    assert by_family.loc["outlier", "best_pct"] == 100.0
    assert by_family.loc["outlier", "best_or_equal_pct"] == 100.0


def test_best_never_exceeds_best_or_equal():
    table = _table(
        {"DT": 0.7, "NB": 0.6},
        [
            ("missing", "DT", 0.71),
            ("missing", "NB", 0.59),
            ("noise", "DT", 0.70),
            ("noise", "NB", 0.65),
            ("label", "DT", 0.1),
        ],
    )
    for grouping in summarize_best(table).values():
        assert (grouping["best_pct"] <= grouping["best_or_equal_pct"]).all()


def test_comparisons_are_per_model():
    # NB's run beats NB's baseline even though it is below DT's baseline
    table = _table({"DT": 0.9, "NB": 0.5}, [("missing", "NB", 0.6)])
    by_model = summarize_best(table)["by_model"]
    assert by_model.loc["NB", "best_pct"] == 100.0
    assert "DT" not in by_model.index


def test_by_model_carries_model_type():
    table = _table({"ET": 0.5, "KN": 0.5}, [("missing", "ET", 0.6), ("missing", "KN", 0.4)])
    by_model = summarize_best(table)["by_model"]
    assert by_model.loc["ET", "model_type"] == "tree"
    assert by_model.loc["KN", "model_type"] == "neighbors"


def test_empty_results_give_empty_summary():
    summaries = summarize_best(ResultTable())
    assert summaries["by_family"].empty
    assert summaries["by_model"].empty
    assert summarize_winners(ResultTable()) == []


def test_winners_argmax_per_family():
    table = _table(
        {"ET": 0.7, "DT": 0.7},
        [
            ("missing", "ET", 0.9),
            ("missing", "ET", 0.8),
            ("missing", "DT", 0.9),
            ("missing", "DT", 0.6),
        ],
    )
    winners = summarize_winners(table)
    assert len(winners) == 1
    assert (winners[0].family, winners[0].model, winners[0].model_type) == ("missing", "ET", "tree")
    assert winners[0].best_pct == 100.0


def test_winners_tie_reports_both_in_label_order():
    table = _table(
        {"ET": 0.7, "SVM": 0.7},
        [("noise", "SVM", 0.9), ("noise", "ET", 0.9)],
    )
    winners = summarize_winners(table)
    assert [(w.model, w.model_type) for w in winners] == [("ET", "tree"), ("SVM", "linear")]


def test_family_without_runs_is_omitted():
    table = _table({"DT": 0.7}, [("missing", "DT", 0.8)])
    winners = summarize_winners(table)
    assert [w.family for w in winners] == ["missing"]
