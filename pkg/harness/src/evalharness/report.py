"""Rendered outputs: results CSV, summary CSVs, and a markdown report."""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from .pipeline import ResultTable
from .summarize import Winner, summarize_best, summarize_winners


def _md_table(frame: pd.DataFrame, index_name: str) -> str:
    if frame.empty:
        return "_no comparable runs_\n"
    lines = []
    headers = [index_name] + list(frame.columns)
    lines.append("| " + " | ".join(headers) + " |")
    lines.append("|" + "---|" * len(headers))
    for idx, row in frame.iterrows():
        cells = [str(idx)]
        for v in row:
            cells.append(f"{v:.2f}" if isinstance(v, float) else str(v))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def _winners_table(winners: list[Winner]) -> str:
    if not winners:
        return "_no comparable runs_\n"
    lines = ["| error family | model type | model | best % |", "|---|---|---|---|"]
    for w in winners:
        lines.append(f"| {w.family} | {w.model_type} | {w.model} | {w.best_pct:.2f} |")
    return "\n".join(lines) + "\n"


def write_report(results: ResultTable, out_dir) -> dict[str, Path]:
    """Write results.csv, summary CSVs and report.md; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    frame = results.to_frame()
    summaries = summarize_best(results)
    winners = summarize_winners(results)

    paths = {
        "results": out_dir / "results.csv",
        "by_model": out_dir / "summary_by_model.csv",
        "by_family": out_dir / "summary_by_family.csv",
        "report": out_dir / "report.md",
    }
    frame.to_csv(paths["results"], index=False)
    summaries["by_model"].to_csv(paths["by_model"], index_label="model")
    summaries["by_family"].to_csv(paths["by_family"], index_label="family")

    sections = [
        "# Contamination evaluation report",
        "",
        f"Evaluated rows: {len(frame)}; failures: {len(results.failures)}",
        "",
        "## Accuracy improvement by model",
        "",
        _md_table(summaries["by_model"], "model"),
        "## Accuracy improvement by error family",
        "",
        _md_table(summaries["by_family"], "family"),
        "## Strongest model per error family",
        "",
        _winners_table(winners),
    ]
    if results.failures:
        sections += ["## Failures", ""]
        sections += [f"- {f}" for f in results.failures]
        sections.append("")
    paths["report"].write_text("\n".join(sections), encoding="utf-8")
    return paths
