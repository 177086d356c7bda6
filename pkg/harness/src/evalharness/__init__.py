"""Evaluation harness for contamination experiments."""

__version__ = "0.1.0"

from .config import ExperimentConfig, load_config
from .pipeline import ResultRow, ResultTable, run_pipeline
from .report import write_report
from .summarize import summarize_best, summarize_winners

__all__ = [
    "ExperimentConfig",
    "ResultRow",
    "ResultTable",
    "load_config",
    "run_pipeline",
    "summarize_best",
    "summarize_winners",
    "write_report",
]
