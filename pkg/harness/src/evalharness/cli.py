"""CLI: run the whole evaluation from one config file."""

from __future__ import annotations

import argparse
import sys

from .config import load_config
from .pipeline import run_pipeline
from .report import write_report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="smudge-harness",
        description="Train a classifier roster on clean vs contaminated data and report the deltas.",
    )
    parser.add_argument("config", help="experiment config JSON")
    args = parser.parse_args(argv)

    config = load_config(args.config)
    results = run_pipeline(config)
    paths = write_report(results, config.out_dir)
    print(f"evaluated {len(results.rows)} (dataset, model) pairs; {len(results.failures)} failures")
    print(f"report: {paths['report']}")
    return 0 if results.rows else 1


if __name__ == "__main__":
    sys.exit(main())
