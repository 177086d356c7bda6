#!/usr/bin/env python3
"""End-to-end demo: generate data, contaminate a full grid, verify every output.

    python3 scripts/make_demo_dataset.py demo.csv --rows 2000
    python3 scripts/run_demo_grid.py demo.csv demo_out/
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from pathlib import Path


def run(argv: list[str], capture: bool = False) -> str:
    proc = subprocess.run(
        [sys.executable, "-m", "smudge", *argv],
        capture_output=capture,
        text=capture,
    )
    if proc.returncode != 0:
        raise SystemExit(proc.returncode)
    return proc.stdout if capture else ""


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="clean CSV to contaminate")
    parser.add_argument("out_dir", help="output directory for the grid")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--fraction", type=float, default=0.3)
    parser.add_argument("--label-column", default="class")
    args = parser.parse_args()

    # pick per-family column lists from the inferred schema kinds
    kinds = {
        name: doc.get("kind")
        for name, doc in json.loads(
            run(["stats", "--input", args.input, "--json"], capture=True)
        ).items()
        if name != args.label_column
    }
    valued = [c for c, k in kinds.items() if k in
              ("continuous", "discrete-int", "categorical-int", "categorical-string")]
    booleans = [c for c, k in kinds.items() if k == "boolean"]
    datetimes = [c for c, k in kinds.items() if k == "datetime"]

    grid = [
        {"family": "missing", "columns": "all-features", "fraction": args.fraction},
        {"family": "noise", "columns": valued, "fraction": args.fraction},
        {"family": "outlier", "columns": valued, "fraction": args.fraction},
        {"family": "label", "fraction": args.fraction},
    ]
    if booleans:
        grid.append({"family": "boolean", "columns": booleans, "fraction": args.fraction})
    if datetimes:
        grid.append({"family": "datetime-shift", "columns": datetimes, "fraction": args.fraction})

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    config = {
        "input": str(Path(args.input).resolve()),
        "out_dir": str(out_dir.resolve()),
        "seed": args.seed,
        "label_column": args.label_column,
        "grid": grid,
    }
    cfg_path = out_dir / "grid_config.json"
    cfg_path.write_text(json.dumps(config, indent=2))

    run(["batch", str(cfg_path)])

    index = json.loads((out_dir / "batch_index.json").read_text())
    for item in index:
        run(
            [
                "verify",
                "--input", str(out_dir / item["csv_path"]),
                "--manifest", str(out_dir / item["manifest_path"]),
            ]
        )
    print(f"grid complete: {len(index)} contaminated datasets verified in {out_dir}")


if __name__ == "__main__":
    main()
