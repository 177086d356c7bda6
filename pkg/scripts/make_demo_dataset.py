#!/usr/bin/env python3
"""Generate a demo CSV with a mix of column kinds for trying out the CLI.

Only the stdlib is used, so the file exists independently of the engine.
"""

from __future__ import annotations

import argparse
import csv
import random


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", help="where to write the CSV")
    parser.add_argument("--rows", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    header = ["revenue", "volume", "sector", "ticker", "active", "reported", "class"]
    with open(args.output, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for _ in range(args.rows):
            writer.writerow(
                [
                    f"{rng.uniform(-1e3, 1e4):.4f}",
                    rng.randrange(100, 100_000),
                    rng.randrange(0, 8),
                    rng.choice(["AAA", "BBL", "COG", "DRT", "EEV"]),
                    rng.choice(["true", "false"]),
                    f"2016-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}",
                    rng.randrange(0, 2),
                ]
            )
    print(f"wrote {args.rows} rows to {args.output}")


if __name__ == "__main__":
    main()
