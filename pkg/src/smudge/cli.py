"""Command-line front end.

Exit codes: 0 success, 1 verification/batch failures, 2 validation errors,
3 capacity or mode errors, 4 I/O errors, 5 fingerprint mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .batch import run_batch
from .dataset import (
    infer_schema,
    load_schema_overrides,
    parse_token,
    stats_from_values,
    token_table_from_file,
)
from .engine import contaminate_file, plan_file, verify_file
from .errors import (
    CapacityError,
    CellParseError,
    FingerprintMismatch,
    InferenceError,
    ManifestError,
    ModeError,
    SmudgeError,
    StatsError,
    ValidationError,
    WriteError,
)
from .manifest import DATASET_SCOPE_FAMILIES, FAMILIES, MODES, ContaminationSpec

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_IO = 4
EXIT_FINGERPRINT = 5


def _add_io_flags(p, output=True):
    p.add_argument("--input", required=True, help="input CSV path")
    if output:
        p.add_argument("--output", required=True, help="contaminated CSV path")
    p.add_argument("--manifest", required=True, help="sidecar manifest JSON path")
    p.add_argument("--schema", help="JSON schema override file")
    p.add_argument("--null-token", default="", help="token that encodes null (default: empty)")


def _add_spec_flags(p):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--column", help="target column (omit for dataset-scope families)")
    p.add_argument("--fraction", required=True, type=float)
    p.add_argument("--mode", default="new", choices=MODES)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--label-column", help="label column (label family)")
    p.add_argument("--target-column", help="attribute column (targeted duplication)")
    p.add_argument("--target-value", help="attribute value (targeted duplication)")
    p.add_argument("--max-shift-days", type=int, default=30, help="datetime-shift span")
    p.add_argument("--shift-unit", choices=("days", "seconds"), default="days")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smudge",
        description="Inject controlled, percentage-exact errors into tabular CSV datasets.",
    )
    parser.add_argument("--version", action="version", version=f"smudge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contaminate", help="apply one contamination spec")
    _add_io_flags(p)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_contaminate)

    p = sub.add_parser("plan", help="dry run: counts and mode arithmetic, no writes")
    _add_io_flags(p, output=False)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("batch", help="run a contamination grid from a config file")
    p.add_argument("config", help="batch config JSON path")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify", help="check a CSV against its manifest")
    p.add_argument("--input", required=True)
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="per-column schema kinds and statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--column", help="restrict to one column")
    p.add_argument("--schema", help="JSON schema override file")
    p.add_argument("--null-token", default="")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.set_defaults(func=cmd_stats)

    return parser


def _build_spec(args) -> ContaminationSpec:
    params = {}
    if args.family == "label":
        if not args.label_column:
            raise ValidationError("label family requires --label-column")
        params["label_column"] = args.label_column
    if args.family == "duplicate":
        if (args.target_column is None) != (args.target_value is None):
            raise ValidationError("--target-column and --target-value must be given together")
        if args.target_column is not None:
            params["target_column"] = args.target_column
            params["target_value"] = args.target_value
    if args.family == "datetime-shift":
        params["max_shift_days"] = args.max_shift_days
        params["shift_unit"] = args.shift_unit
    if args.family in DATASET_SCOPE_FAMILIES:
        if args.column:
            raise ValidationError(f"{args.family} is dataset-scoped; omit --column")
        column = None
    else:
        if not args.column:
            raise ValidationError(f"{args.family} requires --column")
        column = args.column
    return ContaminationSpec(
        family=args.family,
        mode=args.mode,
        fraction=args.fraction,
        seed=args.seed,
        column=column,
        params=params,
    )


def _context(args) -> str:
    family = getattr(args, "family", None)
    if not family:
        return ""
    column = getattr(args, "column", None) or getattr(args, "label_column", None)
    return f"[{family}/{column or 'dataset'}] "


def cmd_contaminate(args) -> int:
    overrides = load_schema_overrides(args.schema) if args.schema else None
    spec = _build_spec(args)
    _, manifest = contaminate_file(
        args.input, args.output, args.manifest, spec,
        overrides=overrides, null_token=args.null_token,
    )
    entry = manifest.entries[-1]
    where = entry.column or entry.params.get("label_column") or "dataset"
    print(f"{spec.family}/{where}: touched {len(entry.rows)} rows -> {args.output}")
    return EXIT_OK


def cmd_plan(args) -> int:
    overrides = load_schema_overrides(args.schema) if args.schema else None
    spec = _build_spec(args)
    plan = plan_file(args.input, args.manifest, spec, overrides=overrides, null_token=args.null_token)
    where = spec.column or spec.params.get("label_column") or "dataset"
    print(f"family: {plan.family}  column: {where}  mode: {spec.mode}")
    print(f"rows: {plan.n_rows}  existing: {plan.existing}  target k: {plan.k}  eligible: {plan.eligible}")
    if plan.shortfall > 0:
        print(f"capacity shortfall: {plan.shortfall} rows short of k={plan.k}")
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_batch(args) -> int:
    result = run_batch(args.config)
    print(f"batch: {len(result.index)} outputs, {len(result.failures)} failures")
    print(f"index: {result.index_path}")
    for f in result.failures:
        print(
            f"smudge: [{f['family']}/{f['column']}] {f['error']}",
            file=sys.stderr,
        )
    return EXIT_OK if result.ok else EXIT_FAILURE


def cmd_verify(args) -> int:
    report = verify_file(args.input, args.manifest)
    for line in report.lines():
        print(line)
    if not report.structure_ok:
        return EXIT_FINGERPRINT
    return EXIT_OK if report.passed else EXIT_FAILURE


def _column_stats_doc(raw: list[str], override, null_token: str) -> dict:
    try:
        schema = override or infer_schema(raw, null_token)
    except InferenceError as exc:
        return {"error": str(exc)}
    cells = []
    for t in raw:
        if t == null_token:
            cells.append(None)
            continue
        try:
            cells.append(parse_token(t, schema))
        except CellParseError:
            cells.append(t)  # keep corrupt tokens visible to distinct/null counting
    doc = {"kind": schema.kind}
    if schema.datetime_format:
        doc["datetime_format"] = schema.datetime_format
    try:
        st = stats_from_values(cells, schema.kind)
    except StatsError as exc:
        doc["error"] = str(exc)
        doc["null_count"] = sum(1 for c in cells if c is None)
        doc["null_fraction"] = doc["null_count"] / len(cells) if cells else 0.0
        return doc
    doc.update(
        {
            "min": st.min,
            "max": st.max,
            "mean": st.mean,
            "std": st.std,
            "distinct_count": len(st.distinct),
            "null_count": st.null_count,
            "null_fraction": st.null_count / len(cells) if cells else 0.0,
        }
    )
    return doc


def cmd_stats(args) -> int:
    table = token_table_from_file(args.input)
    overrides = load_schema_overrides(args.schema) if args.schema else {}
    if args.column:
        if args.column not in table.header:
            raise ValidationError(f"unknown column {args.column!r}")
        names = [args.column]
    else:
        names = list(table.header)
    results = {}
    for name in names:
        j = table.header.index(name)
        raw = [row[j] for row in table.rows]
        results[name] = _column_stats_doc(raw, overrides.get(name), args.null_token)
    if args.as_json:
        print(json.dumps(results, indent=2, sort_keys=True, default=str))
        return EXIT_OK
    fmt = "{:<24} {:<18} {:>12} {:>12} {:>12} {:>12} {:>9} {:>10}"
    print(fmt.format("column", "kind", "min", "max", "mean", "std", "distinct", "null_frac"))
    for name, doc in results.items():
        if "error" in doc and "kind" not in doc:
            print(f"{name:<24} error: {doc['error']}")
            continue
        def num(key):
            v = doc.get(key)
            return f"{v:.6g}" if isinstance(v, (int, float)) else "-"
        if "error" in doc:
            print(f"{name:<24} {doc['kind']:<18} error: {doc['error']}")
            continue
        print(
            fmt.format(
                name, doc["kind"], num("min"), num("max"), num("mean"), num("std"),
                doc["distinct_count"], f"{doc['null_fraction']:.4f}",
            )
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = _context(args)
    try:
        return args.func(args)
    except FingerprintMismatch as exc:
        print(f"smudge: {ctx}{exc}", file=sys.stderr)
        return EXIT_FINGERPRINT
    except (CapacityError, ModeError, ManifestError) as exc:
        print(f"smudge: {ctx}{exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except WriteError as exc:
        print(f"smudge: {ctx}{exc}", file=sys.stderr)
        return EXIT_IO
    except SmudgeError as exc:
        print(f"smudge: {ctx}{exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"smudge: {ctx}{exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
