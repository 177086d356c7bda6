"""smudge: deterministic, manifest-tracked error injection for tabular data."""

__version__ = "0.1.0"

from .dataset import (
    Column,
    ColumnSchema,
    ColumnStats,
    Dataset,
    column_stats,
    infer_schema,
    read_csv,
    write_csv,
)
from .engine import (
    apply_spec,
    apply_specs,
    contaminate_dataset,
    contaminate_file,
    finalize_manifest,
    plan_file,
    verify_dataset,
    verify_file,
)
from .manifest import (
    ContaminationManifest,
    ContaminationSpec,
    Fingerprint,
    ManifestEntry,
    round_half_up,
    target_additional_count,
    verify,
)
from .sampling import (
    RandomStream,
    clamped_normal,
    derive_seed,
    derive_substream,
    normal,
    sample_rows,
)

__all__ = [
    "Column",
    "ColumnSchema",
    "ColumnStats",
    "ContaminationManifest",
    "ContaminationSpec",
    "Dataset",
    "Fingerprint",
    "ManifestEntry",
    "RandomStream",
    "apply_spec",
    "apply_specs",
    "clamped_normal",
    "column_stats",
    "contaminate_dataset",
    "contaminate_file",
    "derive_seed",
    "finalize_manifest",
    "derive_substream",
    "infer_schema",
    "normal",
    "plan_file",
    "read_csv",
    "round_half_up",
    "sample_rows",
    "target_additional_count",
    "verify",
    "verify_dataset",
    "verify_file",
    "write_csv",
]
