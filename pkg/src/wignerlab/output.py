"""Result serialization: CSV/JSON tables plus a metadata sidecar.

All floats are written with 17 significant digits, and rows are emitted
in a deterministic order, so identical runs produce byte-identical
files.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

ARTIFACT_VERSION = "0.1.0"

SCHEMAS = {
    "shift": [
        "index",
        "gamma",
        "f1",
        "f1_stderr",
        "f2",
        "mean_a",
        "mean_b",
        "median_a",
        "median_b",
    ],
    "localization": ["index", "gamma", "second_moment", "stderr"],
    "moments": ["experiment_id", "n", "k", "estimate", "std_error", "target", "z_score"],
    "delta": ["n", "trials", "delta", "delta_stderr"],
    "counting-variance": ["n", "trials", "variance", "var_over_log_n"],
    "walks": ["m", "catalan", "modified_catalan", "recurrence", "walks_two", "walks_four"],
    "selftest": ["check", "status", "detail"],
}


def fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_rows(path: Path, schema_kind: str, rows, format: str = "csv") -> None:
    """Write rows (sequences matching the schema) as CSV or JSON."""
    header = SCHEMAS[schema_kind]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if format == "csv":
        lines = [",".join(header)]
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row width {len(row)} != schema width {len(header)}")
            lines.append(",".join(fmt(v) for v in row))
        path.write_text("\n".join(lines) + "\n")
    elif format == "json":
        payload = [
            {key: (fmt(v) if isinstance(v, float) else v) for key, v in zip(header, row)}
            for row in rows
        ]
        path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        raise ValueError(f"unknown format {format!r}")


def write_metadata(path: Path, config_text: str, seed: int, started: float, extra=None) -> None:
    """JSON sidecar next to a result file: config echo, seed, wall time."""
    meta = {
        "artifact_version": ARTIFACT_VERSION,
        "seed": seed,
        "wall_time_s": round(time.time() - started, 3),
        "config": config_text,
    }
    if extra:
        meta.update(extra)
    side = Path(str(path) + ".meta.json")
    side.parent.mkdir(parents=True, exist_ok=True)
    side.write_text(json.dumps(meta, indent=2) + "\n")
