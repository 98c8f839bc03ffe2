"""Render figures from wignerlab CSV outputs.

Three plot kinds are supported, one per result schema:

* ``shift-comparison``: overlay of the measured per-index shift curve
  (with error bars at +-2 std errors) and its analytic counterpart.
* ``localization-profile``: per-index second moment about the classical
  locations, with +-2 std error bars.
* ``delta-vs-n``: sup-distance to the limit CDF as a function of the
  dimension, with +-2 std error bars.

Invocation: ``render --kind <kind> --in <csv> --out <png|svg>``.
Exit codes: 0 success, 1 validation failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "wignerlab-figures"

import matplotlib.pyplot as plt  # noqa: E402

KINDS = ("shift-comparison", "localization-profile", "delta-vs-n")

#: Expected CSV header per plot kind, in order.
SCHEMAS = {
    "shift-comparison": [
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
    "localization-profile": ["index", "gamma", "second_moment", "stderr"],
    "delta-vs-n": ["n", "trials", "delta", "delta_stderr"],
}


class SchemaMismatch(Exception):
    """Input CSV header does not match the schema for the plot kind."""

    def __init__(self, column: str, detail: str):
        super().__init__(f"column {column!r}: {detail}")
        self.column = column


@dataclass(frozen=True)
class PlotJob:
    """One rendering request: input table, output image, plot kind."""

    kind: str
    input_path: Path
    output_path: Path

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        suffix = self.output_path.suffix.lower()
        if suffix not in (".png", ".svg"):
            raise ValueError(f"output must be .png or .svg, got {suffix!r}")


def load_table(path: Path, kind: str) -> dict[str, list[float]]:
    """Read and schema-validate a result CSV; returns columns of floats."""
    expected = SCHEMAS[kind]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(expected[0], "file is empty, header missing") from None
        for i, want in enumerate(expected):
            if i >= len(header):
                raise SchemaMismatch(want, "missing from header")
            if header[i] != want:
                raise SchemaMismatch(want, f"found {header[i]!r} instead")
        if len(header) > len(expected):
            raise SchemaMismatch(header[len(expected)], "unexpected extra column")
        columns: dict[str, list[float]] = {name: [] for name in expected}
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                raise SchemaMismatch(
                    expected[min(len(row), len(expected) - 1)],
                    f"row {lineno} has {len(row)} fields, expected {len(expected)}",
                )
            for name, value in zip(expected, row):
                try:
                    columns[name].append(float(value))
                except ValueError:
                    raise SchemaMismatch(
                        name, f"row {lineno}: not a number: {value!r}"
                    ) from None
    return columns


def sidecar_title(path: Path, kind: str) -> str:
    """Figure title from the metadata sidecar, if one sits next to the CSV."""
    side = Path(str(path) + ".meta.json")
    fallback = kind.replace("-", " ")
    if not side.exists():
        return fallback
    try:
        meta = json.loads(side.read_text())
        parser = configparser.ConfigParser(interpolation=None)
        parser.read_string(meta.get("config", ""))
        exp = parser["experiment"] if "experiment" in parser else {}
        bits = []
        if "n" in exp:
            bits.append(f"n = {exp['n']}")
        pair = []
        for section in ("ensemble_a", "ensemble_b", "ensemble"):
            if section in parser:
                pair.append(parser[section].get("off_diagonal_kind", "?"))
        if pair:
            bits.append(" vs ".join(pair))
        if bits:
            return f"{fallback} ({', '.join(bits)})"
    except (json.JSONDecodeError, configparser.Error, KeyError):
        pass
    return fallback


def _new_axes():
    fig, ax = plt.subplots(figsize=(8.0, 5.0), dpi=120)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _draw_shift(ax, cols):
    ax.errorbar(
        cols["index"],
        cols["f1"],
        yerr=[2.0 * e for e in cols["f1_stderr"]],
        fmt=".",
        markersize=3,
        elinewidth=0.6,
        color="tab:blue",
        label="measured shift curve (+-2 SE)",
    )
    ax.plot(cols["index"], cols["f2"], color="tab:red", linewidth=1.2,
            label="analytic curve")
    ax.set_xlabel("eigenvalue index i")
    ax.set_ylabel("normalized mean shift")
    ax.legend()


def _draw_localization(ax, cols):
    ax.errorbar(
        cols["index"],
        cols["second_moment"],
        yerr=[2.0 * e for e in cols["stderr"]],
        fmt=".",
        markersize=3,
        elinewidth=0.6,
        color="tab:green",
        label="E |lambda_i - sqrt(n) gamma_i|^2 (+-2 SE)",
    )
    ax.set_xlabel("eigenvalue index i")
    ax.set_ylabel("second moment about classical location")
    ax.legend()


def _draw_delta(ax, cols):
    ax.errorbar(
        cols["n"],
        cols["delta"],
        yerr=[2.0 * e for e in cols["delta_stderr"]],
        fmt="o-",
        color="tab:purple",
        label="sup-distance to limit CDF (+-2 SE)",
    )
    if len(cols["n"]) > 1:
        ax.set_xscale("log")
    ax.set_xlabel("dimension n")
    ax.set_ylabel("delta")
    ax.legend()


_DRAWERS = {
    "shift-comparison": _draw_shift,
    "localization-profile": _draw_localization,
    "delta-vs-n": _draw_delta,
}


def render(job: PlotJob) -> None:
    """Validate the input table and write the image."""
    cols = load_table(job.input_path, job.kind)
    fig, ax = _new_axes()
    _DRAWERS[job.kind](ax, cols)
    ax.set_title(sidecar_title(job.input_path, job.kind))
    fig.tight_layout()
    # Strip volatile metadata so identical inputs give identical bytes.
    metadata = {"Date": None} if job.output_path.suffix.lower() == ".svg" else {}
    fig.savefig(job.output_path, metadata=metadata)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render figures from wignerlab CSV outputs"
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="input_path", required=True, type=Path)
    parser.add_argument("--out", dest="output_path", required=True, type=Path)
    args = parser.parse_args(argv)
    try:
        job = PlotJob(args.kind, args.input_path, args.output_path)
    except ValueError as exc:
        print(f"invalid job: {exc}", file=sys.stderr)
        return 1
    if not job.input_path.exists():
        print(f"input not found: {job.input_path}", file=sys.stderr)
        return 2
    try:
        render(job)
    except SchemaMismatch as exc:
        print(f"schema mismatch in {job.input_path}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
