"""Experiment configuration: a strict flat key-value format with
section headers (INI syntax).

Unknown sections or keys are fatal, and a seed is mandatory -- there is
no entropy-source default, so every experiment is reproducible from its
config file alone.

Example::

    [experiment]
    kind = shift
    n = 500
    trials = 1000
    seed = 42
    output = shift.csv
    format = csv

    [ensemble_a]
    symmetry_class = real_symmetric
    off_diagonal_kind = gaussian
    off_diagonal_scale = 1.0
    diagonal_kind = gaussian
    diagonal_scale = 1.0

    [ensemble_b]
    symmetry_class = real_symmetric
    off_diagonal_kind = laplace
    off_diagonal_scale = 0.7071067811865476
    diagonal_kind = laplace
    diagonal_scale = 0.7071067811865476
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field

from .ensembles import EnsembleSpec, atom_from_name
from .errors import ConfigError

KINDS = (
    "selftest",
    "moments",
    "delta",
    "localization",
    "shift",
    "walks",
    "counting-variance",
)

#: Which ensemble sections each kind requires.
_ENSEMBLE_SECTIONS = {
    "selftest": (),
    "walks": (),
    "moments": ("ensemble_a", "ensemble_b"),
    "shift": ("ensemble_a", "ensemble_b"),
    "delta": ("ensemble",),
    "localization": ("ensemble",),
    "counting-variance": ("ensemble",),
}

#: Experiment-section keys allowed per kind (beyond the common ones).
_COMMON_KEYS = {"kind", "seed", "output", "format"}
_KIND_KEYS = {
    "selftest": set(),
    "walks": {"max_m"},
    "moments": {"n", "k", "trials"},
    "shift": {"n", "trials"},
    "delta": {"n", "trials"},
    "localization": {"n", "trials"},
    "counting-variance": {"n_list", "trials", "interval_lo", "interval_hi"},
}

_ENSEMBLE_KEYS = {
    "symmetry_class",
    "off_diagonal_kind",
    "off_diagonal_scale",
    "diagonal_kind",
    "diagonal_scale",
}

_DEFAULT_OUTPUT = {
    "selftest": "selftest.csv",
    "walks": "walks.csv",
    "moments": "moments.csv",
    "shift": "shift.csv",
    "delta": "delta.csv",
    "localization": "localization.csv",
    "counting-variance": "counting_variance.csv",
}


@dataclass(frozen=True)
class EnsembleDescription:
    """Class and atoms of one ensemble, independent of the dimension."""

    symmetry_class: str
    off_diagonal_kind: str
    off_diagonal_scale: float
    diagonal_kind: str
    diagonal_scale: float

    def spec(self, n: int) -> EnsembleSpec:
        return EnsembleSpec(
            n=n,
            symmetry_class=self.symmetry_class,
            off_diagonal=atom_from_name(self.off_diagonal_kind, self.off_diagonal_scale),
            diagonal=atom_from_name(self.diagonal_kind, self.diagonal_scale),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    seed: int
    output: str
    format: str = "csv"
    n: int | None = None
    trials: int | None = None
    k: int | None = None
    max_m: int | None = None
    n_list: tuple[int, ...] | None = None
    interval: tuple[float, float] | None = None
    ensemble: EnsembleDescription | None = None
    ensemble_a: EnsembleDescription | None = None
    ensemble_b: EnsembleDescription | None = None


def _parse_ensemble(section, name: str, errors: list[str]) -> EnsembleDescription | None:
    for key in section:
        if key not in _ENSEMBLE_KEYS:
            errors.append(f"{name}: unknown key {key!r}")
    missing = _ENSEMBLE_KEYS - set(section)
    if missing:
        errors.append(f"{name}: missing keys {sorted(missing)}")
        return None
    try:
        return EnsembleDescription(
            symmetry_class=section["symmetry_class"],
            off_diagonal_kind=section["off_diagonal_kind"],
            off_diagonal_scale=float(section["off_diagonal_scale"]),
            diagonal_kind=section["diagonal_kind"],
            diagonal_scale=float(section["diagonal_scale"]),
        )
    except ValueError as exc:
        errors.append(f"{name}: {exc}")
        return None


def _get_int(section, key: str, errors: list[str], minimum: int = 1) -> int | None:
    if key not in section:
        errors.append(f"experiment: missing key {key!r}")
        return None
    try:
        value = int(section[key])
    except ValueError:
        errors.append(f"experiment: {key} must be an integer, got {section[key]!r}")
        return None
    if value < minimum:
        errors.append(f"experiment: {key} must be >= {minimum}, got {value}")
        return None
    return value


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate; raises ConfigError listing every field problem."""
    parser = configparser.ConfigParser(interpolation=None)
    errors: list[str] = []
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError([f"syntax: {exc}"]) from exc
    if "experiment" not in parser:
        raise ConfigError(["missing [experiment] section"])
    exp = parser["experiment"]
    kind = exp.get("kind")
    if kind not in KINDS:
        raise ConfigError([f"experiment: kind must be one of {KINDS}, got {kind!r}"])

    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    for key in exp:
        if key not in allowed:
            errors.append(f"experiment: unknown key {key!r} for kind {kind!r}")
    seed = _get_int(exp, "seed", errors, minimum=0)
    fmt = exp.get("format", "csv")
    if fmt not in ("csv", "json"):
        errors.append(f"experiment: format must be csv or json, got {fmt!r}")
    output = exp.get("output", _DEFAULT_OUTPUT[kind])

    n = trials = k = max_m = None
    n_list = interval = None
    if kind in ("moments", "shift", "delta", "localization"):
        n = _get_int(exp, "n", errors)
        trials = _get_int(exp, "trials", errors)
    if kind == "moments":
        k = _get_int(exp, "k", errors)
        if k is not None and not 2 <= k <= 10:
            errors.append(f"experiment: k must be in 2..10, got {k}")
    if kind == "walks":
        try:
            max_m = int(exp.get("max_m", 28))
        except ValueError:
            errors.append(f"experiment: max_m must be an integer, got {exp['max_m']!r}")
            max_m = None
        if max_m is not None and not 1 <= max_m <= 28:
            errors.append(f"experiment: max_m must be in 1..28, got {max_m}")
    if kind == "counting-variance":
        trials = _get_int(exp, "trials", errors)
        raw = exp.get("n_list")
        if raw is None:
            errors.append("experiment: missing key 'n_list'")
        else:
            try:
                n_list = tuple(int(tok) for tok in raw.replace(",", " ").split())
            except ValueError:
                errors.append(f"experiment: n_list must be integers, got {raw!r}")
        try:
            lo = float(exp["interval_lo"])
            hi = float(exp["interval_hi"])
            if not (-2.0 < lo <= hi < 2.0):
                errors.append("experiment: interval must lie strictly inside (-2, 2)")
            else:
                interval = (lo, hi)
        except KeyError as exc:
            errors.append(f"experiment: missing key {exc}")
        except ValueError:
            errors.append("experiment: interval bounds must be numbers")

    wanted_sections = set(_ENSEMBLE_SECTIONS[kind])
    present = set(parser.sections()) - {"experiment"}
    for extra in sorted(present - wanted_sections):
        errors.append(f"unknown section [{extra}] for kind {kind!r}")
    ensembles = {}
    for name in sorted(wanted_sections):
        if name not in parser:
            errors.append(f"missing section [{name}]")
        else:
            ensembles[name] = _parse_ensemble(parser[name], name, errors)

    if errors:
        raise ConfigError(errors)

    cfg = ExperimentConfig(
        kind=kind,
        seed=seed,
        output=output,
        format=fmt,
        n=n,
        trials=trials,
        k=k,
        max_m=max_m,
        n_list=n_list,
        interval=interval,
        ensemble=ensembles.get("ensemble"),
        ensemble_a=ensembles.get("ensemble_a"),
        ensemble_b=ensembles.get("ensemble_b"),
    )
    _semantic_checks(cfg)
    return cfg


def _semantic_checks(cfg: ExperimentConfig) -> None:
    errors = []
    if cfg.kind == "shift":
        a, b = cfg.ensemble_a, cfg.ensemble_b
        try:
            from .ensembles import fourth_gap

            gap = fourth_gap(
                atom_from_name(a.off_diagonal_kind, a.off_diagonal_scale),
                atom_from_name(b.off_diagonal_kind, b.off_diagonal_scale),
            )
            if gap == 0.0:
                errors.append("shift: fourth-moment gap is zero (degenerate experiment)")
        except Exception as exc:  # variance mismatch, unknown kind
            errors.append(f"shift: {exc}")
    for name in ("ensemble", "ensemble_a", "ensemble_b"):
        desc = getattr(cfg, name)
        if desc is not None and cfg.n is not None:
            try:
                desc.spec(cfg.n)
            except Exception as exc:
                errors.append(f"{name}: {exc}")
    if errors:
        raise ConfigError(errors)


def render_config(cfg: ExperimentConfig) -> str:
    """Canonical text form; parse(render(cfg)) == cfg."""
    parser = configparser.ConfigParser(interpolation=None)
    exp = {"kind": cfg.kind, "seed": str(cfg.seed), "output": cfg.output, "format": cfg.format}
    if cfg.n is not None:
        exp["n"] = str(cfg.n)
    if cfg.trials is not None:
        exp["trials"] = str(cfg.trials)
    if cfg.k is not None:
        exp["k"] = str(cfg.k)
    if cfg.max_m is not None:
        exp["max_m"] = str(cfg.max_m)
    if cfg.n_list is not None:
        exp["n_list"] = " ".join(str(v) for v in cfg.n_list)
    if cfg.interval is not None:
        exp["interval_lo"] = repr(cfg.interval[0])
        exp["interval_hi"] = repr(cfg.interval[1])
    parser["experiment"] = exp
    for name in ("ensemble", "ensemble_a", "ensemble_b"):
        desc = getattr(cfg, name)
        if desc is not None:
            parser[name] = {
                "symmetry_class": desc.symmetry_class,
                "off_diagonal_kind": desc.off_diagonal_kind,
                "off_diagonal_scale": repr(desc.off_diagonal_scale),
                "diagonal_kind": desc.diagonal_kind,
                "diagonal_scale": repr(desc.diagonal_scale),
            }
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()
