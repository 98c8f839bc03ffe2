"""Experiment runner: binds config files to the computation modules.

Exit codes: 0 success, 1 config/validation failure, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import walks
from .config import ExperimentConfig, parse_config, render_config
from .ensembles import fourth_gap
from .errors import ConfigError, NumericalFailureError, WignerlabError
from .montecarlo import run_spectra
from .output import write_metadata, write_rows
from .spectral_stats import (
    counting_variance_for_specs,
    default_grid,
    delta_statistic_detail,
    shift_experiment,
    summarize,
)


def _run_selftest(cfg: ExperimentConfig, out_dir: Path, threads: int):
    rows = []
    ok = True

    def check(name: str, passed: bool, detail: str):
        nonlocal ok
        ok = ok and passed
        rows.append((name, "pass" if passed else "FAIL", detail))
        print(f"[{'pass' if passed else 'FAIL'}] {name}: {detail}")

    closed = [walks.modified_catalan(m) for m in range(1, 29)]
    rec = [walks.modified_catalan_recurrence(m) for m in range(1, 29)]
    check("recurrence_matches_closed_form", closed == rec, "m = 1..28")
    two = [walks.count_admissible_walks(m, "two") for m in range(1, 6)]
    check(
        "walk_enumeration_two",
        two == [walks.catalan(m) for m in range(1, 6)],
        f"counts {two}",
    )
    four = [walks.count_admissible_walks(m, "four") for m in range(1, 5)]
    check(
        "walk_enumeration_four",
        four == [walks.modified_catalan(m) for m in range(1, 5)],
        f"counts {four}",
    )
    check("series_identity", walks.series_identity_check(25), "order 25")
    return rows, (0 if ok else 1)


def _run_walks(cfg: ExperimentConfig, out_dir: Path, threads: int):
    rows = []
    for m in range(1, cfg.max_m + 1):
        two = walks.count_admissible_walks(m, "two") if m <= 5 else ""
        four = walks.count_admissible_walks(m, "four") if m <= 4 else ""
        rows.append(
            (
                m,
                walks.catalan(m),
                walks.modified_catalan(m),
                walks.modified_catalan_recurrence(m),
                two,
                four,
            )
        )
    return rows, 0


def _moment_target(cfg: ExperimentConfig, kappa0: float) -> float:
    # Leading trace-moment difference; the complex class doubles the
    # fourth-moment gap because entries carry two iid parts.
    factor = 2.0 if cfg.ensemble_a.symmetry_class == "complex_hermitian" else 1.0
    n, k = cfg.n, cfg.k
    if k % 2:
        return 0.0
    if k == 2:
        return 0.0
    if k == 4:
        return factor * kappa0 * (n * n - n)
    return factor * walks.modified_catalan((k - 2) // 2) * kappa0 * float(n) ** (k / 2)


def _run_moments(cfg: ExperimentConfig, out_dir: Path, threads: int):
    from .momentlab import mc_trace_moment_diff

    spec_a = cfg.ensemble_a.spec(cfg.n)
    spec_b = cfg.ensemble_b.spec(cfg.n)
    kappa0 = fourth_gap(spec_a.off_diagonal, spec_b.off_diagonal)
    est = mc_trace_moment_diff(spec_a, spec_b, cfg.k, cfg.trials, cfg.seed, threads=threads)
    target = _moment_target(cfg, kappa0)
    row = (
        f"moments_n{cfg.n}_k{cfg.k}_seed{cfg.seed}",
        cfg.n,
        cfg.k,
        est.value,
        est.std_error,
        target,
        est.z_score(target),
    )
    return [row], 0


def _run_delta(cfg: ExperimentConfig, out_dir: Path, threads: int):
    spec = cfg.ensemble.spec(cfg.n)
    grid = default_grid(cfg.n)
    value, se = delta_statistic_detail(spec, cfg.trials, grid, cfg.seed, threads=threads)
    return [(cfg.n, cfg.trials, value, se)], 0


def _run_localization(cfg: ExperimentConfig, out_dir: Path, threads: int):
    spec = cfg.ensemble.spec(cfg.n)
    summary = summarize(run_spectra(spec, cfg.trials, cfg.seed, threads=threads))
    rows = [
        (
            int(i + 1),
            float(summary.gamma[i]),
            float(summary.second_moment_about_gamma[i]),
            float(summary.second_moment_std_error[i]),
        )
        for i in range(cfg.n)
    ]
    return rows, 0


def _run_shift(cfg: ExperimentConfig, out_dir: Path, threads: int):
    curve = shift_experiment(
        cfg.ensemble_a.spec(cfg.n),
        cfg.ensemble_b.spec(cfg.n),
        cfg.trials,
        cfg.seed,
        threads=threads,
    )
    sa, sb = curve.summary_a, curve.summary_b
    rows = [
        (
            int(curve.indices[i]),
            float(curve.gamma[i]),
            float(curve.f1[i]),
            float(curve.f1_std_error[i]),
            float(curve.f2[i]),
            float(sa.mean[i]),
            float(sb.mean[i]),
            float(sa.median[i]),
            float(sb.median[i]),
        )
        for i in range(cfg.n)
    ]
    return rows, 0


def _run_counting_variance(cfg: ExperimentConfig, out_dir: Path, threads: int):
    specs = [cfg.ensemble.spec(n) for n in cfg.n_list]
    variances = counting_variance_for_specs(
        specs, cfg.interval, cfg.trials, cfg.seed, threads=threads
    )
    rows = [
        (n, cfg.trials, v, v / math.log(n))
        for n, v in zip(cfg.n_list, variances)
    ]
    return rows, 0


_RUNNERS = {
    "selftest": _run_selftest,
    "walks": _run_walks,
    "moments": _run_moments,
    "delta": _run_delta,
    "localization": _run_localization,
    "shift": _run_shift,
    "counting-variance": _run_counting_variance,
}

_DEFAULT_CONFIGS = {
    "selftest": "[experiment]\nkind = selftest\nseed = 0\n",
    "walks": "[experiment]\nkind = walks\nseed = 0\n",
}


def run(cfg: ExperimentConfig, out_dir: Path, threads: int = 1) -> int:
    """Execute one experiment; writes results plus a metadata sidecar."""
    started = time.time()
    runner = _RUNNERS[cfg.kind]
    try:
        rows, status = runner(cfg, out_dir, threads)
    except NumericalFailureError as exc:
        print(f"numerical failure (seed {exc.seed}): {exc}", file=sys.stderr)
        return 2
    except WignerlabError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    out_path = Path(out_dir) / cfg.output
    write_rows(out_path, cfg.kind, rows, format=cfg.format)
    classes = {
        name: getattr(cfg, name).symmetry_class
        for name in ("ensemble", "ensemble_a", "ensemble_b")
        if getattr(cfg, name) is not None
    }
    write_metadata(
        out_path,
        render_config(cfg),
        cfg.seed,
        started,
        extra={"symmetry_classes": classes} if classes else None,
    )
    return status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wignerlab", description="Wigner spectral-statistics experiments"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in _RUNNERS:
        p = sub.add_parser(kind)
        p.add_argument("--config", type=Path, default=None)
        p.add_argument("--out", type=Path, default=Path("."))
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=None, help="override config seed")
    args = parser.parse_args(argv)

    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            print(f"cannot read config: {exc}", file=sys.stderr)
            return 1
    elif args.command in _DEFAULT_CONFIGS:
        text = _DEFAULT_CONFIGS[args.command]
    else:
        print(f"{args.command} requires --config", file=sys.stderr)
        return 1

    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        for msg in exc.field_errors:
            print(f"config error: {msg}", file=sys.stderr)
        return 1
    if cfg.kind != args.command:
        print(
            f"config kind {cfg.kind!r} does not match subcommand {args.command!r}",
            file=sys.stderr,
        )
        return 1
    if args.seed is not None:
        cfg = ExperimentConfig(**{**cfg.__dict__, "seed": args.seed})
    return run(cfg, args.out, threads=args.threads)


if __name__ == "__main__":
    sys.exit(main())
