"""Ensemble-level statistics: counting function, Kolmogorov-type
distance to the semicircle CDF, per-index localization moments, and the
fourth-moment shift experiment."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .ensembles import EnsembleSpec, atom_moment, fourth_gap, gue
from .errors import DegenerateExperimentError
from .montecarlo import run_spectra
from .semicircle import cdf_sc, classical_locations
from .spectra import Spectrum

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnsembleSummary:
    """Per-index Monte Carlo aggregates of the eigenvalues of one ensemble.

    Besides the per-index mean/median/standard-error, it keeps the
    second, third and fourth sample moments about the classical
    location sqrt(n) gamma_i; the higher ones feed the Taylor-residual
    diagnostics.
    """

    n: int
    trials: int
    mean: np.ndarray
    median: np.ndarray
    std_error_mean: np.ndarray
    second_moment_about_gamma: np.ndarray
    second_moment_std_error: np.ndarray
    third_moment_about_gamma: np.ndarray
    fourth_moment_about_gamma: np.ndarray
    gamma: np.ndarray


def summarize(eigs: np.ndarray, gamma: np.ndarray | None = None) -> EnsembleSummary:
    """Aggregate a (trials, n) eigenvalue array into an EnsembleSummary."""
    trials, n = eigs.shape
    if gamma is None:
        gamma = classical_locations(n)
    anchor = math.sqrt(n) * gamma
    dev = eigs - anchor
    return EnsembleSummary(
        n=n,
        trials=trials,
        mean=eigs.mean(axis=0),
        median=np.median(eigs, axis=0),
        std_error_mean=eigs.std(axis=0, ddof=1) / math.sqrt(trials),
        second_moment_about_gamma=(dev**2).mean(axis=0),
        second_moment_std_error=(dev**2).std(axis=0, ddof=1) / math.sqrt(trials),
        third_moment_about_gamma=(dev**3).mean(axis=0),
        fourth_moment_about_gamma=(dev**4).mean(axis=0),
        gamma=gamma,
    )


def summarize_ensemble(
    spec: EnsembleSpec, trials: int, seed: int, stream: int = 0, threads: int = 1
) -> EnsembleSummary:
    return summarize(run_spectra(spec, trials, seed, stream=stream, threads=threads))


def counting_function(s: Spectrum, interval, n: int) -> int:
    """Number of normalized eigenvalues lambda_i / sqrt(n) in [a, b]."""
    a, b = interval
    if a > b:
        raise ValueError(f"empty interval [{a}, {b}]")
    x = s.values / math.sqrt(n)
    return int(np.searchsorted(x, b, side="right") - np.searchsorted(x, a, side="left"))


def _check_grid(grid: np.ndarray, n: int) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid[0] > -2.5 or grid[-1] < 2.5:
        raise ValueError("grid must span [-2.5, 2.5]")
    if np.max(np.diff(grid)) > 1.0 / n + 1e-12:
        raise ValueError("grid spacing must be <= 1/n")
    return grid


def default_grid(n: int) -> np.ndarray:
    return np.linspace(-2.5, 2.5, 5 * n + 1)


def _empirical_cdf_curve(eigs: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """(1/n) * mean over trials of N_[-2, x] for every grid point x."""
    trials, n = eigs.shape
    root = math.sqrt(n)
    acc = np.zeros(grid.size)
    for t in range(trials):
        x = eigs[t] / root
        lo = np.searchsorted(x, -2.0, side="left")
        acc += np.searchsorted(x, grid, side="right") - lo
    return acc / (trials * n)


def delta_statistic(spec: EnsembleSpec, trials: int, grid, seed: int, threads: int = 1) -> float:
    """Sup-distance between the trial-averaged empirical CDF and cdf_sc."""
    value, _ = delta_statistic_detail(spec, trials, grid, seed, threads=threads)
    return value


def delta_statistic_detail(
    spec: EnsembleSpec, trials: int, grid, seed: int, threads: int = 1
) -> tuple[float, float]:
    """Delta plus a Monte Carlo standard error taken at the argmax point."""
    grid = _check_grid(grid, spec.n)
    eigs = run_spectra(spec, trials, seed, threads=threads)
    fhat = _empirical_cdf_curve(eigs, grid)
    target = np.array([cdf_sc(x) for x in grid])
    gaps = np.abs(fhat - target)
    j = int(np.argmax(gaps))
    # Per-trial counts at the argmax abscissa give the noise scale.
    n = spec.n
    root = math.sqrt(n)
    per_trial = np.array(
        [
            np.searchsorted(eigs[t] / root, grid[j], side="right")
            - np.searchsorted(eigs[t] / root, -2.0, side="left")
            for t in range(trials)
        ],
        dtype=float,
    )
    se = per_trial.std(ddof=1) / (n * math.sqrt(trials))
    return float(gaps[j]), float(se)


def delta_for_synthetic(eigs: np.ndarray, grid) -> float:
    """Delta evaluated on externally supplied spectra (synthetic inputs)."""
    grid = _check_grid(np.asarray(grid), eigs.shape[1])
    fhat = _empirical_cdf_curve(eigs, grid)
    target = np.array([cdf_sc(x) for x in grid])
    return float(np.max(np.abs(fhat - target)))


def localization_profile(summary: EnsembleSummary, ceiling: float = 1.0) -> np.ndarray:
    """Per-index E|lambda_i - sqrt(n) gamma_i|^2 estimates.

    Bulk entries above ``ceiling`` are logged as suspicious; the profile
    is returned unchanged either way.
    """
    if summary.trials < 500:
        raise ValueError("localization profile requires >= 500 trials")
    prof = summary.second_moment_about_gamma
    n = summary.n
    bulk = np.arange(n)[(np.arange(1, n + 1) >= 0.25 * n) & (np.arange(1, n + 1) <= 0.75 * n)]
    hot = bulk[prof[bulk] > ceiling]
    if hot.size:
        log.warning("bulk localization exceeds ceiling %g at indices %s", ceiling, hot[:10])
    return prof


@dataclass(frozen=True)
class ShiftCurve:
    """Figure-1-style comparison data for one ensemble pair."""

    n: int
    trials: int
    kappa0: float
    indices: np.ndarray
    gamma: np.ndarray
    f1: np.ndarray
    f1_std_error: np.ndarray
    f2: np.ndarray
    aggregate_shift: float  # S = sum_i |mean_a[i] - mean_b[i]|
    summary_a: EnsembleSummary = field(repr=False, default=None)
    summary_b: EnsembleSummary = field(repr=False, default=None)


def shift_experiment(
    spec_a: EnsembleSpec,
    spec_b: EnsembleSpec,
    trials: int,
    seed: int,
    threads: int = 1,
) -> ShiftCurve:
    """Monte Carlo comparison of per-index eigenvalue means between two
    ensembles differing in their fourth moment."""
    if spec_a.n != spec_b.n:
        raise DegenerateExperimentError("ensemble pair must share a dimension")
    if spec_a.symmetry_class != spec_b.symmetry_class:
        raise DegenerateExperimentError("ensemble pair must share a symmetry class")
    kappa0 = fourth_gap(spec_a.off_diagonal, spec_b.off_diagonal)
    if kappa0 == 0.0:
        raise DegenerateExperimentError("fourth-moment gap is zero")
    for atom in (spec_a.off_diagonal, spec_b.off_diagonal):
        if abs(atom_moment(atom, 3)) > 1e-12:
            raise DegenerateExperimentError(
                f"atom {atom} has nonvanishing third moment"
            )
    n = spec_a.n
    sa = summarize_ensemble(spec_a, trials, seed, stream=0, threads=threads)
    sb = summarize(run_spectra(spec_b, trials, seed, stream=1, threads=threads), gamma=sa.gamma)
    root = math.sqrt(n)
    diff = sa.mean - sb.mean
    f1 = 4.0 * root * diff / kappa0
    f1_se = 4.0 * root * np.hypot(sa.std_error_mean, sb.std_error_mean) / abs(kappa0)
    gamma = sa.gamma
    return ShiftCurve(
        n=n,
        trials=trials,
        kappa0=kappa0,
        indices=np.arange(1, n + 1),
        gamma=gamma,
        f1=f1,
        f1_std_error=f1_se,
        f2=gamma**3 - 2.0 * gamma,
        aggregate_shift=float(np.sum(np.abs(diff))),
        summary_a=sa,
        summary_b=sb,
    )


def normalized_shift_check(curve: ShiftCurve, k_values) -> list[float]:
    """Weighted sums (1/n) sum_i k gamma_i^{k-1} s_i of the normalized
    shifts s_i = sqrt(n)(mean_a - mean_b) - (gamma^3 - 2 gamma) kappa0 / 4."""
    s = 0.25 * curve.kappa0 * (curve.f1 - curve.f2)
    return [
        float(np.sum(k * curve.gamma ** (k - 1) * s) / curve.n) for k in k_values
    ]


def normalized_shift_error_budget(curve: ShiftCurve, k_values) -> list[float]:
    """Propagated std errors matching :func:`normalized_shift_check`."""
    se = 0.25 * abs(curve.kappa0) * curve.f1_std_error
    return [
        float(np.sqrt(np.sum((k * curve.gamma ** (k - 1) * se) ** 2)) / curve.n)
        for k in k_values
    ]


def counting_variance_for_specs(
    specs, interval, trials: int, seed: int, threads: int = 1
) -> list[float]:
    """Sample variance of the counting function N_I for each ensemble."""
    a, b = interval
    if not (-2.0 < a <= b < 2.0):
        raise ValueError("interval must lie strictly inside (-2, 2)")
    out = []
    for stream, spec in enumerate(specs):
        eigs = run_spectra(spec, trials, seed, stream=stream, threads=threads)
        root = math.sqrt(spec.n)
        counts = np.array(
            [
                np.searchsorted(row / root, b, side="right")
                - np.searchsorted(row / root, a, side="left")
                for row in eigs
            ],
            dtype=float,
        )
        out.append(float(counts.var(ddof=1)))
    return out


def gue_counting_variance(
    n_values, interval, trials: int, seed: int, threads: int = 1
) -> list[float]:
    """Sample variance of the counting function N_I for GUE at each n."""
    return counting_variance_for_specs(
        [gue(n) for n in n_values], interval, trials, seed, threads=threads
    )
