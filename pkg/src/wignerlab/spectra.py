"""Dense Hermitian eigenvalue computation and spectral functionals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailureError


@dataclass(frozen=True)
class HermitianMatrix:
    """A dense self-adjoint matrix with its declared symmetry class."""

    entries: np.ndarray
    symmetry_class: str = "complex_hermitian"

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("entries must be a square matrix")
        if not np.array_equal(a, a.conj().T):
            raise ValueError("matrix is not exactly self-adjoint")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalue list of one sample (unnormalized scale)."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 1:
            raise ValueError("spectrum must be one-dimensional")
        if v.size > 1 and np.any(np.diff(v) < 0):
            raise ValueError("spectrum must be ascending")

    @property
    def n(self) -> int:
        return self.values.size


def eigenvalues(m: HermitianMatrix, seed=None) -> Spectrum:
    """All eigenvalues in ascending order (LAPACK divide-and-conquer).

    A failed iterative reduction raises :class:`NumericalFailureError`
    carrying ``seed`` so the offending sample can be reproduced.
    """
    try:
        vals = np.linalg.eigvalsh(m.entries)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(
            f"eigensolver did not converge: {exc}", seed=seed
        ) from exc
    return Spectrum(vals)


def trace_power(s: Spectrum, k: int) -> float:
    """Sum of k-th powers of the eigenvalues; k=0 returns n."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    if k == 0:
        return float(s.n)
    return float(np.sum(s.values**k))


def spectral_norm(s: Spectrum) -> float:
    """max(|smallest|, |largest|) eigenvalue magnitude."""
    if s.n < 1:
        raise ValueError("empty spectrum")
    return max(abs(float(s.values[0])), abs(float(s.values[-1])))
