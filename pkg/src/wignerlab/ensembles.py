"""Atom distributions with exact moments, and Wigner matrix sampling.

An atom distribution is a mean-zero scalar law with analytically known
moments up to order 8.  A Wigner ensemble is described by a dimension, a
symmetry class and a pair of atoms (off-diagonal parts, diagonal).  The
variance convention per class:

* ``complex_hermitian``: real and imaginary parts of each off-diagonal
  entry are iid copies of the off-diagonal atom with variance 1/2; the
  diagonal atom has variance 1.
* ``real_symmetric``: off-diagonal entries have variance 1; diagonal
  variance 1.

Sampling is reproducible: everything is determined by an explicit seed,
and Monte Carlo drivers derive counter-based per-trial substreams via
:func:`substream` so that serial and parallel execution coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import IncompatibleEnsemblesError, UnsupportedOrderError

MAX_MOMENT_ORDER = 8

#: Absolute slack when checking a variance convention.
VARIANCE_TOL = 1e-12

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class AtomDistribution:
    """A mean-zero scalar law with closed-form moments.

    ``points``/``weights`` are populated for the discrete kinds and are
    used both for exact finite-sum moments and for exhaustive
    enumeration oracles.  Weights are exact rationals.
    """

    kind: str
    scale: float
    points: tuple[float, ...] | None = None
    weights: tuple[Fraction, ...] | None = None

    @property
    def is_discrete(self) -> bool:
        return self.points is not None

    @property
    def variance(self) -> float:
        return atom_moment(self, 2)

    def __str__(self) -> str:
        return f"{self.kind}({self.scale!r})"


def gaussian(scale: float = 1.0) -> AtomDistribution:
    """Normal law with mean 0 and standard deviation ``scale``."""
    return AtomDistribution("gaussian", float(scale))


def laplace(scale: float = 1.0) -> AtomDistribution:
    """Laplace law with density exp(-|x|/b)/(2b), b = ``scale``; variance 2b^2."""
    return AtomDistribution("laplace", float(scale))


def bernoulli(scale: float = 1.0) -> AtomDistribution:
    """Symmetric two-point law on {-scale, +scale}; variance scale^2."""
    s = float(scale)
    return AtomDistribution(
        "bernoulli", s, points=(-s, s), weights=(Fraction(1, 2), Fraction(1, 2))
    )


def three_point(scale: float = 1.0) -> AtomDistribution:
    """Three-point law on {-sqrt(3) s, 0, sqrt(3) s} with weights 1/6, 2/3, 1/6.

    Variance is ``scale**2``; the kurtosis differs from both the
    Gaussian and Bernoulli laws, which makes it a useful partner in
    fourth-moment-gap experiments.
    """
    s = float(scale)
    return AtomDistribution(
        "three_point",
        s,
        points=(-_SQRT3 * s, 0.0, _SQRT3 * s),
        weights=(Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)),
    )


def discrete(points, weights) -> AtomDistribution:
    """Finitely supported law from explicit points and rational weights.

    Must have mean exactly zero and weights summing to one.
    """
    pts = tuple(float(p) for p in points)
    wts = tuple(Fraction(w) for w in weights)
    if len(pts) != len(wts):
        raise ValueError("points and weights must have equal length")
    if sum(wts) != 1:
        raise ValueError("weights must sum to 1")
    mean = math.fsum(float(w) * p for w, p in zip(wts, pts))
    if abs(mean) > VARIANCE_TOL:
        raise ValueError(f"discrete law must have mean zero, got {mean}")
    scale = math.sqrt(math.fsum(float(w) * p * p for w, p in zip(wts, pts)))
    return AtomDistribution("discrete", scale, points=pts, weights=wts)


_NAMED_KINDS = {
    "gaussian": gaussian,
    "laplace": laplace,
    "bernoulli": bernoulli,
    "three_point": three_point,
}


def atom_from_name(kind: str, scale: float) -> AtomDistribution:
    """Build a nameable atom (the config-file surface: kind + scale)."""
    try:
        factory = _NAMED_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown atom kind {kind!r}") from None
    return factory(scale)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def atom_moment(dist: AtomDistribution, k: int) -> float:
    """Exact k-th moment of an atom distribution, k <= 8."""
    if not 1 <= k <= MAX_MOMENT_ORDER:
        raise UnsupportedOrderError(
            f"moment order {k} outside supported range 1..{MAX_MOMENT_ORDER}"
        )
    if dist.is_discrete:
        return math.fsum(float(w) * p**k for w, p in zip(dist.weights, dist.points))
    if dist.kind == "gaussian":
        if k % 2:
            return 0.0
        return _double_factorial(k - 1) * dist.scale**k
    if dist.kind == "laplace":
        if k % 2:
            return 0.0
        return math.factorial(k) * dist.scale**k
    raise ValueError(f"unknown atom kind {dist.kind!r}")


def sample_atom(dist: AtomDistribution, rng: np.random.Generator, size=None):
    """Draw from an atom distribution using the supplied generator."""
    if dist.kind == "gaussian":
        return rng.normal(0.0, dist.scale, size=size)
    if dist.kind == "laplace":
        return rng.laplace(0.0, dist.scale, size=size)
    if dist.is_discrete:
        probs = [float(w) for w in dist.weights]
        idx = rng.choice(len(dist.points), size=size, p=probs)
        return np.asarray(dist.points)[idx]
    raise ValueError(f"unknown atom kind {dist.kind!r}")


def fourth_gap(eta: AtomDistribution, eta_prime: AtomDistribution) -> float:
    """Fourth-moment gap between two atoms with matching variance."""
    if abs(atom_moment(eta, 2) - atom_moment(eta_prime, 2)) > 1e-9:
        raise IncompatibleEnsemblesError(
            f"variance mismatch: {atom_moment(eta, 2)} vs {atom_moment(eta_prime, 2)}"
        )
    return atom_moment(eta, 4) - atom_moment(eta_prime, 4)


COMPLEX_HERMITIAN = "complex_hermitian"
REAL_SYMMETRIC = "real_symmetric"


@dataclass(frozen=True)
class EnsembleSpec:
    """Dimension, symmetry class and atom pair of a Wigner ensemble."""

    n: int
    symmetry_class: str
    off_diagonal: AtomDistribution
    diagonal: AtomDistribution = field(default_factory=gaussian)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.symmetry_class not in (COMPLEX_HERMITIAN, REAL_SYMMETRIC):
            raise ValueError(f"unknown symmetry class {self.symmetry_class!r}")
        want_off = 0.5 if self.symmetry_class == COMPLEX_HERMITIAN else 1.0
        off_var = atom_moment(self.off_diagonal, 2)
        if abs(off_var - want_off) > 1e-9:
            raise IncompatibleEnsemblesError(
                f"off-diagonal variance {off_var} violates the "
                f"{self.symmetry_class} convention ({want_off})"
            )
        diag_var = atom_moment(self.diagonal, 2)
        if abs(diag_var - 1.0) > 1e-9:
            raise IncompatibleEnsemblesError(
                f"diagonal variance {diag_var} must be 1"
            )


def gue(n: int) -> EnsembleSpec:
    """The Gaussian Unitary Ensemble at dimension n."""
    return EnsembleSpec(n, COMPLEX_HERMITIAN, gaussian(math.sqrt(0.5)), gaussian(1.0))


def substream(seed: int, stream: int, trial: int) -> np.random.Generator:
    """Counter-based substream fully determined by (seed, stream, trial).

    Parallel and serial execution see identical draws because every
    trial owns its own Philox generator keyed on the triple.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, trial))
    return np.random.Generator(np.random.Philox(ss))


def sample_wigner(spec: EnsembleSpec, rng: np.random.Generator):
    """Draw one matrix sample; output is exactly self-adjoint.

    The upper triangle is filled row-major from independent draws and
    mirrored, so the Hermitian symmetry holds bit-exactly.
    """
    from .spectra import HermitianMatrix

    n = spec.n
    m = n * (n - 1) // 2
    iu, ju = np.triu_indices(n, k=1)
    if spec.symmetry_class == COMPLEX_HERMITIAN:
        re = np.atleast_1d(sample_atom(spec.off_diagonal, rng, size=m))
        im = np.atleast_1d(sample_atom(spec.off_diagonal, rng, size=m))
        diag = np.atleast_1d(sample_atom(spec.diagonal, rng, size=n))
        a = np.zeros((n, n), dtype=np.complex128)
        a[iu, ju] = re + 1j * im
        a[ju, iu] = re - 1j * im
        a[np.arange(n), np.arange(n)] = diag
    else:
        off = np.atleast_1d(sample_atom(spec.off_diagonal, rng, size=m))
        diag = np.atleast_1d(sample_atom(spec.diagonal, rng, size=n))
        a = np.zeros((n, n), dtype=np.float64)
        a[iu, ju] = off
        a[ju, iu] = off
        a[np.arange(n), np.arange(n)] = diag
    return HermitianMatrix(a, symmetry_class=spec.symmetry_class)
