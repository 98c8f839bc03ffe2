"""Spectral-statistics laboratory for Wigner random matrices.

Exact combinatorial oracles for the moment method, semicircle-law
analytics, and reproducible Monte Carlo experiments on eigenvalue
localization, convergence rate and fourth-moment sensitivity.
"""

from .ensembles import (
    AtomDistribution,
    EnsembleSpec,
    atom_moment,
    bernoulli,
    discrete,
    fourth_gap,
    gaussian,
    gue,
    laplace,
    sample_atom,
    sample_wigner,
    substream,
    three_point,
)
from .semicircle import (
    ClassicalLocationTable,
    cdf_sc,
    classical_location,
    d_moment_integral,
    g_antiderivative,
    g_density,
    predicted_shift,
    rho_sc,
)
from .spectra import HermitianMatrix, Spectrum, eigenvalues, spectral_norm, trace_power
from .walks import (
    catalan,
    count_admissible_walks,
    modified_catalan,
    modified_catalan_recurrence,
    series_identity_check,
)

__version__ = "0.1.0"
