"""Trial-parallel Monte Carlo engine with deterministic reductions.

Each trial owns a counter-based substream keyed by (seed, stream,
trial), and results land in preallocated per-trial slots, so outputs
are bit-identical regardless of worker-thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ensembles import EnsembleSpec, sample_wigner, substream
from .spectra import eigenvalues


def run_spectra(
    spec: EnsembleSpec,
    trials: int,
    seed: int,
    stream: int = 0,
    threads: int = 1,
) -> np.ndarray:
    """Sample ``trials`` matrices and return a (trials, n) array of
    ascending eigenvalues."""
    out = np.empty((trials, spec.n))

    def one(t: int) -> None:
        rng = substream(seed, stream, t)
        m = sample_wigner(spec, rng)
        out[t] = eigenvalues(m, seed=(seed, stream, t)).values

    if threads <= 1:
        for t in range(trials):
            one(t)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(one, range(trials)))
    return out
