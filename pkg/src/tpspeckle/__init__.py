"""Two-particle speckle statistics on a weakly disordered chain.

Exact diagonalization of the one- and two-particle sector Hamiltonians,
phasor-sum propagation to arbitrary times, intensity-record statistics
(contrast, normalized moments, log-binned densities) and the matching
distribution family with moment fits.
"""

__version__ = "0.1.0"

from .model import (
    BOSONIC,
    DISTINGUISHABLE,
    FERMIONIC,
    SINGLE,
    SUBSPACES,
    BasisIndex,
    ChainSpec,
    DisorderRealization,
    HamiltonianMatrix,
    build_bosonic_block,
    build_distinguishable,
    build_fermionic_block,
    build_hamiltonian,
    build_single_particle,
    sample_disorder,
    symmetrization_map,
)
from .spectral import (
    BoundClassification,
    EigensolverError,
    PhasorList,
    SpectralDecomposition,
    bosonic_amplitude,
    classify_bound_states,
    diagonalize,
    distinguishable_amplitude,
    distinguishable_amplitude_blocks,
    fermionic_amplitude,
    phasor_coefficients,
    phasor_decomposition,
    product_amplitude,
    transition_amplitude,
)
from .speckle import (
    EnsembleStat,
    Histogram,
    IntensitySeries,
    SpeckleSummary,
    TimeGrid,
    default_windows,
    ensemble_average,
    log_histogram,
    sample_series,
    summarize,
    windowed_contrast,
)
from .distributions import (
    CompoundRicianModel,
    ExponentialModel,
    FitError,
    KDistModel,
    RicianModel,
    WeibullBoundModel,
    build_g_of_r,
    fit_by_moments,
    invert_rician_contrast,
    k_contrast,
    ks_distance,
    pdf_compound_rician,
    pdf_exponential,
    pdf_k,
    pdf_rician,
    pdf_weibull_bound,
    rician_contrast,
)

__all__ = [name for name in dir() if not name.startswith("_")]
