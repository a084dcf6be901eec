"""Spacing-ratio statistics for ordered spectra.

Consecutive-spacing ratios r_n = (e_{n+1} - e_n)/(e_n - e_{n-1}) probe
level repulsion without any unfolding.  This package provides the
closed-form ratio surmises and their finite-size correction, samplers
for the classical Gaussian ensembles and Poisson spectra, the exact
large-matrix GUE ratio law from sine-kernel determinants, a spin-chain
Hamiltonian builder with translation symmetry, and ingestion/analysis
helpers for external level lists.
"""

from .spectra import (
    RatioSeries,
    Histogram,
    spacings,
    ratio_series,
    fold_ratios,
    overlapping_ratios,
    bulk_select,
    build_histogram,
    merge_histograms,
    ratio_means,
    ks_distance,
)
from .laws import (
    surmise_constants,
    theoretical_means,
    surmise_pdf,
    surmise_cdf,
    poisson_ratio_pdf,
    poisson_ratio_cdf,
    correction_pdf,
    fitted_pdf,
    fitted_cdf,
    folded_pdf,
    folded_cdf,
    reference_cdf,
    spacing_surmise_pdf,
    fit_amplitude,
)
from .ensembles import (
    GOE,
    GUE,
    GSE,
    POISSON,
    EnsembleKind,
    ensemble_kind,
    sample_matrix,
    sample_tridiagonal,
    hermitian_eigenvalues,
    kramers_collapse,
    sample_spectrum,
    sample_poisson_spectrum,
    run_realizations,
    amplitude_scaling_curve,
)
from .sine_kernel import (
    clenshaw_curtis,
    fredholm_det,
    solve_qp,
    joint_density,
    exact_ratio_pdf,
)
from .ising import (
    IsingParams,
    orbit_representatives,
    sector_basis,
    build_sector_hamiltonian,
    sector_spectrum,
    ising_ratio_stats,
)
from .io import LevelFile, read_levels, write_table, write_histogram
from .analysis import SpectrumReport, analyze_spectrum

__version__ = "0.1.0"
