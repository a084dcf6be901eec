"""Periodic quantum Ising chain in transverse and longitudinal fields.

    H = -sum_n ( sx_n sx_{n+1} + lam * sz_n + alpha * sx_n ),   sx_{L+1} = sx_1

Translation symmetry block-diagonalizes H: each momentum sector j is
spanned by symmetrized combinations of translation orbits, and the
sector matrices are small enough to diagonalize densely.  At generic
field values the sector spectra show random-matrix (orthogonal-class)
spacing-ratio statistics; at alpha = 0 the chain is free-fermion
integrable and the ratios drift toward the Poisson law instead.

Basis states are integers: bit n gives the sz eigenvalue of site n
(bit 0 -> +1, bit 1 -> -1).  Translation moves site n to site n-1.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import laws, spectra
from .ensembles import DEFAULT_R_EDGES, DEFAULT_RT_EDGES, hermitian_eigenvalues

__all__ = [
    "IsingParams",
    "SpinSectorBasis",
    "UndersizedSectorWarning",
    "IsingRatioStats",
    "translate",
    "orbit_representatives",
    "sector_basis",
    "build_sector_hamiltonian",
    "sector_spectrum",
    "ising_ratio_stats",
]


class UndersizedSectorWarning(UserWarning):
    """A momentum sector is too small for meaningful ratio statistics."""


@dataclass(frozen=True)
class IsingParams:
    """Chain length and the two field strengths (dimensionless)."""

    L: int
    lam: float = 0.5
    alpha: float = 0.5

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 3:
            raise ValueError(f"need at least 3 spins, got L={self.L!r}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "alpha", float(self.alpha))


def translate(state, L):
    """Shift every site down by one (periodic): bit n moves to bit n-1."""
    return (state >> 1) | ((state & 1) << (L - 1))


def orbit_representatives(L):
    """All translation orbits of the 2^L basis states.

    Returns a list of (representative, periodicity) pairs where the
    representative is the minimal integer in its orbit and the
    periodicity p is the orbit size (p divides L).
    """
    L = int(L)
    if L < 1:
        raise ValueError(f"need at least one site, got L={L}")
    seen = np.zeros(1 << L, dtype=bool)
    orbits = []
    for s in range(1 << L):
        if seen[s]:
            continue
        cur = s
        p = 0
        while True:
            seen[cur] = True
            cur = translate(cur, L)
            p += 1
            if cur == s:
                break
        orbits.append((s, p))
    return orbits


@dataclass(frozen=True)
class SpinSectorBasis:
    """Momentum-symmetrized basis of one translation sector.

    representatives[i] is the minimal integer of orbit i, periods[i] its
    orbit size, and norms[i] = sqrt(p)/L the prefactor that makes the
    phase-summed orbit state a unit vector.  An orbit enters sector j
    exactly when j * p = 0 (mod L).
    """

    L: int
    j: int
    representatives: np.ndarray
    periods: np.ndarray
    norms: np.ndarray = field(repr=False)

    @property
    def dimension(self):
        return self.representatives.size


def sector_basis(L, j):
    L = int(L)
    j = int(j)
    if not 0 <= j < L:
        raise ValueError(f"momentum index must be in 0..{L - 1}, got {j}")
    reps = []
    periods = []
    for rep, p in orbit_representatives(L):
        if (j * p) % L == 0:
            reps.append(rep)
            periods.append(p)
    reps = np.asarray(reps, dtype=np.int64)
    periods = np.asarray(periods, dtype=np.int64)
    return SpinSectorBasis(
        L=L,
        j=j,
        representatives=reps,
        periods=periods,
        norms=np.sqrt(periods.astype(float)) / L,
    )


def _orbit_tables(L):
    """rep_of[s] and shift_of[s] with s = T^shift(rep) for every state."""
    rep_of = np.empty(1 << L, dtype=np.int64)
    shift_of = np.empty(1 << L, dtype=np.int64)
    for rep, p in orbit_representatives(L):
        cur = rep
        for l in range(p):
            rep_of[cur] = rep
            shift_of[cur] = l
            cur = translate(cur, L)
    return rep_of, shift_of


def build_sector_hamiltonian(params, j, basis=None):
    """Sector-j matrix of the Ising chain in the momentum basis.

    Assembled from the upper triangle and mirrored, so Hermiticity is
    exact by construction.  Sectors j = 0 and j = L/2 carry real phases
    and come back as real symmetric matrices; other sectors are complex
    Hermitian.
    """
    if not isinstance(params, IsingParams):
        params = IsingParams(*params)
    L = params.L
    if basis is None:
        basis = sector_basis(L, j)
    j = int(j)
    dim = basis.dimension
    rep_of, shift_of = _orbit_tables(L)
    index = {int(r): i for i, r in enumerate(basis.representatives)}
    periods = basis.periods.astype(float)

    real_sector = (2 * j) % L == 0
    if j == 0:
        phase = np.ones(L)
    elif real_sector:
        phase = (-1.0) ** np.arange(L)
    else:
        phase = np.exp(2j * math.pi * j * np.arange(L) / L)

    dtype = float if real_sector else complex
    upper = np.zeros((dim, dim), dtype=dtype)
    diag = np.zeros(dim, dtype=dtype)
    full_mask = (1 << L) - 1

    for col, rep in enumerate(basis.representatives):
        rep = int(rep)
        popcount = bin(rep).count("1")
        diag[col] += -params.lam * (L - 2 * popcount)
        targets = []
        for n in range(L):
            bond = (1 << n) | (1 << ((n + 1) % L))
            targets.append((rep ^ bond, -1.0))
            if params.alpha != 0.0:
                targets.append((rep ^ (1 << n), -params.alpha))
        for s2, coeff in targets:
            s2 &= full_mask
            row = index.get(int(rep_of[s2]))
            if row is None:
                continue
            value = (
                coeff
                * phase[shift_of[s2]]
                * math.sqrt(periods[col] / periods[row])
            )
            if row == col:
                diag[col] += value
            elif row < col:
                upper[row, col] += value

    h = upper + upper.conj().T
    d = diag if real_sector else diag.real
    if not real_sector:
        dust = float(np.max(np.abs(diag.imag))) if dim else 0.0
        if dust > 1e-12 * max(1.0, float(np.max(np.abs(d))) if dim else 0.0):
            raise RuntimeError(
                f"diagonal acquired imaginary part {dust:.3e}; "
                "sector construction is inconsistent"
            )
    h[np.diag_indices(dim)] = d
    return h


def sector_spectrum(params, j, basis=None):
    """Ascending eigenvalues of one momentum sector."""
    return hermitian_eigenvalues(build_sector_hamiltonian(params, j, basis))


@dataclass
class IsingRatioStats:
    """Ratio statistics of one momentum sector against the beta=1 law."""

    params: IsingParams
    sector: int
    dimension: int
    n_levels_used: int
    n_ratios: int
    n_skipped: int
    hist_r: spectra.Histogram
    hist_rtilde: spectra.Histogram
    mean_r: float
    se_r: float
    mean_rtilde: float
    se_rtilde: float
    ks_goe: float


def ising_ratio_stats(params, j, bulk_fraction=0.9):
    """Sector spectrum -> bulk cut -> ratio statistics vs the beta=1 law.

    Sectors below 100 states trigger an UndersizedSectorWarning but the
    statistics are still computed and returned.
    """
    if not isinstance(params, IsingParams):
        params = IsingParams(*params)
    basis = sector_basis(params.L, j)
    if basis.dimension < 100:
        warnings.warn(
            f"sector j={j} of L={params.L} has only {basis.dimension} "
            "states; ratio statistics will be noisy",
            UndersizedSectorWarning,
            stacklevel=2,
        )
    levels = sector_spectrum(params, j, basis)
    bulk = spectra.bulk_select(levels, bulk_fraction)
    ratios = spectra.ratio_series(bulk)
    folded = spectra.fold_ratios(ratios)
    r = ratios.values
    rt = folded.values
    se = lambda v: float(np.std(v, ddof=1) / math.sqrt(v.size)) if v.size > 1 else math.nan
    return IsingRatioStats(
        params=params,
        sector=int(j),
        dimension=basis.dimension,
        n_levels_used=bulk.size,
        n_ratios=r.size,
        n_skipped=ratios.n_skipped,
        hist_r=spectra.build_histogram(ratios, DEFAULT_R_EDGES),
        hist_rtilde=spectra.build_histogram(folded, DEFAULT_RT_EDGES),
        mean_r=float(np.mean(r)) if r.size else math.nan,
        se_r=se(r),
        mean_rtilde=float(np.mean(rt)) if rt.size else math.nan,
        se_rtilde=se(rt),
        ks_goe=spectra.ks_distance(r, lambda x: laws.surmise_cdf(1, x)),
    )
