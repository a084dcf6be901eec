"""Gaussian ensemble and Poisson spectrum sampling with statistics sweeps.

Entry conventions are fixed so that the joint eigenvalue density is

    rho(e_1..e_N) ~ prod_{i<j} |e_i - e_j|^beta * exp(-beta/2 sum e_i^2)

for beta = 1 (GOE, real symmetric), 2 (GUE, complex Hermitian) and
4 (GSE, quaternion self-dual stored as a 2N x 2N complex matrix with
Kramers-degenerate eigenvalue pairs).  The anchor is N = 1: a single
eigenvalue has variance 1/beta.
"""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from . import laws
from .spectra import (
    Histogram,
    ZeroSpacingWarning,
    as_spectrum,
    build_histogram,
    bulk_select,
    fold_ratios,
    merge_histograms,
    ratio_series,
)

__all__ = [
    "EnsembleKind",
    "POISSON",
    "GOE",
    "GUE",
    "GSE",
    "ensemble_kind",
    "RandomMatrixSample",
    "sample_matrix",
    "sample_tridiagonal",
    "hermitian_eigenvalues",
    "kramers_collapse",
    "sample_poisson_spectrum",
    "sample_spectrum",
    "SweepResult",
    "run_realizations",
    "ScalingCurve",
    "amplitude_scaling_curve",
    "DEFAULT_R_EDGES",
    "DEFAULT_RT_EDGES",
]

DEFAULT_R_EDGES = np.linspace(0.0, 6.0, 121)
DEFAULT_RT_EDGES = np.linspace(0.0, 1.0, 51)


@dataclass(frozen=True)
class EnsembleKind:
    """Ensemble tag plus Dyson index (0 for Poisson)."""

    tag: str
    beta: int

    def __post_init__(self):
        if self.beta not in (0, 1, 2, 4):
            raise ValueError(f"beta must be 0, 1, 2 or 4, got {self.beta!r}")


POISSON = EnsembleKind("poisson", 0)
GOE = EnsembleKind("goe", 1)
GUE = EnsembleKind("gue", 2)
GSE = EnsembleKind("gse", 4)

_BY_NAME = {k.tag: k for k in (POISSON, GOE, GUE, GSE)}


def ensemble_kind(kind):
    """Coerce a name or EnsembleKind to an EnsembleKind."""
    if isinstance(kind, EnsembleKind):
        return kind
    key = str(kind).lower()
    if key not in _BY_NAME:
        raise ValueError(
            f"unknown ensemble {kind!r}; expected one of {sorted(_BY_NAME)}"
        )
    return _BY_NAME[key]


def _as_rng(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass
class RandomMatrixSample:
    """A drawn matrix with its ensemble tag and dimension bookkeeping.

    dim is the ensemble dimension N; for GSE the stored complex matrix
    is 2N x 2N (quaternion entries embedded as 2x2 blocks).
    """

    kind: EnsembleKind
    dim: int
    matrix: np.ndarray
    seed: object = None


def sample_matrix(kind, n, rng):
    """Draw one matrix whose eigenvalue law is the Gaussian ensemble.

    GOE: diagonal variance 1, off-diagonal 1/2.  GUE: diagonal real
    with variance 1/2, off-diagonal complex with component variance
    1/4.  GSE: quaternion self-dual; diagonal variance 1/4,
    off-diagonal quaternion components with variance 1/8 each, embedded
    as [[A, B], [-conj(B), conj(A)]] with A Hermitian, B antisymmetric.
    """
    kind = ensemble_kind(kind)
    if kind.beta == 0:
        raise ValueError("poisson has no matrix model; use sample_poisson_spectrum")
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = _as_rng(rng)
    if kind.beta == 1:
        g = rng.standard_normal((n, n))
        h = 0.5 * (g + g.T)
    elif kind.beta == 2:
        a = rng.standard_normal((n, n))
        b = rng.standard_normal((n, n))
        g = (a + 1j * b) / math.sqrt(2.0)
        h = 0.5 * (g + g.conj().T)
    else:
        scale = 1.0 / math.sqrt(8.0)
        diag = 0.5 * rng.standard_normal(n)
        a_up = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
        b_up = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
        iu = np.triu_indices(n, k=1)
        a = np.zeros((n, n), dtype=complex)
        a[iu] = a_up[iu]
        a = a + a.conj().T
        a[np.diag_indices(n)] = diag
        b = np.zeros((n, n), dtype=complex)
        b[iu] = b_up[iu]
        b = b - b.T
        h = np.block([[a, b], [-b.conj(), a.conj()]])
    return RandomMatrixSample(kind=kind, dim=n, matrix=h)


def sample_tridiagonal(kind, n, rng):
    """Tridiagonal model with the same eigenvalue law (fast path).

    Diagonal ~ N(0,1); off-diagonals chi_{beta*k}/sqrt(2) for
    k = n-1..1; eigenvalues are divided by sqrt(beta) downstream (see
    sample_spectrum) to land on the dense-entry convention.  No Kramers
    doubling: the GSE case yields N distinct levels directly.
    """
    kind = ensemble_kind(kind)
    if kind.beta == 0:
        raise ValueError("poisson has no matrix model; use sample_poisson_spectrum")
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = _as_rng(rng)
    diag = rng.standard_normal(n)
    if n > 1:
        dof = kind.beta * np.arange(n - 1, 0, -1)
        off = np.sqrt(rng.chisquare(dof) / 2.0)
    else:
        off = np.empty(0)
    return diag, off


def hermitian_eigenvalues(sample, check=False):
    """Ascending eigenvalues of a self-adjoint matrix.

    Accepts a RandomMatrixSample or a plain array.  Uses the standard
    reduction to tridiagonal form plus shifted iteration (LAPACK);
    non-convergence is surfaced as a RuntimeError naming the offending
    index.  With check=True the backward error ||A v - lam v|| is
    verified to be <= 1e-10 * ||A|| for every pair.
    """
    a = sample.matrix if isinstance(sample, RandomMatrixSample) else np.asarray(sample)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    herm_defect = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if herm_defect > 1e-12 * max(scale, 1e-300):
        raise ValueError(
            f"matrix is not self-adjoint: max |A - A^H| = {herm_defect:.3e}"
        )
    try:
        if check:
            vals, vecs = np.linalg.eigh(a)
            norm = float(np.max(np.abs(vals))) if vals.size else 0.0
            resid = np.abs(a @ vecs - vecs * vals)
            worst = float(np.max(resid)) if resid.size else 0.0
            if worst > 1e-10 * max(norm, 1e-300):
                raise RuntimeError(
                    f"eigenpair backward error {worst:.3e} exceeds "
                    f"1e-10 * ||A|| = {1e-10 * norm:.3e}"
                )
            return vals
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"eigenvalue iteration failed to converge: {exc}"
        ) from exc


def kramers_collapse(levels, rel_tol=1e-8):
    """Reduce a doubly degenerate (Kramers) spectrum to its pairs.

    Expects an even-length sorted spectrum whose consecutive pairs
    agree within rel_tol relative to the spectral width; returns every
    second eigenvalue.
    """
    e = as_spectrum(levels)
    if e.size % 2:
        raise ValueError(f"odd spectrum length {e.size}; not Kramers degenerate")
    if e.size == 0:
        return e
    width = max(float(e[-1] - e[0]), 1e-300)
    gaps = e[1::2] - e[0::2]
    worst = float(np.max(gaps))
    if worst > rel_tol * width:
        raise ValueError(
            f"broken Kramers pair: worst gap {worst:.3e} exceeds "
            f"{rel_tol:.1e} * width {width:.3e}"
        )
    return e[0::2].copy()


def sample_poisson_spectrum(n_levels, rng):
    """Levels with i.i.d. unit-mean exponential spacings."""
    n = int(n_levels)
    if n < 1:
        raise ValueError(f"need at least 1 level, got {n}")
    rng = _as_rng(rng)
    return np.cumsum(rng.exponential(1.0, n))


def sample_spectrum(kind, n, rng, method="dense"):
    """One realization's spectrum: N sorted levels of the ensemble."""
    kind = ensemble_kind(kind)
    if kind.beta == 0:
        return sample_poisson_spectrum(n, rng)
    if method == "dense":
        evals = hermitian_eigenvalues(sample_matrix(kind, n, rng))
        if kind is GSE or kind.beta == 4:
            evals = kramers_collapse(evals)
        return evals
    if method == "tridiagonal":
        diag, off = sample_tridiagonal(kind, n, rng)
        if n == 1:
            evals = diag.copy()
        else:
            evals = eigvalsh_tridiagonal(diag, off)
        return np.sort(evals) / math.sqrt(kind.beta)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class SweepResult:
    """Merged statistics of a multi-realization sweep."""

    kind: EnsembleKind
    dim: int
    n_realizations: int
    bulk_fraction: float
    hist_r: Histogram
    hist_rtilde: Histogram
    mean_r: float
    se_r: float
    mean_rtilde: float
    se_rtilde: float
    n_ratios: int
    n_skipped: int
    amplitude_fit: object = None
    seed: int = 0
    method: str = "dense"


def _accumulate(state, values):
    n, s, s2 = state
    return (n + values.size, s + float(np.sum(values)), s2 + float(np.sum(values * values)))


def _finish_mean(state):
    n, s, s2 = state
    if n == 0:
        return float("nan"), float("nan")
    mean = s / n
    if n == 1:
        return mean, float("nan")
    var = max(s2 - n * mean * mean, 0.0) / (n - 1)
    return mean, math.sqrt(var / n)


def _sweep_chunk(args):
    (tag, n, start, stop, seed, bulk_fraction, r_edges, rt_edges, method) = args
    kind = ensemble_kind(tag)
    counts_r = np.zeros(len(r_edges) - 1, dtype=np.int64)
    counts_rt = np.zeros(len(rt_edges) - 1, dtype=np.int64)
    over_r = 0
    over_rt = 0
    acc_r = (0, 0.0, 0.0)
    acc_rt = (0, 0.0, 0.0)
    skipped = 0
    for idx in range(start, stop):
        try:
            rng = np.random.default_rng(seed + idx)
            levels = sample_spectrum(kind, n, rng, method=method)
            bulk = bulk_select(levels, bulk_fraction)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ZeroSpacingWarning)
                r = ratio_series(bulk)
            rt = fold_ratios(r)
        except Exception as exc:
            raise RuntimeError(
                f"realization {idx} (seed {seed + idx}) failed: {exc}"
            ) from exc
        skipped += r.n_skipped
        hr = build_histogram(r.values, r_edges)
        hrt = build_histogram(rt.values, rt_edges)
        counts_r += hr.counts
        over_r += hr.overflow
        counts_rt += hrt.counts
        over_rt += hrt.overflow
        acc_r = _accumulate(acc_r, r.values)
        acc_rt = _accumulate(acc_rt, rt.values)
    return counts_r, over_r, counts_rt, over_rt, acc_r, acc_rt, skipped


def run_realizations(
    kind,
    n,
    n_realizations,
    bulk_fraction=0.5,
    r_edges=None,
    rt_edges=None,
    seed=0,
    method="dense",
    n_jobs=1,
    fit=True,
):
    """Sample, diagonalize and accumulate ratio statistics.

    Realization i always uses seed + i, and chunks are merged in index
    order, so the merged histograms are bit-identical for any n_jobs.
    For beta > 0 the correction amplitude is fitted to the r histogram
    (fit=False skips it, e.g. for tiny samples).
    """
    kind = ensemble_kind(kind)
    if n_realizations < 0:
        raise ValueError("n_realizations must be >= 0")
    r_edges = DEFAULT_R_EDGES if r_edges is None else np.asarray(r_edges, dtype=float)
    rt_edges = (
        DEFAULT_RT_EDGES if rt_edges is None else np.asarray(rt_edges, dtype=float)
    )
    n_jobs = max(1, int(n_jobs))
    chunks = []
    if n_realizations:
        n_chunks = min(n_jobs * 4, n_realizations) if n_jobs > 1 else 1
        bounds = np.linspace(0, n_realizations, n_chunks + 1).astype(int)
        for a, b in zip(bounds[:-1], bounds[1:]):
            if b > a:
                chunks.append(
                    (kind.tag, int(n), int(a), int(b), int(seed),
                     float(bulk_fraction), r_edges, rt_edges, method)
                )
    if n_jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(pool.map(_sweep_chunk, chunks))
    else:
        parts = [_sweep_chunk(c) for c in chunks]

    counts_r = np.zeros(len(r_edges) - 1, dtype=np.int64)
    counts_rt = np.zeros(len(rt_edges) - 1, dtype=np.int64)
    over_r = over_rt = 0
    acc_r = (0, 0.0, 0.0)
    acc_rt = (0, 0.0, 0.0)
    skipped = 0
    for cr, o_r, crt, o_rt, ar, art, sk in parts:
        counts_r += cr
        over_r += o_r
        counts_rt += crt
        over_rt += o_rt
        acc_r = (acc_r[0] + ar[0], acc_r[1] + ar[1], acc_r[2] + ar[2])
        acc_rt = (acc_rt[0] + art[0], acc_rt[1] + art[1], acc_rt[2] + art[2])
        skipped += sk
    hist_r = Histogram(r_edges, counts_r, over_r, kind="ratio")
    hist_rt = Histogram(rt_edges, counts_rt, over_rt, kind="folded")
    mean_r, se_r = _finish_mean(acc_r)
    mean_rt, se_rt = _finish_mean(acc_rt)
    amp = None
    if fit and kind.beta in (1, 2, 4) and hist_r.total > 0:
        amp = laws.fit_amplitude(hist_r, kind.beta)
    return SweepResult(
        kind=kind,
        dim=int(n),
        n_realizations=int(n_realizations),
        bulk_fraction=float(bulk_fraction),
        hist_r=hist_r,
        hist_rtilde=hist_rt,
        mean_r=mean_r,
        se_r=se_r,
        mean_rtilde=mean_rt,
        se_rtilde=se_rt,
        n_ratios=acc_r[0],
        n_skipped=skipped,
        amplitude_fit=amp,
        seed=int(seed),
        method=method,
    )


@dataclass
class ScalingCurve:
    """Fitted correction amplitudes across matrix sizes."""

    kind: EnsembleKind
    sizes: np.ndarray
    amplitudes: np.ndarray
    stderrs: np.ndarray
    slope: float = None
    results: list = None

    def products(self):
        """C_N * N, the quantity that is flat under a 1/N law."""
        return self.sizes * self.amplitudes


def amplitude_scaling_curve(
    kind,
    n_list,
    per_n_realizations,
    seed=0,
    bulk_fraction=1.0,
    method="dense",
    n_jobs=1,
    r_edges=None,
):
    """Fit the correction amplitude C_N for each matrix size.

    Returns the per-size amplitudes plus the slope of log C_N against
    log N (None for a single size).  Defaults to full spectra: at the
    small sizes this sweep targets, trimming to a central bulk leaves
    too few ratios per matrix and the fitted C_N loses its clean
    decrease with N.
    """
    kind = ensemble_kind(kind)
    if kind.beta == 0:
        raise ValueError("scaling curve needs a matrix ensemble, not poisson")
    sizes = [int(x) for x in n_list]
    if not sizes:
        raise ValueError("n_list must not be empty")
    for n in sizes:
        if n < 8:
            raise ValueError(f"sizes below 8 carry too few bulk ratios, got {n}")
    amps = []
    errs = []
    results = []
    for i, n in enumerate(sizes):
        res = run_realizations(
            kind,
            n,
            per_n_realizations,
            bulk_fraction=bulk_fraction,
            r_edges=r_edges,
            seed=seed + 1_000_000 * i,
            method=method,
            n_jobs=n_jobs,
        )
        if res.amplitude_fit is None:
            raise RuntimeError(f"no amplitude fit produced at N={n}")
        amps.append(res.amplitude_fit.amplitude)
        errs.append(res.amplitude_fit.stderr)
        results.append(res)
    slope = None
    if len(sizes) >= 2:
        slope = float(
            np.polyfit(np.log(np.asarray(sizes, float)), np.log(np.abs(amps)), 1)[0]
        )
    return ScalingCurve(
        kind=kind,
        sizes=np.asarray(sizes, dtype=float),
        amplitudes=np.asarray(amps),
        stderrs=np.asarray(errs),
        slope=slope,
        results=results,
    )
