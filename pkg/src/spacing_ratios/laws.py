"""Closed-form spacing-ratio laws and fits against them.

The central object is the Wigner-like surmise for the ratio of two
consecutive spacings obtained from 3x3 (4x4 for the symplectic case)
Gaussian matrices,

    P_W(r) = (1/Z_b) (r + r^2)^b / (1 + r + r^2)^(1 + 3b/2),

with b the Dyson index (1, 2, 4) and Z_b a normalization constant.  The
uncorrelated (Poisson) law is P(r) = 1/(1+r)^2.  Both satisfy the
inversion symmetry P(r) = P(1/r)/r^2, so the folded variable
rt = min(r, 1/r) has density 2 P_W(rt) on [0, 1].

Large-matrix spectra deviate from the surmise by a small correction
with a fixed shape and a single ensemble-dependent amplitude C:

    dP(r) = C/(1+r)^2 [ (r + 1/r)^-b - c_b (r + 1/r)^-(b+1) ],

where c_b is fixed by requiring the correction to integrate to zero.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "BETA_BY_ENSEMBLE",
    "SurmiseConstants",
    "TheoreticalMeans",
    "SpacingSurmiseConstants",
    "AmplitudeFit",
    "surmise_constants",
    "theoretical_means",
    "surmise_pdf",
    "surmise_cdf",
    "poisson_ratio_pdf",
    "poisson_ratio_cdf",
    "correction_pdf",
    "fitted_pdf",
    "fitted_cdf",
    "folded_pdf",
    "folded_cdf",
    "reference_cdf",
    "spacing_surmise_constants",
    "spacing_surmise_pdf",
    "fit_amplitude",
    "fit_amplitude_points",
]

_SQRT3 = math.sqrt(3.0)

BETA_BY_ENSEMBLE = {"poisson": 0, "goe": 1, "gue": 2, "gse": 4}

_VALID_BETA = (1, 2, 4)

# Normalization of the ratio surmise, exact expressions.
_Z_BETA = {
    1: 8.0 / 27.0,
    2: 4.0 * math.pi / (81.0 * _SQRT3),
    4: 4.0 * math.pi / (729.0 * _SQRT3),
}

# Zero-integral constant of the finite-size correction shape.
_C_SMALL_BETA = {
    1: 2.0 * (math.pi - 2.0) / (4.0 - math.pi),
    2: 4.0 * (4.0 - math.pi) / (3.0 * math.pi - 8.0),
    4: 8.0 * (32.0 - 9.0 * math.pi) / (45.0 * math.pi - 128.0),
}

# Reference correction amplitudes extracted from large Gaussian matrices.
_C_REF = {1: 0.233378, 2: 0.578846, 4: 3.60123}

# Exact surmise means of r and of rt = min(r, 1/r).
_MEAN_R_SURMISE = {
    1: 7.0 / 4.0,
    2: 27.0 * _SQRT3 / (8.0 * math.pi) - 0.5,
    4: 243.0 * _SQRT3 / (80.0 * math.pi) - 0.5,
}
_MEAN_RT_SURMISE = {
    0: 2.0 * math.log(2.0) - 1.0,
    1: 4.0 - 2.0 * _SQRT3,
    2: 2.0 * _SQRT3 / math.pi - 0.5,
    4: 32.0 * _SQRT3 / (15.0 * math.pi) - 0.5,
}

# Means of the corrected (surmise + C_ref * shape) laws, large-matrix limit.
_MEAN_R_FIT = {1: 1.7781, 2: 1.3684, 4: 1.1769}
_MEAN_RT_FIT = {1: 0.5307, 2: 0.5996, 4: 0.6744}


def _check_beta(beta):
    if beta not in _VALID_BETA:
        raise ValueError(f"beta must be one of {_VALID_BETA}, got {beta!r}")


def beta_of(ensemble):
    """Dyson index for an ensemble name (poisson maps to 0)."""
    key = str(ensemble).lower()
    if key not in BETA_BY_ENSEMBLE:
        raise ValueError(f"unknown ensemble {ensemble!r}")
    return BETA_BY_ENSEMBLE[key]


@dataclass(frozen=True)
class SurmiseConstants:
    """All closed-form constants of the ratio surmise for one beta."""

    beta: int
    z_beta: float
    c_beta: float
    c_ref: float
    mean_r_surmise: float
    mean_rtilde_surmise: float
    mean_r_fit: float
    mean_rtilde_fit: float


@dataclass(frozen=True)
class TheoreticalMeans:
    """Surmise and corrected-law means of r and rt for one ensemble."""

    ensemble: str
    beta: int
    mean_r_surmise: float
    mean_rtilde_surmise: float
    mean_r_fit: float
    mean_rtilde_fit: float


def surmise_constants(beta):
    """Exact constants of the ratio surmise for beta in {1, 2, 4}."""
    _check_beta(beta)
    return SurmiseConstants(
        beta=beta,
        z_beta=_Z_BETA[beta],
        c_beta=_C_SMALL_BETA[beta],
        c_ref=_C_REF[beta],
        mean_r_surmise=_MEAN_R_SURMISE[beta],
        mean_rtilde_surmise=_MEAN_RT_SURMISE[beta],
        mean_r_fit=_MEAN_R_FIT[beta],
        mean_rtilde_fit=_MEAN_RT_FIT[beta],
    )


def theoretical_means(ensemble):
    """Reference means of r and rt = min(r, 1/r) for an ensemble.

    For "poisson" the mean of r is infinite (returned as inf) and the
    fitted columns coincide with the exact ones: the law is exact for
    uncorrelated levels at any matrix size.
    """
    beta = beta_of(ensemble)
    if beta == 0:
        rt = _MEAN_RT_SURMISE[0]
        return TheoreticalMeans("poisson", 0, math.inf, rt, math.inf, rt)
    c = surmise_constants(beta)
    return TheoreticalMeans(
        str(ensemble).lower(),
        beta,
        c.mean_r_surmise,
        c.mean_rtilde_surmise,
        c.mean_r_fit,
        c.mean_rtilde_fit,
    )


def surmise_pdf(beta, r):
    """Wigner-like surmise density of the spacing ratio r >= 0.

    Evaluated in log space so that very large r underflows cleanly to 0
    instead of overflowing; P(0) = 0 for all beta in {1, 2, 4}.
    """
    _check_beta(beta)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        bad = int(np.flatnonzero(r < 0)[0])
        raise ValueError(f"r must be non-negative, got r[{bad}]={r.ravel()[bad]!r}")
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    out = np.zeros_like(r)
    pos = r > 0
    rp = r[pos]
    log_p = (
        beta * (np.log(rp) + np.log1p(rp))
        - (1.0 + 1.5 * beta) * np.log1p(rp * (1.0 + rp))
        - math.log(_Z_BETA[beta])
    )
    out[pos] = np.exp(log_p)
    return float(out[0]) if scalar else out


def poisson_ratio_pdf(r):
    """Ratio density for uncorrelated levels: 1/(1+r)^2."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    out = 1.0 / (1.0 + r) ** 2
    return float(out) if out.ndim == 0 else out


def poisson_ratio_cdf(r):
    """CDF of the Poisson ratio law: r/(1+r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    out = r / (1.0 + r)
    return float(out) if out.ndim == 0 else out


def correction_pdf(beta, amplitude, r):
    """Finite-size correction shape times its amplitude.

    The shape integrates to zero over [0, inf) by the choice of c_beta
    and inherits the inversion symmetry dP(r) = dP(1/r)/r^2.  dP(0) = 0
    in the limit sense.
    """
    _check_beta(beta)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    out = np.zeros_like(r)
    pos = r > 0
    rp = r[pos]
    u = rp + 1.0 / rp
    shape = u ** (-float(beta)) - _C_SMALL_BETA[beta] * u ** (-(beta + 1.0))
    out[pos] = amplitude / (1.0 + rp) ** 2 * shape
    return float(out[0]) if scalar else out


def fitted_pdf(beta, amplitude, r):
    """Surmise plus amplitude * correction shape."""
    return surmise_pdf(beta, r) + correction_pdf(beta, amplitude, r)


def folded_pdf(pdf, rtilde):
    """Density of rt = min(r, 1/r) for any law with the inversion symmetry.

    pdf is a callable of r alone; the folded density is 2 pdf(rt) on
    [0, 1].
    """
    rt = np.asarray(rtilde, dtype=float)
    if np.any(rt < 0) or np.any(rt > 1):
        raise ValueError("folded ratios live on [0, 1]")
    out = 2.0 * np.asarray(pdf(rt), dtype=float)
    return float(out) if out.ndim == 0 else out


def _half_integral(pdf, pts):
    """Cumulative integral of pdf from 0 to each of sorted pts in [0, 1].

    Gauss-Legendre on each segment between consecutive points; the pdfs
    here are smooth on (0, 1] and bounded, so a modest fixed rule per
    segment is plenty.
    """
    nodes, wts = np.polynomial.legendre.leggauss(24)
    acc = np.empty(pts.size)
    total = 0.0
    prev = 0.0
    for i, p in enumerate(pts):
        if p > prev:
            mid = 0.5 * (prev + p)
            half = 0.5 * (p - prev)
            total += half * float(np.sum(wts * pdf(mid + half * nodes)))
            prev = p
        acc[i] = total
    return acc


def _scalar_half_integral(pdf, x, tol=1e-10):
    """Adaptive quadrature of pdf from 0 to x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    val, err = integrate.quad(pdf, 0.0, x, epsabs=1e-12, epsrel=1e-12, limit=200)
    if err > tol:
        raise RuntimeError(
            f"cdf quadrature did not converge: achieved tolerance {err:.3e} "
            f"exceeds {tol:.0e}"
        )
    return val


def _symmetric_cdf(pdf, r):
    """CDF of a normalized law with the inversion symmetry.

    Uses F(r) = 1 - F(1/r) for r > 1 so that all quadrature happens on
    [0, 1], where the integrand is bounded.  Scalar arguments go through
    adaptive quadrature; arrays share a piecewise fixed-order rule.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    if r.ndim == 0:
        x = float(r)
        if x <= 1.0:
            return min(_scalar_half_integral(pdf, x), 1.0)
        return min(max(1.0 - _scalar_half_integral(pdf, 1.0 / x), 0.0), 1.0)
    with np.errstate(divide="ignore"):
        base = np.where(r <= 1.0, r, 1.0 / np.maximum(r, 1.0))
    order = np.argsort(base)
    acc = np.empty_like(base)
    acc[order] = _half_integral(pdf, base[order])
    out = np.where(r <= 1.0, acc, 1.0 - acc)
    return np.clip(out, 0.0, 1.0)


def surmise_cdf(beta, r):
    """CDF of the ratio surmise, exact inversion symmetry built in."""
    _check_beta(beta)
    return _symmetric_cdf(lambda x: surmise_pdf(beta, x), r)


def fitted_cdf(beta, amplitude, r):
    """CDF of surmise + correction; the correction has zero half-mass,
    so F(1) = 1/2 still holds exactly."""
    _check_beta(beta)
    return _symmetric_cdf(lambda x: fitted_pdf(beta, amplitude, x), r)


def folded_cdf(cdf, rtilde):
    """CDF of rt = min(r, 1/r) given the CDF of r with inversion symmetry.

    F_fold(t) = F(t) + 1 - F(1/t) = 2 F(t) for symmetric laws.
    """
    rt = np.asarray(rtilde, dtype=float)
    if np.any(rt < 0) or np.any(rt > 1):
        raise ValueError("folded ratios live on [0, 1]")
    out = 2.0 * np.asarray(cdf(rt), dtype=float)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def reference_cdf(law, r=None, folded=False, amplitude=None):
    """CDF of an ensemble's ratio law, evaluated or as a callable.

    law is an ensemble name ("poisson", "goe", "gue", "gse").  With r
    given, returns the probability F(r); without, returns the CDF as a
    callable (for ks_distance and plotting).  folded=True switches to
    the law of rt = min(r, 1/r); amplitude, if given, uses the
    corrected law instead of the bare surmise (ignored for poisson,
    whose ratio law is exact at any size).
    """
    beta = beta_of(law)
    if beta == 0:
        base = poisson_ratio_cdf
    elif amplitude is None:
        base = lambda x: surmise_cdf(beta, x)
    else:
        base = lambda x: fitted_cdf(beta, amplitude, x)
    if folded:
        f = lambda t: folded_cdf(base, t)
    else:
        f = base
    if r is None:
        return f
    return f(r)


@dataclass(frozen=True)
class SpacingSurmiseConstants:
    """Coefficients of P_W(s) = a s^b exp(-c s^2) at unit mean spacing."""

    beta: int
    a_beta: float
    b_beta: float


def spacing_surmise_constants(beta):
    """Derive (a, c) from unit normalization and unit mean.

    For P(s) = a s^b e^{-c s^2}:  c = [G((b+2)/2)/G((b+1)/2)]^2 and
    a = 2 c^{(b+1)/2} / G((b+1)/2), with G the gamma function.
    """
    _check_beta(beta)
    g1 = special.gamma((beta + 1.0) / 2.0)
    g2 = special.gamma((beta + 2.0) / 2.0)
    b = (g2 / g1) ** 2
    a = 2.0 * b ** ((beta + 1.0) / 2.0) / g1
    return SpacingSurmiseConstants(beta=beta, a_beta=a, b_beta=b)


def spacing_surmise_pdf(beta, s):
    """Wigner surmise for the spacing itself at unit mean spacing."""
    c = spacing_surmise_constants(beta)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("s must be non-negative")
    out = c.a_beta * s**beta * np.exp(-c.b_beta * s * s)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class AmplitudeFit:
    """Weighted least-squares estimate of the correction amplitude."""

    amplitude: float
    stderr: float
    n_bins: int
    residual_norm: float


def fit_amplitude_points(r, excess, weights, beta):
    """Fit excess = C * shape(r) by weighted least squares.

    excess is a measured density minus the surmise at points r; weights
    are non-negative.  The model is linear in C, so the estimator is

        C = sum(w * h * excess) / sum(w * h^2),  h = shape at unit C.

    Returns an AmplitudeFit with the usual weighted-residual standard
    error.  Exact on data that already lie on C * shape.
    """
    r = np.asarray(r, dtype=float)
    excess = np.asarray(excess, dtype=float)
    w = np.asarray(weights, dtype=float)
    if r.shape != excess.shape or r.shape != w.shape:
        raise ValueError("r, excess and weights must have the same shape")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    use = w > 0
    if int(np.count_nonzero(use)) < 2:
        raise ValueError("need at least 2 positively weighted points")
    r, excess, w = r[use], excess[use], w[use]
    h = correction_pdf(beta, 1.0, r)
    denom = float(np.sum(w * h * h))
    if denom == 0.0:
        raise ValueError("correction shape vanishes on all weighted points")
    c_hat = float(np.sum(w * h * excess)) / denom
    resid = excess - c_hat * h
    n = r.size
    chi2 = float(np.sum(w * resid * resid))
    # unbiased residual variance with one fitted parameter
    sigma2 = chi2 / max(n - 1, 1)
    stderr = math.sqrt(sigma2 / denom)
    return AmplitudeFit(
        amplitude=c_hat,
        stderr=stderr,
        n_bins=n,
        residual_norm=math.sqrt(chi2),
    )


def fit_amplitude(hist, beta, r_max=None):
    """Fit the correction amplitude to a histogram of unfolded ratios.

    Bin centers beyond r_max (default: the histogram range) are dropped;
    weights are the raw bin counts, so empty bins carry no weight.
    """
    centers = hist.centers
    dens = hist.density()
    w = hist.counts.astype(float)
    if r_max is not None:
        keep = centers <= r_max
        centers, dens, w = centers[keep], dens[keep], w[keep]
    excess = dens - surmise_pdf(beta, centers)
    return fit_amplitude_points(centers, excess, w, beta)
