"""Spacing and spacing-ratio statistics of ordered spectra.

Everything in here works on plain 1-D float arrays of ordered energy
levels.  No unfolding is ever applied: the ratio of consecutive spacings
is invariant under the local scale of the density of states, which is
the whole point of using it.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ZeroSpacingWarning",
    "HeavyTailWarning",
    "RatioSeries",
    "Histogram",
    "as_spectrum",
    "spacings",
    "ratio_series",
    "fold_ratios",
    "overlapping_ratios",
    "bulk_select",
    "build_histogram",
    "merge_histograms",
    "ratio_means",
    "ks_distance",
]


class ZeroSpacingWarning(UserWarning):
    """Raised as a warning when zero denominators are skipped in ratios."""


class HeavyTailWarning(UserWarning):
    """Sample means of unfolded ratios r have no finite expectation value."""


def as_spectrum(levels, name="levels"):
    """Validate and return an ordered spectrum as a float64 array.

    Accepts any 1-D array-like of finite reals sorted in non-decreasing
    order.  Raises ValueError naming the first offending index otherwise.
    """
    e = np.asarray(levels, dtype=float)
    if e.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {e.shape}")
    if e.size and not np.all(np.isfinite(e)):
        bad = int(np.flatnonzero(~np.isfinite(e))[0])
        raise ValueError(f"{name}[{bad}] is not finite: {e[bad]!r}")
    if e.size >= 2:
        d = np.diff(e)
        if np.any(d < 0):
            bad = int(np.flatnonzero(d < 0)[0])
            raise ValueError(
                f"{name} is not sorted: {name}[{bad + 1}]={e[bad + 1]!r} "
                f"< {name}[{bad}]={e[bad]!r}"
            )
    return e


@dataclass
class RatioSeries:
    """A derived statistic series with bookkeeping.

    kind is one of "spacing", "ratio", "folded", "overlapping";
    n_skipped counts entries dropped because of zero denominators.
    """

    values: np.ndarray
    kind: str
    n_skipped: int = 0

    _KINDS = ("spacing", "ratio", "folded", "overlapping")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        self.values = np.asarray(self.values, dtype=float)

    def __len__(self):
        return self.values.size


def spacings(levels):
    """Consecutive spacings s_n = e_{n+1} - e_n of an ordered spectrum."""
    e = as_spectrum(levels)
    if e.size < 2:
        raise ValueError("need at least 2 levels for spacings")
    return RatioSeries(np.diff(e), "spacing")


def ratio_series(levels, on_zero="skip"):
    """Ratios of consecutive spacings r_n = s_n / s_{n-1}.

    A spectrum of n levels yields at most n - 2 ratios.  Zero
    denominators (degenerate levels) are handled per on_zero:
    "skip" drops those entries and issues a ZeroSpacingWarning,
    "raise" raises ValueError naming the first degenerate index.
    """
    e = as_spectrum(levels)
    if e.size < 3:
        raise ValueError("need at least 3 levels for spacing ratios")
    if on_zero not in ("skip", "raise"):
        raise ValueError(f"on_zero must be 'skip' or 'raise', got {on_zero!r}")
    s = np.diff(e)
    den = s[:-1]
    num = s[1:]
    zero = den == 0.0
    n_zero = int(np.count_nonzero(zero))
    if n_zero:
        if on_zero == "raise":
            bad = int(np.flatnonzero(zero)[0])
            raise ValueError(
                f"zero spacing at levels[{bad}:{bad + 2}]; "
                "spectrum is degenerate"
            )
        warnings.warn(
            f"skipped {n_zero} ratio(s) with zero denominator",
            ZeroSpacingWarning,
            stacklevel=2,
        )
    r = num[~zero] / den[~zero]
    return RatioSeries(r, "ratio", n_skipped=n_zero)


def fold_ratios(ratios):
    """Map ratios to [0, 1] via rt = min(r, 1/r).

    Accepts a RatioSeries of kind "ratio" or a plain array of
    non-negative ratios.  Zeros fold to zero.
    """
    if isinstance(ratios, RatioSeries):
        if ratios.kind != "ratio":
            raise ValueError(f"can only fold kind 'ratio', got {ratios.kind!r}")
        r = ratios.values
        n_skipped = ratios.n_skipped
    else:
        r = np.asarray(ratios, dtype=float)
        n_skipped = 0
    if np.any(r < 0):
        bad = int(np.flatnonzero(r < 0)[0])
        raise ValueError(f"ratio[{bad}] is negative: {r[bad]!r}")
    with np.errstate(divide="ignore"):
        inv = np.where(r > 0, 1.0 / np.maximum(r, 1e-300), np.inf)
    rt = np.minimum(r, inv)
    return RatioSeries(rt, "folded", n_skipped=n_skipped)


def overlapping_ratios(levels, on_zero="skip"):
    """Ratios of overlapping two-level blocks.

    r2_n = (e_{n+2} - e_n) / (e_{n+1} - e_{n-1}); n levels give at most
    n - 3 values.  Zero denominators handled like ratio_series.
    """
    e = as_spectrum(levels)
    if e.size < 4:
        raise ValueError("need at least 4 levels for overlapping ratios")
    if on_zero not in ("skip", "raise"):
        raise ValueError(f"on_zero must be 'skip' or 'raise', got {on_zero!r}")
    num = e[3:] - e[1:-2]
    den = e[2:-1] - e[:-3]
    zero = den == 0.0
    n_zero = int(np.count_nonzero(zero))
    if n_zero:
        if on_zero == "raise":
            bad = int(np.flatnonzero(zero)[0])
            raise ValueError(
                f"zero two-level span at levels[{bad}:{bad + 3}]; "
                "spectrum is degenerate"
            )
        warnings.warn(
            f"skipped {n_zero} overlapping ratio(s) with zero denominator",
            ZeroSpacingWarning,
            stacklevel=2,
        )
    r2 = num[~zero] / den[~zero]
    return RatioSeries(r2, "overlapping", n_skipped=n_zero)


def bulk_select(levels, fraction=0.5):
    """Keep the central fraction of an ordered spectrum.

    kept = ceil(fraction * n); of the discarded levels, floor(half) come
    off the bottom and the remainder off the top, so the kept window is
    centered up to one level.
    """
    e = as_spectrum(levels)
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction!r}")
    n = e.size
    keep = int(np.ceil(fraction * n))
    drop = n - keep
    lo = drop // 2
    return e[lo:lo + keep]


@dataclass
class Histogram:
    """Fixed-bin counts with explicit out-of-range bookkeeping.

    Bins are right-open [lo, hi); anything below edges[0] or at/above
    edges[-1] lands in .overflow.  counts are exact integers so merging
    histograms is associative and commutative.
    """

    edges: np.ndarray
    counts: np.ndarray
    overflow: int = 0
    kind: str = ""
    mode: str = "counts"

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=float)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.edges.ndim != 1 or self.edges.size < 2:
            raise ValueError("edges must be 1-D with at least 2 entries")
        if np.any(np.diff(self.edges) <= 0):
            raise ValueError("edges must be strictly increasing")
        if self.counts.shape != (self.edges.size - 1,):
            raise ValueError("counts length must be len(edges) - 1")
        if self.mode not in ("counts", "density"):
            raise ValueError(f"unknown normalization mode {self.mode!r}")

    @property
    def total(self):
        """All values seen, in-range plus overflow."""
        return int(self.counts.sum()) + self.overflow

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self):
        return np.diff(self.edges)

    def density(self):
        """Counts normalized to unit total mass including overflow.

        With this convention the in-range density integrates to the
        in-range probability, and histograms of the same sample with
        different ranges remain comparable.
        """
        if self.total == 0:
            return np.zeros_like(self.widths)
        return self.counts / (self.total * self.widths)


def build_histogram(values, edges, kind=""):
    """Histogram values into right-open bins defined by edges."""
    if isinstance(values, RatioSeries):
        if not kind:
            kind = values.kind
        values = values.values
    v = np.asarray(values, dtype=float)
    edges = np.asarray(edges, dtype=float)
    if np.any(~np.isfinite(v)):
        raise ValueError("values must be finite")
    idx = np.searchsorted(edges, v, side="right") - 1
    in_range = (idx >= 0) & (idx < edges.size - 1)
    counts = np.bincount(idx[in_range], minlength=edges.size - 1)
    return Histogram(
        edges=edges,
        counts=counts.astype(np.int64),
        overflow=int(v.size - np.count_nonzero(in_range)),
        kind=kind,
    )


def merge_histograms(hists):
    """Sum histograms over identical edges; exact on integer counts."""
    hists = list(hists)
    if not hists:
        raise ValueError("nothing to merge")
    first = hists[0]
    if first.mode != "counts":
        raise ValueError("only counts-mode histograms can be merged")
    counts = first.counts.copy()
    overflow = first.overflow
    for h in hists[1:]:
        if h.edges.shape != first.edges.shape or not np.array_equal(
            h.edges, first.edges
        ):
            raise ValueError("histograms have different edges")
        if h.kind != first.kind or h.mode != first.mode:
            raise ValueError(
                f"histogram kinds differ: {first.kind!r} vs {h.kind!r}"
            )
        counts += h.counts
        overflow += h.overflow
    return Histogram(first.edges, counts, overflow, first.kind)


def ratio_means(series):
    """Sample mean and standard error of a ratio series.

    For kind "ratio" the underlying law has an infinite first moment for
    Poisson-like spectra and a heavy 1/r^2-type tail in general, so the
    sample mean converges slowly; a HeavyTailWarning reminds the caller.
    """
    if isinstance(series, RatioSeries):
        v = series.values
        kind = series.kind
    else:
        v = np.asarray(series, dtype=float)
        kind = ""
    if v.size == 0:
        raise ValueError("empty series has no mean")
    if kind == "ratio":
        warnings.warn(
            "mean of unfolded ratios has heavy-tail bias; "
            "prefer folded ratios for point estimates",
            HeavyTailWarning,
            stacklevel=2,
        )
    mean = float(np.mean(v))
    if v.size == 1:
        return mean, float("nan")
    se = float(np.std(v, ddof=1) / np.sqrt(v.size))
    return mean, se


def ks_distance(values, reference_cdf):
    """Kolmogorov-Smirnov distance between a sample and a reference CDF.

    reference_cdf must be a non-decreasing function with range [0, 1];
    it may be scalar-only or vectorized.
    """
    if isinstance(values, RatioSeries):
        values = values.values
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("empty sample has no KS distance")
    try:
        f = np.asarray(reference_cdf(x), dtype=float)
        if f.shape != x.shape:
            raise TypeError
    except TypeError:
        f = np.array([reference_cdf(xi) for xi in x], dtype=float)
    i = np.arange(n)
    d_plus = np.max((i + 1) / n - f)
    d_minus = np.max(f - i / n)
    return float(max(d_plus, d_minus, 0.0))
