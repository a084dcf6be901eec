"""One-call spectrum report: ratio statistics against the reference laws.

The ratio statistic needs no unfolding -- it is invariant under any
affine transform of the levels and insensitive to smooth local-density
variation -- so a raw spectrum can be compared against the Poisson and
Wigner-class laws directly.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import laws, spectra
from .ensembles import DEFAULT_RT_EDGES

__all__ = ["SpectrumReport", "analyze_spectrum", "HEAVY_TAIL_CAVEAT"]

HEAVY_TAIL_CAVEAT = (
    "the unfolded ratio law has a 1/r^2 tail (infinite mean for Poisson),"
    " so <r> converges slowly; prefer <r~>"
)

LAW_NAMES = ("poisson", "goe", "gue", "gse")


@dataclass
class SpectrumReport:
    """Ratio statistics of one spectrum versus the four reference laws."""

    n_levels: int
    n_ratios: int
    n_skipped: int
    mean_r: float
    se_r: float
    mean_rtilde: float
    se_rtilde: float
    ks: dict
    best_law: str
    reference: str
    degenerate: bool
    hist_r: spectra.Histogram
    hist_rtilde: spectra.Histogram
    caveat_r: str = field(default=HEAVY_TAIL_CAVEAT, repr=False)

    def lines(self):
        """Human-readable summary, one finding per line."""
        out = [
            f"levels: {self.n_levels}   ratios: {self.n_ratios}"
            + (f"   skipped (zero spacing): {self.n_skipped}"
               if self.n_skipped else ""),
            f"<r~> = {self.mean_rtilde:.9g} +/- {self.se_rtilde:.3g}",
            f"<r>  = {self.mean_r:.9g} +/- {self.se_r:.3g}"
            f"   ({self.caveat_r})",
        ]
        for name in LAW_NAMES:
            marker = "  <- best" if name == self.best_law else ""
            out.append(f"KS vs {name}: {self.ks[name]:.9g}{marker}")
        if self.degenerate:
            out.append("degenerate spectrum: all ratios identical")
        return out


def analyze_spectrum(levels, reference="auto", bins=120, rmax=6.0,
                     bulk_fraction=1.0):
    """Full ratio-statistics report for one spectrum.

    reference picks the law quoted as the comparison target ("auto"
    selects the KS-closest); KS distances to all four laws are always
    reported.  Requires at least 10 levels.
    """
    lv = spectra.as_spectrum(levels)
    if lv.size < 10:
        raise ValueError(
            f"need at least 10 levels for statistics, got {lv.size}"
        )
    if reference != "auto" and reference not in LAW_NAMES:
        raise ValueError(
            f"reference must be 'auto' or one of {LAW_NAMES}, "
            f"got {reference!r}"
        )
    if bulk_fraction < 1.0:
        lv = spectra.bulk_select(lv, bulk_fraction)
    ratios = spectra.ratio_series(lv)
    folded = spectra.fold_ratios(ratios)
    r = ratios.values
    rt = folded.values
    if r.size == 0:
        raise ValueError("no usable ratios after removing zero spacings")

    def mean_se(v):
        m = float(np.mean(v))
        s = (
            float(np.std(v, ddof=1) / math.sqrt(v.size))
            if v.size > 1
            else math.nan
        )
        return m, s

    mean_r, se_r = mean_se(r)
    mean_rt, se_rt = mean_se(rt)
    ks = {
        name: spectra.ks_distance(r, laws.reference_cdf(name))
        for name in LAW_NAMES
    }
    best = min(ks, key=ks.get)
    r_edges = np.linspace(0.0, rmax, bins + 1)
    return SpectrumReport(
        n_levels=int(lv.size),
        n_ratios=int(r.size),
        n_skipped=int(ratios.n_skipped),
        mean_r=mean_r,
        se_r=se_r,
        mean_rtilde=mean_rt,
        se_rtilde=se_rt,
        ks=ks,
        best_law=best,
        reference=best if reference == "auto" else reference,
        degenerate=bool(r.size and float(np.ptp(r)) < 1e-12),
        hist_r=spectra.build_histogram(ratios, r_edges),
        hist_rtilde=spectra.build_histogram(folded, DEFAULT_RT_EDGES),
    )
