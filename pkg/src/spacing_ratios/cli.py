"""Command-line surface for the spacing-ratio toolkit.

Subcommands:
    surmise-table   print the closed-form constants of the ratio laws
    sample          sample a random-matrix ensemble and histogram ratios
    analyze         ratio-statistics report for a level file
    exact-gue       exact large-matrix GUE ratio density on a grid
    ising           ratio statistics of one Ising momentum sector
    fit             fit the correction amplitude to a histogram CSV
    scaling         correction amplitude versus matrix size

Option values resolve as: explicit flags > --config JSON file > the
per-command defaults listed in RunConfig.  Exit codes: 0 on success, 1
on a runtime failure (one-line diagnostic on stderr), 2 on usage errors.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, io, laws
from .ensembles import (
    amplitude_scaling_curve,
    ensemble_kind,
    run_realizations,
)
from .ising import IsingParams, ising_ratio_stats
from .sine_kernel import exact_ratio_pdf

__all__ = ["RunConfig", "build_parser", "main", "entry"]

ENSEMBLES = ("poisson", "goe", "gue", "gse")
FORMATS = ("csv", "txt")

# defaults applied after flag/config merging; None means "command decides"
DEFAULTS = {
    "ensemble": "goe",
    "size": 200,
    "realizations": 100,
    "seed": 0,
    "bulk": None,      # sample 0.5, analyze/scaling 1.0, ising 0.9
    "bins": 120,
    "rmax": None,      # histograms 6.0; fit: use every bin
    "L": 12,
    "lam": 0.5,
    "alpha": 0.5,
    "sector": 1,
    "tmax": 3.5,
    "order": 60,
    "ngrid": 101,
    "skip": 0,
    "take": None,
    "out": None,
    "format": None,    # csv everywhere except the two-column exact-gue text
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved options of one CLI invocation.

    Defaults: ensemble goe, size 200, realizations 100, seed 0, bins 120,
    rmax 6.0 for histogram edges (fit uses all bins unless --rmax is
    given), L 12, lambda 0.5, alpha 0.5, sector 1, tmax 3.5, order 60,
    ngrid 101, skip 0, no take, csv output (exact-gue defaults to the
    two-column text table), bulk fraction 0.5 for sampling, 1.0 for
    analyze and scaling, 0.9 for ising.
    """

    subcommand: str
    path: str = None
    ensemble: str = "goe"
    size: object = 200
    realizations: int = 100
    seed: int = 0
    bulk: float = None
    bins: int = 120
    rmax: float = None
    L: int = 12
    lam: float = 0.5
    alpha: float = 0.5
    sector: int = 1
    tmax: float = 3.5
    order: int = 60
    ngrid: int = 101
    skip: int = 0
    take: int = None
    out: str = None
    format: str = None

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(
                f"ensemble must be one of {ENSEMBLES}, got {self.ensemble!r}"
            )
        if self.format is not None and self.format not in FORMATS:
            raise ValueError(
                f"format must be one of {FORMATS}, got {self.format!r}"
            )


def _fmt(value, digits=".9g"):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), digits)


def _add_common(sp):
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=FORMATS)
    sp.add_argument("--config", help="JSON file of option defaults")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="spacing-ratios",
        description="spacing-ratio statistics of spectra "
        "(random matrices, spin chains, level lists)",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("surmise-table",
                        help="closed-form constants of the ratio laws")
    _add_common(sp)

    sp = sub.add_parser("sample",
                        help="sample an ensemble and histogram its ratios")
    sp.add_argument("--ensemble", choices=ENSEMBLES)
    sp.add_argument("--size", type=int)
    sp.add_argument("--realizations", type=int)
    sp.add_argument("--bulk", type=float)
    sp.add_argument("--bins", type=int)
    sp.add_argument("--rmax", type=float)
    _add_common(sp)

    sp = sub.add_parser("analyze",
                        help="ratio-statistics report for a level file")
    sp.add_argument("path", help="level file (one real per line)")
    sp.add_argument("--skip", type=int)
    sp.add_argument("--take", type=int)
    sp.add_argument("--bulk", type=float)
    sp.add_argument("--bins", type=int)
    sp.add_argument("--rmax", type=float)
    _add_common(sp)

    sp = sub.add_parser("exact-gue",
                        help="exact large-matrix GUE ratio density")
    sp.add_argument("--tmax", type=float)
    sp.add_argument("--order", type=int, help="quadrature nodes per interval")
    sp.add_argument("--ngrid", type=int, help="ratio grid points")
    sp.add_argument("--rmax", type=float)
    _add_common(sp)

    sp = sub.add_parser("ising",
                        help="ratio statistics of an Ising momentum sector")
    sp.add_argument("--L", type=int)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--sector", type=int)
    sp.add_argument("--bulk", type=float)
    _add_common(sp)

    sp = sub.add_parser("fit",
                        help="fit the correction amplitude to a histogram")
    sp.add_argument("path", help="histogram CSV (bin_lo,bin_hi,count,density)")
    sp.add_argument("--ensemble", choices=ENSEMBLES)
    sp.add_argument("--rmax", type=float)
    _add_common(sp)

    sp = sub.add_parser("scaling",
                        help="correction amplitude versus matrix size")
    sp.add_argument("--ensemble", choices=ENSEMBLES)
    sp.add_argument("--size", help="comma-separated sizes, e.g. 10,20,40")
    sp.add_argument("--realizations", type=int)
    sp.add_argument("--bulk", type=float)
    sp.add_argument("--bins", type=int)
    sp.add_argument("--rmax", type=float)
    _add_common(sp)
    return ap


def _merge_config(ns):
    """flags > config file > DEFAULTS, with unknown config keys rejected."""
    merged = dict(DEFAULTS)
    config_path = getattr(ns, "config", None)
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except OSError as exc:
            raise RuntimeError(f"cannot read {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"{config_path}: invalid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValueError(f"{config_path}: expected a JSON object")
        unknown = sorted(set(loaded) - set(DEFAULTS))
        if unknown:
            raise ValueError(
                f"{config_path}: unknown keys {', '.join(unknown)}"
            )
        merged.update(loaded)
    for key in DEFAULTS:
        flag = getattr(ns, key, None)
        if flag is not None:
            merged[key] = flag
    return RunConfig(
        subcommand=ns.subcommand,
        path=getattr(ns, "path", None),
        **merged,
    )


def _write_histogram_pair(hist_r, hist_rt, out, fmt):
    path = Path(out)
    io.write_histogram(hist_r, path, fmt=fmt)
    rt_path = path.with_name(path.stem + "_rtilde" + path.suffix)
    io.write_histogram(hist_rt, rt_path, fmt=fmt)
    return path, rt_path


def _cmd_surmise_table(cfg):
    header = ["ensemble", "beta", "Z_beta", "c_beta", "C_ref",
              "mean_r", "mean_rtilde", "mean_r_fit", "mean_rtilde_fit"]
    rows = []
    for name in ENSEMBLES:
        m = laws.theoretical_means(name)
        if m.beta == 0:
            rows.append([name, 0, "", "", "",
                         "inf", _fmt(m.mean_rtilde_surmise),
                         "inf", _fmt(m.mean_rtilde_fit)])
            continue
        c = laws.surmise_constants(m.beta)
        rows.append([name, m.beta, _fmt(c.z_beta), _fmt(c.c_beta),
                     _fmt(c.c_ref), _fmt(m.mean_r_surmise),
                     _fmt(m.mean_rtilde_surmise), _fmt(m.mean_r_fit),
                     _fmt(m.mean_rtilde_fit)])
    widths = [max(len(str(r[i])) for r in [header] + rows)
              for i in range(len(header))]
    for row in [header] + rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())
    if cfg.out:
        io.write_table(rows, cfg.out, fmt=cfg.format or "csv", header=header)
        print(f"wrote {cfg.out}")
    return 0


def _cmd_sample(cfg):
    rmax = 6.0 if cfg.rmax is None else cfg.rmax
    kind = ensemble_kind(cfg.ensemble)
    res = run_realizations(
        kind,
        int(cfg.size),
        cfg.realizations,
        bulk_fraction=0.5 if cfg.bulk is None else cfg.bulk,
        r_edges=np.linspace(0.0, rmax, cfg.bins + 1),
        seed=cfg.seed,
    )
    print(f"ensemble: {kind.tag}   size: {res.dim}   "
          f"realizations: {res.n_realizations}   ratios: {res.n_ratios}"
          + (f"   skipped: {res.n_skipped}" if res.n_skipped else ""))
    print(f"<r~> = {_fmt(res.mean_rtilde)} +/- {_fmt(res.se_rtilde, '.3g')}")
    print(f"<r>  = {_fmt(res.mean_r)} +/- {_fmt(res.se_r, '.3g')}")
    if res.amplitude_fit is not None:
        f = res.amplitude_fit
        print(f"correction amplitude C = {_fmt(f.amplitude)} "
              f"+/- {_fmt(f.stderr, '.3g')}  "
              f"(reference {_fmt(laws.surmise_constants(kind.beta).c_ref)})")
    if cfg.out:
        p, prt = _write_histogram_pair(
            res.hist_r, res.hist_rtilde, cfg.out, cfg.format or "csv"
        )
        print(f"wrote {p} and {prt}")
    return 0


def _cmd_analyze(cfg):
    levels = io.read_levels(cfg.path, skip=cfg.skip, take=cfg.take)
    report = analysis.analyze_spectrum(
        levels,
        bins=cfg.bins,
        rmax=6.0 if cfg.rmax is None else cfg.rmax,
        bulk_fraction=1.0 if cfg.bulk is None else cfg.bulk,
    )
    for line in report.lines():
        print(line)
    if cfg.out:
        p, prt = _write_histogram_pair(
            report.hist_r, report.hist_rtilde, cfg.out, cfg.format or "csv"
        )
        print(f"wrote {p} and {prt}")
    return 0


def _cmd_exact_gue(cfg):
    rmax = 6.0 if cfg.rmax is None else cfg.rmax
    grid = np.linspace(0.05, rmax, cfg.ngrid)
    res = exact_ratio_pdf(grid, t_max=cfg.tmax, m=cfg.order)
    rows = [(r, p) for r, p in zip(res.r, res.pdf)]
    if cfg.out:
        io.write_table(rows, cfg.out, fmt=cfg.format or "txt",
                       header=("r", "P(r)"))
        print(f"wrote {cfg.out} ({len(rows)} points, "
              f"normalization {_fmt(res.normalization)})")
    else:
        print("# r P(r)")
        for r, p in rows:
            print(f"{_fmt(r)} {_fmt(p)}")
    return 0


def _cmd_ising(cfg):
    params = IsingParams(L=cfg.L, lam=cfg.lam, alpha=cfg.alpha)
    st = ising_ratio_stats(
        params, cfg.sector,
        bulk_fraction=0.9 if cfg.bulk is None else cfg.bulk,
    )
    print(f"L = {params.L}   lambda = {_fmt(params.lam)}   "
          f"alpha = {_fmt(params.alpha)}   sector j = {st.sector}   "
          f"dimension = {st.dimension}")
    print(f"levels used: {st.n_levels_used}   ratios: {st.n_ratios}"
          + (f"   skipped: {st.n_skipped}" if st.n_skipped else ""))
    print(f"<r~> = {_fmt(st.mean_rtilde)} +/- {_fmt(st.se_rtilde, '.3g')}")
    print(f"<r>  = {_fmt(st.mean_r)} +/- {_fmt(st.se_r, '.3g')}")
    print(f"KS vs orthogonal-class surmise: {_fmt(st.ks_goe)}")
    if cfg.out:
        p, prt = _write_histogram_pair(
            st.hist_r, st.hist_rtilde, cfg.out, cfg.format or "csv"
        )
        print(f"wrote {p} and {prt}")
    return 0


def _cmd_fit(cfg):
    beta = laws.beta_of(cfg.ensemble)
    if beta == 0:
        raise ValueError(
            "the poisson law has no correction amplitude; "
            "pick one of goe, gue, gse"
        )
    hist = io.read_histogram_csv(cfg.path)
    fit = laws.fit_amplitude(hist, beta, r_max=cfg.rmax)
    print(f"ensemble: {cfg.ensemble} (beta = {beta})   bins used: {fit.n_bins}")
    print(f"amplitude C = {_fmt(fit.amplitude)} +/- {_fmt(fit.stderr, '.3g')}"
          f"  (reference {_fmt(laws.surmise_constants(beta).c_ref)})")
    print(f"residual norm = {_fmt(fit.residual_norm)}")
    return 0


def _cmd_scaling(cfg):
    sizes = cfg.size
    if isinstance(sizes, str):
        try:
            sizes = [int(tok) for tok in sizes.split(",") if tok.strip()]
        except ValueError:
            raise ValueError(
                f"--size expects comma-separated integers, got {cfg.size!r}"
            ) from None
    elif isinstance(sizes, int):
        sizes = [sizes]
    curve = amplitude_scaling_curve(
        ensemble_kind(cfg.ensemble),
        sizes,
        cfg.realizations,
        seed=cfg.seed,
        bulk_fraction=1.0 if cfg.bulk is None else cfg.bulk,
    )
    header = ["size", "amplitude", "stderr", "amplitude_times_size"]
    rows = []
    for n, a, s, p in zip(curve.sizes, curve.amplitudes, curve.stderrs,
                          curve.products()):
        rows.append([int(n), a, s, p])
        print(f"N = {int(n)}: C_N = {_fmt(a)} +/- {_fmt(s, '.3g')}   "
              f"C_N * N = {_fmt(p)}")
    if curve.slope is not None:
        print(f"log-log slope of C_N: {_fmt(curve.slope)}")
    if cfg.out:
        io.write_table(rows, cfg.out, fmt=cfg.format or "csv", header=header)
        print(f"wrote {cfg.out}")
    return 0


_COMMANDS = {
    "surmise-table": _cmd_surmise_table,
    "sample": _cmd_sample,
    "analyze": _cmd_analyze,
    "exact-gue": _cmd_exact_gue,
    "ising": _cmd_ising,
    "fit": _cmd_fit,
    "scaling": _cmd_scaling,
}


def main(argv=None):
    """Run one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        cfg = _merge_config(ns)
        return _COMMANDS[cfg.subcommand](cfg) or 0
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
