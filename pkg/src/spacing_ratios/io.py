"""Flat-file ingestion and serialization for spectra and histograms.

Level files are UTF-8 text with one real number per line; '#' starts a
comment (whole-line or trailing) and blank lines are ignored.  Public
Riemann-zero tables follow the same one-ordinate-per-line convention,
so the "zero-table" format parses identically and the distinction is
purely semantic.

Tables are written either as CSV with a header or as whitespace-aligned
two-column text; all floats are rendered with 9 significant digits so
byte output is deterministic for fixed input.
"""

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .spectra import Histogram, as_spectrum

__all__ = [
    "LevelFile",
    "UnsortedInputWarning",
    "read_levels",
    "write_table",
    "histogram_header",
    "histogram_rows",
    "write_histogram",
    "read_histogram_csv",
]

HISTOGRAM_HEADER = ("bin_lo", "bin_hi", "count", "density")


class UnsortedInputWarning(UserWarning):
    """Input levels were not ascending and have been sorted."""


@dataclass(frozen=True)
class LevelFile:
    """A pointer to a level list on disk plus slicing directives.

    skip drops the leading levels and take caps the count, both applied
    after sorting, so "skip the first 100 zeros" means the 100 smallest.
    """

    path: str
    format: str = "plain"
    skip: int = 0
    take: int = None

    def __post_init__(self):
        if self.format not in ("plain", "zero-table"):
            raise ValueError(f"unknown level-file format {self.format!r}")
        if self.skip < 0:
            raise ValueError(f"skip must be non-negative, got {self.skip}")
        if self.take is not None and self.take <= 0:
            raise ValueError(f"take must be positive, got {self.take}")


def read_levels(source, format="plain", skip=0, take=None):
    """Parse a level file into a validated ascending spectrum.

    Accepts a LevelFile or a path (with keyword overrides).  Raises on
    unparseable lines (naming the line number) and on an empty result;
    unsorted input is sorted with an UnsortedInputWarning.
    """
    if not isinstance(source, LevelFile):
        source = LevelFile(str(source), format=format, skip=skip, take=take)
    values = []
    try:
        with open(source.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    values.append(float(text))
                except ValueError:
                    raise ValueError(
                        f"{source.path}: cannot parse {text!r} "
                        f"as a number at line {lineno}"
                    ) from None
    except OSError as exc:
        raise RuntimeError(f"cannot read {source.path}: {exc}") from exc
    if not values:
        raise ValueError(f"{source.path}: no levels found")
    arr = np.asarray(values, dtype=float)
    if np.any(np.diff(arr) < 0):
        warnings.warn(
            f"{source.path}: levels were not in ascending order; sorted",
            UnsortedInputWarning,
            stacklevel=2,
        )
        arr = np.sort(arr)
    arr = arr[source.skip :]
    if source.take is not None:
        arr = arr[: source.take]
    if arr.size == 0:
        raise ValueError(
            f"{source.path}: skip/take left no levels "
            f"(skip={source.skip}, take={source.take})"
        )
    return as_spectrum(arr)


def _render(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".9g")


def write_table(rows, path, fmt="csv", header=None):
    """Write rows of numbers as CSV (with header) or whitespace text.

    Floats are rendered with 9 significant digits; integer cells stay
    integers.  Output bytes are a pure function of the input.
    """
    if fmt not in ("csv", "txt"):
        raise ValueError(f"unknown table format {fmt!r}")
    rendered = [[_render(v) for v in row] for row in rows]
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if fmt == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                if header is not None:
                    writer.writerow(header)
                writer.writerows(rendered)
            else:
                if header is not None:
                    fh.write("# " + " ".join(header) + "\n")
                for row in rendered:
                    fh.write(" ".join(row) + "\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write {path}: {exc}") from exc


def histogram_header():
    return list(HISTOGRAM_HEADER)


def histogram_rows(hist):
    """Histogram as (bin_lo, bin_hi, count, density) rows."""
    dens = hist.density()
    return [
        (hist.edges[i], hist.edges[i + 1], int(hist.counts[i]), dens[i])
        for i in range(hist.counts.size)
    ]


def write_histogram(hist, path, fmt="csv"):
    write_table(histogram_rows(hist), path, fmt=fmt, header=histogram_header())


def read_histogram_csv(path):
    """Read a histogram written by write_histogram back into a Histogram.

    The density column is recomputed from counts downstream; overflow
    counts are not representable in the file and come back as zero.
    """
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ValueError(f"{path}: empty histogram file") from None
            if [h.strip() for h in header] != list(HISTOGRAM_HEADER):
                raise ValueError(
                    f"{path}: expected header {','.join(HISTOGRAM_HEADER)!r},"
                    f" got {','.join(header)!r}"
                )
            los, his, counts = [], [], []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != 4:
                    raise ValueError(
                        f"{path}: expected 4 columns at line {lineno}"
                    )
                los.append(float(row[0]))
                his.append(float(row[1]))
                counts.append(int(row[2]))
    except OSError as exc:
        raise RuntimeError(f"cannot read {path}: {exc}") from exc
    if not los:
        raise ValueError(f"{path}: histogram has no bins")
    los = np.asarray(los)
    his = np.asarray(his)
    if los.size > 1 and np.max(np.abs(his[:-1] - los[1:])) > 1e-9 * max(
        1.0, float(np.max(np.abs(his)))
    ):
        raise ValueError(f"{path}: bins are not contiguous")
    edges = np.concatenate([los, his[-1:]])
    return Histogram(edges=edges, counts=np.asarray(counts, dtype=np.int64))
