"""From raw measurements to smoothing-ready clr samples, plus CSV I/O.

Raw values are binned into equal-width classes over a fixed range (Sturges'
rule for the class count), empty classes are imputed with ``(2/3) / n`` and the
class densities are clr transformed at the class midpoints.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bayes import clr_discrete
from .bspline import Domain
from .smoothing import ClrSample

ZERO_IMPUTATION = 2.0 / 3.0


def sturges_classes(n: int) -> int:
    """Number of histogram classes ``ceil(log2(n) + 1)``."""
    if int(n) != n or n < 1:
        raise ValueError(f"Sturges' rule needs a positive sample size, got {n!r}")
    return math.ceil(math.log2(int(n)) + 1)


@dataclass(frozen=True, eq=False)
class HistogramData:
    """Equal-width histogram on ``[edges[0], edges[-1]]``.

    ``counts`` may be ``None`` when the histogram was given by proportions.
    ``proportions`` are not renormalized after zero imputation.
    """

    edges: np.ndarray
    proportions: np.ndarray
    n_obs: int
    counts: np.ndarray | None = None

    def __post_init__(self):
        edges = np.array(self.edges, dtype=float)
        p = np.array(self.proportions, dtype=float)
        if edges.ndim != 1 or edges.size < 2:
            raise ValueError("a histogram needs at least two edges")
        if edges.size != p.size + 1:
            raise ValueError(f"{edges.size} edges do not match {p.size} classes")
        widths = np.diff(edges)
        if np.any(widths <= 0) or not np.allclose(widths, widths[0], rtol=1e-9, atol=0):
            raise ValueError("histogram classes must be equally wide and ordered")
        if np.any(p < 0):
            raise ValueError("proportions must be nonnegative")
        if int(self.n_obs) != self.n_obs or self.n_obs < 1:
            raise ValueError(f"n_obs must be a positive integer, got {self.n_obs!r}")
        arrays = {"edges": edges, "proportions": p}
        if self.counts is not None:
            c = np.array(self.counts)
            if c.shape != p.shape or np.any(c < 0) or np.any(c != np.round(c)):
                raise ValueError("counts must be nonnegative integers, one per class")
            arrays["counts"] = c.astype(np.int64)
        for name, arr in arrays.items():
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "n_obs", int(self.n_obs))

    @property
    def width(self) -> float:
        return float(self.edges[1] - self.edges[0])

    @property
    def midpoints(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2

    @property
    def density(self) -> np.ndarray:
        return self.proportions / self.width

    @property
    def n_classes(self) -> int:
        return self.proportions.size


def build_histogram(values, domain: Domain, classes: int | None = None) -> HistogramData:
    """Bin ``values`` into ``classes`` equal classes over ``domain``.

    Classes are half-open except the last, which also holds ``domain.b``.
    Without ``classes`` Sturges' rule is applied to the sample size.
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size == 0:
        raise ValueError("cannot build a histogram from an empty sample")
    outside = (values < domain.a) | (values > domain.b) | ~np.isfinite(values)
    if np.any(outside):
        raise ValueError(
            f"value {values[outside][0]!r} lies outside the histogram range [{domain.a}, {domain.b}]"
        )
    if classes is None:
        classes = sturges_classes(values.size)
    if int(classes) != classes or classes < 1:
        raise ValueError(f"number of classes must be a positive integer, got {classes!r}")
    edges = np.linspace(domain.a, domain.b, int(classes) + 1)
    counts, _ = np.histogram(values, bins=edges)
    return HistogramData(edges, counts / values.size, values.size, counts)


def impute_zeros(h: HistogramData) -> HistogramData:
    """Replace empty-class proportions by ``(2/3) / n_obs``."""
    p = np.where(h.proportions == 0, ZERO_IMPUTATION / h.n_obs, h.proportions)
    return HistogramData(h.edges, p, h.n_obs, h.counts)


def to_clr_sample(h: HistogramData, weights=None) -> ClrSample:
    dens = h.density
    if np.any(dens <= 0):
        raise ValueError("histogram has empty classes; impute zeros before the clr transform")
    return ClrSample(h.midpoints, clr_discrete(dens), weights)


# --------------------------------------------------------------------------- tables


class TableFormatError(ValueError):
    """Malformed CSV content; ``line`` is 1-based and counts the header."""

    def __init__(self, message: str, path=None, line: int | None = None):
        where = f"{path}" if path is not None else "<table>"
        if line is not None:
            where += f", line {line}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class EmptyDatasetError(TableFormatError):
    pass


@dataclass(frozen=True)
class TableSchema:
    """Named, typed CSV columns; columns listed in ``defaults`` may be absent."""

    name: str
    columns: tuple[tuple[str, type], ...]
    defaults: tuple[tuple[str, object], ...] = ()

    @property
    def names(self) -> list[str]:
        return [c for c, _ in self.columns]


RAW_VALUES = TableSchema("raw values", (("group_id", str), ("value", float)))
HISTOGRAM_COUNTS = TableSchema(
    "histogram counts", (("group_id", str), ("midpoint", float), ("count", int))
)
HISTOGRAM_PROPORTIONS = TableSchema(
    "histogram proportions", (("group_id", str), ("midpoint", float), ("proportion", float))
)
CLR_SAMPLES = TableSchema(
    "clr samples",
    (("group_id", str), ("t", float), ("clr_value", float), ("weight", float)),
    defaults=(("weight", 1.0),),
)


def format_number(v) -> str:
    """Shortest round-trip text for ints and floats."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _parse(raw: str, kind: type, column: str, path, line: int):
    text = raw.strip()
    if kind is str:
        if not text:
            raise TableFormatError(f"empty {column!r}", path, line)
        return text
    try:
        if kind is int:
            val = float(text)
            if val != int(val):
                raise ValueError
            return int(val)
        val = float(text)
    except (ValueError, OverflowError):
        raise TableFormatError(
            f"column {column!r} expects {kind.__name__}, got {raw!r}", path, line
        ) from None
    if not math.isfinite(val):
        raise TableFormatError(f"column {column!r} is not finite: {raw!r}", path, line)
    return val


def read_table(path, schema: TableSchema) -> list[dict]:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise EmptyDatasetError(f"{schema.name} file is empty", path) from None
        defaults = dict(schema.defaults)
        missing = [c for c in schema.names if c not in header and c not in defaults]
        if missing:
            raise TableFormatError(
                f"{schema.name} schema needs columns {schema.names}; missing {missing}", path, 1
            )
        index = {c: header.index(c) for c in schema.names if c in header}
        records = []
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise TableFormatError(
                    f"expected {len(header)} fields, found {len(row)}", path, line
                )
            records.append(
                {
                    c: _parse(row[index[c]], kind, c, path, line) if c in index else defaults[c]
                    for c, kind in schema.columns
                }
            )
    if not records:
        raise EmptyDatasetError(f"{schema.name} file has a header but no rows", path)
    return records


def write_table(path, schema: TableSchema, records: Iterable[Mapping]):
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(schema.names)
        for rec in records:
            writer.writerow([format_number(rec[c]) for c in schema.names])


def _group(records: list[dict]) -> dict[str, list[dict]]:
    groups: dict[str, list[dict]] = {}
    for rec in records:
        groups.setdefault(rec["group_id"], []).append(rec)
    return groups


def read_raw_values(path) -> dict[str, np.ndarray]:
    return {
        gid: np.array([r["value"] for r in rows])
        for gid, rows in _group(read_table(path, RAW_VALUES)).items()
    }


def read_clr_samples(path) -> dict[str, ClrSample]:
    """Group-wise clr samples, in order of first appearance of each group."""
    out = {}
    for gid, rows in _group(read_table(path, CLR_SAMPLES)).items():
        rows = sorted(rows, key=lambda r: r["t"])
        try:
            out[gid] = ClrSample(
                [r["t"] for r in rows], [r["clr_value"] for r in rows], [r["weight"] for r in rows]
            )
        except ValueError as exc:
            raise TableFormatError(f"group {gid!r}: {exc}", Path(path)) from None
    return out


def write_clr_samples(path, samples: Mapping[str, ClrSample]):
    write_table(
        path,
        CLR_SAMPLES,
        (
            {"group_id": gid, "t": t, "clr_value": y, "weight": w}
            for gid, s in samples.items()
            for t, y, w in zip(s.t, s.y, s.w)
        ),
    )


def read_histograms(path, n_obs: Mapping[str, int]) -> dict[str, HistogramData]:
    """Histograms from a CSV holding either a ``count`` or a ``proportion`` column.

    Class edges are recovered from the equally spaced midpoints, so every group
    needs at least two classes.  ``n_obs`` gives the sample size per group; it
    is required for proportion tables and checked against count tables.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        header = next(csv.reader(fh), [])
    header = [h.strip() for h in header]
    by_count = "count" in header
    schema = HISTOGRAM_COUNTS if by_count else HISTOGRAM_PROPORTIONS
    out = {}
    for gid, rows in _group(read_table(path, schema)).items():
        rows = sorted(rows, key=lambda r: r["midpoint"])
        mids = np.array([r["midpoint"] for r in rows])
        if mids.size < 2:
            raise TableFormatError(f"group {gid!r} needs at least two classes", path)
        width = (mids[-1] - mids[0]) / (mids.size - 1)
        edges = np.append(mids - width / 2, mids[-1] + width / 2)
        if by_count:
            counts = np.array([r["count"] for r in rows])
            n = int(counts.sum())
            if gid in n_obs and n_obs[gid] != n:
                raise TableFormatError(
                    f"group {gid!r}: counts sum to {n} but n_obs is {n_obs[gid]}", path
                )
            if n == 0:
                raise TableFormatError(f"group {gid!r} has no observations", path)
            out[gid] = HistogramData(edges, counts / n, n, counts)
        else:
            if gid not in n_obs:
                raise TableFormatError(f"group {gid!r}: n_obs is required for proportions", path)
            p = np.array([r["proportion"] for r in rows])
            out[gid] = HistogramData(edges, p, n_obs[gid])
    return out
