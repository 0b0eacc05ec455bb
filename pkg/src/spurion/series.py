"""Year-indexed series, CSV ingestion and the pre-test transformations."""
from __future__ import annotations

import csv
import enum
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, SeriesError

ENV_DATA_DIR = "SPURION_DATA_DIR"
MIN_OVERLAP = 10


class TransformTag(str, enum.Enum):
    LEVEL = "level"
    LOG = "log"
    FIRST_DIFFERENCE = "first_difference"
    GROWTH_RATE = "growth_rate"


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A gap-free annual (or pseudo-annual) series.

    ``values[k]`` is the observation for year ``start_index + k``. The array
    is stored read-only; transformations return new objects and append to
    ``tags``.
    """

    label: str
    start_index: int
    values: np.ndarray
    unit: str = ""
    provenance: str = ""
    tags: tuple = (TransformTag.LEVEL,)

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise SeriesError(f"{self.label}: values must be a non-empty 1-d sequence")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise SeriesError(
                f"{self.label}: non-finite value at year {self.start_index + int(bad[0])}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "start_index", int(self.start_index))
        object.__setattr__(self, "tags", tuple(TransformTag(t) for t in self.tags))

    def __len__(self):
        return self.values.size

    @property
    def end_index(self):
        return self.start_index + self.values.size - 1

    @property
    def index(self):
        return np.arange(self.start_index, self.end_index + 1)

    def _derive(self, values, *, tag, unit, note, start_index=None):
        return replace(
            self,
            values=values,
            start_index=self.start_index if start_index is None else start_index,
            unit=unit,
            provenance=f"{self.provenance} | {note}" if self.provenance else note,
            tags=self.tags + (tag,),
        )

    def to_dict(self):
        return {
            "label": self.label,
            "start_index": self.start_index,
            "end_index": self.end_index,
            "unit": self.unit,
            "provenance": self.provenance,
            "tags": [t.value for t in self.tags],
            "values": self.values.tolist(),
        }


def ingest_csv(path, label=None, unit=""):
    """Read a ``year,value`` CSV into a :class:`TimeSeries`.

    Errors name the offending line (1-based, header is line 1).
    """
    path = Path(path)
    if not path.is_file():
        raise SeriesError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or [c.strip() for c in rows[0]] != ["year", "value"]:
        raise SeriesError(f"{path}: line 1: header must be exactly 'year,value'")
    years, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise SeriesError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
        try:
            year = int(row[0].strip())
        except ValueError:
            raise SeriesError(f"{path}: line {lineno}: unparseable year {row[0]!r}") from None
        try:
            value = float(row[1].strip())
        except ValueError:
            raise SeriesError(f"{path}: line {lineno}: unparseable value {row[1]!r}") from None
        if not math.isfinite(value):
            raise SeriesError(f"{path}: line {lineno}: non-finite value {row[1].strip()!r}")
        if years:
            expected = years[-1] + 1
            if year < expected:
                raise SeriesError(f"{path}: line {lineno}: year {year} out of order")
            if year > expected:
                gap = f"{expected}" if year == expected + 1 else f"{expected}-{year - 1}"
                raise SeriesError(f"{path}: line {lineno}: gap at {gap}")
        years.append(year)
        values.append(value)
    if not years:
        raise SeriesError(f"{path}: no data rows")
    return TimeSeries(
        label=label or path.stem,
        start_index=years[0],
        values=np.array(values),
        unit=unit,
        provenance=str(path),
    )


def log_transform(s):
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        k = int(bad[0])
        raise SeriesError(
            f"{s.label}: log of non-positive value {s.values[k]!r} at index {k} "
            f"(year {s.start_index + k})"
        )
    return s._derive(np.log(s.values), tag=TransformTag.LOG, unit=f"ln {s.unit}".strip(), note="ln")


def first_difference(s):
    if len(s) < 2:
        raise SeriesError(f"{s.label}: need at least 2 observations to difference")
    return s._derive(
        np.diff(s.values),
        tag=TransformTag.FIRST_DIFFERENCE,
        unit=f"Δ{s.unit}",
        note="Δ",
        start_index=s.start_index + 1,
    )


def growth_rate(s):
    if len(s) < 2:
        raise SeriesError(f"{s.label}: need at least 2 observations for a growth rate")
    prev = s.values[:-1]
    zero = np.flatnonzero(prev == 0)
    if zero.size:
        k = int(zero[0])
        raise SeriesError(f"{s.label}: zero denominator at index {k} (year {s.start_index + k})")
    return s._derive(
        np.diff(s.values) / prev,
        tag=TransformTag.GROWTH_RATE,
        unit=f"{s.unit} growth rate".strip(),
        note="growth",
        start_index=s.start_index + 1,
    )


def restrict_window(s, start, end):
    """Sub-series over ``[start, end]`` intersected with the available years."""
    if start > end:
        raise SeriesError(f"window start {start} is after end {end}")
    lo, hi = max(start, s.start_index), min(end, s.end_index)
    if lo > hi:
        raise SeriesError(
            f"{s.label}: window {start}-{end} does not intersect {s.start_index}-{s.end_index}"
        )
    if lo == s.start_index and hi == s.end_index:
        return s
    return replace(
        s,
        start_index=lo,
        values=s.values[lo - s.start_index : hi - s.start_index + 1],
        provenance=f"{s.provenance} | window {lo}-{hi}",
    )


def align_pair(a, b, min_overlap=MIN_OVERLAP):
    lo, hi = max(a.start_index, b.start_index), min(a.end_index, b.end_index)
    if hi - lo + 1 < min_overlap:
        raise SeriesError(
            f"{a.label} ({a.start_index}-{a.end_index}) and {b.label} "
            f"({b.start_index}-{b.end_index}) overlap in fewer than {min_overlap} years"
        )
    return restrict_window(a, lo, hi), restrict_window(b, lo, hi)


def align_all(series, min_overlap=MIN_OVERLAP):
    """Restrict any number of series to their common year range."""
    lo = max(s.start_index for s in series)
    hi = min(s.end_index for s in series)
    if hi - lo + 1 < min_overlap:
        labels = ", ".join(s.label for s in series)
        raise SeriesError(f"{labels}: common range shorter than {min_overlap} years")
    return [restrict_window(s, lo, hi) for s in series]


def fake_annualize(s, start_year):
    """Relabel observation k as pseudo-year ``start_year + k``; values untouched."""
    note = "fake-annualized"
    prov = s.provenance if s.provenance.endswith(note) else (
        f"{s.provenance} | {note}" if s.provenance else note
    )
    return replace(s, start_index=int(start_year), provenance=prov)


def cumulative_reconstruct(first_value, diffs):
    """Inverse of :func:`first_difference` given the initial level."""
    out = np.empty(len(diffs) + 1)
    out[0] = first_value
    np.cumsum(diffs, out=out[1:])
    out[1:] += first_value
    return out


@dataclass
class DatasetRegistry:
    """A directory of ``<label>.csv`` files, addressed by file stem."""

    directory: Path
    units: dict = field(default_factory=dict)

    @classmethod
    def resolve(cls, data_dir=None):
        data_dir = data_dir or os.environ.get(ENV_DATA_DIR)
        if not data_dir:
            raise ConfigError(f"no data directory: pass --data-dir or set {ENV_DATA_DIR}")
        path = Path(data_dir)
        if not path.is_dir():
            raise ConfigError(f"data directory does not exist: {path}")
        return cls(path)

    def labels(self):
        return sorted(p.stem for p in Path(self.directory).glob("*.csv"))

    def __contains__(self, label):
        return bool(label) and (Path(self.directory) / f"{label}.csv").is_file()

    def load(self, label):
        if not label or label not in self:
            raise ConfigError(f"unknown dataset label {label!r} in {self.directory}")
        return ingest_csv(Path(self.directory) / f"{label}.csv", label=label,
                          unit=self.units.get(label, ""))
