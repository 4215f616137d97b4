"""Intensity time series, contrast statistics and log-binned densities.

A speckle record is the sequence I(t) = |amplitude(t)|^2 sampled on a
coarse time grid; the step must stay large against the inverse hopping
so that successive samples decorrelate. Summaries use population
moments, so the contrast and the second normalized moment satisfy
m2 - 1 = C^2 identically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .spectral import PhasorList

#: below step * J = 10 successive samples are no longer independent draws
MIN_DECORRELATION_STEP = 10.0


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling times t_start + k * step, k = 0..count-1 (1/J units)."""

    t_start: float
    step: float
    count: int
    label: str = "custom"

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("time grid needs at least two samples")
        if self.t_start < 0 or self.step < 0:
            raise ValueError("time grid must not reach negative times")
        if self.step < MIN_DECORRELATION_STEP:
            warnings.warn(
                f"time step {self.step:g} is below {MIN_DECORRELATION_STEP:g}/J; "
                "samples will be correlated",
                stacklevel=2,
            )

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.step * np.arange(self.count, dtype=float)


def default_windows(delta: float = 1.0e5, step: float = 100.0):
    """Short/intermediate/long observation windows (T0, T0 + delta], stepped.

    The left endpoint is skipped: at t = 0 the intensity is a deterministic
    Kronecker delta and does not belong to the stationary ensemble.
    """
    count = max(2, int(round(delta / step)))
    return [
        TimeGrid(t0 + step, step, count, label)
        for label, t0 in (("short", 0.0), ("intermediate", 1.0e6), ("long", 1.0e9))
    ]


@dataclass(frozen=True)
class IntensitySeries:
    """Sampled intensities plus the grid and free-form provenance."""

    values: np.ndarray
    grid: TimeGrid
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return self.values.shape[0]


def sample_series(source, grid: TimeGrid, meta: dict | None = None) -> IntensitySeries:
    """Evaluate I(t) = |amplitude(t)|^2 on the grid.

    `source` is either a PhasorList or a callable mapping a time array to
    complex amplitudes.
    """
    times = grid.times
    if isinstance(source, PhasorList):
        values = kernels.intensity_series(source.coefficients, source.energies, times)
    else:
        amps = np.asarray(source(times))
        values = np.abs(amps) ** 2
    if values.shape != times.shape:
        raise ValueError("amplitude source returned a wrong-length array")
    values.setflags(write=False)
    return IntensitySeries(values=values, grid=grid, meta=dict(meta or {}))


@dataclass(frozen=True)
class SpeckleSummary:
    """Population statistics of one intensity record."""

    mean: float
    std: float
    contrast: float
    moment2: float
    moment3: float
    moment4: float
    count: int


def _values_of(series) -> np.ndarray:
    if isinstance(series, IntensitySeries):
        return series.values
    return np.asarray(series, dtype=float)


def summarize(series) -> SpeckleSummary:
    """Mean, contrast and normalized moments <I^n>/<I>^n for n = 2, 3, 4."""
    values = _values_of(series)
    if values.size == 0:
        raise ValueError("empty intensity series")
    mean = float(values.mean())
    if mean <= 0:
        raise ValueError("intensity series has non-positive mean")
    x = values / mean
    m2 = float((x * x).mean())
    m3 = float((x * x * x).mean())
    m4 = float((x * x * x * x).mean())
    contrast = math.sqrt(max(0.0, m2 - 1.0))
    return SpeckleSummary(
        mean=mean,
        std=mean * contrast,
        contrast=contrast,
        moment2=m2,
        moment3=m3,
        moment4=m4,
        count=values.size,
    )


@dataclass(frozen=True)
class Histogram:
    """Log-binned density estimate on the normalized axis I/<I>.

    Density is normalized over the in-range bins; samples at zero or
    outside the range are counted as underflow/overflow.
    """

    edges: np.ndarray
    centers: np.ndarray
    density: np.ndarray
    counts: np.ndarray
    underflow: int
    overflow: int
    n_samples: int
    mean: float


def log_histogram(series, bins_per_decade: int = 16, lo: float = 1e-4, hi: float = 1e2) -> Histogram:
    """Histogram of I/<I> with logarithmic bins spanning [lo, hi]."""
    values = _values_of(series)
    if values.size == 0:
        raise ValueError("empty intensity series")
    if not (lo > 0 and hi > lo):
        raise ValueError("histogram range must satisfy 0 < lo < hi")
    mean = float(values.mean())
    if mean <= 0:
        raise ValueError("intensity series has non-positive mean")
    x = values / mean
    n_decades = math.log10(hi / lo)
    n_bins = max(1, int(round(bins_per_decade * n_decades)))
    edges = np.logspace(math.log10(lo), math.log10(hi), n_bins + 1)
    counts, _ = np.histogram(x, bins=edges)
    underflow = int((x < edges[0]).sum())
    overflow = int((x > edges[-1]).sum())
    in_range = int(counts.sum())
    if in_range == 0:
        raise ValueError("all samples fall outside the histogram range")
    widths = np.diff(edges)
    density = counts / (in_range * widths)
    centers = np.sqrt(edges[:-1] * edges[1:])
    return Histogram(
        edges=edges,
        centers=centers,
        density=density,
        counts=counts,
        underflow=underflow,
        overflow=overflow,
        n_samples=values.size,
        mean=mean,
    )


def windowed_contrast(source, windows) -> dict:
    """One summary per observation window, keyed by the window label."""
    out: dict[str, SpeckleSummary] = {}
    for grid in windows:
        if grid.label in out:
            raise ValueError(f"duplicate window label {grid.label!r}")
        out[grid.label] = summarize(sample_series(source, grid))
    return out


@dataclass(frozen=True)
class EnsembleStat:
    """Disorder-ensemble mean of a contrast value with its standard error."""

    mean: float
    std: float
    stderr: float
    count: int


def ensemble_average(experiment, seeds) -> dict:
    """Aggregate `experiment(seed) -> {key: contrast}` over disorder seeds.

    Returns per-key mean, population standard deviation and standard
    error. One seed passes through with zero dispersion.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    collected: dict = {}
    for seed in seeds:
        for key, value in experiment(seed).items():
            collected.setdefault(key, []).append(float(value))
    out = {}
    for key, vals in collected.items():
        arr = np.asarray(vals)
        std = float(arr.std())
        out[key] = EnsembleStat(
            mean=float(arr.mean()),
            std=std,
            stderr=std / math.sqrt(arr.size),
            count=arr.size,
        )
    return out
