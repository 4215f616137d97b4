"""Intensity distribution family and moment-based fitting.

Five laws cover the speckle records this package produces: exponential
(fully developed), K with integer shape (products and two-phasor sums of
exponential intensities), the bound-pair Weibull (squared exponential),
Rician (one dominant phasor over a diffuse background) and its compound
generalization averaged over an empirical dominance-ratio density g(r).

Densities are per unit intensity. The K law with shape 1 and the Weibull
diverge (integrably) at I = 0; evaluating them there returns +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .special import gamma_fn, i0e, kne
from .spectral import PhasorList


class FitError(ValueError):
    """A requested moment fit has no valid parameters for this record."""


def _pos(name, value):
    if not value > 0:
        raise ValueError(f"{name} must be positive")


def _nonneg_intensity(i):
    arr = np.asarray(i, dtype=float)
    if np.any(arr < 0):
        raise ValueError("intensity must be non-negative")
    return arr


def pdf_exponential(i, mean):
    """Exponential intensity density with the given mean."""
    _pos("mean", mean)
    arr = _nonneg_intensity(i)
    return np.exp(-arr / mean) / mean


def _check_integer_shape(shape) -> int:
    if shape != int(shape) or int(shape) < 1:
        raise ValueError(
            "K density evaluation supports integer shape >= 1; "
            "non-integer shapes arise only as fitted diagnostics"
        )
    return int(shape)


def pdf_k(i, mean, shape):
    """K-distribution density with mean `mean` and integer shape `shape`.

    Shape 1 is the product of two independent exponential intensities;
    shape 2 arises from two-phasor sums of such products. Diverges at
    I = 0 for shape 1.
    """
    _pos("mean", mean)
    _pos("shape", shape)
    nu = _check_integer_shape(shape)
    arr = _nonneg_intensity(i)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    zero = arr == 0.0
    out[zero] = np.inf if nu == 1 else nu / (mean * (nu - 1))
    pos = ~zero
    if pos.any():
        root = np.sqrt(arr[pos] * nu / mean)
        # scaled Bessel keeps the tail finite: K_n(x) = e^-x * kne(n, x)
        out[pos] = (
            (2.0 * nu / (mean * gamma_fn(nu)))
            * root ** (nu - 1)
            * np.exp(-2.0 * root)
            * kne(nu - 1, 2.0 * root)
        )
    return float(out[0]) if scalar else out


def k_contrast(shape):
    """Contrast of the K law: sqrt((shape + 2) / shape)."""
    _pos("shape", shape)
    return math.sqrt((shape + 2.0) / shape)


def pdf_weibull_bound(i, mean):
    """Density of a squared exponential intensity (bound-pair transitions).

    With y = I/mean: mean^-1 (2y)^(-1/2) exp(-sqrt(2y)); diverges at I = 0.
    """
    _pos("mean", mean)
    arr = _nonneg_intensity(i)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    zero = arr == 0.0
    out[zero] = np.inf
    pos = ~zero
    if pos.any():
        y2 = 2.0 * arr[pos] / mean
        out[pos] = np.exp(-np.sqrt(y2)) / (mean * np.sqrt(y2))
    return float(out[0]) if scalar else out


def pdf_rician(i, ratio, background):
    """Rician intensity density: one constant phasor over a diffuse background.

    `ratio` is the dominant-to-background intensity ratio r = I0/s_n and
    `background` the diffuse mean s_n; the mean is background * (1 + ratio).
    At ratio = 0 this reduces exactly to the exponential density.
    """
    _pos("background", background)
    ratio_arr = np.asarray(ratio, dtype=float)
    if np.any(ratio_arr < 0):
        raise ValueError("dominance ratio must be non-negative")
    arr = _nonneg_intensity(i)
    root = 2.0 * np.sqrt(arr * ratio_arr / background)
    exponent = root - ratio_arr - arr / background
    return np.exp(exponent) * i0e(root) / background


def rician_contrast(ratio):
    """Contrast of the Rician law: sqrt(1 + 2r) / (1 + r)."""
    if ratio < 0:
        raise ValueError("dominance ratio must be non-negative")
    return math.sqrt(1.0 + 2.0 * ratio) / (1.0 + ratio)


def build_g_of_r(phasors, n_dominant: int = 4, mc_samples: int = 100_000, seed: int = 0):
    """Empirical dominance-ratio samples from a transition's phasor sum.

    Separates the `n_dominant` largest coefficients from the diffuse rest,
    whose mean intensity is s_n = sum of the remaining |b_k|^2. The
    dominant resultant intensity I0 is sampled by drawing i.i.d. uniform
    phases for the dominant phasors; returns (r_samples, s_n) with
    r = I0 / s_n.
    """
    coeffs = phasors.coefficients if isinstance(phasors, PhasorList) else np.asarray(phasors, float)
    if coeffs.size == 0:
        raise ValueError("empty phasor list")
    if not 1 <= n_dominant < coeffs.size:
        raise ValueError("need 1 <= n_dominant < number of phasors")
    order = np.argsort(np.abs(coeffs))[::-1]
    dominant = coeffs[order[:n_dominant]]
    rest = coeffs[order[n_dominant:]]
    s_n = float(np.sum(np.abs(rest) ** 2))
    if s_n == 0.0:
        raise ValueError("all weight sits in the dominant phasors; background is empty")
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=(int(mc_samples), n_dominant))
    re = np.cos(phases) @ dominant
    im = np.sin(phases) @ dominant
    r_samples = (re * re + im * im) / s_n
    return r_samples, s_n


def pdf_compound_rician(i, r_samples, background):
    """Rician density averaged over empirical dominance-ratio samples."""
    r_samples = np.asarray(r_samples, dtype=float)
    if r_samples.size == 0:
        raise ValueError("empty dominance-ratio sample set")
    arr = _nonneg_intensity(i)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    acc = np.zeros_like(arr)
    step = max(1, 4_000_000 // max(1, arr.size))
    for lo in range(0, r_samples.size, step):
        chunk = r_samples[lo : lo + step]
        acc += pdf_rician(arr[:, None], chunk[None, :], background).sum(axis=1)
    acc /= r_samples.size
    return float(acc[0]) if scalar else acc


def _numeric_cdf(pdf, points, upper):
    """CDF of a density on [0, inf) by trapezoid integration in u = sqrt(I).

    The substitution removes the integrable divergences at I = 0 that the
    K (shape 1) and Weibull laws carry.
    """
    points = np.asarray(points, dtype=float)
    u_max = math.sqrt(max(upper, float(points.max()) if points.size else upper))
    grid = np.linspace(0.0, u_max, 4001)
    g = np.empty_like(grid)
    g[0] = 0.0  # 2u * pdf(u^2) -> 0 for every law in the family
    g[1:] = 2.0 * grid[1:] * pdf(grid[1:] ** 2)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (g[1:] + g[:-1]) * np.diff(grid))])
    vals = np.interp(np.sqrt(np.maximum(points, 0.0)), grid, cdf)
    # mass beyond the grid is negligible by construction of `upper`
    return np.clip(vals, 0.0, 1.0)


@dataclass(frozen=True)
class ExponentialModel:
    mean: float
    kind: ClassVar[str] = "exponential"

    def pdf(self, i):
        return pdf_exponential(i, self.mean)

    def cdf(self, i):
        return 1.0 - np.exp(-_nonneg_intensity(i) / self.mean)

    @property
    def contrast(self):
        return 1.0

    def params(self):
        return {"mean": self.mean}


@dataclass(frozen=True)
class KDistModel:
    mean: float
    shape: float
    kind: ClassVar[str] = "k"

    @property
    def pdf_supported(self):
        return self.shape == int(self.shape) and self.shape >= 1

    def pdf(self, i):
        return pdf_k(i, self.mean, self.shape)

    def cdf(self, i):
        return _numeric_cdf(self.pdf, i, upper=50.0 * self.mean)

    @property
    def contrast(self):
        return k_contrast(self.shape)

    def params(self):
        return {"mean": self.mean, "shape": self.shape}


@dataclass(frozen=True)
class WeibullBoundModel:
    mean: float
    kind: ClassVar[str] = "weibull_bound"

    def pdf(self, i):
        return pdf_weibull_bound(i, self.mean)

    def cdf(self, i):
        # I = X^2 with exponential X of mean sqrt(mean/2)
        return 1.0 - np.exp(-np.sqrt(2.0 * _nonneg_intensity(i) / self.mean))

    @property
    def contrast(self):
        return math.sqrt(5.0)

    def params(self):
        return {"mean": self.mean}


@dataclass(frozen=True)
class RicianModel:
    ratio: float
    background: float
    kind: ClassVar[str] = "rician"

    @property
    def mean(self):
        return self.background * (1.0 + self.ratio)

    def pdf(self, i):
        return pdf_rician(i, self.ratio, self.background)

    def cdf(self, i):
        upper = self.mean + 40.0 * self.background + 10.0 * self.mean
        return _numeric_cdf(self.pdf, i, upper=upper)

    @property
    def contrast(self):
        return rician_contrast(self.ratio)

    def params(self):
        return {"ratio": self.ratio, "background": self.background}


@dataclass(frozen=True)
class CompoundRicianModel:
    r_samples: np.ndarray
    background: float
    kind: ClassVar[str] = "compound_rician"

    @property
    def mean(self):
        return self.background * (1.0 + float(np.mean(self.r_samples)))

    def pdf(self, i):
        return pdf_compound_rician(i, self.r_samples, self.background)

    def cdf(self, i):
        # quantile-stratified decimation keeps the mixture CDF tractable;
        # the pdf itself always uses the full sample set
        r = np.sort(np.asarray(self.r_samples, dtype=float))
        if r.size > 4000:
            picks = ((np.arange(4000) + 0.5) * r.size / 4000).astype(int)
            r = r[picks]
        upper = self.background * (3.0 + 3.0 * float(np.quantile(r, 0.999))) + 40.0 * self.background
        pdf = lambda i_: pdf_compound_rician(i_, r, self.background)
        return _numeric_cdf(pdf, i, upper=upper)

    @property
    def contrast(self):
        r = np.asarray(self.r_samples, dtype=float)
        m1 = 1.0 + r.mean()
        m2 = float((r * r).mean() + 4.0 * r.mean() + 2.0)
        return math.sqrt(max(0.0, m2 - m1 * m1)) / m1

    def params(self):
        return {"background": self.background, "n_r_samples": int(np.size(self.r_samples))}


def invert_rician_contrast(contrast, tol=1e-10, r_max=1e6):
    """Dominance ratio with the given Rician contrast, by bisection.

    The contrast decreases from 1 at r = 0 toward 0, so the solution is
    unique for contrast in (0, 1].
    """
    if not 0.0 < contrast <= 1.0:
        raise FitError(f"contrast {contrast:g} is outside the Rician range (0, 1]")
    if rician_contrast(r_max) > contrast:
        raise FitError(f"contrast {contrast:g} needs a dominance ratio beyond {r_max:g}")
    lo, hi = 0.0, r_max
    while rician_contrast(lo) - rician_contrast(hi) > tol:
        mid = 0.5 * (lo + hi)
        if rician_contrast(mid) >= contrast:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_SQRT3 = math.sqrt(3.0)


def fit_by_moments(values, kind: str):
    """Closed-form moment fit of one family member to an intensity record.

    Kinds: "exponential", "k1", "k2", "k_solve" (shape from the contrast,
    usually non-integer), "weibull_bound", "rician". Raises FitError when
    the record's contrast is incompatible with the requested family.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("empty intensity series")
    mean = float(arr.mean())
    if mean <= 0:
        raise ValueError("intensity series has non-positive mean")
    m2 = float(np.mean((arr / mean) ** 2))
    contrast = math.sqrt(max(0.0, m2 - 1.0))
    if kind == "exponential":
        return ExponentialModel(mean=mean)
    if kind in ("k1", "k2"):
        return KDistModel(mean=mean, shape=1.0 if kind == "k1" else 2.0)
    if kind == "k_solve":
        if contrast <= 1.0:
            raise FitError(f"contrast {contrast:g} <= 1: no positive K shape reproduces it")
        if contrast > _SQRT3:
            raise FitError(
                f"contrast {contrast:g} > sqrt(3): K shape would drop below 1, "
                "outside the family used here"
            )
        return KDistModel(mean=mean, shape=2.0 / (contrast**2 - 1.0))
    if kind == "weibull_bound":
        return WeibullBoundModel(mean=mean)
    if kind == "rician":
        if contrast > 1.0:
            raise FitError(f"contrast {contrast:g} > 1 is not Rician-compatible")
        if contrast == 0.0:
            raise FitError("zero contrast: Rician dominance ratio diverges (degenerate)")
        ratio = invert_rician_contrast(contrast)
        return RicianModel(ratio=ratio, background=mean / (1.0 + ratio))
    raise ValueError(f"unknown fit kind {kind!r}")


def ks_distance(values, model):
    """Kolmogorov-Smirnov distance between a record and a fitted model."""
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("empty intensity series")
    cdf = model.cdf(x)
    steps_lo = np.arange(n) / n
    steps_hi = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(np.abs(cdf - steps_lo), np.abs(cdf - steps_hi))))
