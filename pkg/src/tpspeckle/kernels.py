"""Hot numerical kernels: phasor sums over eigenmodes.

Every amplitude in the package reduces to sums of the form
``sum_k b_k exp(-i E_k t)`` evaluated on many time points, so these two
loops dominate the runtime of any experiment. They are compiled with
numba when it is installed; set ``TPSPECKLE_NO_NUMBA=1`` to force the
pure-numpy fallback (the benchmark in ``benchmarks/`` compares both).
"""

import os

import numpy as np

_DISABLED = os.environ.get("TPSPECKLE_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled via TPSPECKLE_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

# elements of the (times x modes) phase block held in memory at once
_CHUNK = 2_000_000


def _as_f64(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64))


def phasor_sum_numpy(coeffs, energies, times):
    """``sum_k coeffs[k] * exp(-1j * energies[k] * t)`` for each t."""
    coeffs = _as_f64(coeffs)
    energies = _as_f64(energies)
    times = _as_f64(times)
    out = np.empty(times.shape[0], dtype=np.complex128)
    step = max(1, _CHUNK // max(1, energies.shape[0]))
    for lo in range(0, times.shape[0], step):
        hi = min(lo + step, times.shape[0])
        phase = np.exp(np.outer(times[lo:hi], energies) * (-1j))
        out[lo:hi] = phase @ coeffs
    return out


def intensity_series_numpy(coeffs, energies, times):
    """Squared modulus of the phasor sum at each time point."""
    amps = phasor_sum_numpy(coeffs, energies, times)
    return (amps.real * amps.real + amps.imag * amps.imag)


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _phasor_sum_numba(coeffs, energies, times):
        n_t = times.shape[0]
        n_k = energies.shape[0]
        out = np.empty(n_t, dtype=np.complex128)
        for j in range(n_t):
            t = times[j]
            re = 0.0
            im = 0.0
            for k in range(n_k):
                ph = energies[k] * t
                re += coeffs[k] * np.cos(ph)
                im -= coeffs[k] * np.sin(ph)
            out[j] = complex(re, im)
        return out

    @njit(cache=True, nogil=True)
    def _intensity_series_numba(coeffs, energies, times):
        n_t = times.shape[0]
        n_k = energies.shape[0]
        out = np.empty(n_t, dtype=np.float64)
        for j in range(n_t):
            t = times[j]
            re = 0.0
            im = 0.0
            for k in range(n_k):
                ph = energies[k] * t
                re += coeffs[k] * np.cos(ph)
                im -= coeffs[k] * np.sin(ph)
            out[j] = re * re + im * im
        return out

    def phasor_sum(coeffs, energies, times):
        return _phasor_sum_numba(_as_f64(coeffs), _as_f64(energies), _as_f64(times))

    def intensity_series(coeffs, energies, times):
        return _intensity_series_numba(_as_f64(coeffs), _as_f64(energies), _as_f64(times))

else:
    phasor_sum = phasor_sum_numpy
    intensity_series = intensity_series_numpy

phasor_sum.__doc__ = phasor_sum_numpy.__doc__
intensity_series.__doc__ = intensity_series_numpy.__doc__


def active_backend():
    """Name of the kernel backend selected at import time."""
    return "numba" if HAVE_NUMBA else "numpy"
