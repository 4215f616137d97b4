"""Exact spectral propagation and transition amplitudes.

Diagonalizes the sector Hamiltonians once and evaluates transition
amplitudes at arbitrary times as phasor sums over eigenmodes, which is
the only viable route to the huge times (up to 1e9 in inverse-hopping
units) the experiments sample. Also provides the symmetrized two-particle
amplitudes, the phasor decomposition of a transition, and the
double-occupancy classification of bosonic eigenstates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import (
    BOSONIC,
    DISTINGUISHABLE,
    FERMIONIC,
    SINGLE,
    BasisIndex,
    HamiltonianMatrix,
)

_SQRT1_2 = 1.0 / math.sqrt(2.0)


class EigensolverError(RuntimeError):
    """Raised when the dense symmetric eigensolver does not converge."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and orthonormal eigenvector columns of one sector."""

    subspace: str
    energies: np.ndarray
    vectors: np.ndarray
    basis: BasisIndex | None = None

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    def flat(self, m, n=None) -> int:
        if self.basis is None:
            raise ValueError("decomposition carries no site-pair basis")
        return self.basis.flat(m, n)


def diagonalize(ham) -> SpectralDecomposition:
    """Dense symmetric eigendecomposition of a sector Hamiltonian.

    Accepts a HamiltonianMatrix or a plain symmetric array. Eigenvalues
    come out ascending; eigenvectors are the columns of `vectors`.
    """
    if isinstance(ham, HamiltonianMatrix):
        mat, subspace, basis = ham.matrix, ham.subspace, ham.basis
    else:
        mat = np.asarray(ham, dtype=float)
        subspace, basis = "custom", None
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(mat, mat.T):
        raise ValueError("matrix is not symmetric")
    try:
        energies, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigensolver failed on {subspace} matrix of dim {mat.shape[0]} "
            f"(LAPACK iteration budget exhausted): {exc}"
        ) from exc
    energies.setflags(write=False)
    vectors.setflags(write=False)
    return SpectralDecomposition(subspace, energies, vectors, basis)


def _check_flat(dec: SpectralDecomposition, idx: int):
    if not 0 <= idx < dec.dim:
        raise IndexError(f"basis index {idx} outside [0, {dec.dim})")


def phasor_coefficients(dec: SpectralDecomposition, idx_in: int, idx_out: int) -> np.ndarray:
    """Per-mode weights b_k = v_k[out] * v_k[in] of the transition phasor sum."""
    _check_flat(dec, idx_in)
    _check_flat(dec, idx_out)
    return dec.vectors[idx_out, :] * dec.vectors[idx_in, :]


def transition_amplitude(dec: SpectralDecomposition, idx_in: int, idx_out: int, t):
    """<out| exp(-i H t) |in> at scalar or array times."""
    coeffs = phasor_coefficients(dec, idx_in, idx_out)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = kernels.phasor_sum(coeffs, dec.energies, t_arr)
    return out[0] if np.ndim(t) == 0 else out


def product_amplitude(dec1: SpectralDecomposition, m: int, n: int, p: int, q: int, t):
    """Two-particle amplitude (m,n) -> (p,q) as a product of one-particle ones.

    Exact only for non-interacting particles, where the two-particle
    evolution factorizes.
    """
    if dec1.subspace != SINGLE:
        raise ValueError("product amplitude needs the single-particle decomposition")
    f1 = transition_amplitude(dec1, dec1.flat(m), dec1.flat(p), t)
    f2 = transition_amplitude(dec1, dec1.flat(n), dec1.flat(q), t)
    return f1 * f2


def bosonic_amplitude(dec_b: SpectralDecomposition, m: int, n: int, p: int, q: int, t):
    """Amplitude between normalized symmetric pair states; pairs are canonicalized."""
    if dec_b.subspace != BOSONIC:
        raise ValueError("needs a bosonic-sector decomposition")
    return transition_amplitude(dec_b, dec_b.flat(m, n), dec_b.flat(p, q), t)


def fermionic_amplitude(dec_f: SpectralDecomposition, m: int, n: int, p: int, q: int, t):
    """Amplitude between antisymmetric pair states; requires m < n and p < q."""
    if dec_f.subspace != FERMIONIC:
        raise ValueError("needs a fermionic-sector decomposition")
    return transition_amplitude(dec_f, dec_f.flat(m, n), dec_f.flat(p, q), t)


def distinguishable_amplitude(dec_d: SpectralDecomposition, m: int, n: int, p: int, q: int, t):
    """Exact matrix element of exp(-iHt) on the full two-particle space."""
    if dec_d.subspace != DISTINGUISHABLE:
        raise ValueError("needs the distinguishable-sector decomposition")
    return transition_amplitude(dec_d, dec_d.flat(m, n), dec_d.flat(p, q), t)


def _block_weights(m: int, n: int):
    if m == n:
        return 1.0, 0.0
    sign = 1.0 if m < n else -1.0
    return _SQRT1_2, sign * _SQRT1_2


def distinguishable_amplitude_blocks(
    dec_b: SpectralDecomposition,
    dec_f: SpectralDecomposition,
    m: int,
    n: int,
    p: int,
    q: int,
    t,
):
    """Distinguishable amplitude assembled from the two symmetry sectors.

    Decomposes the input and output kets into their symmetric and
    antisymmetric components and propagates each in its own block.
    """
    wb_in, wf_in = _block_weights(m, n)
    wb_out, wf_out = _block_weights(p, q)
    amp = wb_out * wb_in * bosonic_amplitude(dec_b, min(m, n), max(m, n), min(p, q), max(p, q), t)
    if wf_in != 0.0 and wf_out != 0.0:
        amp = amp + wf_out * wf_in * fermionic_amplitude(
            dec_f, min(m, n), max(m, n), min(p, q), max(p, q), t
        )
    return amp


@dataclass(frozen=True)
class PhasorList:
    """Coefficients and frequencies of one transition's phasor sum.

    `bound_mask`, when present, marks the phasors living in the bound band
    of a bosonic decomposition.
    """

    coefficients: np.ndarray
    energies: np.ndarray
    bound_mask: np.ndarray | None = None

    def amplitude(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        out = kernels.phasor_sum(self.coefficients, self.energies, t_arr)
        return out[0] if np.ndim(t) == 0 else out

    def intensities(self, t):
        return kernels.intensity_series(self.coefficients, self.energies, np.asarray(t, dtype=float))


def phasor_decomposition(
    dec: SpectralDecomposition, idx_in: int, idx_out: int, bound_mask=None
) -> PhasorList:
    """Phasor sum of a transition; re-summing it reproduces the amplitude."""
    coeffs = phasor_coefficients(dec, idx_in, idx_out)
    if bound_mask is not None:
        bound_mask = np.asarray(bound_mask, dtype=bool)
        if bound_mask.shape != (dec.dim,):
            raise ValueError("bound mask length must match the decomposition")
    return PhasorList(coefficients=coeffs, energies=dec.energies, bound_mask=bound_mask)


@dataclass(frozen=True)
class BoundClassification:
    """Per-eigenstate double-occupancy weights and the bound/scattering split."""

    weights: np.ndarray
    bound_mask: np.ndarray
    threshold: float = 0.5

    @property
    def n_bound(self) -> int:
        return int(self.bound_mask.sum())

    @property
    def bound_indices(self) -> np.ndarray:
        return np.nonzero(self.bound_mask)[0]


def classify_bound_states(dec_b: SpectralDecomposition, threshold: float = 0.5) -> BoundClassification:
    """Split bosonic eigenstates by their weight on doubly occupied sites.

    A state is bound when more than `threshold` of its probability sits on
    pair states (m, m). Unambiguous at strong interaction, where the bound
    band carries weight ~1; the per-state weights are returned for audit.
    """
    if dec_b.subspace != BOSONIC or dec_b.basis is None:
        raise ValueError("needs a bosonic-sector decomposition")
    n = dec_b.basis.n_sites
    rows = [dec_b.basis.flat(m, m) for m in range(1, n + 1)]
    weights = (dec_b.vectors[rows, :] ** 2).sum(axis=0)
    return BoundClassification(weights=weights, bound_mask=weights > threshold, threshold=threshold)
