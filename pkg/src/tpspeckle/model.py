"""Chain definitions and two-particle Hamiltonian construction.

Builds dense real-symmetric Hamiltonians for one particle on an open
disordered chain and for two particles in the distinguishable (N^2),
bosonic (N(N+1)/2) and fermionic (N(N-1)/2) sectors. The bosonic sector
carries the interaction on doubly occupied sites and sqrt(2)-enhanced
couplings between those sites and their neighbors; the fermionic sector
never sees the interaction.

Site labels are 1-based (j = 1..N, as in the lattice sums); flat basis
indices are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SINGLE = "single"
DISTINGUISHABLE = "distinguishable"
BOSONIC = "bosonic"
FERMIONIC = "fermionic"
SUBSPACES = (SINGLE, DISTINGUISHABLE, BOSONIC, FERMIONIC)

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ChainSpec:
    """Open chain parameters: site count, hopping J, disorder width W, interaction U.

    Energies are measured in units of the hopping (J = 1 by default) and
    times in its inverse.
    """

    n_sites: int
    hopping: float = 1.0
    disorder_width: float = 0.0
    interaction: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("chain needs at least two sites")
        if not self.hopping > 0:
            raise ValueError("hopping must be positive")
        if self.disorder_width < 0:
            raise ValueError("disorder width must be non-negative")
        if self.interaction < 0:
            raise ValueError("interaction must be non-negative")


@dataclass(frozen=True)
class DisorderRealization:
    """One sampled on-site potential vector and the seed that produced it."""

    onsite: np.ndarray
    seed: int


def sample_disorder(spec: ChainSpec, seed: int) -> DisorderRealization:
    """Draw on-site energies i.i.d. uniform on [-W/2, W/2].

    Deterministic under (seed, spec): the same pair reproduces the same
    vector bit for bit.
    """
    rng = np.random.default_rng(seed)
    half = spec.disorder_width / 2.0
    eps = rng.uniform(-half, half, spec.n_sites)
    eps.setflags(write=False)
    return DisorderRealization(onsite=eps, seed=int(seed))


class BasisIndex:
    """Maps site labels to flat indices for one sector and back.

    Orderings: distinguishable pairs are row-major with the first site
    fastest; bosonic pairs (m <= n) and fermionic pairs (m < n) are
    lexicographic.
    """

    def __init__(self, subspace: str, n_sites: int):
        if subspace not in SUBSPACES:
            raise ValueError(f"unknown subspace {subspace!r}")
        self.subspace = subspace
        self.n_sites = int(n_sites)
        n = self.n_sites
        if subspace == SINGLE:
            self.dim = n
        elif subspace == DISTINGUISHABLE:
            self.dim = n * n
        elif subspace == BOSONIC:
            self.dim = n * (n + 1) // 2
        else:
            self.dim = n * (n - 1) // 2
        if subspace == BOSONIC:
            self._starts = np.array([a * n - a * (a - 1) // 2 for a in range(n)])
        elif subspace == FERMIONIC:
            self._starts = np.array([a * (n - 1) - a * (a - 1) // 2 for a in range(n)])

    def _check_site(self, m):
        if not 1 <= m <= self.n_sites:
            raise IndexError(f"site {m} outside [1, {self.n_sites}]")

    def flat(self, m: int, n: int | None = None) -> int:
        """Flat index of site m (single sector) or of the pair (m, n)."""
        self._check_site(m)
        if self.subspace == SINGLE:
            if n is not None:
                raise ValueError("single-particle sector indexes one site")
            return m - 1
        if n is None:
            raise ValueError(f"{self.subspace} sector indexes a site pair")
        self._check_site(n)
        a, b = m - 1, n - 1
        if self.subspace == DISTINGUISHABLE:
            return b * self.n_sites + a
        if self.subspace == BOSONIC:
            if a > b:
                a, b = b, a
            return int(self._starts[a]) + (b - a)
        if a == b:
            raise ValueError("no antisymmetric state on a doubly occupied site")
        if a > b:
            raise ValueError("fermionic pairs must be ordered m < n")
        return int(self._starts[a]) + (b - a - 1)

    def pair(self, idx: int):
        """Inverse of flat(): the 1-based site label(s) of a flat index."""
        if not 0 <= idx < self.dim:
            raise IndexError(f"flat index {idx} outside [0, {self.dim})")
        n = self.n_sites
        if self.subspace == SINGLE:
            return idx + 1
        if self.subspace == DISTINGUISHABLE:
            return idx % n + 1, idx // n + 1
        a = int(np.searchsorted(self._starts, idx, side="right")) - 1
        off = idx - int(self._starts[a])
        b = a + off if self.subspace == BOSONIC else a + off + 1
        return a + 1, b + 1


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense symmetric operator for one sector plus its provenance."""

    subspace: str
    matrix: np.ndarray
    basis: BasisIndex
    spec: ChainSpec
    disorder: DisorderRealization

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _checked_onsite(spec: ChainSpec, disorder: DisorderRealization) -> np.ndarray:
    eps = np.asarray(disorder.onsite, dtype=float)
    if eps.shape != (spec.n_sites,):
        raise ValueError(
            f"disorder vector has length {eps.shape[0] if eps.ndim == 1 else eps.shape}, "
            f"expected {spec.n_sites}"
        )
    return eps


def _finish(subspace, h, spec, disorder):
    h.setflags(write=False)
    return HamiltonianMatrix(subspace, h, BasisIndex(subspace, spec.n_sites), spec, disorder)


def build_single_particle(spec: ChainSpec, disorder: DisorderRealization) -> HamiltonianMatrix:
    """Tridiagonal chain Hamiltonian: on-site energies plus nearest-neighbor hopping."""
    eps = _checked_onsite(spec, disorder)
    n = spec.n_sites
    h = np.zeros((n, n))
    h[np.arange(n), np.arange(n)] = eps
    off = np.arange(n - 1)
    h[off, off + 1] = spec.hopping
    h[off + 1, off] = spec.hopping
    return _finish(SINGLE, h, spec, disorder)


def build_distinguishable(spec: ChainSpec, disorder: DisorderRealization) -> HamiltonianMatrix:
    """Two distinguishable particles on the chain: the full N^2 sector.

    Each particle hops independently (open boundaries); the diagonal adds
    the two on-site energies and the interaction on doubly occupied sites.
    """
    eps = _checked_onsite(spec, disorder)
    n = spec.n_sites
    j = spec.hopping
    basis = BasisIndex(DISTINGUISHABLE, n)
    h = np.zeros((basis.dim, basis.dim))
    for b in range(n):
        for a in range(n):
            i = b * n + a
            h[i, i] = eps[a] + eps[b] + (spec.interaction if a == b else 0.0)
            if a + 1 < n:
                h[i, b * n + a + 1] = j
                h[b * n + a + 1, i] = j
            if b + 1 < n:
                h[i, (b + 1) * n + a] = j
                h[(b + 1) * n + a, i] = j
    return _finish(DISTINGUISHABLE, h, spec, disorder)


def _lattice_moves(a, b):
    return (a - 1, b), (a + 1, b), (a, b - 1), (a, b + 1)


def build_bosonic_block(spec: ChainSpec, disorder: DisorderRealization) -> HamiltonianMatrix:
    """Symmetric (bosonic) sector on pairs m <= n.

    Couplings between two singly-occupied pair states keep the bare
    hopping; the edge between a doubly occupied site and its neighbor
    pair is enhanced by sqrt(2). The interaction sits on the diagonal of
    doubly occupied states only.
    """
    eps = _checked_onsite(spec, disorder)
    n = spec.n_sites
    j = spec.hopping
    basis = BasisIndex(BOSONIC, n)
    h = np.zeros((basis.dim, basis.dim))
    for a in range(n):
        for b in range(a, n):
            i = basis.flat(a + 1, b + 1)
            h[i, i] = eps[a] + eps[b] + (spec.interaction if a == b else 0.0)
    # every edge of the sector graph has at least one a < b endpoint
    for a in range(n):
        for b in range(a + 1, n):
            i = basis.flat(a + 1, b + 1)
            for c, d in _lattice_moves(a, b):
                if not (0 <= c < n and 0 <= d < n):
                    continue
                k = basis.flat(min(c, d) + 1, max(c, d) + 1)
                w = _SQRT2 * j if c == d else j
                h[i, k] = w
                h[k, i] = w
    return _finish(BOSONIC, h, spec, disorder)


def build_fermionic_block(spec: ChainSpec, disorder: DisorderRealization) -> HamiltonianMatrix:
    """Antisymmetric (fermionic) sector on pairs m < n.

    Pure hopping on the strictly-ordered pair lattice; doubly occupied
    sites do not exist here, so the interaction never enters.
    """
    eps = _checked_onsite(spec, disorder)
    n = spec.n_sites
    j = spec.hopping
    basis = BasisIndex(FERMIONIC, n)
    h = np.zeros((basis.dim, basis.dim))
    for a in range(n):
        for b in range(a + 1, n):
            i = basis.flat(a + 1, b + 1)
            h[i, i] = eps[a] + eps[b]
            for c, d in _lattice_moves(a, b):
                if not (0 <= c < n and 0 <= d < n) or c == d:
                    continue
                k = basis.flat(min(c, d) + 1, max(c, d) + 1)
                h[i, k] = j
                h[k, i] = j
    return _finish(FERMIONIC, h, spec, disorder)


_BUILDERS = {
    SINGLE: build_single_particle,
    DISTINGUISHABLE: build_distinguishable,
    BOSONIC: build_bosonic_block,
    FERMIONIC: build_fermionic_block,
}


def build_hamiltonian(subspace: str, spec: ChainSpec, disorder: DisorderRealization) -> HamiltonianMatrix:
    """Dispatch to the sector builder for `subspace`."""
    try:
        builder = _BUILDERS[subspace]
    except KeyError:
        raise ValueError(f"unknown subspace {subspace!r}") from None
    return builder(spec, disorder)


def symmetrization_map(n_sites: int) -> np.ndarray:
    """Orthogonal change of basis from the N^2 sector to (bosonic | fermionic).

    Columns hold the symmetric combinations first (pairs m <= n), then the
    antisymmetric ones (pairs m < n). Conjugating the distinguishable
    Hamiltonian with this matrix block-diagonalizes it into the bosonic
    and fermionic sector matrices.
    """
    dist = BasisIndex(DISTINGUISHABLE, n_sites)
    bos = BasisIndex(BOSONIC, n_sites)
    ferm = BasisIndex(FERMIONIC, n_sites)
    q = np.zeros((dist.dim, bos.dim + ferm.dim))
    inv = 1.0 / _SQRT2
    for m in range(1, n_sites + 1):
        for n in range(m, n_sites + 1):
            col = bos.flat(m, n)
            if m == n:
                q[dist.flat(m, m), col] = 1.0
            else:
                q[dist.flat(m, n), col] = inv
                q[dist.flat(n, m), col] = inv
    for m in range(1, n_sites + 1):
        for n in range(m + 1, n_sites + 1):
            col = bos.dim + ferm.flat(m, n)
            q[dist.flat(m, n), col] = inv
            q[dist.flat(n, m), col] = -inv
    return q
