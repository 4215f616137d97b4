import math

import numpy as np
import pytest

import tpspeckle as tp
from tpspeckle.model import BOSONIC, DISTINGUISHABLE, FERMIONIC, SINGLE

SQRT2 = math.sqrt(2.0)


def test_chain_spec_validation():
    tp.ChainSpec(n_sites=2)
    with pytest.raises(ValueError):
        tp.ChainSpec(n_sites=1)
    with pytest.raises(ValueError):
        tp.ChainSpec(n_sites=4, hopping=0.0)
    with pytest.raises(ValueError):
        tp.ChainSpec(n_sites=4, disorder_width=-0.1)
    with pytest.raises(ValueError):
        tp.ChainSpec(n_sites=4, interaction=-1.0)


class TestDisorder:
    def test_zero_width_gives_zeros(self):
        dis = tp.sample_disorder(tp.ChainSpec(n_sites=4, disorder_width=0.0), seed=5)
        assert np.all(dis.onsite == 0.0)

    def test_bounds(self):
        spec = tp.ChainSpec(n_sites=40, disorder_width=0.01)
        dis = tp.sample_disorder(spec, seed=17)
        assert dis.onsite.shape == (40,)
        assert np.all(dis.onsite >= -0.005)
        assert np.all(dis.onsite <= 0.005)

    def test_deterministic(self):
        spec = tp.ChainSpec(n_sites=12, disorder_width=0.3)
        a = tp.sample_disorder(spec, seed=99).onsite
        b = tp.sample_disorder(spec, seed=99).onsite
        assert np.array_equal(a, b)
        c = tp.sample_disorder(spec, seed=100).onsite
        assert not np.array_equal(a, c)


class TestBasisIndex:
    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_dims(self, n):
        assert tp.BasisIndex(SINGLE, n).dim == n
        assert tp.BasisIndex(DISTINGUISHABLE, n).dim == n * n
        assert tp.BasisIndex(BOSONIC, n).dim == n * (n + 1) // 2
        assert tp.BasisIndex(FERMIONIC, n).dim == n * (n - 1) // 2

    @pytest.mark.parametrize("subspace", [SINGLE, DISTINGUISHABLE, BOSONIC, FERMIONIC])
    def test_roundtrip(self, subspace):
        basis = tp.BasisIndex(subspace, 7)
        for idx in range(basis.dim):
            sites = basis.pair(idx)
            back = basis.flat(sites) if subspace == SINGLE else basis.flat(*sites)
            assert back == idx

    def test_distinguishable_is_first_site_fastest(self):
        basis = tp.BasisIndex(DISTINGUISHABLE, 5)
        assert basis.flat(1, 1) == 0
        assert basis.flat(2, 1) == 1
        assert basis.flat(1, 2) == 5

    def test_errors(self):
        basis = tp.BasisIndex(FERMIONIC, 5)
        with pytest.raises(ValueError):
            basis.flat(3, 3)
        with pytest.raises(ValueError):
            basis.flat(4, 2)
        with pytest.raises(IndexError):
            basis.flat(0, 2)
        with pytest.raises(IndexError):
            basis.flat(1, 6)
        with pytest.raises(IndexError):
            basis.pair(basis.dim)
        with pytest.raises(ValueError):
            tp.BasisIndex("bogus", 4)


class TestSingleParticle:
    def test_two_sites(self):
        spec = tp.ChainSpec(n_sites=2)
        h = tp.build_single_particle(spec, tp.sample_disorder(spec, 0))
        assert np.array_equal(h.matrix, [[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-1.0, 1.0])

    def test_three_sites_clean(self):
        spec = tp.ChainSpec(n_sites=3)
        h = tp.build_single_particle(spec, tp.sample_disorder(spec, 0))
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-SQRT2, 0.0, SQRT2], atol=1e-12)

    def test_two_sites_detuned(self):
        spec = tp.ChainSpec(n_sites=2, disorder_width=1.0)
        dis = tp.DisorderRealization(onsite=np.array([0.3, -0.3]), seed=-1)
        h = tp.build_single_particle(spec, dis)
        root = math.sqrt(1.0 + 0.09)
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-root, root], atol=1e-14)

    def test_length_mismatch(self):
        spec = tp.ChainSpec(n_sites=3)
        bad = tp.DisorderRealization(onsite=np.zeros(4), seed=0)
        with pytest.raises(ValueError, match="length"):
            tp.build_single_particle(spec, bad)

    def test_open_boundary(self):
        spec = tp.ChainSpec(n_sites=6)
        h = tp.build_single_particle(spec, tp.sample_disorder(spec, 0))
        assert h.matrix[0, 5] == 0.0


class TestDistinguishable:
    def test_two_sites_free(self):
        spec = tp.ChainSpec(n_sites=2)
        h = tp.build_distinguishable(spec, tp.sample_disorder(spec, 0))
        assert h.dim == 4
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-2.0, 0.0, 0.0, 2.0], atol=1e-14)

    def test_two_sites_interacting_diagonal(self):
        spec = tp.ChainSpec(n_sites=2, interaction=10.0)
        h = tp.build_distinguishable(spec, tp.sample_disorder(spec, 0))
        basis = h.basis
        diag = np.diag(h.matrix)
        assert diag[basis.flat(1, 1)] == 10.0
        assert diag[basis.flat(2, 2)] == 10.0
        assert diag[basis.flat(1, 2)] == 0.0
        assert diag[basis.flat(2, 1)] == 0.0

    @pytest.mark.parametrize("n,seed", [(3, 1), (10, 7)])
    def test_free_spectrum_is_pairwise_sums(self, n, seed):
        # independent oracle: sums of single-particle eigenvalues
        spec = tp.ChainSpec(n_sites=n, disorder_width=0.5)
        dis = tp.sample_disorder(spec, seed)
        e1 = np.linalg.eigvalsh(tp.build_single_particle(spec, dis).matrix)
        expected = np.sort((e1[:, None] + e1[None, :]).ravel())
        ed = np.sort(np.linalg.eigvalsh(tp.build_distinguishable(spec, dis).matrix))
        assert np.abs(ed - expected).max() < 1e-10


class TestBosonic:
    def test_two_sites_free_spectrum(self):
        spec = tp.ChainSpec(n_sites=2)
        h = tp.build_bosonic_block(spec, tp.sample_disorder(spec, 0))
        assert h.dim == 3
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-2.0, 0.0, 2.0], atol=1e-14)

    def test_bound_edge_is_sqrt2(self):
        spec = tp.ChainSpec(n_sites=2)
        h = tp.build_bosonic_block(spec, tp.sample_disorder(spec, 0))
        basis = h.basis
        assert h.matrix[basis.flat(1, 1), basis.flat(1, 2)] == pytest.approx(SQRT2, abs=0)

    @pytest.mark.parametrize("n", [2, 5, 9])
    def test_dim(self, n):
        spec = tp.ChainSpec(n_sites=n)
        h = tp.build_bosonic_block(spec, tp.sample_disorder(spec, 0))
        assert h.dim == n * (n + 1) // 2

    def test_offdiagonal_values(self):
        spec = tp.ChainSpec(n_sites=6, disorder_width=0.2, interaction=3.0)
        h = tp.build_bosonic_block(spec, tp.sample_disorder(spec, 4))
        off = h.matrix[~np.eye(h.dim, dtype=bool)]
        vals = np.unique(np.round(off, 12))
        assert set(vals).issubset({0.0, 1.0, round(SQRT2, 12)})

    def test_enhanced_coupling_only_on_bound_edges(self):
        spec = tp.ChainSpec(n_sites=6, disorder_width=0.2, interaction=3.0)
        dis = tp.sample_disorder(spec, 4)
        h = tp.build_bosonic_block(spec, dis)
        basis = h.basis
        rows, cols = np.nonzero(np.isclose(h.matrix, SQRT2))
        assert len(rows) > 0
        for i, j in zip(rows, cols):
            pairs = (basis.pair(i), basis.pair(j))
            assert any(m == n for m, n in pairs)
        # the other sectors carry only the bare hopping off the diagonal
        for builder in (tp.build_distinguishable, tp.build_fermionic_block):
            hm = builder(spec, dis).matrix
            off = hm[~np.eye(hm.shape[0], dtype=bool)]
            assert set(np.unique(np.round(off, 12))).issubset({0.0, 1.0})


class TestFermionic:
    def test_two_sites_single_state(self):
        spec = tp.ChainSpec(n_sites=2, disorder_width=1.0)
        dis = tp.DisorderRealization(onsite=np.array([0.4, -0.1]), seed=-1)
        h = tp.build_fermionic_block(spec, dis)
        assert h.matrix.shape == (1, 1)
        assert h.matrix[0, 0] == pytest.approx(0.3, abs=1e-15)

    def test_interaction_never_enters(self):
        dis = tp.sample_disorder(tp.ChainSpec(n_sites=5, disorder_width=0.3), 8)
        h0 = tp.build_fermionic_block(tp.ChainSpec(n_sites=5, disorder_width=0.3), dis)
        h100 = tp.build_fermionic_block(
            tp.ChainSpec(n_sites=5, disorder_width=0.3, interaction=100.0), dis
        )
        assert np.array_equal(h0.matrix, h100.matrix)

    def test_three_sites_free_fermion_sums(self):
        spec = tp.ChainSpec(n_sites=3)
        h = tp.build_fermionic_block(spec, tp.sample_disorder(spec, 0))
        # pairwise sums k1 < k2 of {-sqrt2, 0, sqrt2}
        assert np.allclose(np.linalg.eigvalsh(h.matrix), [-SQRT2, 0.0, SQRT2], atol=1e-13)


@pytest.mark.parametrize(
    "builder",
    [tp.build_single_particle, tp.build_distinguishable, tp.build_bosonic_block, tp.build_fermionic_block],
)
def test_exact_symmetry(builder):
    spec = tp.ChainSpec(n_sites=7, disorder_width=0.4, interaction=1.7)
    h = builder(spec, tp.sample_disorder(spec, 21)).matrix
    assert np.abs(h - h.T).max() == 0.0


@pytest.mark.parametrize("n,w,u,seed", [(4, 0.0, 0.0, 0), (6, 0.3, 2.0, 5), (8, 0.01, 7.0, 9), (5, 1.0, 0.5, 2)])
def test_decoupling_oracle(n, w, u, seed):
    """Conjugating the full matrix by the symmetrization map must reproduce the blocks."""
    spec = tp.ChainSpec(n_sites=n, disorder_width=w, interaction=u)
    dis = tp.sample_disorder(spec, seed)
    hd = tp.build_distinguishable(spec, dis).matrix
    hb = tp.build_bosonic_block(spec, dis).matrix
    hf = tp.build_fermionic_block(spec, dis).matrix
    q = tp.symmetrization_map(n)
    conj = q.T @ hd @ q
    nb = hb.shape[0]
    assert np.abs(conj[:nb, :nb] - hb).max() < 1e-12
    assert np.abs(conj[nb:, nb:] - hf).max() < 1e-12
    assert np.abs(conj[:nb, nb:]).max() < 1e-12


def test_no_wraparound_coupling():
    spec = tp.ChainSpec(n_sites=5)
    dis = tp.sample_disorder(spec, 0)
    hd = tp.build_distinguishable(spec, dis)
    basis = hd.basis
    assert hd.matrix[basis.flat(1, 3), basis.flat(5, 3)] == 0.0
    assert hd.matrix[basis.flat(2, 1), basis.flat(2, 5)] == 0.0
