"""Tests for the translation-symmetrized Ising chain."""

import math
import warnings

import numpy as np
import pytest

from spacing_ratios import ising as im
from spacing_ratios.spectra import ZeroSpacingWarning


def dense_hamiltonian(L, lam, alpha):
    """Full 2^L matrix built from explicit Pauli Kronecker products."""
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.array([[1.0, 0.0], [0.0, -1.0]])
    eye = np.eye(2)

    def site_op(op, n):
        m = np.array([[1.0]])
        for k in range(L - 1, -1, -1):
            m = np.kron(m, op if k == n else eye)
        return m

    h = np.zeros((2**L, 2**L))
    for n in range(L):
        h -= site_op(sx, n) @ site_op(sx, (n + 1) % L)
        h -= lam * site_op(sz, n)
        h -= alpha * site_op(sx, n)
    return h


# -------------------------------------------------------------------- params

def test_params_validation():
    p = im.IsingParams(8)
    assert p.lam == 0.5 and p.alpha == 0.5
    with pytest.raises(ValueError):
        im.IsingParams(2)
    with pytest.raises(ValueError):
        im.IsingParams(4.5)


# -------------------------------------------------------------------- orbits

def test_translate_moves_sites_down():
    # site 0 wraps around to site L-1
    assert im.translate(0b0001, 4) == 0b1000
    assert im.translate(0b1000, 4) == 0b0100
    s = 0b01101
    cur = s
    for _ in range(5):
        cur = im.translate(cur, 5)
    assert cur == s


def test_orbits_two_sites():
    assert im.orbit_representatives(2) == [(0, 1), (1, 2), (3, 1)]


def test_orbits_four_sites_count():
    # binary necklaces of length 4
    assert len(im.orbit_representatives(4)) == 6


def test_orbit_periods_partition_basis():
    for L in (1, 3, 8, 12):
        orbits = im.orbit_representatives(L)
        assert sum(p for _, p in orbits) == 2**L
        assert all(L % p == 0 for _, p in orbits)


def test_representative_is_orbit_minimum():
    for rep, p in im.orbit_representatives(6):
        cur = rep
        members = []
        for _ in range(p):
            members.append(cur)
            cur = im.translate(cur, 6)
        assert rep == min(members)
        assert len(set(members)) == p


def test_orbits_reject_empty_chain():
    with pytest.raises(ValueError):
        im.orbit_representatives(0)


# -------------------------------------------------------------------- basis

def test_sector_dimension_three_sites_zero_momentum():
    assert im.sector_basis(3, 0).dimension == 4


def test_sector_dimensions_sum_to_full_space():
    for L in (5, 8, 12):
        assert sum(im.sector_basis(L, j).dimension for j in range(L)) == 2**L


def test_conjugate_sectors_have_equal_dimension():
    for j in range(1, 9):
        assert im.sector_basis(9, j).dimension == im.sector_basis(9, 9 - j).dimension


def test_sector_admission_rule_and_norms():
    b = im.sector_basis(6, 2)
    assert np.all((2 * b.periods) % 6 == 0)
    assert np.allclose(b.norms, np.sqrt(b.periods) / 6.0)


def test_sector_dimension_reference_case():
    assert im.sector_basis(14, 3).dimension == 1161


def test_sector_basis_rejects_bad_momentum():
    with pytest.raises(ValueError):
        im.sector_basis(6, 6)
    with pytest.raises(ValueError):
        im.sector_basis(6, -1)


# -------------------------------------------------------------- hamiltonian

def test_hermitian_exactly_by_construction():
    h = im.build_sector_hamiltonian(im.IsingParams(8), 3)
    assert float(np.max(np.abs(h - h.conj().T))) == 0.0


def test_real_sectors_are_real_symmetric():
    p = im.IsingParams(8)
    h0 = im.build_sector_hamiltonian(p, 0)
    h4 = im.build_sector_hamiltonian(p, 4)
    h3 = im.build_sector_hamiltonian(p, 3)
    assert h0.dtype == np.float64 and np.array_equal(h0, h0.T)
    assert h4.dtype == np.float64 and np.array_equal(h4, h4.T)
    assert h3.dtype == np.complex128


def test_sector_traces_sum_to_zero():
    # all three Pauli strings are traceless
    for L, lam, alpha in ((7, 0.5, 0.5), (8, 1.3, 0.2)):
        p = im.IsingParams(L, lam, alpha)
        total = sum(
            float(np.trace(im.build_sector_hamiltonian(p, j)).real)
            for j in range(L)
        )
        assert abs(total) < 1e-10


def test_sector_union_matches_dense_diagonalization():
    for L, lam, alpha in ((8, 0.5, 0.5), (6, 0.9, 0.3)):
        p = im.IsingParams(L, lam, alpha)
        union = np.sort(
            np.concatenate([im.sector_spectrum(p, j) for j in range(L)])
        )
        dense = np.linalg.eigvalsh(dense_hamiltonian(L, lam, alpha))
        assert union.size == 2**L
        assert float(np.max(np.abs(union - dense))) < 1e-9


def test_spectrum_invariant_under_basis_reordering():
    p = im.IsingParams(8)
    basis = im.sector_basis(8, 1)
    rng = np.random.default_rng(3)
    perm = rng.permutation(basis.dimension)
    shuffled = im.SpinSectorBasis(
        L=8,
        j=1,
        representatives=basis.representatives[perm],
        periods=basis.periods[perm],
        norms=basis.norms[perm],
    )
    a = im.sector_spectrum(p, 1, basis)
    b = im.sector_spectrum(p, 1, shuffled)
    assert float(np.max(np.abs(a - b))) < 1e-9


# ------------------------------------------------------------------ spectrum

def test_sector_spectrum_ascending():
    ev = im.sector_spectrum(im.IsingParams(10), 2)
    assert np.all(np.diff(ev) >= 0)


def test_conjugate_sectors_share_spectra():
    p = im.IsingParams(8)
    for j in (1, 2, 3):
        a = im.sector_spectrum(p, j)
        b = im.sector_spectrum(p, 8 - j)
        assert float(np.max(np.abs(a - b))) < 1e-9


def test_strong_transverse_field_clusters():
    # at lam >> 1 the spectrum sits near -lam * (L - 2k) for k = 0..L
    lam = 1e4
    ev = im.sector_spectrum(im.IsingParams(8, lam, 0.0), 0)
    m = ev / (-lam)
    grid = np.arange(-8, 9, 2, dtype=float)
    resid = np.min(np.abs(m[:, None] - grid[None, :]), axis=1)
    assert float(resid.max()) < 1e-2


# ---------------------------------------------------------------- statistics

def test_chaotic_chain_matches_orthogonal_class():
    st = im.ising_ratio_stats(im.IsingParams(14, 0.5, 0.5), 3)
    assert st.dimension == 1161
    assert st.n_skipped == 0
    assert abs(st.mean_rtilde - 0.5307) < 0.02
    assert st.ks_goe < 0.05
    assert st.hist_r.total == st.n_ratios
    assert st.hist_rtilde.total == st.n_ratios
    assert st.n_levels_used == math.ceil(0.9 * 1161)


def test_integrable_chain_departs_from_orthogonal_class():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ZeroSpacingWarning)
        st = im.ising_ratio_stats(im.IsingParams(14, 0.5, 0.0), 3)
    assert abs(st.mean_rtilde - 0.5307) > 0.05


def test_small_sector_warns_but_returns():
    with pytest.warns(im.UndersizedSectorWarning):
        st = im.ising_ratio_stats(im.IsingParams(6, 0.5, 0.5), 1)
    assert st.dimension < 100
    assert np.isfinite(st.mean_rtilde)


def test_bulk_fraction_controls_level_count():
    st = im.ising_ratio_stats(im.IsingParams(12, 0.5, 0.5), 5, bulk_fraction=0.5)
    assert st.n_levels_used == math.ceil(0.5 * st.dimension)
