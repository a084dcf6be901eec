import numpy as np
import pytest

from spacing_ratios.spectra import (
    HeavyTailWarning,
    Histogram,
    ZeroSpacingWarning,
    as_spectrum,
    build_histogram,
    bulk_select,
    fold_ratios,
    ks_distance,
    merge_histograms,
    overlapping_ratios,
    ratio_means,
    ratio_series,
    spacings,
)


def test_spacings_basic():
    s = spacings([0.0, 1.0, 3.0, 6.0])
    assert s.kind == "spacing"
    assert np.array_equal(s.values, [1.0, 2.0, 3.0])


def test_spacings_rejects_unsorted_with_index():
    with pytest.raises(ValueError, match=r"\[2\]"):
        spacings([0.0, 1.0, 0.5, 2.0])


def test_spacings_rejects_nan():
    with pytest.raises(ValueError, match="finite"):
        spacings([0.0, np.nan, 1.0])


def test_spacings_needs_two_levels():
    with pytest.raises(ValueError):
        spacings([1.0])


def test_ratio_series_values():
    # spacings 1, 2, 3 -> ratios 2/1, 3/2
    r = ratio_series([0.0, 1.0, 3.0, 6.0])
    assert np.allclose(r.values, [2.0, 1.5])
    assert r.n_skipped == 0


def test_ratio_series_count():
    e = np.cumsum(np.arange(1.0, 12.0))
    r = ratio_series(e)
    assert len(r) == e.size - 2


def test_ratio_series_zero_spacing_skip_warns():
    with pytest.warns(ZeroSpacingWarning):
        r = ratio_series([0.0, 1.0, 1.0, 2.0, 4.0])
    # spacings 1, 0, 1, 2 -> ratios 0/1, 1/0 (dropped), 2/1
    assert r.n_skipped == 1
    assert np.allclose(r.values, [0.0, 2.0])


def test_ratio_series_zero_spacing_raise():
    with pytest.raises(ValueError, match="degenerate"):
        ratio_series([0.0, 1.0, 1.0, 2.0], on_zero="raise")


def test_fold_involution_and_range():
    rng = np.random.default_rng(7)
    r = rng.exponential(1.0, 1000) / rng.exponential(1.0, 1000)
    rt = fold_ratios(r).values
    assert np.all((0 <= rt) & (rt <= 1))
    # folding r and 1/r gives identical results
    rt_inv = fold_ratios(1.0 / r).values
    assert np.allclose(rt, rt_inv, rtol=1e-14)


def test_fold_zero_maps_to_zero():
    rt = fold_ratios(np.array([0.0, 1.0, 4.0]))
    assert np.allclose(rt.values, [0.0, 1.0, 0.25])


def test_fold_rejects_negative():
    with pytest.raises(ValueError):
        fold_ratios(np.array([-0.5]))


def test_overlapping_ratios_values():
    # r2_n = (e_{n+2} - e_n) / (e_{n+1} - e_{n-1})
    e = [0.0, 1.0, 3.0, 6.0, 10.0]
    r2 = overlapping_ratios(e)
    assert np.allclose(r2.values, [(6 - 1) / (3 - 0), (10 - 3) / (6 - 1)])
    assert r2.kind == "overlapping"


def test_overlapping_count():
    e = np.cumsum(np.ones(10))
    assert len(overlapping_ratios(e)) == 7


def test_bulk_select_half_of_ten():
    e = np.arange(10.0)
    kept = bulk_select(e, 0.5)
    # keep = ceil(5) = 5, drop 5: 2 bottom, 3 top
    assert np.array_equal(kept, [2.0, 3.0, 4.0, 5.0, 6.0])


def test_bulk_select_full():
    e = np.arange(7.0)
    assert np.array_equal(bulk_select(e, 1.0), e)


def test_bulk_select_ceil():
    e = np.arange(5.0)
    kept = bulk_select(e, 0.5)  # ceil(2.5) = 3 kept, drop 1 bottom 1 top
    assert np.array_equal(kept, [1.0, 2.0, 3.0])


def test_bulk_select_rejects_bad_fraction():
    for f in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            bulk_select(np.arange(4.0), f)


def test_histogram_right_open_bins_and_overflow():
    h = build_histogram([0.0, 0.5, 1.0, 1.5, 2.0, -0.5], [0.0, 1.0, 2.0])
    # [0,1): 0.0, 0.5; [1,2): 1.0, 1.5; 2.0 and -0.5 overflow
    assert np.array_equal(h.counts, [2, 2])
    assert h.overflow == 2
    assert h.total == 6


def test_histogram_density_includes_overflow_mass():
    h = build_histogram([0.5, 1.5, 2.5, 3.5], [0.0, 1.0, 2.0])
    d = h.density()
    # 4 total, widths 1 -> density 1/4 per in-range count
    assert np.allclose(d, [0.25, 0.25])


def test_histogram_merge_matches_pooled():
    rng = np.random.default_rng(3)
    edges = np.linspace(0.0, 1.0, 11)
    a = rng.random(500)
    b = rng.random(700)
    ha = build_histogram(a, edges)
    hb = build_histogram(b, edges)
    pooled = build_histogram(np.concatenate([a, b]), edges)
    merged = merge_histograms([ha, hb])
    assert np.array_equal(merged.counts, pooled.counts)
    assert merged.overflow == pooled.overflow
    # commutative
    merged2 = merge_histograms([hb, ha])
    assert np.array_equal(merged2.counts, merged.counts)


def test_histogram_merge_rejects_mismatched_edges():
    h1 = build_histogram([0.5], [0.0, 1.0])
    h2 = build_histogram([0.5], [0.0, 2.0])
    with pytest.raises(ValueError):
        merge_histograms([h1, h2])


def test_histogram_rejects_bad_edges():
    with pytest.raises(ValueError):
        Histogram(np.array([0.0, 0.0, 1.0]), np.array([1, 1]))


def test_ratio_means_example():
    with pytest.warns(HeavyTailWarning):
        m, se = ratio_means(ratio_series([0.0, 2.0, 3.0, 3.25]))
    # spacings 2, 1, 0.25 -> ratios 0.5, 0.25 -> mean 0.375
    assert m == pytest.approx(0.375)
    assert se == pytest.approx(np.std([0.5, 0.25], ddof=1) / np.sqrt(2))


def test_ratio_means_folded_no_warning():
    import warnings

    rt = fold_ratios(np.array([0.5, 2.0, 1.0]))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        m, se = ratio_means(rt)
    assert m == pytest.approx((0.5 + 0.5 + 1.0) / 3)


def test_ks_distance_uniform_exact():
    # sample {0.1, ..., 0.9} vs U(0,1): D = max gap = 1/9 + something known
    x = np.arange(1, 10) / 10.0
    d = ks_distance(x, lambda t: t)
    # empirical jumps at i/9; max over |i/9 - x_i| and |(i-1)/9 - x_i|
    n = 9
    f = x
    i = np.arange(n)
    expect = max(np.max((i + 1) / n - f), np.max(f - i / n))
    assert d == pytest.approx(expect)


def test_ks_distance_scalar_cdf_fallback():
    x = np.array([0.25, 0.5, 0.75])
    d_vec = ks_distance(x, lambda t: np.asarray(t))
    d_scalar = ks_distance(x, lambda t: float(t))
    assert d_vec == pytest.approx(d_scalar)


def test_ks_distance_converges_for_true_law():
    rng = np.random.default_rng(11)
    x = rng.random(20000)
    assert ks_distance(x, lambda t: np.clip(t, 0, 1)) < 0.015


def test_as_spectrum_accepts_ties():
    e = as_spectrum([0.0, 1.0, 1.0, 2.0])
    assert e.size == 4
