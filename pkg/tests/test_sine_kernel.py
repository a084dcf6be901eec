"""Tests for the sine-kernel determinant machinery and the exact ratio law.

Frozen reference values were computed with an independent Gauss-Legendre
Nystrom discretization (different nodes, direct dense solves) at orders
80-120; the two routes agree to ~1e-13 or better on every anchor.
"""

import math

import numpy as np
import pytest

from spacing_ratios import laws
from spacing_ratios import sine_kernel as sk


# ---------------------------------------------------------------- quadrature

def test_weights_sum_to_interval_length():
    for t in (0.3, 1.0, 3.5):
        for m in (5, 20, 61):
            g = sk.clenshaw_curtis(t, m)
            assert math.isclose(np.sum(g.weights), 2.0 * t, rel_tol=1e-14)


def test_three_nodes_is_simpson():
    g = sk.clenshaw_curtis(1.0, 3)
    assert np.allclose(g.weights, [1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0], atol=1e-15)
    assert np.allclose(g.nodes, [-1.0, 0.0, 1.0], atol=1e-15)


def test_two_nodes_is_trapezoid():
    g = sk.clenshaw_curtis(1.0, 2)
    assert np.allclose(g.weights, [1.0, 1.0], atol=1e-15)


def test_integrates_cosine_spectrally():
    g = sk.clenshaw_curtis(1.0, 20)
    val = float(np.sum(g.weights * np.cos(g.nodes)))
    assert abs(val - 2.0 * math.sin(1.0)) < 1e-14


def test_polynomial_exactness():
    # exact for degree <= m-1
    g = sk.clenshaw_curtis(2.0, 8)
    val = float(np.sum(g.weights * g.nodes**6))
    assert math.isclose(val, 2.0 * 2.0**7 / 7.0, rel_tol=1e-13)


def test_nodes_ascending_and_symmetric():
    g = sk.clenshaw_curtis(1.7, 33)
    assert np.all(np.diff(g.nodes) > 0)
    assert np.max(np.abs(g.nodes + g.nodes[::-1])) < 1e-14


def test_quadrature_rejects_bad_inputs():
    with pytest.raises(ValueError):
        sk.clenshaw_curtis(0.0, 10)
    with pytest.raises(ValueError):
        sk.clenshaw_curtis(-1.0, 10)
    with pytest.raises(ValueError):
        sk.clenshaw_curtis(1.0, 1)


# -------------------------------------------------------------------- kernel

def test_kernel_diagonal_and_symmetry():
    assert sk.sine_kernel(0.7, 0.7) == 1.0
    assert sk.sine_kernel(0.3, -0.2) == sk.sine_kernel(-0.2, 0.3)
    # K(x, y) = sin(pi (x-y)) / (pi (x-y)); at x-y = 1/2 this is 2/pi
    assert math.isclose(float(sk.sine_kernel(0.5, 0.0)), 2.0 / math.pi,
                        rel_tol=1e-15)


def test_kernel_derivative_matches_finite_difference():
    z = 0.3
    h = 1e-6
    fd = (sk.sine_kernel(z + h, 0.0) - sk.sine_kernel(z - h, 0.0)) / (2 * h)
    assert abs(sk.sine_kernel_dx(z, 0.0) - fd) < 1e-9


def test_kernel_derivative_series_branch():
    # series: -pi^2 z / 3 + pi^4 z^3 / 30 for small z
    z = 1e-7
    assert math.isclose(
        sk.sine_kernel_dx(z, 0.0), -math.pi**2 * z / 3.0, rel_tol=1e-12
    )
    # continuity across the series threshold
    lo = sk.sine_kernel_dx(0.999e-6, 0.0)
    hi = sk.sine_kernel_dx(1.001e-6, 0.0)
    assert abs(lo - hi) < 1e-16 + abs(lo) * 1e-2


def test_kernel_derivative_odd():
    assert math.isclose(
        sk.sine_kernel_dx(0.4, 0.0), -sk.sine_kernel_dx(-0.4, 0.0), rel_tol=1e-14
    )


# --------------------------------------------------------------- determinant

# independently cross-checked Nystrom values (Gauss-Legendre route, m=120)
DET_ANCHORS = {
    0.5: 0.1702174213791851,
    1.0: 0.003497325149169069,
    2.0: 1.090795377948089e-09,
}


def test_determinant_anchors():
    for t, ref in DET_ANCHORS.items():
        assert math.isclose(sk.fredholm_det(t, 60), ref, rel_tol=1e-10)


def test_determinant_small_t_trace_expansion():
    # det(1 - K) = 1 - 2t + O(t^4) on [-t, t]
    assert abs(sk.fredholm_det(0.01, 40) - 0.98) < 1e-4
    assert abs(sk.fredholm_det(0.001, 40) - 0.998) < 1e-7


def test_determinant_monotone_decreasing_in_interval():
    ts = [0.2, 0.5, 1.0, 1.5, 2.0, 3.0]
    dets = [sk.fredholm_det(t, 60) for t in ts]
    assert all(d1 > d2 > 0 for d1, d2 in zip(dets[:-1], dets[1:]))
    assert all(d <= 1.0 for d in dets)


def test_determinant_self_convergence():
    for t in (0.5, 1.0, 2.0):
        assert abs(sk.fredholm_det(t, 40) - sk.fredholm_det(t, 60)) < 1e-10
        assert abs(sk.fredholm_det(t, 60) - sk.fredholm_det(t, 120)) < 1e-9


# -------------------------------------------------------------------- solver

def test_q_odd_p_even_off_nodes():
    sol = sk.solve_qp(1.0, 60)
    xs = np.linspace(0.05, 0.95, 9)
    assert np.max(np.abs(sol.q(xs) + sol.q(-xs))) < 1e-10
    assert np.max(np.abs(sol.p(xs) - sol.p(-xs))) < 1e-10


def test_qp_anchors():
    # cross-checked against the Gauss-Legendre route (m=100): 3e-12 agreement
    sol = sk.solve_qp(1.0, 60)
    assert math.isclose(sol.q(0.3), 0.7490007875462953, rel_tol=1e-10)
    assert math.isclose(sol.p(0.3), 14.96989559071911, rel_tol=1e-10)


def test_integral_equation_residual_off_nodes():
    # plug the interpolated Q back into (1-K)Q = sin(pi x)/pi using a
    # much finer quadrature for the integral term
    sol = sk.solve_qp(1.0, 60)
    fine = sk.clenshaw_curtis(1.0, 400)
    qf = sol.q(fine.nodes)
    pf = sol.p(fine.nodes)
    rng = np.random.default_rng(7)
    for x in rng.uniform(-1.0, 1.0, 50):
        kx = np.sinc(x - fine.nodes)
        rq = sol.q(x) - np.sum(fine.weights * kx * qf) - math.sin(math.pi * x) / math.pi
        rp = sol.p(x) - np.sum(fine.weights * kx * pf) - math.cos(math.pi * x)
        assert abs(rq) < 1e-10
        assert abs(rp) < 1e-10


def test_small_interval_limits():
    # Q -> sin(pi x)/pi and P -> cos(pi x) as t -> 0 (correction is O(t))
    t = 1e-4
    sol = sk.solve_qp(t, 40)
    xs = np.linspace(-t, t, 7)
    assert np.max(np.abs(sol.q(xs) - np.sin(math.pi * xs) / math.pi)) < 2.5 * t
    assert np.max(np.abs(sol.p(xs) - np.cos(math.pi * xs))) < 2.5 * t


def test_solver_cache_returns_same_object():
    assert sk.solve_qp(1.25, 60) is sk.solve_qp(1.25, 60)


def test_solver_condition_guard():
    sol = sk.solve_qp(3.5, 60)
    assert sol.cond < 1e12
    with pytest.raises(RuntimeError, match="condition"):
        sk.solve_qp(8.0, 60)


def test_determinant_matches_solution_attribute():
    sol = sk.solve_qp(2.0, 60)
    assert math.isclose(sol.det_value, sk.fredholm_det(2.0, 60), rel_tol=1e-14)


# ----------------------------------------------------------------- resolvent

def test_resolvent_symmetry():
    sol = sk.solve_qp(1.0, 60)
    for x, z in ((0.3, -0.7), (0.9, 0.1), (-0.5, 0.2)):
        assert math.isclose(sol.resolvent(x, z), sol.resolvent(z, x),
                            rel_tol=1e-12)


def test_resolvent_anchors():
    sol = sk.solve_qp(1.0, 60)
    assert math.isclose(sol.resolvent(0.2, -0.4), 36.53182426588928,
                        rel_tol=1e-10)
    assert math.isclose(sol.resolvent_diag(0.5), 27.97343031959879,
                        rel_tol=1e-10)


def test_resolvent_diagonal_matches_off_diagonal_limit():
    # central average of R(x, x +/- eps) cancels the O(eps) term
    sol = sk.solve_qp(1.0, 60)
    for x in (-0.6, 0.0, 0.45):
        eps = 1e-4
        central = 0.5 * (sol.resolvent(x, x + eps) + sol.resolvent(x, x - eps))
        assert math.isclose(central, sol.resolvent_diag(x), rel_tol=1e-6)


def test_resolvent_reduces_to_kernel_for_small_intervals():
    # R = K + K^2 + ... so |R - K| = O(t) uniformly on [-t, t]
    for t in (1e-3, 1e-4):
        sol = sk.solve_qp(t, 30)
        xs = np.linspace(-0.9 * t, 0.9 * t, 5)
        err = max(
            abs(sol.resolvent(a, b) - float(sk.sine_kernel(a, b)))
            for a in xs
            for b in xs
        )
        assert err < 2.2 * t


# ------------------------------------------------------------- joint density

# independently cross-checked (Gauss-Legendre route, m=100): <= 5e-15
JOINT_ANCHORS = {
    (1.0, 0.0): 0.8535771714883144,
    (1.2, 0.4): 0.3404074097975324,
    (0.6, -0.1): 0.3606477239412892,
}


def test_joint_density_anchors():
    for (t, y), ref in JOINT_ANCHORS.items():
        assert math.isclose(sk.joint_density(t, y), ref, rel_tol=1e-12)


def test_joint_density_reflection_symmetry():
    for t, y in ((1.2, 0.4), (0.8, 0.55), (2.0, 1.1)):
        assert math.isclose(sk.joint_density(t, y), sk.joint_density(t, -y),
                            rel_tol=1e-12)


def test_joint_density_vanishes_at_level_collision():
    # middle level approaching an edge level: quadratic repulsion
    assert sk.joint_density(1.0, 0.999) < 1e-4 * sk.joint_density(1.0, 0.0)


def test_joint_density_rejects_y_outside_interval():
    with pytest.raises(ValueError):
        sk.joint_density(1.0, 1.0)
    with pytest.raises(ValueError):
        sk.joint_density(1.0, -1.5)


def test_joint_density_rejects_coarse_grid_negative():
    with pytest.raises(RuntimeError, match="negative"):
        sk.joint_density(2.5, 0.3, m=6)


def test_joint_density_against_independent_discretization():
    # second route: Gauss-Legendre nodes, direct dense solves, no caching
    def oracle(t, y, m=90):
        x, w = np.polynomial.legendre.leggauss(m)
        x = x * t
        w = w * t
        km = np.sinc(x[:, None] - x[None, :])
        a = np.eye(m) - km * w[None, :]
        qn = np.linalg.solve(a, np.sin(np.pi * x) / np.pi)
        pn = np.linalg.solve(a, np.cos(np.pi * x))
        sw = np.sqrt(w)
        det = np.linalg.det(np.eye(m) - sw[:, None] * km * sw[None, :])

        def q(z):
            return math.sin(math.pi * z) / math.pi + np.sum(
                w * np.sinc(z - x) * qn
            )

        def p(z):
            return math.cos(math.pi * z) + np.sum(w * np.sinc(z - x) * pn)

        def qp(z):
            return math.cos(math.pi * z) + np.sum(
                w * sk.sine_kernel_dx(z, x) * qn
            )

        def pp(z):
            return -math.pi * math.sin(math.pi * z) + np.sum(
                w * sk.sine_kernel_dx(z, x) * pn
            )

        def rr(a_, b_):
            if abs(a_ - b_) < 1e-9:
                return qp(a_) * p(a_) - pp(a_) * q(a_)
            return (q(a_) * p(b_) - q(b_) * p(a_)) / (a_ - b_)

        pts = (-t, y, t)
        mat = np.array([[rr(u, v) for v in pts] for u in pts])
        return det * np.linalg.det(mat)

    for t, y in ((1.0, 0.0), (1.5, -0.6), (0.7, 0.2)):
        assert math.isclose(sk.joint_density(t, y), oracle(t, y), rel_tol=1e-10)


def test_joint_density_total_mass():
    # integrating the consecutive-triple density over both gaps gives the
    # level density (= 1), up to the tiny mass with a gap beyond 4
    x, w = np.polynomial.legendre.leggauss(24)
    s = 2.0 + 2.0 * x
    ws = 2.0 * w
    total = 0.0
    for i, s1 in enumerate(s):
        for j, s2 in enumerate(s):
            t = 0.5 * (s1 + s2)
            y = 0.5 * (s1 - s2)
            total += ws[i] * ws[j] * sk.joint_density(t, y)
    assert abs(total - 1.0) < 1e-6


# --------------------------------------------------------------- exact ratio

def test_exact_ratio_pdf_anchors():
    # cross-checked at (t_max=4, n_t=120, m=80): agreement ~1e-15
    res = sk.exact_ratio_pdf(np.array([0.5, 1.0, 2.0]))
    assert math.isclose(res.pdf[0], 0.6706763474886984, rel_tol=1e-11)
    assert math.isclose(res.pdf[1], 0.5442703793228835, rel_tol=1e-11)
    assert math.isclose(res.pdf[2], 0.1676690868721746, rel_tol=1e-11)


def test_exact_ratio_pdf_normalization_constant_is_unity():
    # the raw triple density integrates to the level density, so the
    # computed normalization must come out as 1 by itself
    res = sk.exact_ratio_pdf(np.array([1.0]))
    assert abs(res.normalization - 1.0) < 1e-9
    assert res.n_clipped == 0


def test_exact_ratio_pdf_inversion_symmetry():
    rs = np.array([0.2, 0.45, 0.8])
    res = sk.exact_ratio_pdf(np.concatenate([rs, 1.0 / rs]))
    left = res.pdf[: rs.size]
    right = res.pdf[rs.size:]
    assert np.max(np.abs(left - right / rs**2)) < 1e-12


def test_exact_ratio_pdf_settings_insensitive():
    base = sk.exact_ratio_pdf(np.array([0.5, 1.0, 2.0]))
    alt = sk.exact_ratio_pdf(
        np.array([0.5, 1.0, 2.0]), t_max=4.0, n_t=120, m=80
    )
    assert np.max(np.abs(base.pdf - alt.pdf)) < 1e-10


def test_exact_ratio_pdf_close_to_corrected_surmise():
    grid = np.linspace(0.1, 4.0, 14)
    res = sk.exact_ratio_pdf(grid)
    fitted = laws.fitted_pdf(2, laws.surmise_constants(2).c_ref, grid)
    assert np.max(np.abs(res.pdf - fitted)) < 5e-4


def test_exact_ratio_pdf_deviates_from_bare_surmise():
    grid = np.linspace(0.1, 4.0, 14)
    res = sk.exact_ratio_pdf(grid)
    dev = res.pdf - laws.surmise_pdf(2, grid)
    assert 0.005 < np.max(np.abs(dev)) < 0.02
    assert np.min(dev) < 0.0 < np.max(dev)


def test_exact_ratio_pdf_rejects_bad_grids():
    with pytest.raises(ValueError):
        sk.exact_ratio_pdf(np.array([0.5, -1.0]))
    with pytest.raises(ValueError):
        sk.exact_ratio_pdf(np.array([]))
    with pytest.raises(ValueError):
        sk.exact_ratio_pdf(np.array([[0.5, 1.0]]))


def test_exact_ratio_pdf_detects_truncated_outer_integral():
    with pytest.raises(RuntimeError, match="t_max"):
        sk.exact_ratio_pdf(np.array([1.0]), t_max=1.2)


def test_exact_ratio_pdf_table_shape():
    res = sk.exact_ratio_pdf(np.array([0.5, 1.0]))
    tab = res.table()
    assert tab.shape == (2, 2)
    assert np.array_equal(tab[:, 0], [0.5, 1.0])
