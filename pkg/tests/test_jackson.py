import math
import warnings

import numpy as np
import pytest
from scipy.integrate import trapezoid

from boxbound import (
    ChebPoly,
    DegenerateInputError,
    DomainError,
    PreconditionError,
    degree_split,
    delta_density_1d,
    delta_density_nd,
    error_constants,
    gaussian_overlay,
    inner_product_mu,
    jackson_bound,
    jackson_coefficients,
    lookup,
    max_cheb_coeff,
    poly_eval,
    psi,
    quadrature_mu,
)
from boxbound.jackson import gaussian_variance
from boxbound.testfns import catalog

from conftest import random_cheb


def g_trig(r: int) -> np.ndarray:
    """Jackson coefficients from the trigonometric form (with sin in the denominator)."""
    th = math.pi / (r + 2)
    return np.array([
        ((r + 2 - k) * math.cos(k * th) + math.sin(k * th) / math.sin(th) * math.cos(th)) / (r + 2)
        for k in range(r + 1)
    ])


def t_coeffs(k: int) -> np.ndarray:
    """Monomial coefficients of T_k by the recurrence on coefficient vectors."""
    prev, cur = np.array([1.0]), np.array([0.0, 1.0])
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = np.zeros(len(cur) + 1)
        nxt[1:] = 2 * cur
        nxt[: len(prev)] -= prev
        prev, cur = cur, nxt
    return cur


class TestCoefficients:
    @pytest.mark.parametrize("r", [0, 1, 5, 30])
    def test_normalised(self, r):
        assert jackson_coefficients(r).g[0] == 1.0

    def test_first_coefficient(self):
        jc = jackson_coefficients(6)
        assert jc.g[1] == pytest.approx(math.cos(math.pi / 8), abs=1e-15)
        assert jc.theta_r == pytest.approx(math.pi / 8)

    @pytest.mark.parametrize("r", [1, 6, 13, 40])
    def test_trig_form_agrees(self, r):
        np.testing.assert_allclose(jackson_coefficients(r).g, g_trig(r), atol=1e-12)

    def test_bounded_by_one(self):
        for r in range(0, 60):
            assert np.all(np.abs(jackson_coefficients(r).g) <= 1 + 1e-15)

    def test_coefficient_decay(self):
        for d in range(1, 11):
            C_d = d * d * (1 + 2 * (1.0 if d == 1 else max_cheb_coeff(d)))
            for r in range(d, 201):
                g = jackson_coefficients(r).g[: d + 1]
                assert np.max(np.abs(1 - g)) <= C_d * math.pi**2 / (2 * (r + 2) ** 2)


class TestDeltaDensity:
    def test_center_zero_r1(self):
        h = delta_density_1d(0.0, 1).poly
        assert h == ChebPoly(1, {(0,): 1.0})

    def test_center_zero_r2(self):
        h = delta_density_1d(0.0, 2).poly
        g2 = jackson_coefficients(2).g[2]
        assert h.coeff((2,)) == pytest.approx(-2 * g2)
        assert h.coeff((1,)) == 0.0

    def test_half_r8(self):
        h = delta_density_1d(0.5, 8).poly
        assert quadrature_mu(h, 1) == pytest.approx(1.0, abs=1e-12)
        assert poly_eval(h, np.linspace(-1, 1, 2001)[:, None]).min() >= -1e-10

    def test_domain_error(self):
        with pytest.raises(DomainError):
            delta_density_1d(1.2, 4)
        with pytest.raises(DomainError):
            delta_density_nd((0.0, -1.01), (2, 2))

    def test_nonnegative_random(self, rng):
        grid = np.linspace(-1, 1, 2001)[:, None]
        for _ in range(50):
            x, r = rng.uniform(-1, 1), int(rng.integers(0, 21))
            assert poly_eval(delta_density_1d(x, r).poly, grid).min() >= -1e-9

    def test_nd_constant(self):
        assert delta_density_nd((0.0, 0.0), (0, 0)).poly == ChebPoly.constant(2)

    def test_nd_normalised(self):
        dd = delta_density_nd((0.5, 0.5), (6, 6))
        assert inner_product_mu(dd.poly, ChebPoly.constant(2)) == pytest.approx(1.0, abs=1e-12)
        assert dd.poly.degree <= 12

    def test_nd_quadrature(self):
        dd = delta_density_nd((0.5, -0.5), (4, 6))
        assert quadrature_mu(dd.poly, 2) == pytest.approx(1.0, abs=1e-10)

    def test_nd_is_product(self, rng):
        dd = delta_density_nd((0.3, -0.7), (3, 5))
        h1, h2 = delta_density_1d(0.3, 3).poly, delta_density_1d(-0.7, 5).poly
        pts = rng.uniform(-1, 1, size=(20, 2))
        np.testing.assert_allclose(
            poly_eval(dd.poly, pts), poly_eval(h1, pts[:, :1]) * poly_eval(h2, pts[:, 1:]), atol=1e-12
        )

    def test_nd_normalisation_random(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            dd = delta_density_nd(rng.uniform(-1, 1, n), rng.integers(0, 8, n))
            assert inner_product_mu(dd.poly, ChebPoly.constant(n)) == pytest.approx(1.0, abs=1e-12)


class TestDegreeSplit:
    @pytest.mark.parametrize(
        "r, n, expected", [(10, 2, (4, 4)), (11, 2, (5, 4)), (7, 3, (2, 1, 1))]
    )
    def test_examples(self, r, n, expected):
        assert degree_split(r, n) == expected

    def test_sum(self):
        for n in range(1, 5):
            for r in range(n, 40):
                parts = degree_split(r, n)
                assert sum(parts) == r - n and max(parts) - min(parts) <= 1

    def test_too_small(self):
        with pytest.raises(ValueError):
            degree_split(1, 2)


class TestJacksonBound:
    def test_constant(self):
        f = ChebPoly.constant(2, 3.5)
        assert jackson_bound(f, (0.2, -0.4), (3, 5)) == pytest.approx(3.5)

    def test_t1_at_minus_one(self):
        f = ChebPoly.basis((1,))
        assert jackson_bound(f, (-1.0,), (8,)) == pytest.approx(-math.cos(math.pi / 10), abs=1e-15)

    def test_motzkin_error_envelope(self):
        f = lookup("motzkin", 2).cheb
        val = jackson_bound(f, (0.5, 0.5), (8, 8))
        C_f = error_constants(f).C_f
        assert 0 <= val <= C_f * 2 / 10**2

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            jackson_bound(lookup("motzkin", 2).cheb, (0.5, 0.5), (5, 8))

    def test_matches_quadrature(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 3))
            f = random_cheb(rng, n, 4)
            d = max(f.degree, 0)
            degrees = tuple(int(v) for v in rng.integers(d, 11, n))
            x = tuple(rng.uniform(-1, 1, n))
            H = delta_density_nd(x, degrees).poly
            oracle = quadrature_mu(f * H, n)
            val = jackson_bound(f, x, degrees)
            assert val == pytest.approx(oracle, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("tf", catalog(), ids=lambda t: f"{t.name}-{t.n}")
    def test_convergence_rate(self, tf):
        C_f = error_constants(tf.cheb).C_f
        d = tf.cheb.degree
        for r in range(tf.n * (d + 1), tf.n * (d + 1) + 40):
            degrees = degree_split(r, tf.n)
            gap = jackson_bound(tf.cheb, tf.minimizers[0], degrees) - tf.f_min
            assert gap <= C_f * sum(1 / (ri + 2) ** 2 for ri in degrees)


class TestChebCoefficientBound:
    @pytest.mark.parametrize("k, expected", [(0, 0), (3, 0), (4, 0), (6, 1)])
    def test_psi(self, k, expected):
        assert psi(k) == expected

    def test_psi_examples_by_formula(self):
        assert psi(6) == math.ceil((19 - math.sqrt(281)) / 8)

    @pytest.mark.parametrize("k, expected", [(2, 2.0), (6, 48.0)])
    def test_values(self, k, expected):
        assert max_cheb_coeff(k) == expected

    def test_matches_expansion(self):
        for k in range(2, 40):
            brute = np.max(np.abs(t_coeffs(k)))
            assert max_cheb_coeff(k) == pytest.approx(brute, rel=1e-12)

    def test_u_coefficients_dominated(self):
        for k in range(2, 25):
            # U_{k-1} = T_k' / k
            u = np.polynomial.polynomial.polyder(t_coeffs(k)) / k
            assert np.max(np.abs(u)) <= max_cheb_coeff(k)

    def test_monotone(self):
        vals = [max_cheb_coeff(k) for k in range(2, 60)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_large_k_log_gamma_branch(self):
        assert max_cheb_coeff(21) == pytest.approx(np.max(np.abs(t_coeffs(21))), rel=1e-12)


class TestErrorConstants:
    @pytest.mark.parametrize(
        "name, expected",
        [("motzkin", 1.1e5), ("matyas", 9.9e3), ("booth", 2.6e5), ("three-hump", 3.5e7)],
    )
    def test_reference_values(self, name, expected):
        assert error_constants(lookup(name, 2).cheb).C_f == pytest.approx(expected, rel=0.10)

    def test_structure(self):
        ec = error_constants(lookup("three-hump", 2).cheb)
        assert ec.d == 6 and ec.psi_d == 1 and ec.c_d == 48
        assert ec.C_d == 36 * 97

    def test_degree_one_convention(self):
        ec = error_constants(ChebPoly(1, {(1,): 2.0, (0,): 1.0}))
        assert ec.c_d == 1.0 and ec.C_d == 3.0
        assert ec.C_f == pytest.approx(3.0 * 3.0 * math.pi**2 / 2)

    def test_univariate_variant_drops_constant(self):
        f = ChebPoly(1, {(2,): 1.0, (0,): 5.0})
        assert error_constants(f, include_constant=False).C_f == pytest.approx(
            error_constants(f).C_f / 6
        )

    def test_constant_rejected(self):
        with pytest.raises(DegenerateInputError):
            error_constants(ChebPoly.constant(2, 4.0))


class TestGaussianOverlay:
    def test_at_center(self):
        row = gaussian_overlay(0.0, 8, [0.0])[0]
        h = delta_density_1d(0.0, 8).poly
        assert row[1] == pytest.approx(poly_eval(h, [0.0]) / math.pi)

    def test_variance_formula(self):
        assert gaussian_variance(0.0, 8) == pytest.approx((math.pi / 9) ** 2 * (1 - 2 / 9))

    def test_peak_matches_gaussian(self):
        row = gaussian_overlay(0.0, 64, [0.0])[0]
        assert row[1] == pytest.approx(row[2], rel=0.15)

    def test_endpoints_dropped(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            table = gaussian_overlay(0.0, 8, np.linspace(-1, 1, 11))
        assert len(table) == 9
        assert any("singular" in str(w.message) for w in caught)

    def test_delta_integrates_to_one(self):
        x = np.linspace(-1, 1, 20001)[1:-1]
        table = gaussian_overlay(0.3, 16, x)
        # substitute x = cos t to integrate against dx without the endpoint singularity
        t = np.linspace(0, np.pi, 4001)
        h = delta_density_1d(0.3, 16).poly
        mass = trapezoid(poly_eval(h, np.cos(t)[:, None]), t) / np.pi
        assert mass == pytest.approx(1.0, abs=1e-6)
        assert table[:, 1].min() >= -1e-9
