"""Distributions: densities, moments, and inverse transforms."""

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import norm

from stackmc import (
    GaussianIID,
    MomentTable,
    ProductQuadratic,
    UniformBits,
    UniformBox,
    seeded_rng,
)


def quad_norm_1d(dist, lo, hi):
    val, _ = integrate.quad(
        lambda x: float(dist.density(np.array([[x]]))[0]), lo, hi, limit=200
    )
    return val


class TestMomentTable:
    def test_shape_and_validation(self):
        raw = np.tile([1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0], (2, 1))
        mt = MomentTable(raw=raw)
        assert mt.dim == 2
        with pytest.raises(ValueError):
            MomentTable(raw=raw[:, :5])
        bad_zero = raw.copy()
        bad_zero[0, 0] = 0.9
        with pytest.raises(ValueError):
            MomentTable(raw=bad_zero)
        bad_even = raw.copy()
        bad_even[1, 2] = -0.5
        with pytest.raises(ValueError):
            MomentTable(raw=bad_even)


class TestUniformBox:
    def test_moments_match_closed_forms(self):
        box = UniformBox(-3.0, 3.0, dim=2)
        raw = box.moment_table().raw
        # E[x^j] on [-3, 3]: 0 for odd j, 3^j / (j+1) for even j
        expected = [1.0, 0.0, 3.0, 0.0, 81.0 / 5.0, 0.0, 729.0 / 7.0]
        assert np.allclose(raw, np.tile(expected, (2, 1)))

    def test_asymmetric_interval_moments(self):
        box = UniformBox(1.0, 2.0)
        raw = box.moment_table().raw[0]
        assert raw[1] == pytest.approx(1.5)
        assert raw[2] == pytest.approx(7.0 / 3.0)
        assert raw[3] == pytest.approx(15.0 / 4.0)

    def test_density_normalizes(self):
        box = UniformBox(0.0, 4.0)
        assert quad_norm_1d(box, 0.0, 4.0) == pytest.approx(1.0, abs=1e-6)
        assert box.density(np.array([[5.0]]))[0] == 0.0

    def test_trig_means_match_quadrature(self):
        box = UniformBox(-1.0, 2.0)
        mt = box.moment_table()
        for omega, phase in ((0.7, 0.2), (3.0, -1.0), (0.0, 0.4)):
            want, _ = integrate.quad(
                lambda x: np.cos(omega * x + phase) / 3.0, -1.0, 2.0
            )
            assert mt.cos_mean(omega, phase)[0] == pytest.approx(want, abs=1e-12)
            want, _ = integrate.quad(
                lambda x: np.sin(omega * x + phase) / 3.0, -1.0, 2.0
            )
            assert mt.sin_mean(omega, phase)[0] == pytest.approx(want, abs=1e-12)

    def test_ppf_round_trip(self):
        box = UniformBox(-2.0, 5.0, dim=3)
        u = seeded_rng(0).random((40, 3))
        X = box.ppf(u)
        assert np.all(X >= -2.0) and np.all(X <= 5.0)
        back = (X - (-2.0)) / 7.0
        assert np.allclose(back, u)

    def test_sample_stays_inside_and_matches_mean(self):
        box = UniformBox(2.0, 4.0, dim=2)
        X = box.sample(20_000, seeded_rng(1))
        assert X.shape == (20_000, 2)
        assert X.min() >= 2.0 and X.max() <= 4.0
        assert X.mean() == pytest.approx(3.0, abs=0.02)

    def test_vector_bounds_and_validation(self):
        box = UniformBox([0.0, -1.0], [1.0, 1.0])
        assert box.dim == 2
        assert box.moment_table().raw[1, 1] == pytest.approx(0.0)
        with pytest.raises(ValueError):
            UniformBox(1.0, 1.0)
        with pytest.raises(ValueError):
            UniformBox([0.0, 0.0], [1.0], dim=2)
        with pytest.raises(ValueError):
            UniformBox(0.0, np.inf)

    def test_moment_table_cached_per_instance(self):
        box = UniformBox(0.0, 1.0)
        assert box.moment_table() is box.moment_table()


class TestGaussianIID:
    def test_moments_match_closed_forms(self):
        mu, sigma = 0.7, 1.3
        g = GaussianIID(mu, sigma, dim=2)
        raw = g.moment_table().raw[0]
        v = sigma * sigma
        assert raw[1] == pytest.approx(mu)
        assert raw[2] == pytest.approx(mu * mu + v)
        assert raw[3] == pytest.approx(mu**3 + 3 * mu * v)
        assert raw[4] == pytest.approx(mu**4 + 6 * mu * mu * v + 3 * v * v)

    def test_density_normalizes_and_matches_scipy(self):
        g = GaussianIID(0.0, 2.0, dim=1)
        assert quad_norm_1d(g, -20.0, 20.0) == pytest.approx(1.0, abs=1e-6)
        x = np.array([[0.0], [1.0], [-3.0]])
        assert np.allclose(g.density(x), norm.pdf(x[:, 0], 0.0, 2.0))

    def test_trig_means_match_quadrature(self):
        g = GaussianIID(0.5, 1.5, dim=1)
        mt = g.moment_table()
        for omega, phase in ((0.8, 0.0), (2.0, 1.1)):
            want, _ = integrate.quad(
                lambda x: np.cos(omega * x + phase) * norm.pdf(x, 0.5, 1.5),
                -15.0, 15.0,
            )
            assert mt.cos_mean(omega, phase)[0] == pytest.approx(want, abs=1e-10)

    def test_ppf_matches_normal_quantiles(self):
        g = GaussianIID(0.0, 2.0, dim=1)
        u = np.array([[0.5], [norm.cdf(1.0)]])
        X = g.ppf(u)
        assert X[0, 0] == pytest.approx(0.0, abs=1e-12)
        assert X[1, 0] == pytest.approx(2.0, abs=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            GaussianIID(0.0, 0.0, dim=1)
        with pytest.raises(ValueError):
            GaussianIID(np.nan, 1.0, dim=1)
        with pytest.raises(ValueError):
            GaussianIID(0.0, 1.0, dim=0)

    def test_reference_box_covers_three_sigma(self):
        g = GaussianIID(1.0, 2.0, dim=3)
        lo, hi = g.reference_box()
        assert np.allclose(lo, -5.0)
        assert np.allclose(hi, 7.0)


class TestUniformBits:
    def test_samples_are_signs(self):
        b = UniformBits(5)
        X = b.sample(200, seeded_rng(2))
        assert set(np.unique(X)) == {-1.0, 1.0}

    def test_mass_function(self):
        b = UniformBits(3)
        X = np.array([[1.0, -1.0, 1.0], [1.0, 0.0, 1.0]])
        p = b.density(X)
        assert p[0] == pytest.approx(1.0 / 8.0)
        assert p[1] == 0.0

    def test_moments(self):
        raw = UniformBits(2).moment_table().raw
        assert np.array_equal(raw, np.tile([1, 0, 1, 0, 1, 0, 1], (2, 1)))


class TestProductQuadratic:
    def test_density_normalizes(self):
        q = ProductQuadratic(-3.0, 3.0)
        assert quad_norm_1d(q, -3.0, 3.0) == pytest.approx(1.0, abs=1e-6)

    def test_center_to_uniform_ratio(self):
        # at the interval midpoint s = 0, factor = 12/(7w) * 1/4 = 3/(7w),
        # so uniform / proposal is 7/3 per coordinate
        for d in (1, 2):
            q = ProductQuadratic(-3.0, 3.0, dim=d)
            p = UniformBox(-3.0, 3.0, dim=d)
            center = np.zeros((1, d))
            ratio = (p.density(center) / q.density(center))[0]
            assert ratio == pytest.approx((7.0 / 3.0) ** d)

    def test_mass_concentrates_at_edges(self):
        q = ProductQuadratic(0.0, 1.0)
        edge = q.density(np.array([[0.001]]))[0]
        middle = q.density(np.array([[0.5]]))[0]
        assert edge > 2.0 * middle
        assert q.density(np.array([[1.5]]))[0] == 0.0

    def test_ppf_inverts_cdf(self):
        q = ProductQuadratic(-3.0, 3.0)
        u = seeded_rng(3).random((200, 1))
        X = q.ppf(u)
        s = 2.0 * (X + 3.0) / 6.0 - 1.0
        back = (6.0 / 7.0) * (s**3 / 3.0 + s / 4.0) + 0.5
        assert np.allclose(back, u, atol=1e-12)

    def test_ppf_median_is_center(self):
        q = ProductQuadratic(2.0, 4.0)
        assert q.ppf(np.array([[0.5]]))[0, 0] == pytest.approx(3.0, abs=1e-12)

    def test_sample_histogram_matches_density(self):
        q = ProductQuadratic(0.0, 1.0)
        X = q.sample(100_000, seeded_rng(4))[:, 0]
        hist, edges = np.histogram(X, bins=20, range=(0.0, 1.0), density=True)
        mids = 0.5 * (edges[:-1] + edges[1:])
        want = q.density(mids.reshape(-1, 1))
        assert np.max(np.abs(hist - want)) < 0.08

    def test_no_moment_table(self):
        with pytest.raises(NotImplementedError):
            ProductQuadratic(0.0, 1.0).moment_table()
