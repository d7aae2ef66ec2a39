"""Point-set generators and their statistical guarantees."""

import numpy as np
import pytest
from scipy.stats import norm

from stackmc import (
    GaussianIID,
    HaltonSampler,
    ImportanceSampler,
    LatinHypercubeSampler,
    ProductQuadratic,
    SimpleSampler,
    UniformBox,
    halton,
    latin_hypercube,
    seeded_rng,
    transform_to,
)


class TestLatinHypercube:
    def test_exact_stratification_every_dimension(self):
        for n in (3, 10, 64):
            u = latin_hypercube(n, 4, seeded_rng(n))
            assert u.shape == (n, 4)
            for j in range(4):
                strata = np.sort(np.floor(u[:, j] * n).astype(int))
                assert np.array_equal(strata, np.arange(n))

    def test_mean_close_to_half(self):
        u = latin_hypercube(1000, 2, seeded_rng(0))
        assert abs(u.mean() - 0.5) < 0.01

    def test_reproducible_and_rng_driven(self):
        a = latin_hypercube(16, 2, seeded_rng(5))
        b = latin_hypercube(16, 2, seeded_rng(5))
        c = latin_hypercube(16, 2, seeded_rng(6))
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_validation(self):
        with pytest.raises(ValueError):
            latin_hypercube(0, 2, seeded_rng(0))
        with pytest.raises(ValueError):
            latin_hypercube(4, 0, seeded_rng(0))


class TestHalton:
    def test_base2_prefix(self):
        pts = halton(3, 1)
        assert np.allclose(pts[:, 0], [0.5, 0.25, 0.75], atol=1e-15)

    def test_base3_prefix(self):
        pts = halton(3, 2)
        assert np.allclose(pts[:, 1], [1 / 3, 2 / 3, 1 / 9], atol=1e-15)

    def test_burn_in_shifts_the_sequence(self):
        head = halton(8, 2)
        shifted = halton(5, 2, burn_in=3)
        assert np.allclose(shifted, head[3:8])

    def test_never_hits_origin_and_stays_in_open_cube(self):
        pts = halton(2000, 3)
        assert pts.min() > 0.0
        assert pts.max() < 1.0

    def test_scramble_is_deterministic_per_seed(self):
        a = halton(50, 2, scramble_seed=11)
        b = halton(50, 2, scramble_seed=11)
        c = halton(50, 2, scramble_seed=12)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)
        assert not np.array_equal(a, halton(50, 2))

    def test_scrambled_sequence_is_still_uniform(self):
        pts = halton(10_000, 1, scramble_seed=7)[:, 0]
        grid = np.linspace(0.05, 0.95, 19)
        ecdf = np.searchsorted(np.sort(pts), grid) / pts.size
        assert np.max(np.abs(ecdf - grid)) < 0.02

    def test_low_discrepancy_beats_iid_on_mean(self):
        pts = halton(4096, 1)[:, 0]
        assert abs(pts.mean() - 0.5) < 1e-3

    def test_dimension_limit(self):
        with pytest.raises(ValueError):
            halton(4, 101)


class TestTransform:
    def test_uniform_box_affine(self):
        box = UniformBox(-1.0, 3.0, dim=1)
        u = np.array([[0.0], [0.5], [1.0]])
        X = transform_to(u, box)
        assert np.allclose(X[:, 0], [-1.0, 1.0, 3.0])

    def test_gaussian_quantiles(self):
        g = GaussianIID(0.0, 2.0, dim=1)
        u = np.array([[0.5], [norm.cdf(1.0)]])
        X = transform_to(u, g)
        assert X[0, 0] == pytest.approx(0.0, abs=1e-12)
        assert X[1, 0] == pytest.approx(2.0, abs=1e-3)

    def test_monotone_in_each_coordinate(self):
        g = GaussianIID(1.0, 0.5, dim=1)
        u = np.linspace(0.01, 0.99, 50).reshape(-1, 1)
        X = transform_to(u, g)[:, 0]
        assert np.all(np.diff(X) > 0)


class TestSamplerClasses:
    def test_simple_sampler_matches_distribution_draw(self):
        box = UniformBox(0.0, 1.0, dim=2)
        X, w = SimpleSampler().sample(box, 100, seeded_rng(1))
        assert X.shape == (100, 2)
        assert w is None

    def test_lhs_sampler_stratifies_after_inverse_map(self):
        box = UniformBox(2.0, 6.0, dim=2)
        X, w = LatinHypercubeSampler().sample(box, 10, seeded_rng(2))
        assert w is None
        u = (X - 2.0) / 4.0
        for j in range(2):
            strata = np.sort(np.floor(u[:, j] * 10).astype(int))
            assert np.array_equal(strata, np.arange(10))

    def test_halton_sampler_randomizes_per_call(self):
        box = UniformBox(0.0, 1.0, dim=2)
        sampler = HaltonSampler()
        X1, _ = sampler.sample(box, 32, seeded_rng(3))
        X2, _ = sampler.sample(box, 32, seeded_rng(4))
        assert not np.allclose(X1, X2)

    def test_halton_sampler_deterministic_mode(self):
        box = UniformBox(0.0, 1.0, dim=1)
        sampler = HaltonSampler(scramble=False, burn_in=0)
        X, _ = sampler.sample(box, 3, seeded_rng(0))
        assert np.allclose(X[:, 0], [0.5, 0.25, 0.75])


class TestImportanceSampler:
    def test_identical_proposal_gives_unit_weights(self):
        box = UniformBox(-3.0, 3.0, dim=2)
        sampler = ImportanceSampler(proposal=UniformBox(-3.0, 3.0, dim=2))
        X, w = sampler.sample(box, 500, seeded_rng(5))
        assert np.allclose(w, 1.0)

    def test_weight_mean_near_one(self):
        # E_q[p/q] = 1 whenever q covers p's support
        box = UniformBox(-3.0, 3.0, dim=3)
        sampler = ImportanceSampler(proposal=ProductQuadratic(-3.0, 3.0, dim=3))
        _, w = sampler.sample(box, 100_000, seeded_rng(6))
        assert w.mean() == pytest.approx(1.0, abs=0.01)

    def test_center_weight_value(self):
        box = UniformBox(-3.0, 3.0, dim=1)
        q = ProductQuadratic(-3.0, 3.0, dim=1)
        w = box.density(np.zeros((1, 1))) / q.density(np.zeros((1, 1)))
        assert w[0] == pytest.approx(7.0 / 3.0)

    def test_weighted_mean_corrects_proposal_bias(self):
        # estimate E[x^2] under uniform using the edge-heavy proposal
        box = UniformBox(-3.0, 3.0, dim=1)
        sampler = ImportanceSampler(proposal=ProductQuadratic(-3.0, 3.0, dim=1))
        X, w = sampler.sample(box, 200_000, seeded_rng(7))
        est = float(np.mean(w * X[:, 0] ** 2))
        assert est == pytest.approx(3.0, rel=0.02)
