"""Benchmark integrands and their reference expectations."""

import itertools

import numpy as np
import pytest

from stackmc import (
    FourPeaks,
    GaussianIID,
    Quadratic1D,
    Rosenbrock,
    UniformBits,
    UniformBox,
    reference_mean,
    seeded_rng,
)
from stackmc.benchmarks import enumerate_bits_mean


class TestQuadratic1D:
    def test_values(self):
        fn = Quadratic1D()
        assert fn.dim == 1
        X = np.array([[0.2], [0.0], [1.2]])
        assert np.allclose(fn(X), [0.0, 0.04, 1.0])

    def test_reference_uniform(self):
        # integral of (x - 0.2)^2 over [0, 1] is 0.52/3
        got = reference_mean(Quadratic1D(), UniformBox(0.0, 1.0, dim=1))
        assert got == pytest.approx(0.52 / 3.0, rel=1e-14)

    def test_reference_gaussian(self):
        # E[(x - 0.2)^2] = (mu - 0.2)^2 + sigma^2
        got = reference_mean(Quadratic1D(), GaussianIID(1.0, 2.0, dim=1))
        assert got == pytest.approx(0.64 + 4.0, rel=1e-12)


class TestRosenbrock:
    def test_minimum_and_positivity(self):
        fn = Rosenbrock(dim=4)
        assert fn(np.ones((1, 4)))[0] == 0.0
        X = seeded_rng(0).standard_normal((50, 4))
        assert np.all(fn(X) >= 0.0)

    def test_hand_value(self):
        fn = Rosenbrock(dim=2)
        # at (0, 1): (1 - 0)^2 + 100 (1 - 0)^2 = 101
        assert fn(np.array([[0.0, 1.0]]))[0] == pytest.approx(101.0)

    def test_chain_sums_pairs(self):
        fn3 = Rosenbrock(dim=3)
        x = np.array([[0.5, -0.3, 1.1]])
        pair = Rosenbrock(dim=2)
        want = pair(x[:, :2])[0] + pair(x[:, 1:])[0]
        assert fn3(x)[0] == pytest.approx(want)

    def test_dim_validation(self):
        with pytest.raises(ValueError):
            Rosenbrock(dim=1)

    def test_reference_uniform_box_frozen_value(self):
        got = reference_mean(Rosenbrock(dim=10), UniformBox(-3.0, 3.0, dim=10))
        assert got == pytest.approx(17316.0, rel=1e-12)

    def test_reference_gaussian_frozen_value(self):
        got = reference_mean(Rosenbrock(dim=10), GaussianIID(0.0, 2.0, dim=10))
        assert got == pytest.approx(46845.0, rel=1e-12)

    def test_reference_matches_independent_moment_algebra(self):
        # recompute E[f] from scratch for N(mu, sigma^2) coordinates:
        # per pair, E[(1 - a)^2] = 1 - 2 mu + (mu^2 + s2) and
        # E[(b - a^2)^2] = (mu^2 + s2) - 2 mu E[a^2] + E[a^4]
        mu, s2, d = 0.5, 1.5, 6
        m2 = mu * mu + s2
        m4 = mu**4 + 6 * mu * mu * s2 + 3 * s2 * s2
        per_pair = (1 - 2 * mu + m2) + 100.0 * (m2 - 2 * mu * m2 + m4)
        want = (d - 1) * per_pair
        got = reference_mean(Rosenbrock(dim=d),
                             GaussianIID(mu, np.sqrt(s2), dim=d))
        assert got == pytest.approx(want, rel=1e-12)

    def test_reference_against_monte_carlo(self):
        dist = UniformBox(-3.0, 3.0, dim=10)
        fn = Rosenbrock(dim=10)
        rng = seeded_rng(1)
        n = 2_000_000
        total = 0.0
        total_sq = 0.0
        for _ in range(4):
            vals = fn(dist.sample(n // 4, rng))
            total += float(vals.sum())
            total_sq += float((vals * vals).sum())
        mc = total / n
        var = total_sq / n - mc * mc
        se = np.sqrt(var / n)
        assert abs(mc - 17316.0) < 4.0 * se


class TestFourPeaks:
    def test_all_ones_scores_dim(self):
        fn = FourPeaks(dim=10, threshold=1)
        X = np.ones((1, 10))
        # o = 10, z = 0: no bonus, max run is 10
        assert fn(X)[0] == 10.0

    def test_bonus_logic(self):
        fn = FourPeaks(dim=6, threshold=2)
        lead3_trail3 = np.array([[1, 1, 1, -1, -1, -1]], dtype=float)
        assert fn(lead3_trail3)[0] == 3.0 + 6.0
        lead2_trail2 = np.array([[1, 1, -1, 1, -1, -1]], dtype=float)
        # o = 2, z = 2: neither exceeds T = 2, so just max(o, z)
        assert fn(lead2_trail2)[0] == 2.0
        lead5 = np.array([[1, 1, 1, 1, 1, -1]], dtype=float)
        # o = 5 but z = 1 <= T: no bonus
        assert fn(lead5)[0] == 5.0

    def test_default_threshold_is_tenth_of_dim(self):
        assert FourPeaks(dim=16).t == 2
        assert FourPeaks(dim=30).t == 3
        assert FourPeaks(dim=16, threshold=5).t == 5

    def test_rejects_non_bit_input(self):
        with pytest.raises(ValueError):
            FourPeaks(dim=3)(np.array([[1.0, 0.5, -1.0]]))

    def test_matches_brute_force_enumeration(self):
        d, t = 8, 1
        fn = FourPeaks(dim=d, threshold=t)

        def slow(bits):
            o = 0
            for b in bits:
                if b != 1:
                    break
                o += 1
            z = 0
            for b in reversed(bits):
                if b != -1:
                    break
                z += 1
            return max(o, z) + (d if (o > t and z > t) else 0)

        states = np.array(list(itertools.product([-1.0, 1.0], repeat=d)))
        fast = fn(states)
        want = np.array([slow(list(row)) for row in states])
        assert np.array_equal(fast, want)
        assert enumerate_bits_mean(fn, d) == pytest.approx(want.mean(), rel=1e-14)

    def test_reversal_complement_symmetry(self):
        # flipping the string end-to-end and negating every bit swaps
        # o and z, leaving the score unchanged
        d = 8
        fn = FourPeaks(dim=d, threshold=2)
        states = np.array(list(itertools.product([-1.0, 1.0], repeat=d)))
        mirrored = -states[:, ::-1]
        assert np.array_equal(fn(states), fn(mirrored))

    def test_reference_frozen_value(self):
        got = reference_mean(FourPeaks(dim=16, threshold=2), UniformBits(16))
        assert got == 1.9166412353515625


class TestReferenceMeanDispatch:
    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            reference_mean(Rosenbrock(dim=3), UniformBox(0.0, 1.0, dim=2))

    def test_unsupported_pair(self):
        with pytest.raises(ValueError, match="no reference mean"):
            reference_mean(FourPeaks(dim=4), UniformBox(-1.0, 1.0, dim=4))

    def test_enumeration_guard(self):
        with pytest.raises(ValueError, match="24"):
            enumerate_bits_mean(FourPeaks(dim=25), 25)
