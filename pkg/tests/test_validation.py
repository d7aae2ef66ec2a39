"""Shared input-validation helpers."""

import numpy as np
import pytest

from stackmc.validation import (
    check_points,
    check_positive_int,
    check_rng,
    check_values,
    check_weights,
)


class TestCheckPoints:
    def test_promotes_1d_to_column(self):
        X = check_points(np.array([1.0, 2.0, 3.0]))
        assert X.shape == (3, 1)

    def test_casts_to_float(self):
        X = check_points(np.array([[1, 2], [3, 4]]))
        assert X.dtype == np.float64

    def test_rejects_bad_shapes_and_values(self):
        with pytest.raises(ValueError, match="2-d"):
            check_points(np.zeros((2, 2, 2)))
        with pytest.raises(ValueError, match="empty"):
            check_points(np.zeros((0, 3)))
        with pytest.raises(ValueError, match="non-finite"):
            check_points(np.array([[1.0, np.inf]]))
        with pytest.raises(ValueError, match="dimension 3"):
            check_points(np.ones((4, 2)), dim=3)

    def test_bit_mode(self):
        X = check_points(np.array([[1.0, -1.0]]), bits=True)
        assert np.array_equal(X, [[1.0, -1.0]])
        with pytest.raises(ValueError, match="bit-string"):
            check_points(np.array([[1.0, 0.0]]), bits=True)


class TestCheckValues:
    def test_accepts_matching_vector(self):
        y = check_values([1, 2, 3], 3)
        assert y.dtype == np.float64

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="1-d"):
            check_values(np.ones((2, 2)))
        with pytest.raises(ValueError, match="non-finite"):
            check_values([1.0, np.nan])
        with pytest.raises(ValueError, match="for 4 points"):
            check_values([1.0, 2.0], 4)


class TestCheckWeights:
    def test_accepts_positive(self):
        w = check_weights([0.5, 2.0], 2)
        assert np.array_equal(w, [0.5, 2.0])

    def test_rejects_nonpositive_or_wrong_length(self):
        with pytest.raises(ValueError, match="positive"):
            check_weights([1.0, 0.0], 2)
        with pytest.raises(ValueError, match="2 weights"):
            check_weights([1.0], 2)
        with pytest.raises(ValueError, match="non-finite"):
            check_weights([1.0, np.inf], 2)


class TestCheckRng:
    def test_passthrough_and_coercion(self):
        gen = np.random.default_rng(0)
        assert check_rng(gen) is gen
        assert isinstance(check_rng(5), np.random.Generator)
        assert isinstance(check_rng(None), np.random.Generator)

    def test_seed_coercion_is_deterministic(self):
        a = check_rng(42).standard_normal(3)
        b = check_rng(42).standard_normal(3)
        assert np.array_equal(a, b)

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            check_rng("seed")


class TestCheckPositiveInt:
    def test_accepts_integers(self):
        assert check_positive_int(3, "k") == 3
        assert check_positive_int(np.int64(4), "k") == 4
        assert check_positive_int(0, "k", minimum=0) == 0

    def test_rejects_floats_and_small_values(self):
        with pytest.raises(TypeError, match="k must be"):
            check_positive_int(2.0, "k")
        with pytest.raises(ValueError, match=">= 1"):
            check_positive_int(0, "k")
