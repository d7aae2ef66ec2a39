"""Input validation helpers shared across the package.

Every public entry point funnels array arguments through these checks so
that error messages are uniform and downstream code can assume float64
arrays of known shape.
"""

from __future__ import annotations

import numbers

import numpy as np

__all__ = [
    "check_points",
    "check_values",
    "check_weights",
    "check_rng",
    "check_positive_int",
]


def check_points(X, *, dim=None, bits=False):
    """Validate a sample-point array and return it as a float64 (n, d) array.

    A one-dimensional input is treated as n points in one dimension.

    Parameters
    ----------
    X : array_like
        Candidate point set.
    dim : int, optional
        Required number of columns.
    bits : bool, optional
        If True, every entry must be exactly +1 or -1.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d point array, got shape {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("point array is empty")
    if not np.all(np.isfinite(X)):
        raise ValueError("point array contains non-finite entries")
    if dim is not None and X.shape[1] != dim:
        raise ValueError(f"expected points of dimension {dim}, got {X.shape[1]}")
    if bits and not np.all(np.abs(X) == 1.0):
        raise ValueError("expected +/-1 bit-string points")
    return X


def check_values(y, n=None):
    """Validate a sample-value vector and return it as a float64 (n,) array."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValueError(f"expected a 1-d value array, got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("value array contains non-finite entries")
    if n is not None and y.shape[0] != n:
        raise ValueError(f"got {y.shape[0]} values for {n} points")
    return y


def check_weights(w, n):
    """Validate importance weights: finite, strictly positive, length n."""
    w = np.asarray(w, dtype=float)
    if w.shape != (n,):
        raise ValueError(f"expected {n} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weight array contains non-finite entries")
    if np.any(w <= 0):
        raise ValueError("importance weights must be strictly positive")
    return w


def check_rng(rng):
    """Coerce ``rng`` (Generator, int seed, or None) to a numpy Generator."""
    if rng is None:
        return np.random.default_rng()
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, numbers.Integral):
        return np.random.default_rng(int(rng))
    raise TypeError(f"cannot interpret {rng!r} as a random generator")


def check_positive_int(value, name, minimum=1):
    """Validate an integer-valued scalar >= minimum and return it as int."""
    if not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value
