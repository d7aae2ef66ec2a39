"""Benchmark integrands with independently computable reference means.

Each benchmark is a callable mapping an (n, d) point array to (n,)
values, with a ``dim`` attribute.  :func:`reference_mean` supplies the
exact expectation used to score estimators against the truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import GaussianIID, UniformBits, UniformBox
from .validation import check_points, check_positive_int

__all__ = [
    "Quadratic1D",
    "Rosenbrock",
    "FourPeaks",
    "reference_mean",
    "enumerate_bits_mean",
]


@dataclass(frozen=True)
class Quadratic1D:
    """f(x) = (x - 0.2)^2 in one dimension.

    An exact-fit target for any surrogate containing quadratics.
    """

    @property
    def dim(self):
        return 1

    def __call__(self, X):
        X = check_points(X, dim=1)
        return (X[:, 0] - 0.2) ** 2


@dataclass(frozen=True)
class Rosenbrock:
    """Chained Rosenbrock function, sum over consecutive coordinate pairs.

    f(x) = sum_i (1 - x_i)^2 + 100 (x_{i+1} - x_i^2)^2.  Minimum is
    f(1, ..., 1) = 0.
    """

    dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "dim", check_positive_int(self.dim, "dim", minimum=2))

    def __call__(self, X):
        X = check_points(X, dim=self.dim)
        a = X[:, :-1]
        b = X[:, 1:]
        return np.sum((1.0 - a) ** 2 + 100.0 * (b - a * a) ** 2, axis=1)


@dataclass(frozen=True)
class FourPeaks:
    """Four Peaks bit-string objective on +/-1 strings.

    With o the number of leading +1 bits and z the number of trailing
    -1 bits, f = max(o, z), plus a bonus of d when both o and z exceed
    the threshold T (default round(0.1 d)).  The bonus creates two
    narrow global peaks next to the two easy slopes.
    """

    dim: int
    threshold: int | None = None

    def __post_init__(self):
        check_positive_int(self.dim, "dim")
        if self.threshold is not None:
            check_positive_int(self.threshold, "threshold", minimum=0)

    @property
    def t(self):
        if self.threshold is not None:
            return int(self.threshold)
        return int(round(0.1 * self.dim))

    def __call__(self, X):
        X = check_points(X, dim=self.dim, bits=True)
        ones = X > 0
        d = self.dim
        # leading +1 run: position of the first -1, or d if none
        o = np.where(ones.all(axis=1), d, np.argmin(ones, axis=1))
        # trailing -1 run: position of the first +1 from the right
        rev = ~ones[:, ::-1]
        z = np.where(rev.all(axis=1), d, np.argmin(rev, axis=1))
        bonus = (o > self.t) & (z > self.t)
        return np.maximum(o, z).astype(float) + d * bonus


def enumerate_bits_mean(fn, dim, *, chunk=1 << 16):
    """Exact mean of a bit-string function by full enumeration of 2^d states."""
    dim = check_positive_int(dim, "dim")
    if dim > 24:
        raise ValueError("enumeration above d=24 is too expensive")
    n = 1 << dim
    bitpos = np.arange(dim, dtype=np.int64)
    total = 0.0
    for start in range(0, n, chunk):
        ints = np.arange(start, min(start + chunk, n), dtype=np.int64)
        bits = ((ints[:, None] >> bitpos) & 1).astype(float) * 2.0 - 1.0
        total += float(fn(bits).sum())
    return total / n


def reference_mean(fn, dist):
    """Exact expectation of a benchmark under a sampling distribution.

    Raises ValueError for pairs without a closed form (or tractable
    enumeration).
    """
    if getattr(fn, "dim", None) != dist.dim:
        raise ValueError(
            f"function dimension {getattr(fn, 'dim', None)} does not match "
            f"distribution dimension {dist.dim}"
        )
    if isinstance(fn, Quadratic1D) and isinstance(dist, (UniformBox, GaussianIID)):
        m = dist.moment_table().raw[0]
        return float(m[2] - 0.4 * m[1] + 0.04)
    if isinstance(fn, Rosenbrock) and isinstance(dist, (UniformBox, GaussianIID)):
        raw = dist.moment_table().raw
        m1, m2, m4 = raw[:, 1], raw[:, 2], raw[:, 4]
        # independence splits E[(x_{i+1} - x_i^2)^2] into per-coordinate moments
        gap = m2[1:] - 2.0 * m1[1:] * m2[:-1] + m4[:-1]
        straight = 1.0 - 2.0 * m1[:-1] + m2[:-1]
        return float(np.sum(straight + 100.0 * gap))
    if isinstance(fn, FourPeaks) and isinstance(dist, UniformBits):
        return enumerate_bits_mean(fn, dist.dim)
    raise ValueError(
        f"no reference mean for {type(fn).__name__} under {type(dist).__name__}"
    )
