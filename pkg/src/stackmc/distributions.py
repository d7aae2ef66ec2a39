"""Sampling distributions and their analytic moment tables.

Each distribution knows how to draw samples, evaluate its density (or
probability mass), and, where tractable, report per-dimension raw and
trigonometric moments.  Fitters use the moment tables to turn a fitted
basis expansion into an exact expected value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import ndtri

from .validation import check_points, check_positive_int, check_rng

__all__ = [
    "MomentTable",
    "Distribution",
    "UniformBox",
    "GaussianIID",
    "UniformBits",
    "ProductQuadratic",
]

#: Highest raw-moment order tabulated (E[x^0] .. E[x^MAX_MOMENT]).
MAX_MOMENT = 6


@dataclass(frozen=True, eq=False)
class MomentTable:
    """Per-dimension moments of an independent-coordinate distribution.

    ``raw[i, j]`` is E[x_i^j] for j = 0..6.  ``cos_mean(omega, phase)``
    and ``sin_mean(omega, phase)`` return the (d,) vectors
    E[cos(omega_i x_i + phase_i)] and the sine analogue; they are None
    when the distribution has no closed-form trigonometric moments.
    """

    raw: np.ndarray
    cos_mean: Callable | None = None
    sin_mean: Callable | None = None

    def __post_init__(self):
        raw = np.asarray(self.raw, dtype=float)
        if raw.ndim != 2 or raw.shape[1] != MAX_MOMENT + 1:
            raise ValueError(f"raw moments must have shape (d, {MAX_MOMENT + 1})")
        if np.any(np.abs(raw[:, 0] - 1.0) > 1e-12):
            raise ValueError("zeroth raw moment must be 1 in every dimension")
        if np.any(raw[:, 2::2] < 0):
            raise ValueError("even raw moments must be nonnegative")
        object.__setattr__(self, "raw", raw)

    @property
    def dim(self):
        return self.raw.shape[0]


class Distribution:
    """Common interface for the sampling distributions used here."""

    dim: int

    def sample(self, n, rng):
        """Draw n points as an (n, dim) array."""
        raise NotImplementedError

    def density(self, X):
        """Density (or probability mass) at each row of X, shape (n,)."""
        raise NotImplementedError

    def moment_table(self) -> MomentTable:
        # tables are immutable, so build once per instance
        mt = self.__dict__.get("_moment_cache")
        if mt is None:
            mt = self._build_moment_table()
            object.__setattr__(self, "_moment_cache", mt)
        return mt

    def _build_moment_table(self) -> MomentTable:
        raise NotImplementedError(
            f"{type(self).__name__} has no analytic moment table"
        )

    def reference_box(self):
        """A (lo, hi) box covering the bulk of the mass, for basis scaling."""
        raise NotImplementedError(
            f"{type(self).__name__} has no reference box"
        )

    def ppf(self, u):
        """Coordinatewise inverse CDF, mapping (n, dim) uniforms to points."""
        raise NotImplementedError(
            f"{type(self).__name__} has no inverse CDF transform"
        )


def _as_bounds(lo, hi, dim):
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.ndim == 0 and hi.ndim == 0:
        if dim is None:
            dim = 1
        lo = np.full(dim, float(lo))
        hi = np.full(dim, float(hi))
    else:
        lo = np.atleast_1d(lo)
        hi = np.atleast_1d(hi)
        if dim is not None and (lo.size != dim or hi.size != dim):
            raise ValueError("bounds do not match requested dimension")
    if lo.shape != hi.shape or lo.ndim != 1:
        raise ValueError("lo and hi must be scalars or equal-length vectors")
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise ValueError("bounds must be finite")
    if np.any(hi <= lo):
        raise ValueError("every upper bound must exceed its lower bound")
    lo = lo.copy()
    hi = hi.copy()
    lo.flags.writeable = False
    hi.flags.writeable = False
    return lo, hi


def _box_trig(lo, hi):
    """Closed-form E[cos/sin(omega x + phase)] for x uniform on [lo, hi]."""
    width = hi - lo

    def _pair(omega, phase):
        omega = np.broadcast_to(np.asarray(omega, dtype=float), lo.shape)
        phase = np.broadcast_to(np.asarray(phase, dtype=float), lo.shape)
        safe = np.where(omega == 0.0, 1.0, omega)
        return omega, phase, safe

    def cos_mean(omega, phase):
        omega, phase, safe = _pair(omega, phase)
        val = (np.sin(safe * hi + phase) - np.sin(safe * lo + phase)) / (safe * width)
        return np.where(omega == 0.0, np.cos(phase), val)

    def sin_mean(omega, phase):
        omega, phase, safe = _pair(omega, phase)
        val = (np.cos(safe * lo + phase) - np.cos(safe * hi + phase)) / (safe * width)
        return np.where(omega == 0.0, np.sin(phase), val)

    return cos_mean, sin_mean


@dataclass(frozen=True, eq=False)
class UniformBox(Distribution):
    """Independent uniform coordinates on the box [lo_i, hi_i]."""

    lo: np.ndarray
    hi: np.ndarray
    dim: int = field(init=False)

    def __init__(self, lo, hi, dim=None):
        lo, hi = _as_bounds(lo, hi, dim)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "dim", lo.size)

    def sample(self, n, rng):
        n = check_positive_int(n, "n")
        rng = check_rng(rng)
        return self.lo + rng.random((n, self.dim)) * (self.hi - self.lo)

    def density(self, X):
        X = check_points(X, dim=self.dim)
        volume = float(np.prod(self.hi - self.lo))
        inside = np.all((X >= self.lo) & (X <= self.hi), axis=1)
        return np.where(inside, 1.0 / volume, 0.0)

    def ppf(self, u):
        u = check_points(u, dim=self.dim)
        return self.lo + u * (self.hi - self.lo)

    def reference_box(self):
        return self.lo, self.hi

    def _build_moment_table(self):
        # E[x^j] on [a, b] is (b^(j+1) - a^(j+1)) / ((j+1)(b-a))
        j = np.arange(MAX_MOMENT + 1)
        lo_pow = self.lo[:, None] ** (j + 1)
        hi_pow = self.hi[:, None] ** (j + 1)
        raw = (hi_pow - lo_pow) / ((j + 1) * (self.hi - self.lo)[:, None])
        cos_mean, sin_mean = _box_trig(self.lo, self.hi)
        return MomentTable(raw=raw, cos_mean=cos_mean, sin_mean=sin_mean)


@dataclass(frozen=True, eq=False)
class GaussianIID(Distribution):
    """d independent N(mu, sigma^2) coordinates."""

    mu: float
    sigma: float
    dim: int

    def __init__(self, mu, sigma, dim):
        mu = float(mu)
        sigma = float(sigma)
        if not np.isfinite(mu) or not np.isfinite(sigma) or sigma <= 0:
            raise ValueError("need finite mu and sigma > 0")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "dim", check_positive_int(dim, "dim"))

    def sample(self, n, rng):
        n = check_positive_int(n, "n")
        rng = check_rng(rng)
        return self.mu + self.sigma * rng.standard_normal((n, self.dim))

    def density(self, X):
        X = check_points(X, dim=self.dim)
        z = (X - self.mu) / self.sigma
        norm = (self.sigma * np.sqrt(2.0 * np.pi)) ** self.dim
        return np.exp(-0.5 * np.sum(z * z, axis=1)) / norm

    def ppf(self, u):
        u = check_points(u, dim=self.dim)
        tiny = np.finfo(float).tiny
        u = np.clip(u, tiny, 1.0 - np.finfo(float).epsneg)
        return self.mu + self.sigma * ndtri(u)

    def reference_box(self):
        half = 3.0 * self.sigma
        lo = np.full(self.dim, self.mu - half)
        hi = np.full(self.dim, self.mu + half)
        return lo, hi

    def _build_moment_table(self):
        # Raw-moment recurrence: m_j = mu m_{j-1} + (j-1) sigma^2 m_{j-2}
        m = np.empty(MAX_MOMENT + 1)
        m[0] = 1.0
        m[1] = self.mu
        for j in range(2, MAX_MOMENT + 1):
            m[j] = self.mu * m[j - 1] + (j - 1) * self.sigma**2 * m[j - 2]
        raw = np.tile(m, (self.dim, 1))
        mu, sigma, d = self.mu, self.sigma, self.dim

        def cos_mean(omega, phase):
            omega = np.broadcast_to(np.asarray(omega, dtype=float), (d,))
            phase = np.broadcast_to(np.asarray(phase, dtype=float), (d,))
            return np.exp(-0.5 * (omega * sigma) ** 2) * np.cos(omega * mu + phase)

        def sin_mean(omega, phase):
            omega = np.broadcast_to(np.asarray(omega, dtype=float), (d,))
            phase = np.broadcast_to(np.asarray(phase, dtype=float), (d,))
            return np.exp(-0.5 * (omega * sigma) ** 2) * np.sin(omega * mu + phase)

        return MomentTable(raw=raw, cos_mean=cos_mean, sin_mean=sin_mean)


@dataclass(frozen=True, eq=False)
class UniformBits(Distribution):
    """Uniform distribution over {-1, +1}^d bit strings."""

    dim: int

    def __init__(self, dim):
        object.__setattr__(self, "dim", check_positive_int(dim, "dim"))

    def sample(self, n, rng):
        n = check_positive_int(n, "n")
        rng = check_rng(rng)
        return rng.integers(0, 2, size=(n, self.dim)).astype(float) * 2.0 - 1.0

    def density(self, X):
        X = check_points(X, dim=self.dim)
        valid = np.all(np.abs(X) == 1.0, axis=1)
        return np.where(valid, 2.0 ** -self.dim, 0.0)

    def _build_moment_table(self):
        # Odd moments vanish by symmetry, even moments are 1.
        j = np.arange(MAX_MOMENT + 1)
        raw = np.tile((j % 2 == 0).astype(float), (self.dim, 1))
        return MomentTable(raw=raw)


@dataclass(frozen=True, eq=False)
class ProductQuadratic(Distribution):
    """Normalized product density with quadratic bowl-shaped factors.

    On each coordinate interval [lo_i, hi_i] of width w_i, with
    s = 2 (x - lo_i) / w_i - 1 mapping the interval to [-1, 1], the
    factor is (12 / (7 w_i)) (s^2 + 1/4).  Each factor integrates to 1,
    mass piles up near the interval endpoints, and the center has
    density ratio uniform/this = 7/3.  Used as an importance-sampling
    proposal that deliberately undersamples the middle of the box.
    """

    lo: np.ndarray
    hi: np.ndarray
    dim: int = field(init=False)

    def __init__(self, lo, hi, dim=None):
        lo, hi = _as_bounds(lo, hi, dim)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "dim", lo.size)

    def _scaled(self, X):
        return 2.0 * (X - self.lo) / (self.hi - self.lo) - 1.0

    def sample(self, n, rng):
        n = check_positive_int(n, "n")
        rng = check_rng(rng)
        return self.ppf(rng.random((n, self.dim)))

    def density(self, X):
        X = check_points(X, dim=self.dim)
        s = self._scaled(X)
        inside = np.all(np.abs(s) <= 1.0, axis=1)
        factors = (12.0 / (7.0 * (self.hi - self.lo))) * (s * s + 0.25)
        return np.where(inside, np.prod(factors, axis=1), 0.0)

    def ppf(self, u):
        """Invert the factor CDF F(s) = (6/7)(s^3/3 + s/4) + 1/2 per coordinate.

        The cubic is strictly monotone (F' >= 3/14 on [-1, 1]), so a
        clamped Newton iteration from s0 = 2u - 1 converges to full
        precision; the result is checked against a 1e-12 residual.
        """
        u = check_points(u, dim=self.dim)
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            u = np.clip(u, np.finfo(float).tiny, 1.0 - np.finfo(float).epsneg)
        c = (7.0 / 6.0) * (u - 0.5)
        s = np.clip(2.0 * u - 1.0, -1.0, 1.0)
        for _ in range(30):
            resid = s * s * s / 3.0 + 0.25 * s - c
            s = np.clip(s - resid / (s * s + 0.25), -1.0, 1.0)
        resid = s * s * s / 3.0 + 0.25 * s - c
        if np.max(np.abs(resid)) > 1e-12:
            raise RuntimeError("inverse CDF iteration failed to converge")
        return self.lo + (s + 1.0) * (self.hi - self.lo) / 2.0

    def reference_box(self):
        return self.lo, self.hi
