"""Surrogate fitters: linear-in-parameters regressors whose expected
value under a sampling distribution is available in closed form.

Every fitter is a scikit-learn style estimator (``fit`` / ``predict``,
clonable via ``get_params``).  The shared contract beyond sklearn's is
``expected_value(dist)``, the exact mean of the fitted surrogate under
``dist``, with ``mc_expected_value`` as the sampling fallback for
distributions without the needed analytic moments.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla
from sklearn.base import BaseEstimator, RegressorMixin

from .distributions import GaussianIID, UniformBits, UniformBox
from .validation import check_points, check_positive_int, check_rng, check_values

__all__ = [
    "SurrogateFitter",
    "LinearFitter",
    "CubicPolynomialFitter",
    "FourierFitter",
    "WalshFitter",
]


def _solve_least_squares(phi, y, ridge):
    """Minimum-norm least squares with optional Tikhonov regularization."""
    n, p = phi.shape
    if ridge > 0.0:
        phi = np.vstack([phi, np.sqrt(ridge) * np.eye(p)])
        y = np.concatenate([y, np.zeros(p)])
    try:
        beta = sla.lstsq(phi, y, lapack_driver="gelsy", check_finite=False)[0]
    except np.linalg.LinAlgError:
        # retry with a tiny ridge scaled to the Gram matrix
        fallback = 1e-10 * float(np.einsum("ij,ij->", phi, phi)) / p
        phi = np.vstack([phi, np.sqrt(fallback) * np.eye(p)])
        y = np.concatenate([y, np.zeros(p)])
        beta = sla.lstsq(phi, y, lapack_driver="gelsy", check_finite=False)[0]
    return beta


class SurrogateFitter(RegressorMixin, BaseEstimator):
    """Base class: least-squares fit in a fixed feature basis."""

    _bits = False
    short_name = "surrogate"

    def get_params(self, deep=True):
        # constructor signatures are static, so resolve them once per
        # class instead of re-inspecting on every clone
        cls = type(self)
        names = cls.__dict__.get("_param_names_cache")
        if names is None:
            names = cls._get_param_names()
            cls._param_names_cache = names
        return {name: getattr(self, name) for name in names}

    def _features(self, X):
        raise NotImplementedError

    def _feature_means(self, dist):
        """Expected value of each basis function under ``dist``."""
        raise NotImplementedError

    def _check_X(self, X):
        return check_points(X, bits=self._bits)

    def fit(self, X, y):
        X = self._check_X(X)
        y = check_values(y, X.shape[0])
        ridge = float(self.ridge)
        if not np.isfinite(ridge) or ridge < 0:
            raise ValueError(f"ridge must be a nonnegative float, got {self.ridge!r}")
        phi = self._features(X)
        self.coef_ = _solve_least_squares(phi, y, ridge)
        self.n_features_in_ = X.shape[1]
        return self

    def _check_fitted(self, X):
        if not hasattr(self, "coef_"):
            raise RuntimeError("fitter is not fitted yet; call fit first")
        X = self._check_X(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"fitted on {self.n_features_in_}-dimensional points, "
                f"got {X.shape[1]}"
            )
        return X

    def predict(self, X):
        X = self._check_fitted(X)
        return self._features(X) @ self.coef_

    def expected_value(self, dist):
        """Exact mean of the fitted surrogate under ``dist``."""
        if not hasattr(self, "coef_"):
            raise RuntimeError("fitter is not fitted yet; call fit first")
        return float(self._feature_means(dist) @ self.coef_)

    def mc_expected_value(self, dist, n_mean=300, rng=None):
        """Monte Carlo estimate of the surrogate mean under ``dist``.

        The fallback for distributions without the analytic moments
        that :meth:`expected_value` requires.
        """
        n_mean = check_positive_int(n_mean, "n_mean")
        rng = check_rng(rng)
        return float(np.mean(self.predict(dist.sample(n_mean, rng))))


def _require_moments(fitter, dist):
    if not isinstance(dist, (UniformBox, GaussianIID)):
        raise ValueError(
            f"{type(fitter).__name__} has no closed-form mean under "
            f"{type(dist).__name__}; use mc_expected_value instead"
        )
    return dist.moment_table()


class LinearFitter(SurrogateFitter):
    """Affine surrogate: intercept plus one slope per dimension."""

    short_name = "linear"

    def __init__(self, ridge=0.0):
        self.ridge = ridge

    def _features(self, X):
        return np.hstack([np.ones((X.shape[0], 1)), X])

    def _feature_means(self, dist):
        mt = _require_moments(self, dist)
        return np.concatenate([[1.0], mt.raw[:, 1]])


class CubicPolynomialFitter(SurrogateFitter):
    """Separable cubic: intercept plus x, x^2, x^3 per dimension.

    Feature layout is power-major: [1, x_1..x_d, x_1^2..x_d^2,
    x_1^3..x_d^3].
    """

    short_name = "poly3"

    def __init__(self, ridge=0.0):
        self.ridge = ridge

    def _features(self, X):
        return np.hstack([np.ones((X.shape[0], 1)), X, X**2, X**3])

    def _feature_means(self, dist):
        mt = _require_moments(self, dist)
        return np.concatenate([[1.0], mt.raw[:, 1], mt.raw[:, 2], mt.raw[:, 3]])


class FourierFitter(SurrogateFitter):
    """Separable trigonometric surrogate on a reference box.

    Coordinates are rescaled to u = (x - lo) / (hi - lo) on the fitting
    ``domain``; each dimension then contributes cos and sin features at
    ``harmonics`` frequencies, all with phase -pi.  The default
    "periodic" convention uses angular frequencies 2 pi j so every
    feature has period 1 in u and, under a uniform distribution on the
    domain, the intercept carries the whole mean.  The "literal"
    convention uses frequencies j directly.

    ``domain`` must be set before fitting; the cross-validation engine
    fills it from the sampling distribution's reference box when left
    as None.
    """

    short_name = "fourier"

    def __init__(self, harmonics=6, convention="periodic", domain=None, ridge=0.0):
        self.harmonics = harmonics
        self.convention = convention
        self.domain = domain
        self.ridge = ridge

    def _box(self):
        if self.domain is None:
            raise ValueError(
                "FourierFitter.domain is not set; pass a (lo, hi) box or let "
                "the engine bind it from the sampling distribution"
            )
        lo = np.atleast_1d(np.asarray(self.domain[0], dtype=float))
        hi = np.atleast_1d(np.asarray(self.domain[1], dtype=float))
        if lo.shape != hi.shape or np.any(hi <= lo):
            raise ValueError("domain must be a (lo, hi) box with hi > lo")
        return lo, hi

    def _omegas(self):
        harmonics = check_positive_int(self.harmonics, "harmonics")
        j = np.arange(1, harmonics + 1, dtype=float)
        if self.convention == "periodic":
            return 2.0 * np.pi * j
        if self.convention == "literal":
            return j
        raise ValueError(f"unknown convention {self.convention!r}")

    def _features(self, X):
        lo, hi = self._box()
        if lo.size != X.shape[1]:
            raise ValueError("domain dimension does not match the points")
        u = (X - lo) / (hi - lo)
        cols = [np.ones((X.shape[0], 1))]
        for omega in self._omegas():
            arg = omega * u - np.pi
            cols.append(np.cos(arg))
            cols.append(np.sin(arg))
        return np.hstack(cols)

    def _feature_means(self, dist):
        mt = _require_moments(self, dist)
        if mt.cos_mean is None:
            raise ValueError(
                f"{type(dist).__name__} has no trigonometric moments; "
                "use mc_expected_value instead"
            )
        lo, hi = self._box()
        width = hi - lo
        parts = [np.ones(1)]
        for omega in self._omegas():
            # cos(omega u - pi) in x-space has frequency omega/width and
            # phase -pi - omega lo/width, coordinatewise
            omega_x = omega / width
            phase_x = -np.pi - omega * lo / width
            parts.append(mt.cos_mean(omega_x, phase_x))
            parts.append(mt.sin_mean(omega_x, phase_x))
        return np.concatenate(parts)


class WalshFitter(SurrogateFitter):
    """Multilinear surrogate on +/-1 bit strings, up to pairwise terms.

    Features are the Walsh basis of order <= ``max_order``: intercept,
    single bits, and (for max_order 2) all bit pair products.  Under the
    uniform bit distribution every non-constant feature has mean zero,
    so the fitted mean is just the intercept.
    """

    short_name = "walsh"
    _bits = True

    def __init__(self, max_order=2, ridge=0.0):
        self.max_order = max_order
        self.ridge = ridge

    def _order(self):
        order = check_positive_int(self.max_order, "max_order")
        if order > 2:
            raise ValueError("max_order above 2 is not supported")
        return order

    def _features(self, X):
        cols = [np.ones((X.shape[0], 1)), X]
        if self._order() == 2:
            i, j = np.triu_indices(X.shape[1], k=1)
            cols.append(X[:, i] * X[:, j])
        return np.hstack(cols)

    def _feature_means(self, dist):
        if not isinstance(dist, UniformBits):
            raise ValueError(
                f"WalshFitter has no closed-form mean under "
                f"{type(dist).__name__}; use mc_expected_value instead"
            )
        d = dist.dim
        p = 1 + d + (d * (d - 1) // 2 if self._order() == 2 else 0)
        means = np.zeros(p)
        means[0] = 1.0
        return means
