"""Scikit-learn style front end for the fold-based estimator.

``StackedMonteCarlo`` wraps the functional engine: construct it with a
surrogate fitter and the sampling distribution, call ``fit`` on an
evaluated sample, and read the integral estimate off ``estimate_``.
``predict`` exposes the full-sample surrogate for inspection.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .core import DataSet, kfold_partition
from .engine import (
    bind_fitter,
    stackmc_estimate,
    stackmc_importance,
    stackmc_multi,
    stackmc_quasimc,
)
from .fitters import LinearFitter
from .validation import check_rng

__all__ = ["StackedMonteCarlo"]


class StackedMonteCarlo(BaseEstimator):
    """Post-process a Monte Carlo sample with cross-validated surrogates.

    Parameters
    ----------
    fitter : estimator or sequence of estimators, optional
        Surrogate fitter(s); a sequence activates the joint
        multi-surrogate blend.  Defaults to :class:`LinearFitter`.
    distribution : Distribution
        The distribution the integral is taken under.  Required.
    n_folds : int or "loo", default 5
        Cross-validation fold count.
    alpha : "improved", "original", or float, default "improved"
        Blending-coefficient rule (ignored by the multi-surrogate
        blend, which solves for its own coefficient vector).
    assume_unbiased_g : bool, default False
        Drop the surrogate-bias term from the improved coefficient.
    mean_method : "analytic" or "mc", default "analytic"
        How the per-fold surrogate mean under ``distribution`` is
        obtained.
    n_mean : int, default 300
        Sample count per surrogate mean when ``mean_method="mc"``.
    bootstrap_repeats : int, default 0
        If positive, average this many re-partitioned estimates with
        bootstrapped held-in sets (for structured samples such as
        Latin hypercube or Halton points).
    proposal : Distribution, optional
        Proposal the points were actually drawn from.  Required when
        ``fit`` is given ``sample_weight``; switches to the
        importance-sampling estimator.
    random_state : None, int, or numpy Generator
        Source of partition (and any sampling) randomness.

    Attributes
    ----------
    estimate_ : float
        The integral estimate.
    alpha_ : float, ndarray, or tuple
        Blending coefficient(s) actually used.
    mc_baseline_ : float
        Plain sample-mean estimate from the same data.
    report_ : EstimateReport
        Full per-fold diagnostics.
    surrogate_ : fitted estimator or list of them
        Surrogate(s) trained on the full sample, backing ``predict``.
    """

    def __init__(self, fitter=None, distribution=None, n_folds=5,
                 alpha="improved", assume_unbiased_g=False,
                 mean_method="analytic", n_mean=300, bootstrap_repeats=0,
                 proposal=None, random_state=None):
        self.fitter = fitter
        self.distribution = distribution
        self.n_folds = n_folds
        self.alpha = alpha
        self.assume_unbiased_g = assume_unbiased_g
        self.mean_method = mean_method
        self.n_mean = n_mean
        self.bootstrap_repeats = bootstrap_repeats
        self.proposal = proposal
        self.random_state = random_state

    def _fitters(self):
        if self.fitter is None:
            return [LinearFitter()], False
        if isinstance(self.fitter, (list, tuple)):
            if len(self.fitter) == 0:
                raise ValueError("fitter sequence is empty")
            return list(self.fitter), len(self.fitter) > 1
        return [self.fitter], False

    def fit(self, X, y, sample_weight=None):
        """Estimate the integral from an evaluated sample.

        ``sample_weight`` carries importance ratios target/proposal when
        the points were drawn from ``proposal`` instead of
        ``distribution``.
        """
        if self.distribution is None:
            raise ValueError("distribution must be set")
        fitters, multi = self._fitters()
        rng = check_rng(self.random_state)
        data = DataSet(points=X, values=y, weights=sample_weight)
        if sample_weight is not None:
            if self.proposal is None:
                raise ValueError("sample_weight requires a proposal distribution")
            if multi or self.bootstrap_repeats:
                raise ValueError(
                    "importance estimation supports a single fitter and no "
                    "bootstrap repeats"
                )
            partition = kfold_partition(data.n, self.n_folds, rng)
            report = stackmc_importance(
                data, partition, fitters[0], self.proposal,
                alpha=self.alpha, assume_unbiased_g=self.assume_unbiased_g,
                n_mean=self.n_mean, rng=rng,
            )
        elif self.bootstrap_repeats:
            if multi:
                raise ValueError("the bootstrap variant supports a single fitter")
            report = stackmc_quasimc(
                data, self.n_folds, fitters[0], self.distribution,
                n_repeats=self.bootstrap_repeats, alpha=self.alpha,
                assume_unbiased_g=self.assume_unbiased_g,
                mean_method=self.mean_method, n_mean=self.n_mean, rng=rng,
            )
        elif multi:
            partition = kfold_partition(data.n, self.n_folds, rng)
            report = stackmc_multi(
                data, partition, fitters, self.distribution,
                mean_method=self.mean_method, n_mean=self.n_mean, rng=rng,
            )
        else:
            partition = kfold_partition(data.n, self.n_folds, rng)
            report = stackmc_estimate(
                data, partition, fitters[0], self.distribution,
                alpha=self.alpha, assume_unbiased_g=self.assume_unbiased_g,
                mean_method=self.mean_method, n_mean=self.n_mean, rng=rng,
            )
        train_dist = self.proposal if sample_weight is not None else self.distribution
        trained = [
            bind_fitter(f, train_dist).fit(data.points, data.values)
            for f in fitters
        ]
        self.surrogate_ = trained if multi else trained[0]
        self.report_ = report
        self.estimate_ = report.estimate
        self.alpha_ = report.alpha
        self.mc_baseline_ = report.mc_baseline
        self.n_features_in_ = data.dim
        return self

    def predict(self, X):
        """Evaluate the full-sample surrogate (alpha-weighted blend when
        several fitters were supplied)."""
        if not hasattr(self, "surrogate_"):
            raise RuntimeError("estimator is not fitted yet; call fit first")
        if isinstance(self.surrogate_, list):
            preds = np.stack([s.predict(X) for s in self.surrogate_])
            return np.asarray(self.alpha_) @ preds
        return self.surrogate_.predict(X)
