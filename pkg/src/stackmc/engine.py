"""Cross-validated control-variate estimation.

The estimator post-processes an existing Monte Carlo sample.  The data
are split into K folds; for each fold a surrogate is trained on the
held-in points, and the fold contributes

    alpha * ghat_k  +  mean over held-out j of (f_j - alpha * g_k(x_j))

where ghat_k is the surrogate's known mean under the sampling
distribution.  Averaging the folds gives an estimate that uses every
sample both for training and (exactly once) for the unbiased
correction term.  The blending coefficient alpha is chosen from the
data; with a perfect surrogate it approaches 1 and the variance
collapses, with a useless one it approaches 0 and the estimate falls
back to the plain sample mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from sklearn.base import clone

from .core import DataSet, FoldPartition, bootstrap_heldin, kfold_partition, sample_cov
from .validation import check_positive_int, check_rng

__all__ = [
    "FoldResult",
    "EstimateReport",
    "FoldTrainingError",
    "bind_fitter",
    "run_folds",
    "alpha_original",
    "alpha_improved",
    "pinv_solve",
    "estimate_from_folds",
    "estimate_from_folds_multi",
    "fit_alone_estimate",
    "stackmc_estimate",
    "stackmc_multi",
    "stackmc_quasimc",
    "stackmc_importance",
]

#: Relative variance threshold below which alpha falls back to zero.
DEGENERATE_EPS = 1e-12

#: Relative eigenvalue cutoff for the multi-fitter pseudo-inverse.
PINV_CUTOFF = 1e-10


class FoldTrainingError(RuntimeError):
    """Raised when surrogate training fails inside a fold."""


@dataclass(frozen=True, eq=False)
class FoldResult:
    """Per-fold quantities needed to assemble an estimate.

    ``heldout_g`` holds the trained surrogate's predictions at the
    held-out points and ``heldout_f`` the true values there; ``gtilde``
    and ``ftilde`` cache their sample means.  ``ghat`` is the
    surrogate mean under the sampling distribution.  Each fold is an
    out-of-sample snapshot of the same three random quantities the
    estimator error depends on, which is what the blending coefficient
    is computed from.
    """

    fold: int
    ghat: float
    gtilde: float
    ftilde: float
    heldout_g: np.ndarray
    heldout_f: np.ndarray


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Result of one estimator run, with per-fold diagnostics.

    ``alpha`` is a float for single-surrogate runs, a coefficient
    vector for multi-surrogate runs, and a tuple of per-repeat values
    for the bootstrap variant (whose ``fold_results`` come from the
    last repeat).
    """

    estimate: float
    alpha: object
    method: str
    mc_baseline: float
    fold_results: tuple
    fit_alone: float | None = None
    repeat_estimates: tuple | None = None


def bind_fitter(fitter, dist):
    """Clone ``fitter`` and resolve any unset fitting domain from ``dist``."""
    bound = clone(fitter)
    params = bound.get_params()
    if "domain" in params and params["domain"] is None:
        bound.set_params(domain=dist.reference_box())
    return bound


def _check_mean_method(mean_method):
    if mean_method not in ("analytic", "mc"):
        raise ValueError(f"mean_method must be 'analytic' or 'mc', got {mean_method!r}")


def run_folds(data, partition, fitter, dist, *, mean_method="analytic",
              n_mean=300, rng=None):
    """Train one surrogate per fold and collect its fold statistics.

    Each held-out index receives exactly one prediction, from the
    surrogate that never saw it.  With ``mean_method="mc"`` the
    surrogate mean under ``dist`` is estimated from ``n_mean`` fresh
    draws per fold instead of computed in closed form.
    """
    if not isinstance(data, DataSet):
        raise TypeError("data must be a DataSet")
    if not isinstance(partition, FoldPartition):
        raise TypeError("partition must be a FoldPartition")
    if data.n != partition.n:
        raise ValueError(f"partition is over {partition.n} samples, data has {data.n}")
    _check_mean_method(mean_method)
    X, y = data.points, data.values
    bound = bind_fitter(fitter, dist)
    if mean_method == "analytic":
        means = bound._feature_means(dist)
        if getattr(bound, "ridge", None) == 0.0 and _is_plain_loo(partition):
            fast = _run_folds_loo(X, y, bound, means, partition)
            if fast is not None:
                return fast
    else:
        rng = check_rng(rng)
        n_mean = check_positive_int(n_mean, "n_mean")
    results = []
    for k, (out, tr) in enumerate(zip(partition.heldout, partition.heldin)):
        try:
            bound.fit(X[tr], y[tr])
            if mean_method == "analytic":
                ghat = float(means @ bound.coef_)
            else:
                ghat = bound.mc_expected_value(dist, n_mean=n_mean, rng=rng)
            g_out = bound.predict(X[out])
        except Exception as exc:
            raise FoldTrainingError(f"fold {k}: {exc}") from exc
        results.append(
            FoldResult(
                fold=k,
                ghat=ghat,
                gtilde=float(g_out.mean()),
                ftilde=float(y[out].mean()),
                heldout_g=g_out,
                heldout_f=y[out],
            )
        )
    return tuple(results)


def _is_plain_loo(partition):
    """True for a leave-one-out partition whose held-in sets are exact
    complements (i.e. not bootstrapped)."""
    n = partition.n
    if partition.n_folds != n:
        return False
    if partition.exact_complements:
        return True
    full = np.arange(n)
    for out, tr in zip(partition.heldout, partition.heldin):
        if out.size != 1:
            return False
        if not np.array_equal(np.sort(np.concatenate([out, tr])), full):
            return False
    return True


def _run_folds_loo(X, y, bound, means, partition):
    """Closed-form leave-one-out fold sweep via rank-one downdates.

    Fits the surrogate once on all n points and derives every
    leave-one-out quantity from the hat matrix, which matches the
    fold-by-fold refit exactly (in exact arithmetic) at a fraction of
    the cost.  Returns None when the basis Gram matrix is not safely
    invertible, in which case the caller falls back to explicit refits.
    """
    phi = bound._features(X)
    n, p = phi.shape
    if n <= p:
        return None
    gram = phi.T @ phi
    try:
        cf = sla.cho_factor(gram, check_finite=False)
    except np.linalg.LinAlgError:
        return None
    beta = sla.cho_solve(cf, phi.T @ y, check_finite=False)
    gram_inv_phi = sla.cho_solve(cf, phi.T, check_finite=False)
    leverage = np.einsum("ij,ji->i", phi, gram_inv_phi)
    keep = 1.0 - leverage
    if keep.min() < 1e-8:
        return None
    yhat = phi @ beta
    adj = (y - yhat) / keep
    g_out = yhat - leverage * adj
    ghat = float(means @ beta) - (means @ gram_inv_phi) * adj
    results = []
    for k, out in enumerate(partition.heldout):
        i = int(out[0])
        results.append(
            FoldResult(
                fold=k,
                ghat=float(ghat[i]),
                gtilde=float(g_out[i]),
                ftilde=float(y[i]),
                heldout_g=g_out[i : i + 1],
                heldout_f=y[i : i + 1],
            )
        )
    return tuple(results)


def alpha_original(g, f):
    """Blending coefficient cov(g, f) / var(g) over held-out pairs.

    Falls back to 0 when var(g) is negligible relative to var(f), so a
    constant surrogate leaves the plain sample mean untouched.
    """
    g = np.asarray(g, dtype=float)
    f = np.asarray(f, dtype=float)
    var_g = sample_cov(g, g)
    var_f = sample_cov(f, f)
    if var_g <= DEGENERATE_EPS * var_f:
        return 0.0
    return sample_cov(g, f) / var_g


def alpha_improved(folds, *, assume_unbiased_g=False):
    """Blending coefficient from per-fold statistics.

    Uses a_k = gtilde_k - ghat_k and c_k = ftilde_k across folds:
    alpha = cov(a, c) / (var(a) + b_g^2) with b_g = mean(a).  Compared
    with the pooled per-point rule, the per-fold spread of ghat_k
    enters the denominator, so a surrogate whose mean is unstable
    across folds gets blended in less aggressively.  With
    ``assume_unbiased_g`` the b_g term is dropped.  Falls back to 0
    when the denominator is negligible relative to var(c).
    """
    a = np.array([fr.gtilde - fr.ghat for fr in folds])
    c = np.array([fr.ftilde for fr in folds])
    b_g = 0.0 if assume_unbiased_g else float(a.mean())
    denom = sample_cov(a, a) + b_g * b_g
    if denom <= DEGENERATE_EPS * sample_cov(c, c):
        return 0.0
    return sample_cov(a, c) / denom


def pinv_solve(W, u, *, cutoff=PINV_CUTOFF):
    """Solve W alpha = u via eigendecomposition pseudo-inverse.

    Eigenvalues below ``cutoff`` times the largest are treated as zero,
    so redundant (collinear) surrogates drop out instead of blowing up.
    """
    W = np.asarray(W, dtype=float)
    u = np.asarray(u, dtype=float)
    vals, vecs = np.linalg.eigh(W)
    top = vals.max(initial=0.0)
    if top <= 0.0:
        return np.zeros_like(u)
    inv = np.where(vals > cutoff * top, 1.0 / np.where(vals > 0, vals, 1.0), 0.0)
    return vecs @ (inv * (vecs.T @ u))


def _resolve_alpha(alpha, folds, assume_unbiased_g):
    if isinstance(alpha, str):
        if alpha == "original":
            g = np.concatenate([fr.heldout_g for fr in folds])
            f = np.concatenate([fr.heldout_f for fr in folds])
            return alpha_original(g, f)
        if alpha == "improved":
            return alpha_improved(folds, assume_unbiased_g=assume_unbiased_g)
        raise ValueError(f"alpha must be 'original', 'improved', or a number, got {alpha!r}")
    return float(alpha)


def estimate_from_folds(folds, *, alpha="improved", assume_unbiased_g=False):
    """Assemble the estimate from fold results.  Returns (estimate, alpha)."""
    if len(folds) < 2:
        raise ValueError("need at least two folds")
    a = _resolve_alpha(alpha, folds, assume_unbiased_g)
    total = 0.0
    for fr in folds:
        total += a * fr.ghat + fr.ftilde - a * fr.gtilde
    return total / len(folds), a


def estimate_from_folds_multi(folds_per_fitter):
    """Assemble a joint estimate from several surrogates' fold results.

    The coefficient vector solves W alpha = u, where W collects the
    covariances among the surrogates' pooled held-out predictions and u
    their covariances with the function values.  Every surrogate
    predicts each point exactly once and all share one pool of N pairs,
    so the solve sees N observations regardless of the fold count.
    Returns (estimate, alpha vector).
    """
    n_fit = len(folds_per_fitter)
    if n_fit == 0:
        raise ValueError("need at least one surrogate")
    n_folds = len(folds_per_fitter[0])
    if n_folds < 2:
        raise ValueError("need at least two folds")
    if any(len(folds) != n_folds for folds in folds_per_fitter):
        raise ValueError("surrogates disagree on the fold count")
    G = np.array(
        [np.concatenate([fr.heldout_g for fr in folds])
         for folds in folds_per_fitter]
    )
    f = np.concatenate([fr.heldout_f for fr in folds_per_fitter[0]])
    Gc = G - G.mean(axis=1, keepdims=True)
    fc = f - f.mean()
    n = f.size
    W = Gc @ Gc.T / (n - 1)
    u = Gc @ fc / (n - 1)
    if np.trace(W) <= DEGENERATE_EPS * n_fit * sample_cov(f, f):
        alpha = np.zeros(n_fit)
    else:
        alpha = pinv_solve(W, u)
    ghat = np.array([[fr.ghat for fr in folds] for folds in folds_per_fitter])
    gtilde = np.array([[fr.gtilde for fr in folds] for folds in folds_per_fitter])
    ftilde = np.array([fr.ftilde for fr in folds_per_fitter[0]])
    per_fold = alpha @ (ghat - gtilde) + ftilde
    return float(per_fold.mean()), alpha


def fit_alone_estimate(data, fitter, dist, *, mean_method="analytic",
                       n_mean=300, rng=None):
    """Mean of a surrogate trained on the full sample, no fold correction."""
    _check_mean_method(mean_method)
    bound = bind_fitter(fitter, dist)
    bound.fit(data.points, data.values)
    if mean_method == "analytic":
        return bound.expected_value(dist)
    return bound.mc_expected_value(dist, n_mean=n_mean, rng=check_rng(rng))


def _mc_baseline(folds):
    f = np.concatenate([fr.heldout_f for fr in folds])
    return float(f.mean())


def stackmc_estimate(data, partition, fitter, dist, *, alpha="improved",
                     assume_unbiased_g=False, mean_method="analytic",
                     n_mean=300, rng=None, with_fit_alone=False):
    """Single-surrogate estimate on a given fold partition."""
    folds = run_folds(
        data, partition, fitter, dist,
        mean_method=mean_method, n_mean=n_mean, rng=rng,
    )
    est, a = estimate_from_folds(
        folds, alpha=alpha, assume_unbiased_g=assume_unbiased_g
    )
    alone = None
    if with_fit_alone:
        alone = fit_alone_estimate(
            data, fitter, dist, mean_method=mean_method, n_mean=n_mean, rng=rng
        )
    return EstimateReport(
        estimate=est,
        alpha=a,
        method="stackmc",
        mc_baseline=_mc_baseline(folds),
        fold_results=folds,
        fit_alone=alone,
    )


def stackmc_multi(data, partition, fitters, dist, *, mean_method="analytic",
                  n_mean=300, rng=None):
    """Joint estimate blending several surrogates on one partition."""
    folds_per_fitter = tuple(
        run_folds(data, partition, f, dist,
                  mean_method=mean_method, n_mean=n_mean, rng=rng)
        for f in fitters
    )
    est, alpha = estimate_from_folds_multi(folds_per_fitter)
    return EstimateReport(
        estimate=est,
        alpha=alpha,
        method="stackmc_multi",
        mc_baseline=_mc_baseline(folds_per_fitter[0]),
        fold_results=folds_per_fitter,
    )


def stackmc_quasimc(data, n_folds, fitter, dist, *, n_repeats=10,
                    alpha="improved", assume_unbiased_g=False,
                    mean_method="analytic", n_mean=300, rng=None):
    """Bootstrap variant for structured (low-discrepancy) samples.

    Structured point sets break the independence that the fold
    statistics rely on, which can push alpha badly off.  Averaging over
    ``n_repeats`` random re-partitions, each with held-in sets redrawn
    uniformly from the whole sample, restores enough randomness for the
    coefficient to be trustworthy.
    """
    n_repeats = check_positive_int(n_repeats, "n_repeats")
    rng = check_rng(rng)
    estimates = []
    alphas = []
    folds = None
    for _ in range(n_repeats):
        partition = bootstrap_heldin(kfold_partition(data.n, n_folds, rng), rng)
        rep = stackmc_estimate(
            data, partition, fitter, dist,
            alpha=alpha, assume_unbiased_g=assume_unbiased_g,
            mean_method=mean_method, n_mean=n_mean, rng=rng,
        )
        estimates.append(rep.estimate)
        alphas.append(rep.alpha)
        folds = rep.fold_results
    return EstimateReport(
        estimate=float(np.mean(estimates)),
        alpha=tuple(alphas),
        method="stackmc_boot",
        mc_baseline=float(data.values.mean()),
        fold_results=folds,
        repeat_estimates=tuple(estimates),
    )


def stackmc_importance(data, partition, fitter, q, *, alpha="improved",
                       assume_unbiased_g=False, n_mean=300, rng=None,
                       with_fit_alone=False):
    """Estimate E_p[f] from importance-sampled data drawn under q.

    The surrogate is trained on the weighted integrand f w (w = p/q)
    and its mean is taken under the proposal q, estimated by sampling
    since weighted products rarely have closed-form moments.
    """
    if data.weights is None:
        raise ValueError("importance estimation needs a DataSet with weights")
    rng = check_rng(rng)
    weighted = DataSet(points=data.points, values=data.values * data.weights)
    folds = run_folds(
        weighted, partition, fitter, q,
        mean_method="mc", n_mean=n_mean, rng=rng,
    )
    est, a = estimate_from_folds(
        folds, alpha=alpha, assume_unbiased_g=assume_unbiased_g
    )
    alone = None
    if with_fit_alone:
        alone = fit_alone_estimate(
            weighted, fitter, q, mean_method="mc", n_mean=n_mean, rng=rng
        )
    return EstimateReport(
        estimate=est,
        alpha=a,
        method="stackmc_importance",
        mc_baseline=_mc_baseline(folds),
        fold_results=folds,
        fit_alone=alone,
    )
