"""Core primitives: seeded random streams, summary statistics, datasets,
and cross-validation fold partitions.

All randomness in the package flows through :func:`seeded_rng` /
:func:`split_rng` so that every result is reproducible from a single
64-bit seed, and independent substreams (one per trial, say) can be
derived without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import (
    check_points,
    check_positive_int,
    check_rng,
    check_values,
    check_weights,
)

__all__ = [
    "seeded_rng",
    "split_rng",
    "mean",
    "sample_cov",
    "DataSet",
    "FoldPartition",
    "kfold_partition",
    "bootstrap_heldin",
]


def seeded_rng(seed):
    """Return a fresh Generator for a nonnegative integer seed."""
    return np.random.default_rng(np.random.SeedSequence(_check_seed(seed)))


def split_rng(seed, *key):
    """Return an independent substream of ``seed`` addressed by integer key.

    The same (seed, key) pair always yields the same stream, and distinct
    keys yield statistically independent streams.  Used to give each
    (sample size, trial) its own generator without serial dependence.
    """
    key = tuple(int(k) for k in key)
    if any(k < 0 for k in key):
        raise ValueError(f"stream key parts must be nonnegative, got {key}")
    return np.random.default_rng(
        np.random.SeedSequence(_check_seed(seed), spawn_key=key)
    )


def _check_seed(seed):
    import numbers

    if not isinstance(seed, numbers.Integral):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    return seed


def mean(values):
    """Arithmetic mean of a nonempty 1-d array."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("mean expects a nonempty 1-d array")
    return float(values.mean())


def sample_cov(a, b):
    """Unbiased sample covariance of two equal-length vectors (ddof=1)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("sample_cov expects two 1-d arrays of equal length")
    n = a.size
    if n < 2:
        raise ValueError("sample_cov needs at least two observations")
    return float((a - a.mean()) @ (b - b.mean()) / (n - 1))


def _freeze(arr):
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class DataSet:
    """An evaluated sample: points, function values, optional weights.

    Instances are immutable; the stored arrays are defensive read-only
    copies.  ``weights`` is only present for importance-sampled data,
    where it holds the density ratio p/q at each point.
    """

    points: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        X = check_points(self.points)
        y = check_values(self.values, X.shape[0])
        object.__setattr__(self, "points", _freeze(X))
        object.__setattr__(self, "values", _freeze(y))
        if self.weights is not None:
            w = check_weights(self.weights, X.shape[0])
            object.__setattr__(self, "weights", _freeze(w))

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]


@dataclass(frozen=True, eq=False)
class FoldPartition:
    """Index sets for K-fold cross-validation over ``n`` samples.

    ``heldout`` always partitions range(n): the folds are disjoint, cover
    every index, and their sizes differ by at most one.  ``heldin`` holds
    the complementary training sets; after :func:`bootstrap_heldin` they
    are instead random subsets of all n indices (same sizes), which is
    the only supported departure from complementarity.
    ``exact_complements`` records which of the two cases this is; it is
    set by the library constructors and defaults to False for
    hand-built partitions, which only costs them a slower code path.
    """

    n: int
    heldout: tuple
    heldin: tuple
    exact_complements: bool = False

    def __post_init__(self):
        n = check_positive_int(self.n, "n")
        held_out = tuple(np.asarray(f, dtype=np.intp) for f in self.heldout)
        held_in = tuple(np.asarray(f, dtype=np.intp) for f in self.heldin)
        if len(held_out) < 2:
            raise ValueError("a partition needs at least two folds")
        if len(held_out) != len(held_in):
            raise ValueError("held-out and held-in fold counts differ")
        concat = np.concatenate(held_out)
        if concat.size != n or not np.array_equal(np.sort(concat), np.arange(n)):
            raise ValueError("held-out folds must partition range(n) exactly")
        sizes = [f.size for f in held_out]
        if max(sizes) - min(sizes) > 1:
            raise ValueError("held-out fold sizes must differ by at most one")
        for k, (out, tr) in enumerate(zip(held_out, held_in)):
            if tr.size != n - out.size:
                raise ValueError(f"fold {k}: held-in size must be n - heldout size")
            if tr.size == 0:
                raise ValueError(f"fold {k}: empty held-in set")
            if np.unique(tr).size != tr.size or tr.min() < 0 or tr.max() >= n:
                raise ValueError(f"fold {k}: held-in indices invalid")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "heldout", tuple(_freeze(f) for f in held_out))
        object.__setattr__(self, "heldin", tuple(_freeze(f) for f in held_in))
        object.__setattr__(self, "exact_complements", bool(self.exact_complements))

    @classmethod
    def _trusted(cls, n, heldout, heldin, exact_complements):
        """Construct without validation.  Only for the module's own
        constructors, whose outputs satisfy the invariants by build."""
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "heldout", heldout)
        object.__setattr__(self, "heldin", heldin)
        object.__setattr__(self, "exact_complements", exact_complements)
        return self

    @property
    def n_folds(self):
        return len(self.heldout)


def kfold_partition(n, n_folds, rng):
    """Randomly partition range(n) into K held-out folds.

    ``n_folds`` may be an integer in [2, n] or the string "loo" for
    leave-one-out (K = n).  When n is not divisible by K the first
    n mod K folds receive one extra index.  Held-in sets are the exact
    complements.
    """
    n = check_positive_int(n, "n", minimum=2)
    if n_folds == "loo":
        n_folds = n
    n_folds = check_positive_int(n_folds, "n_folds", minimum=2)
    if n_folds > n:
        raise ValueError(f"n_folds={n_folds} exceeds sample count {n}")
    rng = check_rng(rng)
    perm = rng.permutation(n)
    base, extra = divmod(n, n_folds)
    sizes = [base + 1] * extra + [base] * (n_folds - extra)
    edges = np.cumsum(sizes)[:-1]
    heldout = tuple(_freeze(np.sort(f)) for f in np.split(perm, edges))
    mask = np.ones(n, dtype=bool)
    heldin = []
    for f in heldout:
        mask[f] = False
        heldin.append(_freeze(np.flatnonzero(mask)))
        mask[f] = True
    return FoldPartition._trusted(n, heldout, tuple(heldin), True)


def bootstrap_heldin(partition, rng):
    """Replace each held-in set with a uniform subset of all n indices.

    The new held-in set for fold k is drawn without replacement from the
    full index range (it may overlap the held-out fold), keeping the
    original size n - m_k.  Held-out folds are unchanged, so each index
    still gets exactly one held-out prediction.
    """
    rng = check_rng(rng)
    n = partition.n
    heldin = tuple(
        _freeze(np.sort(rng.choice(n, size=tr.size, replace=False)))
        for tr in partition.heldin
    )
    return FoldPartition._trusted(n, partition.heldout, heldin, False)
