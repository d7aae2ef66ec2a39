"""Point-set generators: plain Monte Carlo, Latin hypercube, Halton,
and importance sampling.

Each sampler class exposes ``sample(dist, n, rng) -> (points, weights)``
where ``weights`` is None except for importance sampling, which returns
the density ratio target/proposal at each point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import seeded_rng
from .distributions import Distribution
from .validation import check_positive_int, check_rng

__all__ = [
    "latin_hypercube",
    "halton",
    "transform_to",
    "SimpleSampler",
    "LatinHypercubeSampler",
    "HaltonSampler",
    "ImportanceSampler",
]

#: First hundred primes, one Halton base per dimension.
_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211,
    223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379,
    383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443, 449, 457, 461,
    463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
)

#: Digit positions carried by the scrambled radical inverse.
_SCRAMBLE_DEPTH = 32


def latin_hypercube(n, dim, rng):
    """Stratified uniform sample on the unit cube, shape (n, dim).

    Each dimension independently places exactly one point in each of the
    n equal-width strata: u = (perm + offset) / n with perm a random
    permutation of 0..n-1 and offset uniform on [0, 1).
    """
    n = check_positive_int(n, "n")
    dim = check_positive_int(dim, "dim")
    rng = check_rng(rng)
    u = np.empty((n, dim))
    for j in range(dim):
        u[:, j] = (rng.permutation(n) + rng.random(n)) / n
    return u


def halton(n, dim, *, burn_in=0, scramble_seed=None):
    """Halton sequence points in the open unit cube, shape (n, dim).

    Dimension j uses the j-th prime as its base.  Point i is the
    radical inverse of index burn_in + i + 1 (indices start at 1, so a
    zero burn-in never yields the origin).  With ``scramble_seed`` set,
    each dimension applies an independent random digit permutation per
    digit position, which also scrambles trailing zero digits.
    """
    n = check_positive_int(n, "n")
    dim = check_positive_int(dim, "dim")
    burn_in = check_positive_int(burn_in, "burn_in", minimum=0)
    if dim > len(_PRIMES):
        raise ValueError(f"at most {len(_PRIMES)} Halton dimensions supported")
    indices = np.arange(burn_in + 1, burn_in + n + 1, dtype=np.int64)
    out = np.empty((n, dim))
    perm_rng = None if scramble_seed is None else seeded_rng(scramble_seed)
    for j in range(dim):
        base = _PRIMES[j]
        if perm_rng is not None:
            if indices[-1] >= base**_SCRAMBLE_DEPTH:
                raise ValueError("index exceeds scrambled digit capacity")
            perms = [perm_rng.permutation(base) for _ in range(_SCRAMBLE_DEPTH)]
            idx = indices.copy()
            acc = np.zeros(n)
            scale = 1.0
            for perm in perms:
                scale /= base
                acc += perm[idx % base] * scale
                idx //= base
            out[:, j] = acc
        else:
            idx = indices.copy()
            acc = np.zeros(n)
            scale = 1.0
            while idx.any():
                scale /= base
                acc += (idx % base) * scale
                idx //= base
            out[:, j] = acc
    if perm_rng is not None:
        np.clip(out, np.finfo(float).tiny, 1.0 - np.finfo(float).epsneg, out=out)
    return out


def transform_to(u, dist: Distribution):
    """Map unit-cube points to distribution space via the coordinatewise
    inverse CDF."""
    return dist.ppf(u)


@dataclass(frozen=True)
class SimpleSampler:
    """Independent draws straight from the target distribution."""

    def sample(self, dist, n, rng):
        rng = check_rng(rng)
        return dist.sample(n, rng), None


@dataclass(frozen=True)
class LatinHypercubeSampler:
    """Latin hypercube sample pushed through the target's inverse CDF."""

    def sample(self, dist, n, rng):
        rng = check_rng(rng)
        u = latin_hypercube(n, dist.dim, rng)
        return transform_to(u, dist), None


@dataclass(frozen=True)
class HaltonSampler:
    """Halton points pushed through the target's inverse CDF.

    By default each call draws a burn-in offset uniform on [0, 10000)
    and a fresh scramble seed from ``rng`` (in that order), so repeated
    trials see different randomized sequences.  Set ``burn_in`` to an
    integer and ``scramble=False`` for the deterministic sequence.
    """

    scramble: bool = True
    burn_in: int | str = "random"

    def sample(self, dist, n, rng):
        rng = check_rng(rng)
        if self.burn_in == "random":
            burn = int(rng.integers(0, 10_000))
        else:
            burn = check_positive_int(self.burn_in, "burn_in", minimum=0)
        seed = int(rng.integers(0, 2**63)) if self.scramble else None
        u = halton(n, dist.dim, burn_in=burn, scramble_seed=seed)
        return transform_to(u, dist), None


@dataclass(frozen=True)
class ImportanceSampler:
    """Draw from a proposal distribution, weight by target/proposal.

    The returned weights w_i = p(x_i) / q(x_i) are what make weighted
    averages unbiased for expectations under the target p.
    """

    proposal: Distribution

    def sample(self, dist, n, rng):
        rng = check_rng(rng)
        X = self.proposal.sample(n, rng)
        q = self.proposal.density(X)
        if np.any(q <= 0.0):
            raise RuntimeError("proposal density vanished at a drawn point")
        p = dist.density(X)
        return X, p / q
