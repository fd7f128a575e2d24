"""Size-biased permutations and their partial-sum processes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class WeightedSequence:
    """Positive weights w with companion values u and the sigma moment table.

    sigma(p, q) = sum of w^p * u^q over the sequence, kept for p, q <= 3
    with p + q <= 4. Summation is compensated (math.fsum) because the
    downstream constants are differences of near-equal products.
    """

    w: np.ndarray
    u: np.ndarray
    _sigma: dict = field(init=False, repr=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        u = np.asarray(self.u, dtype=np.float64)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "u", u)
        if w.size == 0 or w.size != u.size:
            raise ValueError("w and u must be non-empty and equal length")
        if w.min() <= 0:
            raise ValueError("weights must be positive")
        if u.min() < 0:
            raise ValueError("values must be non-negative")
        table = {}
        for p in range(4):
            for q in range(4):
                if p + q > 4:
                    continue
                table[(p, q)] = math.fsum(w_i ** p * u_i ** q for w_i, u_i in zip(w, u))
        object.__setattr__(self, "_sigma", table)

    @property
    def size(self) -> int:
        return int(self.w.size)

    def sigma(self, p: int, q: int) -> float:
        return self._sigma[(p, q)]


def sample_permutation(ws: WeightedSequence, seed) -> np.ndarray:
    """One size-biased permutation via ascending exponential clocks."""
    rng = np.random.default_rng(seed)
    return np.argsort(rng.exponential(1.0 / ws.w))


def sample_permutations(ws: WeightedSequence, count: int, seed) -> np.ndarray:
    """(count, N) matrix of independent size-biased permutations."""
    rng = np.random.default_rng(seed)
    clocks = rng.exponential(1.0 / ws.w, size=(count, ws.size))
    return np.argsort(clocks, axis=1)


def exact_permutation_law(w) -> dict:
    """Exact law over all permutations: weight of the next letter divided by
    the total weight still unplaced, multiplied along the order. Only
    feasible for small N."""
    w = np.asarray(w, dtype=np.float64)
    out = {}
    for perm in itertools.permutations(range(w.size)):
        prob = 1.0
        rest = float(w.sum())
        for idx in perm:
            prob *= w[idx] / rest
            rest -= w[idx]
        out[perm] = prob
    return out


@dataclass(frozen=True)
class PartialSumPath:
    """Cumulative sums Y(k) of values in permuted order; Y[0] = 0."""

    Y: np.ndarray
    perm: np.ndarray


def partial_sum_process(ws: WeightedSequence, horizon: int, seed) -> PartialSumPath:
    if not 0 <= horizon <= ws.size:
        raise ValueError("horizon must lie in [0, N]")
    perm = sample_permutation(ws, seed)
    y = np.zeros(horizon + 1, dtype=np.float64)
    np.cumsum(ws.u[perm[:horizon]], out=y[1:])
    return PartialSumPath(Y=y, perm=perm)


def centered_fluctuation(
    path: PartialSumPath, ws: WeightedSequence, eps: float, gamma_n: float
):
    """Centered and scaled partial sums on the grid t_i = i * eps.

    Value at t is (Y(t/eps) - sigma_{1,1}/(sigma_2 * gamma_n) * t) / sigma_2.
    """
    if eps <= 0 or gamma_n <= 0:
        raise ValueError("eps and gamma_n must be positive")
    k = path.Y.size - 1
    t = np.arange(k + 1) * eps
    s2 = ws.sigma(2, 0)
    centering = ws.sigma(1, 1) / (s2 * gamma_n) * t
    return t, (path.Y - centering) / s2


def clock_process(ws: WeightedSequence, eps: float, grid, seed):
    """The indicator-sum pair (X, F) from one draw of the clocks.

    X(t) sums the values whose clocks fired by sigma_2^{-1} t; F(t) is eps
    times the number of clocks fired.
    """
    rng = np.random.default_rng(seed)
    clocks = rng.exponential(1.0 / ws.w)
    order = np.argsort(clocks)
    fired_times = clocks[order]
    cum_u = np.zeros(ws.size + 1, dtype=np.float64)
    np.cumsum(ws.u[order], out=cum_u[1:])
    grid = np.asarray(grid, dtype=np.float64)
    idx = np.searchsorted(fired_times, grid / ws.sigma(2, 0), side="right")
    return cum_u[idx], eps * idx
