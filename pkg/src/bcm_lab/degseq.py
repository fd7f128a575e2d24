"""Degree sequences for the bipartite configuration model at criticality.

A model instance is a pair of non-increasing integer degree sequences with
equal sums, one for the left vertex class and one for the right. Builders
produce pairs inside the critical window nu_n = 1 + lambda * eps_n, where
eps_n is n^(-1/3) in the finite-third-moment regime and c_n^(-1) in the
heavy-tail regime. Empirical moment summaries and the plug-in constants of
the scaling limit (kappa, rho, nu_inf, beta) are computed here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

FINITE_THIRD = "finite3"
HEAVY_TAIL = "heavy"

BETA_HEAD = 1000   # stored head length of each beta sequence
TUNING_BUDGET = 200


class TuningError(ValueError):
    """Raised when criticality tuning cannot reach the target window."""

    def __init__(self, message: str, achieved_nu: float):
        super().__init__(message)
        self.achieved_nu = achieved_nu


class DegeneracyError(ValueError):
    """Raised when a side's kappa is non-positive and the limit degenerates."""


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeSequencePair:
    """Matched left/right degree sequences.

    Invariants checked at construction: both sequences non-increasing with
    minimum degree 1, equal sums, and a known regime tag ("finite3" or
    "heavy", the latter carrying tau in (3, 4)).
    """

    d_l: np.ndarray
    d_r: np.ndarray
    theta_target: float
    regime: str
    tau: float | None = None
    lam: float = 0.0

    def __post_init__(self):
        d_l = np.asarray(self.d_l, dtype=np.int64)
        d_r = np.asarray(self.d_r, dtype=np.int64)
        object.__setattr__(self, "d_l", d_l)
        object.__setattr__(self, "d_r", d_r)
        for name, d in (("d_l", d_l), ("d_r", d_r)):
            if d.size == 0:
                raise ValueError(f"{name} is empty")
            if d.min() < 1:
                raise ValueError(f"{name} has degrees below 1")
            if np.any(np.diff(d) > 0):
                raise ValueError(f"{name} is not non-increasing")
        if int(d_l.sum()) != int(d_r.sum()):
            raise ValueError("degree sums differ between sides")
        if self.regime not in (FINITE_THIRD, HEAVY_TAIL):
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.regime == HEAVY_TAIL:
            if self.tau is None or not (3.0 < self.tau < 4.0):
                raise ValueError("heavy-tail regime requires tau in (3, 4)")
        if self.theta_target <= 0:
            raise ValueError("theta must be positive")

    @property
    def n(self) -> int:
        return int(self.d_l.size)

    @property
    def m(self) -> int:
        return int(self.d_r.size)

    def scaling(self) -> "ScalingRegime":
        if self.regime == FINITE_THIRD:
            return ScalingRegime.finite_third(self.n)
        return ScalingRegime.heavy_tail(self.n, float(self.tau))


@dataclass(frozen=True)
class MomentSummary:
    """Empirical degree moments (orders 1..4 per side) and criticality."""

    mu_l: np.ndarray   # mu_l[p-1] = mean of d_l**p
    mu_r: np.ndarray
    nu_l: float        # size-biased mean excess degree of the left side
    nu_r: float
    nu: float          # nu_l * nu_r


@dataclass(frozen=True)
class LimitConstants:
    """Plug-in constants of the scaling limit computed from one pair."""

    kappa_l: float
    kappa_r: float
    rho_l: float
    rho_r: float
    nu_inf_l: float
    nu_inf_r: float
    kappa: float
    rho: float
    lam: float
    theta: float
    regime: str
    mu1_l: float = 1.0
    mu1_r: float = 1.0
    tau: float | None = None
    beta_l: np.ndarray = field(default_factory=lambda: np.empty(0))
    beta_r: np.ndarray = field(default_factory=lambda: np.empty(0))
    beta_merged: np.ndarray = field(default_factory=lambda: np.empty(0))
    beta_merged_tail_l2: float = 0.0


@dataclass(frozen=True)
class ScalingRegime:
    """The (a_n, b_n, c_n) normalizations for one system size."""

    n: int
    a_n: float
    b_n: float
    c_n: float

    @staticmethod
    def finite_third(n: int) -> "ScalingRegime":
        r = float(n) ** (1.0 / 3.0)
        return ScalingRegime(n=n, a_n=r, b_n=r * r, c_n=r)

    @staticmethod
    def heavy_tail(n: int, tau: float) -> "ScalingRegime":
        # slowly varying part fixed to 1
        e = 1.0 / (tau - 1.0)
        return ScalingRegime(
            n=n,
            a_n=float(n) ** e,
            b_n=float(n) ** ((tau - 2.0) * e),
            c_n=float(n) ** ((tau - 3.0) * e),
        )


# ---------------------------------------------------------------------------
# moments and constants
# ---------------------------------------------------------------------------

def _side_moments(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    # np.sum is pairwise, which keeps the mu3*mu1 - mu2**2 differences stable
    return np.array([np.mean(d ** p) for p in (1, 2, 3, 4)])


def _excess_ratio(mu: np.ndarray) -> float:
    return float((mu[1] - mu[0]) / mu[0])


def moments_from_arrays(d_l: np.ndarray, d_r: np.ndarray) -> MomentSummary:
    mu_l = _side_moments(d_l)
    mu_r = _side_moments(d_r)
    nu_l = _excess_ratio(mu_l)
    nu_r = _excess_ratio(mu_r)
    return MomentSummary(mu_l=mu_l, mu_r=mu_r, nu_l=nu_l, nu_r=nu_r, nu=nu_l * nu_r)


def moments(pair: DegreeSequencePair) -> MomentSummary:
    """Exact empirical moments of both sides of a pair."""
    return moments_from_arrays(pair.d_l, pair.d_r)


def _side_kappa(mu: np.ndarray) -> float:
    return float((mu[2] * mu[0] - mu[1] ** 2) / mu[0] ** 2)


def limit_constants_from_arrays(
    d_l: np.ndarray,
    d_r: np.ndarray,
    lam: float = 0.0,
    regime: str = FINITE_THIRD,
    tau: float | None = None,
) -> LimitConstants:
    """Plug-in limit constants from raw degree arrays.

    Unlike ``limit_constants`` this accepts arrays directly and tolerates
    degree-0 entries, which is needed for moment surrogates of laws that do
    not respect the min-degree-1 model constraint.
    """
    d_l = np.asarray(d_l, dtype=np.float64)
    d_r = np.asarray(d_r, dtype=np.float64)
    n, m = d_l.size, d_r.size
    theta = m / n
    ms = moments_from_arrays(d_l, d_r)
    kappa_l = _side_kappa(ms.mu_l)
    kappa_r = _side_kappa(ms.mu_r)
    # each side's kappa is the variance of its size-biased degree, so it is
    # >= 0 with equality iff the side is constant; the limit degenerates only
    # when both sides are constant (then kappa = rho = 0 overall)
    if kappa_l <= 0.0 and kappa_r <= 0.0:
        raise DegeneracyError(
            f"degenerate limit: kappa_l={kappa_l:.6g}, kappa_r={kappa_r:.6g}"
        )
    kappa_l = max(kappa_l, 0.0)
    kappa_r = max(kappa_r, 0.0)
    rho_l = kappa_l / ms.mu_l[0]
    rho_r = kappa_r / ms.mu_r[0]
    nu_inf_l = ms.nu_l
    nu_inf_r = ms.nu_r
    kappa = nu_inf_r ** 3 * kappa_l + kappa_r
    rho = nu_inf_r ** 3 * rho_l + rho_r / theta

    beta_l = np.empty(0)
    beta_r = np.empty(0)
    beta_merged = np.empty(0)
    tail = 0.0
    if regime == HEAVY_TAIL:
        if tau is None:
            raise ValueError("heavy-tail constants need tau")
        e = 1.0 / (tau - 1.0)
        a_n = float(n) ** e
        a_m = float(m) ** e
        head_l = min(n, BETA_HEAD)
        head_r = min(m, BETA_HEAD)
        full_l = np.sort(d_l)[::-1] / a_n
        full_r = np.sort(d_r)[::-1] / a_m
        beta_l = full_l[:head_l].copy()
        beta_r = full_r[:head_r].copy()
        gamma_l = nu_inf_r * beta_l / ms.mu_l[0]
        gamma_r = theta ** e * beta_r / ms.mu_l[0]
        beta_merged = ord_merge(gamma_l, gamma_r)
        # reported l2 mass of the discarded tails, in merged normalization
        tail_l = float(np.sum(full_l[head_l:] ** 2))
        tail_r = float(np.sum(full_r[head_r:] ** 2))
        tail = (nu_inf_r / ms.mu_l[0]) ** 2 * tail_l + (theta ** e / ms.mu_l[0]) ** 2 * tail_r

    return LimitConstants(
        kappa_l=kappa_l, kappa_r=kappa_r,
        rho_l=rho_l, rho_r=rho_r,
        nu_inf_l=nu_inf_l, nu_inf_r=nu_inf_r,
        kappa=kappa, rho=rho,
        lam=lam, theta=theta, regime=regime,
        mu1_l=float(ms.mu_l[0]), mu1_r=float(ms.mu_r[0]), tau=tau,
        beta_l=beta_l, beta_r=beta_r, beta_merged=beta_merged,
        beta_merged_tail_l2=tail,
    )


def limit_constants(pair: DegreeSequencePair, lam: float = 0.0) -> LimitConstants:
    """Plug-in limit constants of a pair.

    Raises DegeneracyError when both sides have non-positive kappa (for
    example constant-degree-2 on both sides), since the merged limit then
    has no Brownian part at all. A single regular side is fine.
    """
    return limit_constants_from_arrays(
        pair.d_l, pair.d_r, lam=lam, regime=pair.regime, tau=pair.tau
    )


def witness_triangle_factor(d_r: np.ndarray) -> float:
    """Plug-in value of E[D C(D,3)] / E[D] over the right degree law.

    This is the proportionality factor between rescaled per-component
    triangle counts and component sizes in the finite-third regime.
    """
    d = np.asarray(d_r, dtype=np.float64)
    chooses = d * (d - 1.0) * (d - 2.0) / 6.0
    return float(np.sum(d * chooses) / np.sum(d))


def ord_merge(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Decreasing rearrangement of the interleaving of two decreasing sequences.

    >>> [float(v) for v in ord_merge(np.array([3.0, 1.0]), np.array([2.0, 2.0]))]
    [3.0, 2.0, 2.0, 1.0]
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    for name, s in (("x", x), ("y", y)):
        if s.size and (np.any(np.diff(s) > 0) or s.min() < 0):
            raise ValueError(f"{name} must be non-increasing and non-negative")
    return np.sort(np.concatenate([x, y]))[::-1]


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def truncated_poisson_law(mean: float, cap: int) -> dict[int, float]:
    """Poisson(mean) conditioned on 1 <= X <= cap, as a {degree: prob} dict."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ks = np.arange(1, cap + 1)
    logs = -mean + ks * math.log(mean) - np.array([math.lgamma(k + 1) for k in ks])
    w = np.exp(logs)
    w /= w.sum()
    return {int(k): float(p) for k, p in zip(ks, w)}


def poisson_quantile_degrees(n: int, mean: float = 1.0) -> np.ndarray:
    """Deterministic largest-remainder quantile multiset of Poisson(mean).

    Keeps degree-0 entries; the upper tail is truncated where the expected
    counts vanish. Sorted non-increasing. This is a moment surrogate, not a
    valid model sequence (the model requires min degree 1); feed it to
    ``limit_constants_from_arrays``.
    """
    probs = []
    p = math.exp(-mean)
    k = 0
    while p * n > 1e-9 or k <= mean + 1:
        probs.append(p)
        k += 1
        p = p * mean / k
        if k > 400:
            break
    exact = np.array(probs) * n
    counts = np.floor(exact).astype(np.int64)
    remainders = exact - counts
    deficit = n - int(counts.sum())
    counts[np.argsort(-remainders)[:deficit]] += 1
    return np.repeat(np.arange(len(counts)), counts)[::-1].astype(np.int64)


def poisson_bridge_constants(n: int, lam: float = 0.0) -> LimitConstants:
    """Limit constants of the theta = 1 Poisson(1) quantile surrogate."""
    d = poisson_quantile_degrees(n, 1.0)
    return limit_constants_from_arrays(d, d, lam=lam)


class _CountsSide:
    """Degree multiset of one side as value->count, with running sums."""

    __slots__ = ("counts", "s", "excess", "nverts")

    def __init__(self, degrees: np.ndarray):
        degrees = np.asarray(degrees, dtype=np.int64)
        bc = np.bincount(degrees)
        self.counts = {int(v): int(c) for v, c in enumerate(bc) if c > 0 and v > 0}
        self.s = int(degrees.sum())
        self.excess = int(np.sum(degrees * (degrees - 1)))
        self.nverts = int(degrees.size)

    def add(self, value: int, k: int = 1):
        if value < 1:
            raise ValueError("degrees stay >= 1")
        c = self.counts.get(value, 0) + k
        if c < 0:
            raise ValueError("negative count")
        if c == 0:
            self.counts.pop(value, None)
        else:
            self.counts[value] = c
        self.s += k * value
        self.excess += k * value * (value - 1)
        self.nverts += k

    def move(self, src: int, dst: int):
        # one vertex changes degree src -> dst
        self.add(src, -1)
        self.add(dst, +1)

    def max_degree(self) -> int:
        return max(self.counts)

    def materialize(self) -> np.ndarray:
        vals = sorted(self.counts, reverse=True)
        return np.repeat(
            np.array(vals, dtype=np.int64),
            np.array([self.counts[v] for v in vals], dtype=np.int64),
        )


def _balance(lo: _CountsSide, hi: _CountsSide):
    # raise the deficient side one unit per vertex per pass, largest degrees
    # first, so the deficit spreads instead of piling onto a single vertex
    while lo.s < hi.s:
        k = min(hi.s - lo.s, lo.nverts)
        for v in sorted(lo.counts, reverse=True):
            t = min(lo.counts.get(v, 0), k)
            if t <= 0:
                continue
            lo.add(v, -t)
            lo.add(v + 1, t)
            k -= t
            if k == 0:
                break


def _nu(left: _CountsSide, right: _CountsSide) -> float:
    return (left.excess / left.s) * (right.excess / right.s)


def _fine_moves(side: _CountsSide, max_touch: int):
    """Feasible one-sided redistributions (src pair -> dst pair), sum-neutral."""
    vals = sorted(v for v in side.counts if v <= max_touch)
    out = []
    for i, x in enumerate(vals):
        for y in vals[i:]:
            if y - x >= 2:
                # evening out: (x, y) -> (x+1, y-1), excess change 2(x - y + 1) < 0
                out.append((x, y, x + 1, y - 1, 2 * (x - y + 1)))
            if x == y and x >= 2 and (side.counts[x] >= 2):
                # spreading: (x, x) -> (x-1, x+1), excess change +2
                out.append((x, x, x - 1, x + 1, 2))
    return out


def _apply_pairmove(side: _CountsSide, mv):
    a, b, na, nb, _ = mv
    side.move(a, na)
    side.move(b, nb)


def _tune_to_window(
    left: _CountsSide,
    right: _CountsSide,
    target_of_n: callable,
    tol_of_n: callable,
    budget: int = TUNING_BUDGET,
    fine_cap: int = 10,
) -> None:
    """Drive nu(left, right) into [target - tol, target + tol] in place.

    target and tolerance are functions of the current left-side vertex count
    because dilution pads the system and the window is defined at the final
    size. Raises TuningError when the budget runs out.
    """
    moves = 0

    def state():
        n = left.nverts
        return _nu(left, right), target_of_n(n), tol_of_n(n)

    nu, target, tol = state()

    # phase 1: inflate if below target (dilution only lowers nu)
    while nu < target - tol and moves < budget:
        for side in (left, right):
            v = side.max_degree()
            side.move(v, v + 1)
        moves += 1
        nu, target, tol = state()

    # phase 2: closed-form dilution (append degree-1 vertices to both sides;
    # excess sums are untouched so nu(j) = excess_l * excess_r / ((s+j)^2 ...))
    if nu > target + tol:
        prod = float(left.excess) * float(right.excess)
        j = 0
        for _ in range(8):  # target depends on padded n; fixed-point it
            t = target_of_n(left.nverts + j)
            want = math.sqrt(prod / t)
            j = max(0, int(round(want - math.sqrt(float(left.s) * float(right.s)))))
        # the two sides can have unequal sums only transiently; dilution adds
        # one degree-1 vertex to each side per unit j, keeping sums equal
        if j > 0:
            left.add(1, j)
            right.add(1, j)
        moves += 1
        nu, target, tol = state()
        # walk single dilution steps across the window if the estimate missed
        while nu > target + tol and moves < budget:
            left.add(1, 1)
            right.add(1, 1)
            moves += 1
            nu, target, tol = state()

    # phase 3: greedy fine search. Single-side redistributions step the excess
    # by +-2; cross-side pairs and single dilution steps give the finer
    # resolution small systems need to land inside the window.
    while abs(nu - target) > tol and moves < budget:
        lmoves = _fine_moves(left, fine_cap)
        rmoves = _fine_moves(right, fine_cap)
        best = None

        def consider(err, action):
            nonlocal best
            if best is None or err < best[0]:
                best = (err, action)

        l_ratio = left.excess / left.s
        r_ratio = right.excess / right.s
        for mv in lmoves:
            cand = ((left.excess + mv[4]) / left.s) * r_ratio
            consider(abs(cand - target), ("l", mv))
        for mv in rmoves:
            cand = l_ratio * ((right.excess + mv[4]) / right.s)
            consider(abs(cand - target), ("r", mv))
        for mvl in lmoves:
            lr = (left.excess + mvl[4]) / left.s
            for mvr in rmoves:
                cand = lr * ((right.excess + mvr[4]) / right.s)
                consider(abs(cand - target), ("lr", (mvl, mvr)))
        # one dilution step moves the goalposts too; score it at the padded n
        pad_target = target_of_n(left.nverts + 1)
        cand = (left.excess / (left.s + 1)) * (right.excess / (right.s + 1))
        consider(abs(cand - pad_target), ("pad", None))

        if best is None or best[0] >= abs(nu - target):
            break
        kind, payload = best[1]
        if kind == "l":
            _apply_pairmove(left, payload)
        elif kind == "r":
            _apply_pairmove(right, payload)
        elif kind == "lr":
            _apply_pairmove(left, payload[0])
            _apply_pairmove(right, payload[1])
        else:
            left.add(1, 1)
            right.add(1, 1)
        moves += 1
        nu, target, tol = state()

    if abs(nu - target) > tol:
        raise TuningError(
            f"could not reach nu target {target:.8f} +- {tol:.2e}; achieved {nu:.8f}",
            achieved_nu=nu,
        )


def build_finite_third(
    n: int,
    theta: float,
    lam: float,
    base_law: dict[int, float],
    seed: int,
) -> DegreeSequencePair:
    """Sample a finite-third-moment pair and tune it into the critical window.

    Parameters
    ----------
    n : left-side vertex count before padding.
    theta : right/left size ratio; m = round(theta * n) before padding.
    lam : window location, nu target 1 + lam * n^(-1/3) at the final size.
    base_law : finite-support law on {1, 2, ...} as {degree: probability}.
        Mean must be >= 1 and the max support value at most n^(1/3).
    seed : RNG seed; the construction is deterministic given it.

    Tuning appends equal numbers of degree-1 vertices to both sides and makes
    small sum-neutral redistributions; the tolerance is 10^-2 * n^(-1/3) at
    the final (padded) left count. Raises TuningError if the 200-move budget
    is exhausted, carrying the achieved nu.
    """
    values = np.array(sorted(base_law), dtype=np.int64)
    probs = np.array([base_law[int(v)] for v in values], dtype=np.float64)
    if values.min() < 1:
        raise ValueError("base law support must be >= 1")
    if abs(probs.sum() - 1.0) > 1e-9 or probs.min() < 0:
        raise ValueError("base law probabilities must be a distribution")
    if float(values @ probs) < 1.0:
        raise ValueError("base law mean must be >= 1")
    # the growth condition on max degrees is asymptotic; at desk scale the
    # binding constraint is max support <= n^(1/3)
    if values.max() > n ** (1.0 / 3.0):
        raise ValueError("base law support exceeds n^(1/3)")

    m = int(round(theta * n))
    rng = np.random.default_rng(seed)
    left = _CountsSide(rng.choice(values, size=n, p=probs))
    right = _CountsSide(rng.choice(values, size=m, p=probs))
    if left.s < right.s:
        _balance(left, right)
    else:
        _balance(right, left)

    _tune_to_window(
        left, right,
        target_of_n=lambda nn: 1.0 + lam * nn ** (-1.0 / 3.0),
        tol_of_n=lambda nn: 1e-2 * nn ** (-1.0 / 3.0),
    )
    return DegreeSequencePair(
        d_l=left.materialize(), d_r=right.materialize(),
        theta_target=theta, regime=FINITE_THIRD, lam=lam,
    )


def heavy_tail_quantile(n: int, tau: float) -> np.ndarray:
    """Power-law quantile rule d_i = max(1, round((n/i)^(1/(tau-1))))."""
    i = np.arange(1, n + 1, dtype=np.float64)
    return np.maximum(1, np.round((n / i) ** (1.0 / (tau - 1.0)))).astype(np.int64)


def build_heavy_tail(
    n: int,
    theta: float,
    lam: float,
    tau: float,
    seed: int = 0,
) -> DegreeSequencePair:
    """Heavy-tail pair from the quantile rule, tuned into the critical window.

    The raw quantile pair is supercritical at desk scales, so after balancing
    the builder pads both sides with degree-1 vertices (closed form, since
    padding leaves both excess sums unchanged) and fine-tunes with small
    redistributions among low degrees, targeting nu = 1 + lam * c_n^(-1) with
    tolerance 10^-2 * c_n^(-1) at the final padded size. The head degrees,
    and hence the plug-in beta entries, are untouched by tuning.

    The construction is deterministic; seed is accepted for interface
    uniformity with the other builder and ignored.
    """
    del seed
    if not (3.0 < tau < 4.0):
        raise ValueError("tau must lie in (3, 4)")
    m = int(round(theta * n))
    left = _CountsSide(heavy_tail_quantile(n, tau))
    right = _CountsSide(heavy_tail_quantile(m, tau))
    if left.s < right.s:
        _balance(left, right)
    else:
        _balance(right, left)

    expo = (tau - 3.0) / (tau - 1.0)
    _tune_to_window(
        left, right,
        target_of_n=lambda nn: 1.0 + lam * nn ** (-expo),
        tol_of_n=lambda nn: 1e-2 * nn ** (-expo),
        fine_cap=8,
    )
    return DegreeSequencePair(
        d_l=left.materialize(), d_r=right.materialize(),
        theta_target=theta, regime=HEAVY_TAIL, tau=tau, lam=lam,
    )


def hypergraph_preset(n: int, k: int, d: np.ndarray) -> DegreeSequencePair:
    """Pair whose intersection graph is the k-uniform hypergraph model on d."""
    d = np.sort(np.asarray(d, dtype=np.int64))[::-1]
    if len(d) != n:
        raise ValueError("n must equal len(d)")
    if k < 2:
        raise ValueError("k must be at least 2")
    total = int(d.sum())
    if total % k != 0:
        raise ValueError(f"sum(d) = {total} is not divisible by k = {k}")
    m = total // k
    return DegreeSequencePair(
        d_l=d, d_r=np.full(m, k, dtype=np.int64),
        theta_target=m / n, regime=FINITE_THIRD,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _regime_token(pair: DegreeSequencePair) -> str:
    if pair.regime == HEAVY_TAIL:
        return f"heavy-{pair.tau:g}"
    return FINITE_THIRD


def save_pair(pair: DegreeSequencePair, path: str) -> None:
    """Line-oriented text format: header `n m regime theta lambda`, then one
    degree per line, left side first."""
    with open(path, "w") as fh:
        fh.write(
            f"{pair.n} {pair.m} {_regime_token(pair)} "
            f"{pair.theta_target:.17g} {pair.lam:.17g}\n"
        )
        for d in pair.d_l:
            fh.write(f"{int(d)}\n")
        for d in pair.d_r:
            fh.write(f"{int(d)}\n")


def load_pair(path: str) -> DegreeSequencePair:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 5:
            raise ValueError("bad degree file header")
        n, m = int(header[0]), int(header[1])
        token = header[2]
        theta, lam = float(header[3]), float(header[4])
        if token == FINITE_THIRD:
            regime, tau = FINITE_THIRD, None
        elif token.startswith("heavy-"):
            regime, tau = HEAVY_TAIL, float(token[len("heavy-"):])
        else:
            raise ValueError(f"unknown regime token {token!r}")
        degrees = np.array([int(line) for line in fh if line.strip()], dtype=np.int64)
    if degrees.size != n + m:
        raise ValueError("degree count does not match header")
    return DegreeSequencePair(
        d_l=degrees[:n], d_r=degrees[n:],
        theta_target=theta, regime=regime, tau=tau, lam=lam,
    )
