"""Thinned Levy paths on time grids, their excursions, and parameter algebra.

The process here is Brownian motion scaled by sqrt(kappa), plus drift
lambda*t, minus the parabola (rho/2)t^2, plus independently fired one-shot
jumps: entry j of beta fires once at an Exp(beta_j) time and is compensated
by -beta_j^2 * t. The compensator covers exactly the stored beta entries, so
a truncated parameter set still simulates an exact process of this family;
the discarded tail is only reported, never folded into the drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .degseq import ord_merge


@dataclass(frozen=True)
class LevyParams:
    """Parameter bundle (kappa, rho, lambda, beta).

    Parameters
    ----------
    kappa, rho : non-negative floats; a positive kappa requires a positive
        rho, otherwise excursions of the path need not terminate.
    lam : drift coefficient, any sign.
    beta : non-increasing non-negative jump sizes, possibly empty.
    tail_l2 : reported squared-l2 mass of beta entries dropped by
        truncation; carried through rescaling and merging, never simulated.
    """

    kappa: float
    rho: float
    lam: float = 0.0
    beta: np.ndarray = None
    tail_l2: float = 0.0

    def __post_init__(self):
        beta = np.empty(0) if self.beta is None else np.asarray(self.beta, dtype=np.float64)
        object.__setattr__(self, "beta", beta)
        if self.kappa < 0 or self.rho < 0 or self.tail_l2 < 0:
            raise ValueError("kappa, rho and tail_l2 must be non-negative")
        if self.kappa > 0 and self.rho <= 0:
            raise ValueError("a positive kappa requires a positive rho")
        if beta.size and (beta.min() < 0 or np.any(np.diff(beta) > 0)):
            raise ValueError("beta must be non-increasing and non-negative")


@dataclass(frozen=True)
class GridPath:
    """A sampled path at t_i = i*dt with the jump draws that fired.

    jumps holds (index into beta, clock time) pairs for jumps that landed
    inside the simulated window.
    """

    dt: float
    values: np.ndarray
    jumps: tuple = ()

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if values.size == 0 or abs(values[0]) > 1e-12:
            raise ValueError("paths start at 0")

    @property
    def steps(self) -> int:
        return int(self.values.size - 1)

    @property
    def horizon(self) -> float:
        return self.steps * self.dt


def assemble(p: LevyParams, dt: float, M: int, gauss_unit, clocks) -> GridPath:
    """Deterministic path construction from explicit randomness.

    Parameters
    ----------
    gauss_unit : M standard normal variates driving the Brownian part, or
        None when kappa == 0.
    clocks : one exponential clock per beta entry.

    Notes
    -----
    A jump firing in (t_{i-1}, t_i] contributes from index i on. Exposing
    the randomness makes the time-space scaling law a pathwise identity:
    feeding (gauss_unit, clocks) at grid a*dt, and the SAME gauss_unit with
    clocks/a at grid dt to the rescaled parameters, produces equal arrays up
    to rounding. The sqrt(kappa*dt) prefactor absorbs the time-scale factor,
    so the unit normals are shared unchanged.
    """
    t = np.arange(M + 1) * dt
    vals = np.zeros(M + 1, dtype=np.float64)
    if p.kappa > 0:
        gauss_unit = np.asarray(gauss_unit, dtype=np.float64)
        if gauss_unit.shape != (M,):
            raise ValueError("need exactly M Gaussian variates")
        vals[1:] = math.sqrt(p.kappa * dt) * np.cumsum(gauss_unit)
    vals += p.lam * t - 0.5 * p.rho * t * t
    jumps = []
    if p.beta.size:
        clocks = np.asarray(clocks, dtype=np.float64)
        if clocks.shape != p.beta.shape:
            raise ValueError("need one clock per beta entry")
        delta = np.zeros(M + 1, dtype=np.float64)
        for j in range(p.beta.size):
            i = int(math.ceil(clocks[j] / dt - 1e-12))
            if i < 1:
                i = 1
            if i <= M:
                delta[i] += p.beta[j]
                jumps.append((j, float(clocks[j])))
        vals += np.cumsum(delta)
        vals -= float(np.sum(p.beta ** 2)) * t
    return GridPath(dt=dt, values=vals, jumps=tuple(jumps))


def simulate(p: LevyParams, dt: float, T: float, seed) -> GridPath:
    """One path on [0, T]. Gaussian variates are drawn first and only when
    kappa > 0, then the jump clocks, so beta-only processes consume no
    normal draws."""
    if dt <= 0 or dt > T:
        raise ValueError("need 0 < dt <= T")
    M = int(round(T / dt))
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal(M) if p.kappa > 0 else None
    clocks = rng.exponential(1.0 / p.beta) if p.beta.size else np.empty(0)
    return assemble(p, dt, M, gauss, clocks)


def simulate_many(p: LevyParams, dt: float, T: float, n_paths: int, seed):
    """Vectorized sampling; returns (t, values) with values of shape
    (n_paths, M+1). Row i equals simulate with the same generator stream
    only in law, not draw for draw."""
    if dt <= 0 or dt > T:
        raise ValueError("need 0 < dt <= T")
    M = int(round(T / dt))
    rng = np.random.default_rng(seed)
    t = np.arange(M + 1) * dt
    vals = np.zeros((n_paths, M + 1), dtype=np.float64)
    if p.kappa > 0:
        incr = rng.standard_normal((n_paths, M))
        np.cumsum(incr, axis=1, out=incr)
        vals[:, 1:] = math.sqrt(p.kappa * dt) * incr
    vals += p.lam * t - 0.5 * p.rho * t * t
    if p.beta.size:
        clocks = rng.exponential(1.0 / p.beta, size=(n_paths, p.beta.size))
        idx = np.ceil(clocks / dt - 1e-12).astype(np.int64)
        np.maximum(idx, 1, out=idx)
        fired = idx <= M
        rows, cols = np.nonzero(fired)
        delta = np.zeros((n_paths, M + 1), dtype=np.float64)
        np.add.at(delta, (rows, idx[rows, cols]), p.beta[cols])
        vals += np.cumsum(delta, axis=1)
        vals -= float(np.sum(p.beta ** 2)) * t
    return t, vals


# ---------------------------------------------------------------------------
# excursions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExcursionSet:
    """Excursions above the running minimum, longest first.

    l_idx, r_idx and lengths cover the top_k excursions sorted by length
    with ties in order of appearance; the remaining mass is aggregated in
    tail_length. total_excursion_steps counts grid steps inside any
    excursion, atmin_steps the complement, and the two always partition the
    horizon. truncated flags a final excursion still open at the horizon.
    """

    dt: float
    l_idx: np.ndarray
    r_idx: np.ndarray
    lengths: np.ndarray
    marks: np.ndarray | None
    n_total: int
    total_excursion_steps: int
    atmin_steps: int
    tail_length: float
    truncated: bool

    def __post_init__(self):
        by_l = np.argsort(self.l_idx)
        l_sorted = self.l_idx[by_l]
        r_sorted = self.r_idx[by_l]
        if np.any(r_sorted[:-1] > l_sorted[1:]):
            raise AssertionError("excursion intervals overlap")

    @property
    def l_times(self) -> np.ndarray:
        return self.l_idx * self.dt

    @property
    def r_times(self) -> np.ndarray:
        return self.r_idx * self.dt


def excursions(path: GridPath, top_k: int = 20) -> ExcursionSet:
    """Scan for maximal intervals strictly above the running minimum.

    An excursion opens at the last grid index achieving the current
    minimum and closes at the first later index back at or below it; an
    excursion still open at the horizon is kept and flagged.
    """
    v = path.values
    m_steps = v.size - 1
    intervals = []
    vmin = v[0]
    anchor = 0
    open_l = -1
    for i in range(1, m_steps + 1):
        x = v[i]
        if open_l < 0:
            if x > vmin:
                open_l = anchor
            else:
                vmin = x
                anchor = i
        elif x <= vmin:
            intervals.append((open_l, i))
            open_l = -1
            vmin = x
            anchor = i
    truncated = open_l >= 0
    if truncated:
        intervals.append((open_l, m_steps))

    intervals.sort(key=lambda lr: (lr[0] - lr[1], lr[0]))
    steps_total = sum(r - l for l, r in intervals)
    head = intervals[:top_k]
    l_idx = np.array([l for l, _ in head], dtype=np.int64)
    r_idx = np.array([r for _, r in head], dtype=np.int64)
    return ExcursionSet(
        dt=path.dt,
        l_idx=l_idx,
        r_idx=r_idx,
        lengths=(r_idx - l_idx) * path.dt,
        marks=None,
        n_total=len(intervals),
        total_excursion_steps=steps_total,
        atmin_steps=m_steps - steps_total,
        tail_length=(steps_total - int(np.sum(r_idx - l_idx))) * path.dt,
        truncated=truncated,
    )


def gamma_infinity(f: GridPath, g: GridPath, top_k: int = 20) -> np.ndarray:
    """Increments of the non-decreasing path g across the excursions of f.

    The mark of excursion (l, r) is g at r minus g one grid step left of l,
    the grid stand-in for the left limit; at l = 0 the left reading is 0.
    Marks follow the length-then-appearance order of the excursions.
    """
    if f.values.size != g.values.size or abs(f.dt - g.dt) > 1e-15:
        raise ValueError("mark path must share the excursion path's grid")
    if np.any(np.diff(g.values) < 0):
        raise ValueError("mark path must be non-decreasing")
    es = excursions(f, top_k=top_k)
    left = np.where(es.l_idx >= 1, g.values[np.maximum(es.l_idx - 1, 0)], 0.0)
    return g.values[es.r_idx] - left


def attach_marks(es: ExcursionSet, marks: np.ndarray) -> ExcursionSet:
    if len(marks) != es.l_idx.size:
        raise ValueError("one mark per stored excursion")
    return replace(es, marks=np.asarray(marks, dtype=np.float64))


# ---------------------------------------------------------------------------
# parameter algebra
# ---------------------------------------------------------------------------

def rescale_params(p: LevyParams, a: float) -> LevyParams:
    """Parameters of a * W(a t): (a^3 kappa, a^3 rho, a^2 lambda, a beta)."""
    if a <= 0:
        raise ValueError("a must be positive")
    return LevyParams(
        kappa=a ** 3 * p.kappa,
        rho=a ** 3 * p.rho,
        lam=a ** 2 * p.lam,
        beta=a * p.beta,
        tail_l2=a ** 2 * p.tail_l2,
    )


def rescale_time_space(p: LevyParams, a: float, b: float) -> LevyParams:
    """Parameters of b * W(a t) for jump-free processes.

    The two-parameter family only closes over (kappa, rho, lambda): a jump
    of size beta would need both its size and its clock rate rescaled
    consistently, which b*W(at) does not do unless b == a.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if p.beta.size:
        raise ValueError("time-space rescaling is restricted to empty beta")
    return LevyParams(
        kappa=a * b ** 2 * p.kappa,
        rho=a ** 2 * b * p.rho,
        lam=a * b * p.lam,
    )


def merge_params(p1: LevyParams, p2: LevyParams) -> LevyParams:
    """Parameters of the sum of two independent processes of this family."""
    return LevyParams(
        kappa=p1.kappa + p2.kappa,
        rho=p1.rho + p2.rho,
        lam=p1.lam + p2.lam,
        beta=ord_merge(p1.beta, p2.beta),
        tail_l2=p1.tail_l2 + p2.tail_l2,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def save_path(path: GridPath, fname: str) -> None:
    with open(fname, "w") as fh:
        fh.write("t,value\n")
        for i, v in enumerate(path.values):
            fh.write(f"{i * path.dt:.17g},{v:.17g}\n")


def load_path(fname: str) -> GridPath:
    t = []
    v = []
    with open(fname) as fh:
        header = fh.readline().strip()
        if header != "t,value":
            raise ValueError("expected a t,value CSV")
        for line in fh:
            a, b = line.split(",")
            t.append(float(a))
            v.append(float(b))
    t = np.array(t)
    v = np.array(v)
    if t.size < 2:
        raise ValueError("path needs at least two samples")
    dt = t[1] - t[0]
    if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=1e-15):
        raise ValueError("path grid is not uniform")
    return GridPath(dt=float(dt), values=v)


def save_excursions(es: ExcursionSet, fname: str) -> None:
    with open(fname, "w") as fh:
        fh.write("l,r,length,mark\n")
        for i in range(es.l_idx.size):
            mark = "" if es.marks is None else f"{es.marks[i]:.17g}"
            fh.write(
                f"{es.l_times[i]:.17g},{es.r_times[i]:.17g},"
                f"{es.lengths[i]:.17g},{mark}\n"
            )


if __name__ == "__main__":
    demo = LevyParams(kappa=1.0, rho=1.0, lam=0.0, beta=np.array([1.0, 0.5]))
    sample = simulate(demo, dt=1e-3, T=4.0, seed=11)
    top = excursions(sample, top_k=5)
    print("top excursion lengths:", np.round(top.lengths, 4))
    print("time at minimum:", round(top.atmin_steps * top.dt, 4))
