"""Depth-first exploration of a realized matching and its walk processes.

The walk visits one r-vertex per step. With active half-edges on the stack,
the least one is popped and its r-partner explored (branch a); with an empty
stack a fresh r-vertex is drawn size-biased by degree (branch b) and all of
its half-edges are processed. Pairing into an active half-edge closes a
cycle. Everything the step-k records can say about the graph is summarized
by the integer processes below; the perturbed walk Z = Ztilde - s*L turns
component boundaries into exact level hits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bcm import BipartiteMultigraph
from .degseq import DegreeSequencePair, ScalingRegime, moments_from_arrays

UNEXPLORED, ACTIVE, DEAD = 0, 1, 2


@dataclass(frozen=True)
class ExplorationTrace:
    """Per-step walk records, all 1-based steps stored at index k-1.

    d_r_step[k-1] is the degree of the r-vertex explored at step k; c are
    per-step cycle counts; L counts stack-empty steps; V counts discovered
    l-vertices; Yr and YlV are the running sums of (degree - 1) over
    explored r-vertices and discovered l-vertices; Ztilde = YlV - Cn - k;
    Cn is the cumulative cycle count; stack_size is the number of active
    half-edges after the step. l_order and r_order are vertex discovery
    orders. p is the per-step cycle-probability diagnostic, a bound for the
    next step's per-pairing cycle chance.
    """

    s: float
    d_l: np.ndarray
    d_r: np.ndarray
    d_r_step: np.ndarray
    c: np.ndarray
    L: np.ndarray
    V: np.ndarray
    Yr: np.ndarray
    YlV: np.ndarray
    Ztilde: np.ndarray
    Cn: np.ndarray
    stack_size: np.ndarray
    l_order: np.ndarray
    r_order: np.ndarray
    p: np.ndarray

    @property
    def m(self) -> int:
        return int(self.d_r_step.size)

    @property
    def n(self) -> int:
        return int(self.d_l.size)

    def zn(self) -> np.ndarray:
        """The perturbed walk Z(k) = Ztilde(k) - s*L(k), k = 1..m."""
        return self.Ztilde.astype(np.float64) - self.s * self.L

    def assert_invariants(self) -> None:
        k = np.arange(1, self.m + 1)
        if np.any(self.Ztilde != self.YlV - self.Cn - k):
            raise AssertionError("Ztilde identity broken")
        if np.any(self.V != self.Yr + self.L - self.Cn):
            raise AssertionError("V identity broken")
        if np.any(self.stack_size != self.Ztilde + self.L):
            raise AssertionError("stack-size identity broken")
        dL = np.diff(np.concatenate([[0], self.L]))
        if np.any((dL != 0) & (dL != 1)):
            raise AssertionError("L must grow by unit steps")
        if np.any(np.diff(self.Cn) < 0) or np.any(self.stack_size < 0):
            raise AssertionError("negative surplus or stack size")


def explore(g: BipartiteMultigraph, s: float | None = None, seed=0) -> ExplorationTrace:
    """Run the exploration against the fixed matching of g.

    s defaults to the left size-biased mean excess degree of g's sequences,
    the weight under which component boundaries sit at -(1+s)j. Only the
    branch-b choice consumes randomness: fresh r-vertices are drawn
    size-biased by degree through one exponential clock per vertex, which
    stays exact under deletion of explored vertices.
    """
    n, m = g.n, g.m
    if s is None:
        s = moments_from_arrays(g.d_l, g.d_r).nu_l
    if s < 0:
        raise ValueError("s must be non-negative")
    rng = np.random.default_rng(seed)
    r_queue = np.argsort(rng.exponential(1.0 / g.d_r))
    qpos = 0

    status = np.zeros(g.edge_total, dtype=np.int8)
    stack: list[int] = []
    active = 0
    r_explored = np.zeros(m, dtype=bool)
    l_found = np.zeros(n, dtype=bool)

    d_r_step = np.zeros(m, dtype=np.int64)
    c_arr = np.zeros(m, dtype=np.int64)
    L_arr = np.zeros(m, dtype=np.int64)
    V_arr = np.zeros(m, dtype=np.int64)
    Yr_arr = np.zeros(m, dtype=np.int64)
    YlV_arr = np.zeros(m, dtype=np.int64)
    Zt_arr = np.zeros(m, dtype=np.int64)
    Cn_arr = np.zeros(m, dtype=np.int64)
    stack_arr = np.zeros(m, dtype=np.int64)
    l_order: list[int] = []
    r_order: list[int] = []

    match_lr = g.match_lr
    match_rl = g.match_rl
    owner_l = g.owner_l
    owner_r = g.owner_r
    off_l = g.offsets_l
    off_r = g.offsets_r
    d_l = g.d_l

    L = V = Yr = ylv = Cn = 0
    for k in range(1, m + 1):
        ck = 0
        if active > 0:
            while True:
                f = stack.pop()
                if status[f] == ACTIVE:
                    break
            status[f] = DEAD
            active -= 1
            rhalf = int(match_lr[f])
            w = int(owner_r[rhalf])
            skip = rhalf
        else:
            while r_explored[r_queue[qpos]]:
                qpos += 1
            w = int(r_queue[qpos])
            skip = -1
            L += 1
        if r_explored[w]:
            raise RuntimeError("r-vertex explored twice; matching inconsistent")
        r_explored[w] = True
        r_order.append(w)

        batch: list[int] = []
        for slot in range(off_r[w], off_r[w + 1]):
            if slot == skip:
                continue
            e = int(match_rl[slot])
            st = status[e]
            if st == ACTIVE:
                # pairing into the active set closes a cycle; consume it
                ck += 1
                status[e] = DEAD
                active -= 1
            elif st == DEAD:
                raise RuntimeError("paired into a dead half-edge; matching inconsistent")
            else:
                u = int(owner_l[e])
                if l_found[u]:
                    raise RuntimeError("fresh half-edge on a discovered vertex")
                l_found[u] = True
                l_order.append(u)
                V += 1
                ylv += int(d_l[u]) - 1
                status[e] = DEAD
                for oe in range(off_l[u], off_l[u + 1]):
                    if oe == e:
                        continue
                    status[oe] = ACTIVE
                    batch.append(oe)
                    active += 1
        # push this step's activations so the smallest slot pops first
        batch.sort(reverse=True)
        stack.extend(batch)

        Cn += ck
        Yr += int(g.d_r[w]) - 1
        d_r_step[k - 1] = g.d_r[w]
        c_arr[k - 1] = ck
        L_arr[k - 1] = L
        V_arr[k - 1] = V
        Yr_arr[k - 1] = Yr
        YlV_arr[k - 1] = ylv
        Zt_arr[k - 1] = ylv - Cn - k
        Cn_arr[k - 1] = Cn
        stack_arr[k - 1] = active

    if V != n:
        raise RuntimeError("exploration ended with undiscovered l-vertices")

    trace = ExplorationTrace(
        s=float(s), d_l=g.d_l, d_r=g.d_r,
        d_r_step=d_r_step, c=c_arr, L=L_arr, V=V_arr, Yr=Yr_arr,
        YlV=YlV_arr, Ztilde=Zt_arr, Cn=Cn_arr, stack_size=stack_arr,
        l_order=np.array(l_order, dtype=np.int64),
        r_order=np.array(r_order, dtype=np.int64),
        p=_cycle_probability_bound(g, V_arr, stack_arr),
    )
    trace.assert_invariants()
    return trace


def _cycle_probability_bound(
    g: BipartiteMultigraph, V_arr: np.ndarray, stack_arr: np.ndarray
) -> np.ndarray:
    # worst case charges the largest degrees to the vertices discovered next,
    # so the bound uses descending order statistics of d_l, not discovery order
    m = V_arr.size
    prefix = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.sort(g.d_l)[::-1], out=prefix[1:])
    total = prefix[-1]
    out = np.ones(m, dtype=np.float64)
    for i in range(m):
        v_next = V_arr[i + 1] if i + 1 < m else V_arr[i]
        num = stack_arr[i] + (prefix[v_next] - prefix[V_arr[i]])
        den = total - prefix[v_next]
        if den > 0:
            out[i] = min(1.0, num / den)
    return out


# ---------------------------------------------------------------------------
# components from the walk
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkComponent:
    tau_prev: int
    tau: int
    size_r: int
    size_l: int
    surplus: int


@dataclass(frozen=True)
class WalkComponents:
    """Components read off the walk, in discovery and in sorted order.

    ordered sorts by size_r descending with ties kept in discovery order.
    """

    records: tuple
    ordered: tuple

    def sizes(self) -> list:
        return [(rec.size_r, rec.size_l) for rec in self.records]

    def ordered_by_l(self) -> tuple:
        return tuple(sorted(self.records, key=lambda r: (-r.size_l, r.tau)))


def components_from_walk(trace: ExplorationTrace) -> WalkComponents:
    """Cut the trace at its stack-empty steps.

    The j-th such step tau(j) is exactly the step with (Ztilde, L) equal to
    (-j, j), the integer form of the level hit Z = -(1+s)j; the records
    between consecutive cuts are one component.
    """
    cuts = np.flatnonzero(trace.stack_size == 0) + 1
    if cuts.size == 0 or cuts[-1] != trace.m:
        raise RuntimeError("walk did not close its final component")
    recs = []
    prev = 0
    for j, tau in enumerate(cuts, start=1):
        tau = int(tau)
        if trace.L[tau - 1] != j or trace.Ztilde[tau - 1] != -j:
            raise RuntimeError("stack-empty step off the -(1+s)j level")
        v_prev = int(trace.V[prev - 1]) if prev else 0
        c_prev = int(trace.Cn[prev - 1]) if prev else 0
        recs.append(WalkComponent(
            tau_prev=prev, tau=tau,
            size_r=tau - prev,
            size_l=int(trace.V[tau - 1]) - v_prev,
            surplus=int(trace.Cn[tau - 1]) - c_prev,
        ))
        prev = tau
    ordered = tuple(sorted(recs, key=lambda r: (-r.size_r, r.tau)))
    return WalkComponents(records=tuple(recs), ordered=ordered)


# ---------------------------------------------------------------------------
# rescaling and residuals
# ---------------------------------------------------------------------------

def rescaled_walk(
    trace: ExplorationTrace,
    regime: ScalingRegime,
    dt: float | None = None,
    T: float | None = None,
):
    """Sample a_n^{-1} Z(b_n t) on a uniform t-grid.

    Default grid puts one point per step, t_i = i / b_n. Beyond the final
    step the path is held at its last value.
    """
    z = np.concatenate([[0.0], trace.zn()])
    if dt is None:
        t = np.arange(trace.m + 1) / regime.b_n
        return t, z / regime.a_n
    if T is None:
        raise ValueError("T is required when dt is given")
    M = int(round(T / dt))
    t = np.arange(M + 1) * dt
    steps = np.minimum((regime.b_n * t + 1e-9).astype(np.int64), trace.m)
    return t, z[steps] / regime.a_n


def residual_criticality(
    trace: ExplorationTrace, pair: DegreeSequencePair, t: float
) -> float:
    """Criticality parameter of the unexplored remainder at walk time b_n*t."""
    regime = pair.scaling()
    k = int(np.floor(regime.b_n * t + 1e-9))
    if not 0 <= k <= trace.m:
        raise ValueError("t outside the explored range")
    if k == trace.m:
        raise ValueError("all r-vertices explored; residual undefined")
    v = int(trace.V[k - 1]) if k else 0
    if v == trace.n:
        raise ValueError("all l-vertices explored; residual undefined")
    dl = np.delete(np.asarray(pair.d_l, dtype=np.int64), trace.l_order[:v])
    dr = np.delete(np.asarray(pair.d_r, dtype=np.int64), trace.r_order[:k])
    nu_l = float(np.sum(dl * (dl - 1)) / np.sum(dl))
    nu_r = float(np.sum(dr * (dr - 1)) / np.sum(dr))
    return nu_l * nu_r


TRACE_HEADER = "k,d_r,c,L,V,Yr,YlV,Ztilde,Cn"


def write_trace(trace: ExplorationTrace, path: str) -> None:
    """Columnar CSV of the integer walk records, steps 1..m."""
    cols = (trace.d_r_step, trace.c, trace.L, trace.V,
            trace.Yr, trace.YlV, trace.Ztilde, trace.Cn)
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        for i in range(trace.m):
            fh.write(",".join([str(i + 1)] + [str(int(col[i])) for col in cols]) + "\n")
