"""Realized bipartite multigraphs and their intersection-graph projections.

Half-edges on each side are numbered consecutively and grouped by vertex in
vertex order, so vertex v on the left owns the slots
[offsets_l[v], offsets_l[v+1]). A graph is one bijection between the left
and right slot ranges. Parallel edges are kept; they collapse only when
projecting to the intersection graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .degseq import DegreeSequencePair

UNSET = -1


def _offsets(d: np.ndarray) -> np.ndarray:
    off = np.zeros(d.size + 1, dtype=np.int64)
    np.cumsum(d, out=off[1:])
    return off


@dataclass(frozen=True)
class BipartiteMultigraph:
    """One half-edge matching over fixed degree sequences.

    match_lr[i] is the r-half-edge paired with l-half-edge i. Vertex degrees
    are implied by the slot layout, so they always equal the prescribed
    sequences; the only thing to validate is that the matching is a
    bijection.
    """

    d_l: np.ndarray
    d_r: np.ndarray
    match_lr: np.ndarray
    pair: DegreeSequencePair | None = None

    match_rl: np.ndarray = field(init=False, repr=False)
    offsets_l: np.ndarray = field(init=False, repr=False)
    offsets_r: np.ndarray = field(init=False, repr=False)
    owner_l: np.ndarray = field(init=False, repr=False)
    owner_r: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        d_l = np.asarray(self.d_l, dtype=np.int64)
        d_r = np.asarray(self.d_r, dtype=np.int64)
        match_lr = np.asarray(self.match_lr, dtype=np.int64)
        object.__setattr__(self, "d_l", d_l)
        object.__setattr__(self, "d_r", d_r)
        object.__setattr__(self, "match_lr", match_lr)
        total = int(d_l.sum())
        if int(d_r.sum()) != total:
            raise ValueError("half-edge totals differ between sides")
        if match_lr.shape != (total,):
            raise ValueError("matching length does not equal the half-edge total")
        match_rl = np.full(total, UNSET, dtype=np.int64)
        match_rl[match_lr] = np.arange(total, dtype=np.int64)
        if np.any(match_rl == UNSET):
            raise ValueError("matching is not a bijection")
        object.__setattr__(self, "match_rl", match_rl)
        object.__setattr__(self, "offsets_l", _offsets(d_l))
        object.__setattr__(self, "offsets_r", _offsets(d_r))
        object.__setattr__(self, "owner_l", np.repeat(np.arange(d_l.size), d_l))
        object.__setattr__(self, "owner_r", np.repeat(np.arange(d_r.size), d_r))

    @property
    def n(self) -> int:
        return int(self.d_l.size)

    @property
    def m(self) -> int:
        return int(self.d_r.size)

    @property
    def edge_total(self) -> int:
        return int(self.match_lr.size)

    def edges(self) -> np.ndarray:
        """(edge_total, 2) array of (l_vertex, r_vertex), one row per
        l-half-edge in slot order; parallel edges repeat."""
        return np.column_stack([self.owner_l, self.owner_r[self.match_lr]])


def generate(pair: DegreeSequencePair, seed) -> BipartiteMultigraph:
    """Uniform matching of the pair's half-edges.

    >>> g = generate(DegreeSequencePair(
    ...     d_l=np.array([1, 1]), d_r=np.array([2]),
    ...     theta_target=0.5, regime="finite3"), seed=0)
    >>> g.edges().tolist()
    [[0, 0], [1, 0]]
    """
    rng = np.random.default_rng(seed)
    return BipartiteMultigraph(
        d_l=pair.d_l, d_r=pair.d_r,
        match_lr=rng.permutation(int(pair.d_l.sum())),
        pair=pair,
    )


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentRecord:
    id: int
    size_r: int
    size_l: int
    edge_count: int
    surplus: int
    l_vertices: np.ndarray
    r_vertices: np.ndarray


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def components(g: BipartiteMultigraph) -> list[ComponentRecord]:
    """Connected components of the vertex-level graph via union-find.

    l-vertices occupy union-find slots 0..n-1 and r-vertices n..n+m-1.
    Records are sorted by decreasing size_r; ties broken by the smallest
    l-vertex index so the order is reproducible.
    """
    n, m = g.n, g.m
    uf = _UnionFind(n + m)
    r_of_l_halfedge = g.owner_r[g.match_lr]
    for i in range(g.edge_total):
        uf.union(int(g.owner_l[i]), n + int(r_of_l_halfedge[i]))

    root_of = np.fromiter((uf.find(x) for x in range(n + m)), dtype=np.int64)
    roots, comp_of = np.unique(root_of, return_inverse=True)
    comp_l = comp_of[:n]
    comp_r = comp_of[n:]
    size_l = np.bincount(comp_l, minlength=roots.size)
    size_r = np.bincount(comp_r, minlength=roots.size)
    edge_count = np.bincount(comp_l, weights=g.d_l, minlength=roots.size).astype(np.int64)
    min_l = np.full(roots.size, n, dtype=np.int64)
    np.minimum.at(min_l, comp_l, np.arange(n))

    order = sorted(range(roots.size), key=lambda c: (-size_r[c], min_l[c]))
    l_lists = _group_by(comp_l, roots.size)
    r_lists = _group_by(comp_r, roots.size)
    out = []
    for new_id, c in enumerate(order):
        surplus = int(edge_count[c]) - (int(size_l[c]) + int(size_r[c]) - 1)
        if surplus < 0:
            raise AssertionError("component with fewer edges than a spanning tree")
        out.append(ComponentRecord(
            id=new_id, size_r=int(size_r[c]), size_l=int(size_l[c]),
            edge_count=int(edge_count[c]), surplus=surplus,
            l_vertices=l_lists[c], r_vertices=r_lists[c],
        ))
    return out


def _group_by(labels: np.ndarray, n_groups: int) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(n_groups + 1))
    return [order[bounds[i]:bounds[i + 1]] for i in range(n_groups)]


def component_labels(g: BipartiteMultigraph, comps: list[ComponentRecord]) -> np.ndarray:
    """Per-l-vertex component id (the sorted ids of ``components``)."""
    lab = np.full(g.n, UNSET, dtype=np.int64)
    for rec in comps:
        lab[rec.l_vertices] = rec.id
    return lab


# ---------------------------------------------------------------------------
# intersection graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionGraph:
    """Simple graph on the l-vertices, edges witnessed by shared r-neighbors.

    witnesses maps each edge (u, v) with u < v to the r-vertices adjacent to
    both endpoints. r_neighbors[w] lists the distinct l-neighbors of
    r-vertex w.
    """

    n: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    r_neighbors: list
    witnesses: dict

    @property
    def edge_count(self) -> int:
        return int(self.edge_u.size)

    def adjacency(self) -> sp.csr_matrix:
        ones = np.ones(self.edge_u.size, dtype=np.int64)
        a = sp.coo_matrix(
            (ones, (self.edge_u, self.edge_v)), shape=(self.n, self.n)
        )
        a = a + a.T
        return a.tocsr()


def project_rig(g: BipartiteMultigraph) -> IntersectionGraph:
    """Collapse each r-vertex's distinct l-neighborhood to a clique.

    An r-vertex matched twice to the same l-vertex contributes that vertex
    once. Parallel witnesses accumulate in the edge's witness list.
    """
    owner_of_slot = g.owner_l[g.match_rl]
    r_neighbors = []
    witnesses: dict = {}
    for w in range(g.m):
        block = owner_of_slot[g.offsets_r[w]:g.offsets_r[w + 1]]
        nbrs = np.unique(block)
        r_neighbors.append(nbrs)
        for i in range(nbrs.size - 1):
            u = int(nbrs[i])
            for j in range(i + 1, nbrs.size):
                witnesses.setdefault((u, int(nbrs[j])), []).append(w)
    if witnesses:
        keys = sorted(witnesses)
        edge_u = np.array([k[0] for k in keys], dtype=np.int64)
        edge_v = np.array([k[1] for k in keys], dtype=np.int64)
    else:
        edge_u = np.empty(0, dtype=np.int64)
        edge_v = np.empty(0, dtype=np.int64)
    return IntersectionGraph(
        n=g.n, edge_u=edge_u, edge_v=edge_v,
        r_neighbors=r_neighbors, witnesses=witnesses,
    )


@dataclass(frozen=True)
class TriangleStats:
    """Exact triangle census per component, with the degree-cube proxy.

    Arrays are indexed by component id. The proxy entry is
    sum over the component's r-vertices of binom(d_r, 3).
    """

    total: np.ndarray
    type_i: np.ndarray
    type_ii: np.ndarray
    proxy: np.ndarray

    def __post_init__(self):
        if np.any(self.type_i + self.type_ii != self.total):
            raise AssertionError("triangle type split does not add up")


def count_triangles(
    rig: IntersectionGraph,
    g: BipartiteMultigraph,
    comps: list[ComponentRecord],
) -> TriangleStats:
    """Enumerate triangles by forward-neighbor intersection.

    A triangle is type I when one r-vertex witnesses all three corners at
    once; with each corner pair sharing a witness but no common one it is
    type II.
    """
    n_comps = len(comps)
    labels = component_labels(g, comps)
    total = np.zeros(n_comps, dtype=np.int64)
    type_i = np.zeros(n_comps, dtype=np.int64)

    fwd: list = [[] for _ in range(rig.n)]
    for u, v in zip(rig.edge_u, rig.edge_v):
        fwd[int(u)].append(int(v))
    fwd = [np.array(sorted(vs), dtype=np.int64) for vs in fwd]

    for u in range(rig.n):
        for v in fwd[u]:
            common = np.intersect1d(fwd[u], fwd[int(v)], assume_unique=True)
            for w in common:
                c = labels[u]
                total[c] += 1
                shared = (
                    set(rig.witnesses[(u, int(v))])
                    & set(rig.witnesses[(u, int(w))])
                    & set(rig.witnesses[(int(v), int(w))])
                )
                if shared:
                    type_i[c] += 1

    proxy = np.zeros(n_comps, dtype=np.int64)
    choose3 = g.d_r * (g.d_r - 1) * (g.d_r - 2) // 6
    for rec in comps:
        proxy[rec.id] = int(choose3[rec.r_vertices].sum())
    return TriangleStats(
        total=total, type_i=type_i, type_ii=total - type_i, proxy=proxy
    )


def incremental_triangles(g: BipartiteMultigraph, r_order) -> np.ndarray:
    """Triangle counts of the growing intersection graph.

    Entry j is the number of triangles after the cliques of the first j
    r-vertices of r_order have been inserted; entry 0 is 0. Inserting a new
    edge (u, v) creates exactly |N(u) & N(v)| triangles, so the count stays
    exact under any insertion order.
    """
    owner_of_slot = g.owner_l[g.match_rl]
    adj: dict = {}
    out = np.zeros(len(r_order) + 1, dtype=np.int64)
    t = 0
    for step, w in enumerate(r_order, start=1):
        w = int(w)
        nbrs = np.unique(owner_of_slot[g.offsets_r[w]:g.offsets_r[w + 1]])
        for i in range(nbrs.size - 1):
            u = int(nbrs[i])
            au = adj.setdefault(u, set())
            for j in range(i + 1, nbrs.size):
                v = int(nbrs[j])
                if v in au:
                    continue
                av = adj.setdefault(v, set())
                t += len(au & av)
                au.add(v)
                av.add(u)
        out[step] = t
    return out


def component_triangle_counts(
    rig: IntersectionGraph, labels: np.ndarray, n_comps: int
) -> np.ndarray:
    """Per-component triangle totals via one sparse matrix product.

    Each triangle contributes 6 to the sum of (A@A)*A rows over its three
    corners, all of which share a component.
    """
    if rig.edge_count == 0:
        return np.zeros(n_comps, dtype=np.int64)
    a = rig.adjacency()
    per_vertex = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()
    sums = np.bincount(labels, weights=per_vertex, minlength=n_comps)
    counts = np.rint(sums / 6.0).astype(np.int64)
    if not np.allclose(sums / 6.0, counts):
        raise AssertionError("triangle mass did not split evenly by component")
    return counts


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def save_graph(g: BipartiteMultigraph, path: str) -> None:
    """Edge-list text: one `l_vertex r_vertex` line per l-half-edge in slot
    order, so parallel edges repeat and the file is reproducible."""
    rows = g.edges()
    with open(path, "w") as fh:
        for lv, rv in rows:
            fh.write(f"{lv} {rv}\n")


def load_graph(path: str) -> BipartiteMultigraph:
    """Rebuild a graph from an edge list with canonical slot assignment.

    Each line consumes the next free half-edge slot of both named vertices,
    in line order. Half-edge labels within a vertex are exchangeable, so
    this reproduces the multigraph exactly and save->load->save is
    byte-stable.
    """
    lv = []
    rv = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {line!r}")
            lv.append(int(parts[0]))
            rv.append(int(parts[1]))
    if not lv:
        raise ValueError("empty edge list")
    lv = np.array(lv, dtype=np.int64)
    rv = np.array(rv, dtype=np.int64)
    d_l = np.bincount(lv)
    d_r = np.bincount(rv)
    if d_l.min() < 1 or d_r.min() < 1:
        raise ValueError("edge list leaves a vertex isolated")
    offsets_l = _offsets(d_l)
    offsets_r = _offsets(d_r)
    next_l = offsets_l[:-1].copy()
    next_r = offsets_r[:-1].copy()
    match_lr = np.full(lv.size, UNSET, dtype=np.int64)
    for a, b in zip(lv, rv):
        match_lr[next_l[a]] = next_r[b]
        next_l[a] += 1
        next_r[b] += 1
    return BipartiteMultigraph(d_l=d_l, d_r=d_r, match_lr=match_lr)
