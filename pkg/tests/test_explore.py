from __future__ import annotations

import numpy as np
import pytest

from bcm_lab import bcm, degseq, explore

from conftest import random_small_pair


def pair_of(d_l, d_r):
    d_l = np.asarray(d_l, dtype=np.int64)
    d_r = np.asarray(d_r, dtype=np.int64)
    return degseq.DegreeSequencePair(
        d_l=d_l, d_r=d_r, theta_target=d_r.size / d_l.size,
        regime=degseq.FINITE_THIRD)


def test_forced_two_leaves():
    g = bcm.generate(pair_of([1, 1], [2]), seed=0)
    tr = explore.explore(g, seed=0)
    assert tr.L.tolist() == [1]
    assert tr.Yr.tolist() == [1]
    assert tr.V.tolist() == [2]
    assert tr.Ztilde.tolist() == [-1]
    assert tr.Cn.tolist() == [0]
    wc = explore.components_from_walk(tr)
    assert wc.sizes() == [(1, 2)]


def test_forced_parallel_edge_cycle():
    g = bcm.generate(pair_of([2], [2]), seed=0)
    tr = explore.explore(g, seed=0)
    assert tr.c.tolist() == [1]
    assert tr.Cn.tolist() == [1]
    assert tr.V.tolist() == [1]
    wc = explore.components_from_walk(tr)
    rec = wc.records[0]
    assert (rec.size_r, rec.size_l, rec.surplus) == (1, 1, 1)


def test_perfect_matching_walk():
    g = bcm.generate(pair_of([1, 1, 1], [1, 1, 1]), seed=2)
    tr = explore.explore(g, seed=2)
    assert tr.Ztilde.tolist() == [-1, -2, -3]
    assert tr.L.tolist() == [1, 2, 3]
    assert explore.components_from_walk(tr).sizes() == [(1, 1)] * 3


def test_trace_invariants_sample(corpus):
    for entry in corpus[:100]:
        entry.trace.assert_invariants()


def test_walk_matches_union_find_sample(corpus):
    for entry in corpus[:100]:
        walk = sorted(explore.components_from_walk(entry.trace).sizes())
        uf = sorted((c.size_r, c.size_l) for c in bcm.components(entry.graph))
        assert walk == uf


def test_stack_empty_boundary(corpus):
    # at the j-th component boundary the pair (Ztilde, L) sits at (-j, j)
    for entry in corpus[:60]:
        tr = entry.trace
        hit = np.flatnonzero(tr.stack_size == 0)
        j = np.arange(1, hit.size + 1)
        assert np.array_equal(tr.Ztilde[hit], -j)
        assert np.array_equal(tr.L[hit], j)


def test_zn_reflection_parameter():
    g = bcm.generate(pair_of([2, 1, 1], [2, 1, 1]), seed=3)
    for s in (0.5, 1.0, 2.0):
        tr = explore.explore(g, s=s, seed=3)
        assert np.allclose(tr.zn(), tr.Ztilde - s * tr.L)


def test_orders_are_permutations(corpus):
    for entry in corpus[:60]:
        tr = entry.trace
        m = entry.pair.d_r.size
        assert sorted(tr.r_order.tolist()) == list(range(m))
        assert np.array_equal(
            np.sort(tr.d_r_step), np.sort(entry.pair.d_r))
        explored_l = entry.pair.d_l.size
        assert sorted(tr.l_order.tolist()) == list(range(explored_l))


def test_component_ordering_rules(corpus):
    for entry in corpus[:40]:
        wc = explore.components_from_walk(entry.trace)
        by_r = [(-r.size_r, r.tau) for r in wc.ordered]
        assert by_r == sorted(by_r)
        by_l = [(-r.size_l, r.tau) for r in wc.ordered_by_l()]
        assert by_l == sorted(by_l)


def test_rescaled_walk_grid():
    pair = pair_of([2, 2, 1, 1], [2, 2, 1, 1])
    g = bcm.generate(pair, seed=4)
    tr = explore.explore(g, seed=4)
    reg = degseq.ScalingRegime.finite_third(4)
    t, vals = explore.rescaled_walk(tr, reg)
    assert t[0] == 0.0 and vals[0] == 0.0
    assert np.allclose(np.diff(t), 1.0 / reg.b_n)
    # one point per step plus the origin
    assert vals.size == pair.d_r.size + 1
    assert vals[1] == pytest.approx(tr.zn()[0] / reg.a_n)


def test_residual_criticality_start_and_monotone_case():
    pair = pair_of([3, 1, 1, 1], [2, 2, 1, 1])
    mm = degseq.moments(pair)
    for seed in range(12):
        g = bcm.generate(pair, seed=seed)
        tr = explore.explore(g, seed=seed)
        assert explore.residual_criticality(tr, pair, 0.0) == pytest.approx(mm.nu)
        if 0 in tr.l_order[: int(tr.d_r_step[0])].tolist():
            # the degree-3 l-vertex went first: its removal drops the l-factor
            one_step = explore.residual_criticality(tr, pair, 1.0 / 4 ** (2 / 3))
            assert one_step < mm.nu


def test_residual_criticality_exhausted_errors():
    pair = pair_of([1, 1], [1, 1])
    g = bcm.generate(pair, seed=0)
    tr = explore.explore(g, seed=0)
    with pytest.raises(ValueError):
        explore.residual_criticality(tr, pair, 10.0)


def test_write_trace(tmp_path, corpus):
    entry = corpus[0]
    fp = tmp_path / "trace.csv"
    explore.write_trace(entry.trace, str(fp))
    lines = fp.read_text().splitlines()
    assert lines[0] == explore.TRACE_HEADER
    assert len(lines) == 1 + entry.pair.d_r.size


def test_cycle_probability_column(corpus):
    for entry in corpus[:40]:
        p = entry.trace.p
        assert np.all(p >= 0.0) and np.all(p <= 1.0)
