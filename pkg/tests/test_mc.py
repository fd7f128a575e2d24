from __future__ import annotations

import math

import numpy as np
import pytest

from bcm_lab import bcm, degseq, explore, levy, mc


def small_critical_pair(n=300, lam=0.0, seed=3):
    law = degseq.truncated_poisson_law(1.0, cap=5)
    return degseq.build_finite_third(n, 1.0, lam, law, seed=seed)


def family_pair(blocks, d_l_block=(3, 1, 1, 1), d_r_block=(2, 2, 1, 1)):
    d_l = np.sort(np.tile(d_l_block, blocks))[::-1]
    d_r = np.sort(np.tile(d_r_block, blocks))[::-1]
    return degseq.DegreeSequencePair(
        d_l=d_l, d_r=d_r, theta_target=d_r.size / d_l.size,
        regime=degseq.FINITE_THIRD)


# ---------------------------------------------------------------------------
# configuration and constants
# ---------------------------------------------------------------------------

def test_config_validation():
    pair = family_pair(2)
    with pytest.raises(ValueError):
        mc.EnsembleConfig(pair=pair, replicas=0)
    with pytest.raises(ValueError):
        mc.EnsembleConfig(pair=pair, replicas=1, dt=-0.1)
    with pytest.raises(ValueError):
        mc.EnsembleConfig(pair=pair, replicas=1, top_k=0)


def test_reference_params_finite_third():
    pair = small_critical_pair(lam=0.4)
    c = degseq.limit_constants(pair, lam=0.4)
    p = mc.reference_params(c)
    nu = c.nu_inf_l
    assert p.kappa == pytest.approx(nu ** 2 * c.kappa)
    assert p.rho == pytest.approx(nu * c.rho)
    assert p.lam == pytest.approx(0.4)
    assert p.beta.size == 0


def test_reference_params_heavy():
    pair = degseq.build_heavy_tail(400, 1.0, 0.2, 3.5, seed=1)
    c = degseq.limit_constants(pair, lam=0.2)
    p = mc.reference_params(c)
    assert p.kappa == 0.0 and p.rho == 0.0
    assert p.lam == pytest.approx(0.2 * c.nu_inf_r / c.mu1_l)
    assert np.array_equal(p.beta, c.beta_merged)
    assert p.tail_l2 == pytest.approx(c.beta_merged_tail_l2)


def test_default_horizon_finite_third_solves_crossing():
    pair = small_critical_pair()
    c = degseq.limit_constants(pair)
    T = mc.default_horizon(c)
    p = mc.reference_params(c)
    assert 0.5 * p.rho * T ** 2 == pytest.approx(10.0 * math.sqrt(p.kappa * T))


def test_default_horizon_heavy():
    pair = degseq.build_heavy_tail(400, 1.0, 0.0, 3.5, seed=1)
    c = degseq.limit_constants(pair)
    e2 = (3.5 - 2.0) / (3.5 - 1.0)
    assert mc.default_horizon(c) == pytest.approx(
        10.0 * c.mu1_r * c.theta ** e2)


def test_check_horizon_drifting_process():
    p = levy.LevyParams(kappa=1.0, rho=4.0, lam=0.0)
    assert mc.check_horizon(p, 1e-2, 8.0, seed=0, pilot=100) == 1.0


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------

def test_run_ensemble_shapes_and_determinism():
    pair = small_critical_pair()
    cfg = mc.EnsembleConfig(pair=pair, replicas=5, seed=9, dt=2e-3,
                            reference_replicas=4, top_k=3)
    a = mc.run_ensemble(cfg)
    b = mc.run_ensemble(cfg)
    assert a.per_replica.shape == (5, 3, 6)
    assert a.reference.shape == (4, 3, 3)
    assert np.array_equal(a.per_replica, b.per_replica)
    assert np.array_equal(a.reference, b.reference, equal_nan=True)
    assert set(a.ks) == {"sizer_byr", "sizel_byr", "sizer_byl", "sizel_byl"}
    for v in a.ks.values():
        assert v.shape == (3,)
        assert np.all((0 <= v) & (v <= 1))
    # finite-third reference carries no triangle marks
    assert np.isnan(a.reference[:, :, 2]).all()
    assert not a.summary["interrupted"]


def test_run_ensemble_rank_columns_sorted():
    pair = small_critical_pair(seed=5)
    cfg = mc.EnsembleConfig(pair=pair, replicas=6, seed=2, dt=2e-3)
    st = mc.run_ensemble(cfg)
    assert np.all(np.diff(st.per_replica[:, :, 0], axis=1) <= 0)
    assert np.all(np.diff(st.per_replica[:, :, 4], axis=1) <= 0)
    assert st.ks == {}  # no references requested


def test_run_ensemble_threads_match_sequential():
    pair = small_critical_pair(seed=7)
    base = mc.EnsembleConfig(pair=pair, replicas=6, seed=4, dt=2e-3)
    seq = mc.run_ensemble(base)
    import dataclasses
    par = mc.run_ensemble(dataclasses.replace(base, threads=3))
    assert np.array_equal(seq.per_replica, par.per_replica)


def test_replica_columns_recomputable_and_triangles_paired_by_identity():
    # rebuild replica 0 from its spawned seeds and check every column,
    # including that triangle counts follow the walk component identity
    pair = small_critical_pair(n=200, seed=1)
    cfg = mc.EnsembleConfig(pair=pair, replicas=3, seed=31, dt=2e-3)
    st = mc.run_ensemble(cfg)

    child = np.random.SeedSequence(31).spawn(4)[0]
    gseed, eseed = child.spawn(2)
    g = bcm.generate(pair, gseed)
    tr = explore.explore(g, seed=eseed)
    wc = explore.components_from_walk(tr)
    b_n = pair.scaling().b_n

    byr = wc.ordered
    byl = wc.ordered_by_l()
    for k in range(min(3, len(byr))):
        assert st.per_replica[0, k, 0] == byr[k].size_r / b_n
        assert st.per_replica[0, k, 1] == byr[k].size_l / b_n
    for k in range(min(3, len(byl))):
        assert st.per_replica[0, k, 3] == byl[k].size_r / b_n
        assert st.per_replica[0, k, 4] == byl[k].size_l / b_n

    comps = bcm.components(g)
    labels = bcm.component_labels(g, comps)
    rig = bcm.project_rig(g)
    tri = bcm.component_triangle_counts(rig, labels, len(comps))
    comp_of_r = np.empty(pair.d_r.size, dtype=np.int64)
    for rec in comps:
        comp_of_r[rec.r_vertices] = rec.id
    for k in range(min(3, len(byr))):
        cid = comp_of_r[tr.r_order[byr[k].tau_prev]]
        assert st.per_replica[0, k, 2] == tri[cid] / b_n


def test_run_ensemble_horizon_gate():
    pair = small_critical_pair(seed=11)
    cfg = mc.EnsembleConfig(pair=pair, replicas=2, seed=0, dt=2e-3,
                            T=0.05, reference_replicas=2)
    with pytest.raises(ValueError):
        mc.run_ensemble(cfg)


# ---------------------------------------------------------------------------
# susceptibility
# ---------------------------------------------------------------------------

def test_susceptibility_perfect_matching_equality():
    pair = family_pair(3, d_l_block=(1,), d_r_block=(1,))
    rep = mc.susceptibility_check(pair, replicas=10, seed=0)
    assert rep["r"]["estimate"] == 1.0
    assert rep["r"]["bound"] == 1.0
    assert rep["r"]["pass"] and rep["l"]["pass"]


def test_susceptibility_documented_family():
    rep = mc.susceptibility_check(family_pair(50), replicas=80, seed=1)
    assert rep["nu"] == pytest.approx(2 / 3)
    assert rep["r"]["bound"] == pytest.approx(5.5)
    assert rep["l"]["bound"] == pytest.approx(4.0)
    assert rep["r"]["pass"] and rep["l"]["pass"]


def test_susceptibility_rejects_critical():
    pair = small_critical_pair()
    with pytest.raises(ValueError):
        mc.susceptibility_check(pair, replicas=2, seed=0)


# ---------------------------------------------------------------------------
# path counts
# ---------------------------------------------------------------------------

def test_path_count_perfect_matching_zero():
    pair = family_pair(4, d_l_block=(1,), d_r_block=(1,))
    rep = mc.path_count_check(pair, l=1, replicas=10, seed=0)
    assert rep["p_l"]["estimate"] == 0.0
    assert rep["p_l"]["bound"] == 0.0
    assert rep["p_l"]["pass"]


def test_path_count_forced_single_path():
    pair = degseq.DegreeSequencePair(
        d_l=np.array([1, 1]), d_r=np.array([2]), theta_target=0.5,
        regime=degseq.FINITE_THIRD)
    rep = mc.path_count_check(pair, l=1, replicas=5, seed=0)
    # the only matching gives exactly one l-u-l' path
    assert rep["p_l"]["estimate"] == 1.0
    assert rep["p_l"]["pass"]


def test_path_count_guard():
    pair = family_pair(30)
    with pytest.raises(ValueError):
        mc.path_count_check(pair, l=2, replicas=1, seed=0)


# ---------------------------------------------------------------------------
# triangle limit checks
# ---------------------------------------------------------------------------

def test_triangle_limit_finite_third():
    pair = small_critical_pair(n=400, seed=9)
    cfg = mc.EnsembleConfig(pair=pair, replicas=25, seed=21, dt=2e-3, top_k=2)
    rep = mc.triangle_limit_check(cfg)
    assert rep["regime"] == degseq.FINITE_THIRD
    assert rep["factor"] == pytest.approx(
        degseq.witness_triangle_factor(pair.d_r))
    assert len(rep["ratio"]) == 2
    assert rep["pass"]


def test_triangle_limit_heavy():
    pair = degseq.build_heavy_tail(500, 1.0, 0.0, 3.5, seed=1)
    cfg = mc.EnsembleConfig(pair=pair, replicas=16, seed=5, dt=1e-2,
                            reference_replicas=16, top_k=1)
    rep = mc.triangle_limit_check(cfg)
    assert rep["regime"] == degseq.HEAVY_TAIL
    assert rep["mean_tri"] > 0 and rep["mean_mark"] > 0
    assert rep["dominated"]
    assert rep["pass"]


# ---------------------------------------------------------------------------
# heavy-tail limit pair simulator
# ---------------------------------------------------------------------------

def test_simulate_xt_basic():
    pair = degseq.build_heavy_tail(400, 1.0, 0.0, 3.5, seed=2)
    c = degseq.limit_constants(pair)
    x1, t1 = mc.simulate_xt(c, 1e-2, 5.0, seed=8)
    x2, t2 = mc.simulate_xt(c, 1e-2, 5.0, seed=8)
    assert np.array_equal(x1.values, x2.values)
    assert np.array_equal(t1.values, t2.values)
    assert t1.values[0] == 0.0
    assert np.all(np.diff(t1.values) >= 0)
    assert x1.values.size == t1.values.size == 501


def test_simulate_xt_finite_third_rejected():
    pair = small_critical_pair()
    c = degseq.limit_constants(pair)
    with pytest.raises(ValueError):
        mc.simulate_xt(c, 1e-2, 5.0, seed=0)


def test_simulate_xt_triangle_mass_reconstruction():
    # replay the generator stream: T jumps by theta^{-3/(tau-1)}/6 times a
    # beta_r cube when the matching r-clock fires, nothing else moves it
    pair = degseq.build_heavy_tail(300, 1.0, 0.0, 3.5, seed=4)
    c = degseq.limit_constants(pair)
    dt, T = 1e-2, 8.0
    _, t_path = mc.simulate_xt(c, dt, T, seed=12)

    rng = np.random.default_rng(12)
    if c.beta_l.size:
        rng.exponential(1.0 / c.beta_l)  # the X block consumes these first
    e1 = 1.0 / (c.tau - 1.0)
    e2 = (c.tau - 2.0) / (c.tau - 1.0)
    fire = rng.exponential(1.0 / c.beta_r) * c.mu1_r * c.theta ** e2
    M = int(round(T / dt))
    delta = np.zeros(M + 1)
    size_t = c.theta ** (-3.0 * e1) / 6.0 * c.beta_r ** 3
    for j in range(c.beta_r.size):
        i = max(1, int(math.ceil(fire[j] / dt - 1e-12)))
        if i <= M:
            delta[i] += size_t[j]
    assert np.allclose(t_path.values, np.cumsum(delta))
    assert (delta > 0).any()
