"""Command-line entry point.

Subcommands map one-to-one onto the library: degseq build, bcm
generate/triangles, explore run, levy simulate/excursions, the mc
experiments, and validate. Every command that produces files writes
them into the directory of its --out target together with a
manifest.json recording the resolved configuration, master seed, and a
sha256 digest per output, so a run can be replayed and byte-checked.

Exit codes: 0 success, 1 failed scientific check or broken invariant,
2 usage or configuration error. Numeric CSV output uses 17 significant
digits so digests are stable wherever the arithmetic is.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import bcm, degseq, explore, levy, mc

VERSION = "0.1.0"


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

class _NumpyEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, (np.floating,)):
            v = float(o)
            return v if math.isfinite(v) else None
        if isinstance(o, (np.bool_,)):
            return bool(o)
        return super().default(o)


def _digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(out_dir: Path, command: list, config: dict, seed, outputs: list) -> Path:
    doc = {
        "tool": f"bcm-lab {VERSION}",
        "command": command,
        "config": config,
        "seed": seed,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "outputs": {p.name: _digest(p) for p in outputs},
    }
    path = out_dir / "manifest.json"
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, cls=_NumpyEncoder)
        fh.write("\n")
    return path


def load_config(path: str) -> dict:
    p = Path(path)
    raw = p.read_bytes()
    if p.suffix.lower() == ".toml":
        return tomllib.loads(raw.decode())
    return json.loads(raw.decode())


def _resolve(defaults: dict, file_cfg: dict, args: argparse.Namespace) -> dict:
    # precedence: flags > config file > defaults; argparse leaves a flag at
    # None when the user did not pass it
    cfg = dict(defaults)
    unknown = set(file_cfg) - set(defaults)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg.update(file_cfg)
    for key in defaults:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _threads(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("BCM_LAB_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def _out_file(arg: str, default_name: str) -> Path:
    path = Path(arg) if arg else Path(default_name)
    if path.is_dir():
        path = path / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _pair_config_defaults() -> dict:
    return {
        "degseq": None, "regime": degseq.FINITE_THIRD, "n": 1000, "theta": 1.0,
        "lam": 0.0, "tau": None, "build_seed": 0, "cap": None,
    }


def _build_pair(cfg: dict) -> degseq.DegreeSequencePair:
    if cfg.get("degseq"):
        return degseq.load_pair(cfg["degseq"])
    n = int(cfg["n"])
    if cfg["regime"] == degseq.HEAVY_TAIL:
        if cfg["tau"] is None:
            raise ValueError("heavy regime needs --tau")
        return degseq.build_heavy_tail(n, cfg["theta"], cfg["lam"], cfg["tau"],
                                       seed=int(cfg["build_seed"]))
    cap = int(cfg["cap"]) if cfg["cap"] is not None else max(2, int(n ** (1.0 / 3.0)))
    law = degseq.truncated_poisson_law(1.0, cap)
    return degseq.build_finite_third(n, cfg["theta"], cfg["lam"], law,
                                     seed=int(cfg["build_seed"]))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_degseq_build(args) -> int:
    defaults = _pair_config_defaults()
    file_cfg = load_config(args.config) if args.config else {}
    cfg = _resolve(defaults, file_cfg, args)
    pair = _build_pair(cfg)
    out = _out_file(args.out, "degseq.txt")
    degseq.save_pair(pair, str(out))
    ms = degseq.moments(pair)
    print(f"wrote {out}: n={pair.n} m={pair.m} nu={ms.nu:.6f}")
    write_manifest(out.parent, ["degseq", "build"], cfg, cfg["build_seed"], [out])
    return 0


def cmd_bcm_generate(args) -> int:
    pair = degseq.load_pair(args.degseq)
    g = bcm.generate(pair, args.seed)
    out = _out_file(args.out, "graph.txt")
    bcm.save_graph(g, str(out))
    print(f"wrote {out}: {g.edge_total} edges, n={g.n} m={g.m}")
    write_manifest(out.parent, ["bcm", "generate"],
                   {"degseq": args.degseq, "seed": args.seed}, args.seed, [out])
    return 0


def cmd_bcm_triangles(args) -> int:
    g = bcm.load_graph(args.graph)
    comps = bcm.components(g)
    rig = bcm.project_rig(g)
    stats = bcm.count_triangles(rig, g, comps)
    out = _out_file(args.out, "triangles.csv")
    with open(out, "w") as fh:
        fh.write("component,size_l,size_r,surplus,triangles,type_i,type_ii,proxy\n")
        for rec in comps:
            fh.write(f"{rec.id},{rec.size_l},{rec.size_r},{rec.surplus},"
                     f"{stats.total[rec.id]},{stats.type_i[rec.id]},"
                     f"{stats.type_ii[rec.id]},{stats.proxy[rec.id]}\n")
    print(f"triangles: total={int(stats.total.sum())} "
          f"type_i={int(stats.type_i.sum())} type_ii={int(stats.type_ii.sum())}")
    print(f"wrote {out}")
    write_manifest(out.parent, ["bcm", "triangles"], {"graph": args.graph}, None, [out])
    return 0


def cmd_explore_run(args) -> int:
    g = bcm.load_graph(args.graph)
    s = None if args.s == "AUTO" else float(args.s)
    trace = explore.explore(g, s=s, seed=args.seed)
    out = _out_file(args.out, "trace.csv")
    explore.write_trace(trace, str(out))
    wc = explore.components_from_walk(trace)
    print(f"wrote {out}: m={trace.m} components={len(wc.records)} "
          f"surplus={int(trace.Cn[-1])}")
    write_manifest(out.parent, ["explore", "run"],
                   {"graph": args.graph, "seed": args.seed, "s": args.s},
                   args.seed, [out])
    return 0


def cmd_levy_simulate(args) -> int:
    beta = None
    if args.beta:
        beta = np.array([float(line) for line in Path(args.beta).read_text().split()])
    params = levy.LevyParams(kappa=args.kappa, rho=args.rho, lam=args.lam, beta=beta)
    path = levy.simulate(params, args.dt, args.T, args.seed)
    out = _out_file(args.out, "path.csv")
    levy.save_path(path, str(out))
    print(f"wrote {out}: {path.steps} steps, final value {path.values[-1]:.6g}")
    write_manifest(out.parent, ["levy", "simulate"],
                   {"kappa": args.kappa, "rho": args.rho, "lam": args.lam,
                    "beta": args.beta, "dt": args.dt, "T": args.T, "seed": args.seed},
                   args.seed, [out])
    return 0


def cmd_levy_excursions(args) -> int:
    path = levy.load_path(args.path)
    es = levy.excursions(path, top_k=args.top)
    if args.marks:
        g = levy.load_path(args.marks)
        es = levy.attach_marks(es, levy.gamma_infinity(path, g, top_k=args.top))
    out = _out_file(args.out, "excursions.csv")
    levy.save_excursions(es, str(out))
    print(f"wrote {out}: {es.n_total} excursions, "
          f"top lengths {np.round(es.lengths[:5], 6).tolist()}")
    write_manifest(out.parent, ["levy", "excursions"],
                   {"path": args.path, "top": args.top, "marks": args.marks},
                   None, [out])
    return 0


def _ensemble_defaults() -> dict:
    d = _pair_config_defaults()
    d.update({
        "replicas": 100, "seed": 0, "dt": mc.DEFAULT_DT, "T": None,
        "reference_replicas": 0, "top_k": mc.DEFAULT_TOP_K,
        "collect_triangles": True, "threads": None,
    })
    return d


def _ensemble_config(args) -> tuple:
    file_cfg = load_config(args.config) if args.config else {}
    cfg = _resolve(_ensemble_defaults(), file_cfg, args)
    pair = _build_pair(cfg)
    ecfg = mc.EnsembleConfig(
        pair=pair, replicas=int(cfg["replicas"]), seed=int(cfg["seed"]),
        dt=float(cfg["dt"]), T=None if cfg["T"] is None else float(cfg["T"]),
        reference_replicas=int(cfg["reference_replicas"]), top_k=int(cfg["top_k"]),
        collect_triangles=bool(cfg["collect_triangles"]), threads=_threads(cfg["threads"]),
    )
    return ecfg, cfg


def cmd_mc_ensemble(args) -> int:
    ecfg, cfg = _ensemble_config(args)
    stats = mc.run_ensemble(ecfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    stats_path = out_dir / "stats.csv"
    with open(stats_path, "w") as fh:
        fh.write("replica,rank," + ",".join(mc.COLUMNS) + "\n")
        for i in range(stats.per_replica.shape[0]):
            for k in range(ecfg.top_k):
                row = ",".join(f"{v:.17g}" for v in stats.per_replica[i, k])
                fh.write(f"{i},{k},{row}\n")
    outputs = [stats_path]

    if stats.reference.shape[0] > 0:
        ref_path = out_dir / "reference.csv"
        with open(ref_path, "w") as fh:
            fh.write("replica,rank," + ",".join(mc.REF_COLUMNS) + "\n")
            for i in range(stats.reference.shape[0]):
                for k in range(ecfg.top_k):
                    row = ",".join(f"{v:.17g}" for v in stats.reference[i, k])
                    fh.write(f"{i},{k},{row}\n")
        outputs.append(ref_path)

    summary = {
        "horizon": stats.horizon,
        "horizon_fraction": stats.horizon_fraction,
        "ks": stats.ks,
        "mean": stats.summary["mean"],
        "var": stats.summary["var"],
        "quantile_levels": stats.summary["quantile_levels"],
        "quantiles": stats.summary["quantiles"],
        "reference_mean": stats.summary["reference_mean"],
        "replicas_completed": stats.summary["replicas_completed"],
        "interrupted": stats.summary["interrupted"],
        "columns": list(mc.COLUMNS),
        "pass": True,
    }
    summary_path = out_dir / "summary.json"
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True, cls=_NumpyEncoder)
        fh.write("\n")
    outputs.append(summary_path)

    for name, table in stats.ks.items():
        print(f"ks[{name}] = {np.round(table, 4).tolist()}")
    print(f"wrote {stats_path}, {summary_path}")
    write_manifest(out_dir, ["mc", "ensemble"], cfg, ecfg.seed, outputs)
    return 0


def cmd_mc_susceptibility(args) -> int:
    file_cfg = load_config(args.config) if args.config else {}
    defaults = _pair_config_defaults()
    defaults.update({"replicas": 200, "seed": 0})
    cfg = _resolve(defaults, file_cfg, args)
    pair = _build_pair(cfg)
    report = mc.susceptibility_check(pair, int(cfg["replicas"]), seed=int(cfg["seed"]))
    print(json.dumps(report, indent=2, sort_keys=True, cls=_NumpyEncoder))
    ok = report["r"]["pass"] and report["l"]["pass"]
    if args.out:
        out = _out_file(args.out, "susceptibility.json")
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, cls=_NumpyEncoder)
            fh.write("\n")
        write_manifest(out.parent, ["mc", "susceptibility"], cfg, cfg["seed"], [out])
    return 0 if ok else 1


def cmd_mc_paths(args) -> int:
    file_cfg = load_config(args.config) if args.config else {}
    defaults = _pair_config_defaults()
    defaults.update({"replicas": 200, "seed": 0, "l": 1})
    cfg = _resolve(defaults, file_cfg, args)
    pair = _build_pair(cfg)
    report = mc.path_count_check(pair, int(cfg["l"]), int(cfg["replicas"]),
                                 seed=int(cfg["seed"]))
    print(json.dumps(report, indent=2, sort_keys=True, cls=_NumpyEncoder))
    ok = report["p_l"]["pass"] and report["p_r"]["pass"]
    if args.out:
        out = _out_file(args.out, "paths.json")
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, cls=_NumpyEncoder)
            fh.write("\n")
        write_manifest(out.parent, ["mc", "paths"], cfg, cfg["seed"], [out])
    return 0 if ok else 1


def cmd_mc_triangles(args) -> int:
    ecfg, cfg = _ensemble_config(args)
    report = mc.triangle_limit_check(ecfg)
    print(json.dumps(report, indent=2, sort_keys=True, cls=_NumpyEncoder))
    if args.out:
        out = _out_file(args.out, "triangle_check.json")
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, cls=_NumpyEncoder)
            fh.write("\n")
        write_manifest(out.parent, ["mc", "triangles"], cfg, ecfg.seed, [out])
    return 0 if report["pass"] else 1


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def _validate_checks(quick: bool):
    yield "merge keeps order", lambda: list(degseq.ord_merge([3.0, 1.0], [2.0])) == [3.0, 2.0, 1.0]

    def _forced_graph():
        pair = degseq.DegreeSequencePair(
            d_l=np.array([1, 1]), d_r=np.array([2]), theta_target=0.5,
            regime=degseq.FINITE_THIRD)
        g = bcm.generate(pair, seed=5)
        return g, pair

    def check_forced_edges():
        g, _ = _forced_graph()
        return g.edges().tolist() == [[0, 0], [1, 0]]
    yield "forced matching edges", check_forced_edges

    def check_forced_walk():
        g, _ = _forced_graph()
        tr = explore.explore(g, seed=0)
        return (tr.L.tolist() == [1] and tr.Yr.tolist() == [1]
                and tr.Ztilde.tolist() == [-1] and tr.V.tolist() == [2])
    yield "forced matching walk", check_forced_walk

    def check_walk_vs_unionfind():
        rng = np.random.default_rng(7)
        seeds = 25 if quick else 200
        for trial in range(seeds):
            n = int(rng.integers(2, 20))
            d_l = rng.integers(1, 5, size=n)
            total = int(d_l.sum())
            m = int(rng.integers(max(1, total // 4), total + 1))
            d_r = np.ones(m, dtype=np.int64)
            for _ in range(total - m):
                d_r[rng.integers(0, m)] += 1
            pair = degseq.DegreeSequencePair(
                d_l=np.sort(d_l)[::-1], d_r=np.sort(d_r)[::-1],
                theta_target=m / n, regime=degseq.FINITE_THIRD)
            g = bcm.generate(pair, seed=trial)
            walk = sorted(explore.components_from_walk(explore.explore(g, seed=trial)).sizes())
            uf = sorted((c.size_r, c.size_l) for c in bcm.components(g))
            if walk != uf:
                return False
        return True
    yield "walk components match union-find", check_walk_vs_unionfind

    def check_excursion_fixtures():
        p1 = levy.GridPath(dt=1.0, values=np.array([0.0, 1, -1, 2, 1, -2]))
        e1 = levy.excursions(p1)
        # longest first: (2,5) of length 3 precedes (0,2) of length 2
        ok1 = (e1.l_idx.tolist() == [2, 0] and e1.r_idx.tolist() == [5, 2]
               and e1.lengths.tolist() == [3.0, 2.0])
        p2 = levy.GridPath(dt=1.0, values=np.array([0.0, -1, -2, -3]))
        ok2 = levy.excursions(p2).n_total == 0
        p3 = levy.GridPath(dt=1.0, values=np.array([0.0, 1, 0]))
        e3 = levy.excursions(p3)
        ok3 = e3.l_idx.tolist() == [0] and e3.r_idx.tolist() == [2]
        marks = levy.gamma_infinity(p1, levy.GridPath(dt=1.0, values=np.arange(6.0)))
        return ok1 and ok2 and ok3 and marks.tolist() == [4.0, 2.0]
    yield "excursion fixtures", check_excursion_fixtures

    def check_coupling():
        p = levy.LevyParams(kappa=1.0, rho=1.0, lam=0.5, beta=np.array([1.0, 0.5]))
        for a in (0.5, 2.0):
            for seed in range(3 if quick else 20):
                if _coupling_gap(p, a, seed) > 1e-9:
                    return False
        return True
    yield "scaling coupling", check_coupling

    def check_susceptibility():
        pair = degseq.DegreeSequencePair(
            d_l=np.ones(6, dtype=np.int64), d_r=np.ones(6, dtype=np.int64),
            theta_target=1.0, regime=degseq.FINITE_THIRD)
        rep = mc.susceptibility_check(pair, replicas=20, seed=1)
        return (rep["r"]["estimate"] == 1.0 and rep["r"]["bound"] == 1.0
                and rep["r"]["pass"] and rep["l"]["pass"])
    yield "subcritical susceptibility fixture", check_susceptibility

    def check_ks_self():
        x = np.array([1.0, 2.0, 3.0, 4.0])
        from scipy.stats import ks_2samp
        return ks_2samp(x, x).statistic == 0.0
    yield "ks self-distance", check_ks_self


def _coupling_gap(p: levy.LevyParams, a: float, seed) -> float:
    """Relative sup-gap of the shared-randomness scaling coupling."""
    dt, T = 1e-3, 2.0
    M = int(round(T / dt))
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal(M) if p.kappa > 0 else None
    clocks = rng.exponential(1.0 / p.beta) if p.beta.size else np.empty(0)
    left = levy.assemble(p, a * dt, M, gauss, clocks)
    # Same unit normals on both sides: the sqrt(kappa*dt) prefactor inside
    # assemble already carries the time-scale factor.
    right = levy.assemble(levy.rescale_params(p, a), dt, M, gauss, clocks / a)
    scale = max(1.0, float(np.max(np.abs(a * left.values))))
    return float(np.max(np.abs(a * left.values - right.values))) / scale


def cmd_validate(args) -> int:
    failures = 0
    for name, check in _validate_checks(args.quick):
        try:
            ok = bool(check())
        except Exception as exc:  # a crashed check is a failed check
            ok = False
            print(f"FAIL {name}: {type(exc).__name__}: {exc}")
        else:
            print(("ok   " if ok else "FAIL ") + name)
        failures += not ok
    print(f"{failures} failure(s)")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="bcm-lab", description=__doc__)
    top.add_argument("--version", action="version", version=f"bcm-lab {VERSION}")
    sub = top.add_subparsers(dest="group", required=True)

    p_deg = sub.add_parser("degseq", help="degree sequence tools").add_subparsers(
        dest="command", required=True)
    b = p_deg.add_parser("build", help="build a critical pair")
    b.add_argument("--config", default=None)
    b.add_argument("--regime", choices=[degseq.FINITE_THIRD, degseq.HEAVY_TAIL], default=None)
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--theta", type=float, default=None)
    b.add_argument("--lambda", dest="lam", type=float, default=None)
    b.add_argument("--tau", type=float, default=None)
    b.add_argument("--cap", type=int, default=None)
    b.add_argument("--seed", dest="build_seed", type=int, default=None)
    b.add_argument("--out", default="degseq.txt")
    b.set_defaults(func=cmd_degseq_build)

    p_bcm = sub.add_parser("bcm", help="graph generation").add_subparsers(
        dest="command", required=True)
    ggen = p_bcm.add_parser("generate", help="realize a uniform matching")
    ggen.add_argument("--degseq", required=True)
    ggen.add_argument("--seed", type=int, default=0)
    ggen.add_argument("--out", default="graph.txt")
    ggen.set_defaults(func=cmd_bcm_generate)
    gtri = p_bcm.add_parser("triangles", help="project and count triangles")
    gtri.add_argument("--graph", required=True)
    gtri.add_argument("--out", default="triangles.csv")
    gtri.set_defaults(func=cmd_bcm_triangles)

    p_exp = sub.add_parser("explore", help="walk exploration").add_subparsers(
        dest="command", required=True)
    erun = p_exp.add_parser("run", help="explore a saved graph")
    erun.add_argument("--graph", required=True)
    erun.add_argument("--seed", type=int, default=0)
    erun.add_argument("--s", default="AUTO",
                      help="perturbation weight, AUTO for the size-biased default")
    erun.add_argument("--out", default="trace.csv")
    erun.set_defaults(func=cmd_explore_run)

    p_levy = sub.add_parser("levy", help="limit-process simulation").add_subparsers(
        dest="command", required=True)
    lsim = p_levy.add_parser("simulate", help="sample one path")
    lsim.add_argument("--kappa", type=float, required=True)
    lsim.add_argument("--rho", type=float, required=True)
    lsim.add_argument("--lambda", dest="lam", type=float, default=0.0)
    lsim.add_argument("--beta", default=None, help="file with one jump size per line")
    lsim.add_argument("--dt", type=float, default=1e-3)
    lsim.add_argument("--T", type=float, required=True)
    lsim.add_argument("--seed", type=int, default=0)
    lsim.add_argument("--out", default="path.csv")
    lsim.set_defaults(func=cmd_levy_simulate)
    lexc = p_levy.add_parser("excursions", help="extract excursions from a path CSV")
    lexc.add_argument("--path", required=True)
    lexc.add_argument("--top", type=int, default=20)
    lexc.add_argument("--marks", default=None,
                      help="companion non-decreasing path CSV for marks")
    lexc.add_argument("--out", default="excursions.csv")
    lexc.set_defaults(func=cmd_levy_excursions)

    p_mc = sub.add_parser("mc", help="Monte Carlo experiments").add_subparsers(
        dest="command", required=True)

    def pair_flags(p):
        p.add_argument("--config", default=None)
        p.add_argument("--degseq", default=None)
        p.add_argument("--regime", choices=[degseq.FINITE_THIRD, degseq.HEAVY_TAIL],
                       default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--theta", type=float, default=None)
        p.add_argument("--lambda", dest="lam", type=float, default=None)
        p.add_argument("--tau", type=float, default=None)
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--build-seed", dest="build_seed", type=int, default=None)
        p.add_argument("--replicas", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)

    mens = p_mc.add_parser("ensemble", help="replica ensemble vs limit reference")
    pair_flags(mens)
    mens.add_argument("--dt", type=float, default=None)
    mens.add_argument("--T", type=float, default=None)
    mens.add_argument("--reference-replicas", dest="reference_replicas", type=int,
                      default=None)
    mens.add_argument("--top-k", dest="top_k", type=int, default=None)
    mens.add_argument("--no-triangles", dest="collect_triangles", action="store_false",
                      default=None)
    mens.add_argument("--threads", type=int, default=None)
    mens.add_argument("--out", default="ensemble_out")
    mens.set_defaults(func=cmd_mc_ensemble)

    msus = p_mc.add_parser("susceptibility", help="subcritical mean component size bound")
    pair_flags(msus)
    msus.add_argument("--out", default=None)
    msus.set_defaults(func=cmd_mc_susceptibility)

    mpat = p_mc.add_parser("paths", help="small-graph path-count bound")
    pair_flags(mpat)
    mpat.add_argument("--l", type=int, default=None)
    mpat.add_argument("--out", default=None)
    mpat.set_defaults(func=cmd_mc_paths)

    mtri = p_mc.add_parser("triangles", help="triangle scaling against the limit")
    pair_flags(mtri)
    mtri.add_argument("--dt", type=float, default=None)
    mtri.add_argument("--T", type=float, default=None)
    mtri.add_argument("--reference-replicas", dest="reference_replicas", type=int,
                      default=None)
    mtri.add_argument("--top-k", dest="top_k", type=int, default=None)
    mtri.add_argument("--threads", type=int, default=None)
    mtri.add_argument("--out", default=None)
    mtri.set_defaults(func=cmd_mc_triangles)

    p_val = sub.add_parser("validate", help="built-in fixture checks").add_subparsers(
        dest="command", required=True)
    vall = p_val.add_parser("all", help="run every fixture check")
    vall.add_argument("--quick", action="store_true")
    vall.set_defaults(func=cmd_validate)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
