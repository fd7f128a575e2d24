"""Shared fixtures: the small-graph corpus and the acceptance report hook."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import pytest

from bcm_lab import bcm, degseq, explore

CORPUS_SEEDS = 1000
MAX_SIDE = 50
MAX_DEGREE = 5

# wall seconds spent materializing the corpus fixture, charged to the
# runtime budget of the first criterion that uses it
CORPUS_BUILD_SECONDS = 0.0


@dataclass(frozen=True)
class CorpusEntry:
    seed: int
    pair: degseq.DegreeSequencePair
    graph: bcm.BipartiteMultigraph
    trace: explore.ExplorationTrace


def random_small_pair(rng: np.random.Generator) -> degseq.DegreeSequencePair:
    n = int(rng.integers(2, MAX_SIDE + 1))
    d_l = rng.integers(1, MAX_DEGREE + 1, size=n)
    total = int(d_l.sum())
    m_lo = -(-total // MAX_DEGREE)
    m_hi = min(MAX_SIDE, total)
    m = int(rng.integers(m_lo, m_hi + 1))
    d_r = np.ones(m, dtype=np.int64)
    # m >= ceil(total/5) guarantees capacity for the remaining increments
    for _ in range(total - m):
        while True:
            j = int(rng.integers(0, m))
            if d_r[j] < MAX_DEGREE:
                d_r[j] += 1
                break
    return degseq.DegreeSequencePair(
        d_l=np.sort(d_l)[::-1],
        d_r=np.sort(d_r)[::-1],
        theta_target=m / n,
        regime=degseq.FINITE_THIRD,
    )


@pytest.fixture(scope="session")
def corpus() -> list[CorpusEntry]:
    """1000 seeded small graphs with their exploration traces (s = 1)."""
    global CORPUS_BUILD_SECONDS
    t0 = time.perf_counter()
    entries = []
    for seed in range(CORPUS_SEEDS):
        rng = np.random.default_rng(seed)
        pair = random_small_pair(rng)
        g = bcm.generate(pair, seed=seed)
        trace = explore.explore(g, s=1.0, seed=seed)
        entries.append(CorpusEntry(seed=seed, pair=pair, graph=g, trace=trace))
    CORPUS_BUILD_SECONDS = time.perf_counter() - t0
    return entries


# one line per acceptance criterion, printed after the run
_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(num: int, passed: bool, detail: str = "") -> None:
    _ACCEPTANCE[num] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[num]
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
