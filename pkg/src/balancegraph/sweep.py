"""Engine-versus-oracle sweeps over small weighted graphs."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .defects import validate_certificate
from .engine import EngineConfig, Status, decide
from .fields import Field
from .graph import WeightedGraph, verify_labeling
from .oracle import count_graphs, enumerate_graphs, oracle_label


def random_graph(n: int, p: int, rng: random.Random) -> WeightedGraph:
    """Each pair independently absent or carrying a uniform weight."""
    F = Field.prime(p)
    edges = {}
    for e in itertools.combinations(range(1, n + 1), 2):
        w = rng.randrange(p + 1)
        if w < p:
            edges[e] = w
    return WeightedGraph(F, n, edges)


def check_graph(g: WeightedGraph, budget: int, counts: Counter) -> None:
    """Compare the engine with the oracle on one graph and tally the outcome."""
    dec = decide(g, EngineConfig(budget=budget, use_oracle=False))
    truth = oracle_label(g, budget)
    counts["graphs"] += 1
    if dec.status is Status.LABELABLE:
        counts["labelable"] += 1
        ok = truth is not None and not verify_labeling(g, dec.labeling)
    elif dec.status is Status.NOT_LABELABLE:
        counts["defective:" + dec.certificate.code] += 1
        ok = truth is None and validate_certificate(g, dec.certificate)
        if truth is not None:
            counts["unsound_certificates"] += 1
    else:
        counts["unknown"] += 1
        counts["unknown_oracle_" + ("labelable" if truth is not None else "refuted")] += 1
        ok = True
    counts["agree" if ok else "disagree"] += 1


def _exhaustive_chunk(args) -> Counter:
    n, p, budget, worker, workers = args
    counts: Counter = Counter()
    for idx, g in enumerate(enumerate_graphs(n, p)):
        if idx % workers == worker:
            check_graph(g, budget, counts)
    return counts


def _sample_chunk(args) -> Counter:
    n, p, budget, seeds = args
    counts: Counter = Counter()
    for s in seeds:
        check_graph(random_graph(n, p, random.Random(s)), budget, counts)
    return counts


def run_sweep(n: int, p: int, mode: str = "exhaustive", samples: int = 10_000,
              workers: int = 1, seed: int = 0, budget: int = 10**8) -> dict:
    if mode == "exhaustive":
        jobs = [(n, p, budget, w, workers) for w in range(workers)]
        fn = _exhaustive_chunk
        expected = count_graphs(n, p)
    elif mode == "sample":
        master = random.Random(seed)
        seeds = [master.getrandbits(64) for _ in range(samples)]
        jobs = [(n, p, budget, seeds[w::workers]) for w in range(workers)]
        fn = _sample_chunk
        expected = samples
    else:
        raise ValueError(f"unknown sweep mode {mode!r}")
    if workers == 1:
        parts = [fn(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, jobs))
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    assert total["graphs"] == expected
    families = {k.split(":", 1)[1]: v for k, v in sorted(total.items()) if k.startswith("defective:")}
    return {
        "n": n,
        "p": p,
        "mode": mode,
        "graphs": total["graphs"],
        "agree": total["agree"],
        "disagree": total["disagree"],
        "labelable": total["labelable"],
        "defective": families,
        "unknown": total["unknown"],
        "unknown_oracle_labelable": total["unknown_oracle_labelable"],
        "unknown_oracle_refuted": total["unknown_oracle_refuted"],
        "unsound_certificates": total["unsound_certificates"],
    }
