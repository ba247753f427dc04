"""(2, eps)-estimation of the minimum vertex cover size.

One run shares a single lazily revealed ranking across all sampled
vertices; independent trials use fresh contexts with seeds spawned from a
:class:`numpy.random.SeedSequence`.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .baselines import greedy_cover_size
from .oracles import OracleContext, vo_partner
from .ranks import substream
from .transforms import AverageDegreeShadow, DenseAdapter, MaxDegreeShadow, decimal

SCHEMA_VERSION = 1
MODES = ("max-deg", "avg-deg", "dense", "plain")
# Sampling stream key, kept apart from per-vertex rank streams (which use v >= 0).
_SAMPLE_STREAM = -1


class ConfigError(ValueError):
    pass


@dataclass
class EstimateConfig:
    eps: float
    mode: str = "max-deg"
    samples: int | None = None
    delta: float = 0.05
    seed: int = 0
    call_budget: int = 10**6
    trials: int = 1
    max_degree: int | None = None
    avg_degree: float | None = None
    # Compute C^pi exactly when n <= ceil(100/eps).
    small_graph_fallback: bool = True

    def __post_init__(self) -> None:
        if not 0 < self.eps < 1:
            raise ConfigError(f"eps must lie in (0, 1), got {self.eps}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("sample count must be at least 1")
        if not 0 < self.delta < 1:
            raise ConfigError("delta must lie in (0, 1)")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")


@dataclass
class EstimateReport:
    estimate: float
    mu: float
    samples: int
    n: int
    eps: float
    mode: str
    seed: int
    true_count: int = 0
    shortcut_count: int = 0
    fallback: bool = False
    degree_queries: int = 0
    neighbor_queries: int = 0
    pair_queries: int = 0
    virtual_queries: int = 0
    mean_calls: float = 0.0
    max_calls: int = 0
    recursive_calls: int = 0
    wall_time: float = 0.0
    config: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    CSV_FIELDS = ("schema_version", "mode", "n", "eps", "seed", "samples", "estimate", "mu",
                  "degree_queries", "neighbor_queries", "pair_queries", "mean_calls",
                  "max_calls", "recursive_calls", "wall_time", "fallback")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def csv_row(self) -> dict:
        return {k: getattr(self, k) for k in self.CSV_FIELDS}

    @property
    def total_queries(self) -> int:
        return self.degree_queries + self.neighbor_queries + self.pair_queries


def sample_size(eps: float, delta: float) -> int:
    """Hoeffding count for additive error eps/8 with failure probability delta."""
    if not 0 < eps < 1 or not 0 < delta < 1:
        raise ConfigError("need 0 < eps < 1 and 0 < delta < 1")
    return math.ceil(32 / eps**2 * math.log(2 / delta))


class Estimator:
    """Builds the mode's virtual graph and oracle context; probes real vertices."""

    def __init__(self, graph, config: EstimateConfig):
        self.config = config
        self.base = graph.view()
        eps = config.eps
        mode = config.mode
        self.avg_degree = None
        if mode == "max-deg":
            d = config.max_degree if config.max_degree is not None else self.base.max_degree()
            # d is only an upper bound; raising it to exceed 1/eps is always allowed.
            d = max(d, math.floor(1 / decimal(eps)) + 1)
            self.virtual = MaxDegreeShadow(self.base, d, eps)
            self.offset = eps / 4
        elif mode == "avg-deg":
            n = self.base.n
            avg = config.avg_degree
            if avg is None:
                avg = max(2 * self.base.m / n, 1) if n else 1
            self.avg_degree = avg
            self.virtual = AverageDegreeShadow(self.base, avg, eps)
            self.offset = eps / 8
        elif mode == "dense":
            if not self.base.has_pair_index:
                raise ConfigError("dense mode needs a graph loaded with a pair-query index")
            self.virtual = DenseAdapter(self.base, eps)
            self.offset = eps / 4
        else:
            self.virtual = self.base
            self.offset = eps / 4
        self.ctx = OracleContext(self.virtual, max_degree=self.virtual.max_degree(),
                                 seed=config.seed, call_budget=config.call_budget)
        self.shortcuts = 0

    @property
    def n(self) -> int:
        return self.base.n

    def probe(self, v: int) -> bool:
        """Oracle answer for real vertex v (with the high-degree shortcut in avg-deg mode)."""
        if isinstance(self.virtual, AverageDegreeShadow):
            if self.virtual.is_high(self.base.degree(v)):
                self.shortcuts += 1
                return True
        return vo_partner(self.ctx, v) is not None

    def partner(self, v: int):
        return vo_partner(self.ctx, v)

    def sweep(self) -> int:
        """#{v in V : probe(v)} under this run's ranking."""
        return sum(self.probe(v) for v in range(self.n))

    def run(self) -> EstimateReport:
        cfg = self.config
        start = time.perf_counter()
        n = self.n
        if n == 0:
            return self._report(0.0, 0.0, 0, 0, start)
        if cfg.small_graph_fallback and n <= math.ceil(100 / decimal(cfg.eps)):
            cover = greedy_cover_size(self.base, substream(cfg.seed, _SAMPLE_STREAM, 1))
            rep = self._report(float(cover), cover / n, 0, cover, start)
            rep.fallback = True
            return rep
        s = cfg.samples if cfg.samples is not None else sample_size(cfg.eps, cfg.delta)
        rng = substream(cfg.seed, _SAMPLE_STREAM)
        hits = 0
        for _ in range(s):
            hits += self.probe(rng.randrange(n))
        mu = hits / s
        return self._report((mu + self.offset) * n, mu, s, hits, start)

    def _report(self, estimate, mu, s, hits, start) -> EstimateReport:
        cfg = self.config
        st = self.base.stats
        ctx = self.ctx
        return EstimateReport(
            estimate=estimate, mu=mu, samples=s, n=self.n, eps=cfg.eps, mode=cfg.mode,
            seed=cfg.seed, true_count=hits, shortcut_count=self.shortcuts,
            degree_queries=st.degree_queries, neighbor_queries=st.neighbor_queries,
            pair_queries=st.pair_queries,
            virtual_queries=self.virtual.stats.total if self.virtual is not self.base else 0,
            mean_calls=ctx.n_mean, max_calls=ctx.n_max, recursive_calls=ctx.memo_misses,
            wall_time=time.perf_counter() - start, config=asdict(cfg),
        )


def estimate_vc(graph, config: EstimateConfig) -> EstimateReport:
    return Estimator(graph, config).run()


def exact_cover_size(graph, mode: str = "plain", seed: int = 0, eps: float = 0.25, **kw) -> int:
    """Full sweep of the oracle over all real vertices under one ranking."""
    cfg = EstimateConfig(eps=eps, mode=mode, seed=seed, small_graph_fallback=False, **kw)
    return Estimator(graph, cfg).sweep()


def trial_seeds(seed: int, trials: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(c.generate_state(1, dtype=np.uint64)[0] >> 1) for c in children]


def _run_one(args):
    graph, cfg = args
    return estimate_vc(graph, cfg)


def worker_count() -> int:
    cap = os.environ.get("SUBLINEAR_VC_THREADS")
    cpus = os.cpu_count() or 1
    return max(1, min(int(cap), cpus)) if cap else cpus


def run_trials(graph, config: EstimateConfig, workers: int | None = None) -> list[EstimateReport]:
    """``config.trials`` independent runs; results ordered by trial index."""
    cfgs = []
    for s in trial_seeds(config.seed, config.trials):
        d = asdict(config)
        d["seed"] = s
        cfgs.append(EstimateConfig(**d))
    workers = workers or worker_count()
    if workers == 1 or len(cfgs) == 1:
        return [estimate_vc(graph, c) for c in cfgs]
    with ProcessPoolExecutor(max_workers=min(workers, len(cfgs))) as pool:
        return list(pool.map(_run_one, [(graph, c) for c in cfgs]))


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=EstimateReport.CSV_FIELDS)
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()
