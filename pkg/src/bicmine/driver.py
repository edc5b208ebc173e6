"""Adaptive cut-and-peel mining loop.

Each iteration re-partitions the residual graph once per object kind and
peels every partition, accepting a structure only when its saving clears
the iteration's threshold.  The threshold starts infinite (the first
iteration only calibrates), then decays: the next iteration's bar is the
decay factor times the best saving that was rejected in the current one.
Mining stops when an iteration rejects nothing with positive saving, or
after the configured number of iterations.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cost import CostBreakdown, Universe, relative_cost, total_cost
from .cutting import RandomLabeling, cut, derive_labeling_seed
from .graph import NearBiclique, ObjectKind, ResidualGraph, TemporalGraph
from .peeling import peel, peel_one

DEFAULT_ITERATIONS = 80
DEFAULT_DECAY = 0.8

_KIND_ORDER = (ObjectKind.SOURCE, ObjectKind.DESTINATION, ObjectKind.TIMESTAMP)


@dataclass(frozen=True)
class DriverConfig:
    max_iterations: int = DEFAULT_ITERATIONS
    threshold_decay: float = DEFAULT_DECAY
    seed: int = 0
    anchor_order: tuple[ObjectKind, ...] = _KIND_ORDER
    parallel: bool = False
    workers: int | None = None
    engine: str = "auto"

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 < self.threshold_decay < 1.0:
            raise ValueError("threshold_decay must be in (0, 1)")
        if sorted(self.anchor_order) != sorted(_KIND_ORDER):
            raise ValueError("anchor_order must be a permutation of the three kinds")


@dataclass
class ThresholdState:
    """Current acceptance bar and the fold of this iteration's rejections."""

    current: float = math.inf
    next: float = 0.0

    def fold_rejection(self, saving: float, decay: float):
        self.next = max(saving * decay, self.next)

    def advance(self):
        self.current = self.next
        self.next = 0.0


@dataclass
class IterationStats:
    iteration: int
    theta: float
    accepted: int
    removed_edges: int


@dataclass
class MiningReport:
    algorithm: str
    bicliques: list[NearBiclique]
    breakdown: CostBreakdown
    relative_cost: float
    iteration_stats: list[IterationStats] = field(default_factory=list)
    runtime_sec: float = 0.0
    config: DriverConfig | None = None
    residual_edges: int = 0
    total_edges: int = 0


def _mine_partition(
    graph: TemporalGraph,
    residual: ResidualGraph,
    universe: Universe,
    part_edges,
    theta: float,
    config: DriverConfig,
    lock=None,
) -> tuple[list[NearBiclique], float | None]:
    """Peel one partition until a result falls below the threshold.

    Returns the accepted structures and the rejected saving (None if the
    partition drained completely without a rejection).  Edge removal
    touches only this partition's edges, so concurrent partitions never
    conflict; the lock covers the residual's shared degree bookkeeping.
    """
    accepted: list[NearBiclique] = []
    edge_ids = part_edges
    while True:
        edge_ids = edge_ids[residual.alive[edge_ids] == 1]
        if edge_ids.size == 0:
            return accepted, None
        subset, psi = peel_one(graph, edge_ids, universe, engine=config.engine)
        if psi < theta:
            return accepted, psi
        if lock is None:
            removed, edge_count = residual.claim(subset)
        else:
            with lock:
                removed, edge_count = residual.claim(subset)
        accepted.append(
            NearBiclique(
                objects=subset,
                edge_count=edge_count,
                missing_count=subset.potential_size - edge_count,
                acceptance_saving=psi,
                residual_edge_count=removed,
            )
        )


def mine(graph: TemporalGraph, config: DriverConfig | None = None) -> list[NearBiclique]:
    """Run the full cut-and-peel loop and return the accepted near bi-cliques."""
    found, _ = _run_cutnpeel(graph, config or DriverConfig())
    return found


def _run_cutnpeel(
    graph: TemporalGraph, config: DriverConfig
) -> tuple[list[NearBiclique], list[IterationStats]]:
    if graph.num_edges == 0:
        raise ValueError("cannot mine an empty graph")
    universe = Universe.from_graph(graph)
    residual = ResidualGraph(graph)
    threshold = ThresholdState()
    found: list[NearBiclique] = []
    stats: list[IterationStats] = []

    pool = None
    lock = None
    if config.parallel:
        pool = ThreadPoolExecutor(max_workers=config.workers)
        lock = threading.Lock()

    try:
        for iteration in range(1, config.max_iterations + 1):
            accepted_before = len(found)
            live_before = residual.live_count
            for kind in config.anchor_order:
                if residual.live_count == 0:
                    break
                labeling = RandomLabeling.from_seed(
                    derive_labeling_seed(config.seed, iteration, kind),
                    graph.num_objects,
                )
                partitions = cut(residual, kind, labeling)
                # big partitions first: they carry the informative savings
                partitions.sort(key=lambda p: (-p.edges.shape[0], int(p.members[0])))
                if pool is None:
                    for part in partitions:
                        accepted, rejected = _mine_partition(
                            graph, residual, universe, part.edges, threshold.current, config
                        )
                        found.extend(accepted)
                        if rejected is not None:
                            threshold.fold_rejection(rejected, config.threshold_decay)
                else:
                    futures = [
                        pool.submit(
                            _mine_partition,
                            graph,
                            residual,
                            universe,
                            part.edges,
                            threshold.current,
                            config,
                            lock,
                        )
                        for part in partitions
                    ]
                    for future in futures:
                        accepted, rejected = future.result()
                        found.extend(accepted)
                        if rejected is not None:
                            threshold.fold_rejection(rejected, config.threshold_decay)
            stats.append(
                IterationStats(
                    iteration=iteration,
                    theta=threshold.current,
                    accepted=len(found) - accepted_before,
                    removed_edges=live_before - residual.live_count,
                )
            )
            if threshold.next == 0.0 or residual.live_count == 0:
                break
            threshold.advance()
    finally:
        if pool is not None:
            pool.shutdown()
    return found, stats


def mine_report(
    graph: TemporalGraph,
    config: DriverConfig | None = None,
    algorithm: str = "cutnpeel",
) -> MiningReport:
    """Mine and bundle the result with its cost accounting and run metadata."""
    cfg = config or DriverConfig()
    start = time.perf_counter()
    if algorithm == "cutnpeel":
        found, stats = _run_cutnpeel(graph, cfg)
    elif algorithm == "peel":
        found = peel(graph, engine=cfg.engine)
        stats = []
    else:
        raise ValueError(f"unknown algorithm: {algorithm!r}")
    runtime = time.perf_counter() - start

    universe = Universe.from_graph(graph)
    breakdown = total_cost(graph, [b.objects for b in found], universe)
    return MiningReport(
        algorithm=algorithm,
        bicliques=found,
        breakdown=breakdown,
        relative_cost=relative_cost(breakdown, universe),
        iteration_stats=stats,
        runtime_sec=runtime,
        config=cfg,
        residual_edges=graph.num_edges
        - sum(b.residual_edge_count for b in found),
        total_edges=graph.num_edges,
    )
