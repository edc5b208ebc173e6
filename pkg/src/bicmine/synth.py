"""Seeded synthetic dynamic graphs: uniform noise and planted blocks.

The uniform generator targets an exact distinct-edge count (the scalability
series is parameterized by powers of two), with the object count of each
kind fixed at 0.1% of the edge count.  Planted blocks claim disjoint object
ranges so recovery tests have unambiguous ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import ObjectSubset, TemporalGraph

OBJECT_FRACTION = 0.001


@dataclass(frozen=True)
class PlantSpec:
    """One block to plant: span widths and the fraction of its cells filled."""

    width_s: int
    width_d: int
    width_t: int
    fill: float = 1.0

    def __post_init__(self):
        if min(self.width_s, self.width_d, self.width_t) < 1:
            raise ValueError("plant widths must be >= 1")
        if not 0.5 < self.fill <= 1.0:
            raise ValueError("fill must be in (0.5, 1] to keep planted blocks dense")

    @property
    def span(self) -> int:
        return self.width_s * self.width_d * self.width_t


def _distinct_keys(rng: np.random.Generator, space: int, count: int) -> np.ndarray:
    """``count`` distinct uniform draws from range(space), in draw order."""
    if count * 2 > space:
        return rng.permutation(space)[:count].astype(np.int64)
    drawn = np.empty(0, dtype=np.int64)
    while drawn.size < count:
        batch = rng.integers(0, space, size=(count - drawn.size) * 5 // 4 + 16, dtype=np.int64)
        merged = np.concatenate([drawn, batch])
        _, first = np.unique(merged, return_index=True)
        first.sort()
        drawn = merged[first]
    return drawn[:count]


def gen_er(num_edges: int, seed: int) -> TemporalGraph:
    """Uniform random graph with exactly ``num_edges`` distinct edges.

    Each kind gets max(1, 0.1% of the edge count) objects.
    """
    if num_edges < 1:
        raise ValueError("num_edges must be >= 1")
    n = max(1, int(math.floor(OBJECT_FRACTION * num_edges)))
    space = n * n * n
    if num_edges > space:
        raise ValueError(
            f"{num_edges} edges do not fit a {n}x{n}x{n} universe ({space} cells)"
        )
    keys = _distinct_keys(np.random.default_rng(seed), space, num_edges)
    s, rem = np.divmod(keys, n * n)
    d, t = np.divmod(rem, n)
    return TemporalGraph(n, n, n, np.stack([s, d, t], axis=1))


def plant(
    base: TemporalGraph | tuple[int, int, int],
    specs: list[PlantSpec],
    seed: int,
) -> tuple[TemporalGraph, list[ObjectSubset]]:
    """Plant blocks on disjoint fresh object ranges of the universe.

    ``base`` is an existing graph (its edges are kept) or a bare
    (sources, destinations, timestamps) universe size.  Each spec claims the
    next unused index range of every kind and gets ceil(fill * span)
    uniformly chosen span cells.  Returns the graph and the ground truth.
    """
    if isinstance(base, TemporalGraph):
        counts = base.kind_counts
        triples = list(base.edge_triples())
        labels = base.labels
    else:
        counts = tuple(int(c) for c in base)
        triples = []
        labels = None

    rng = np.random.default_rng(seed)
    cursors = [0, 0, 0]
    truth: list[ObjectSubset] = []
    for spec in specs:
        widths = (spec.width_s, spec.width_d, spec.width_t)
        ranges = []
        for k, width in enumerate(widths):
            if cursors[k] + width > counts[k]:
                raise ValueError(
                    f"insufficient universe: kind {k} needs {cursors[k] + width}"
                    f" objects, has {counts[k]}"
                )
            ranges.append(tuple(range(cursors[k], cursors[k] + width)))
            cursors[k] += width
        subset = ObjectSubset(*ranges)
        truth.append(subset)

        wanted = math.ceil(spec.fill * spec.span)
        cells = list(subset.span())
        chosen = (
            cells
            if wanted == len(cells)
            else [cells[i] for i in rng.choice(len(cells), size=wanted, replace=False)]
        )
        triples.extend(chosen)
    return TemporalGraph(*counts, triples, labels=labels), truth


def add_noise(graph: TemporalGraph, num_edges: int, seed: int) -> TemporalGraph:
    """Add ``num_edges`` distinct uniform edges not already present."""
    if num_edges == 0:
        return graph
    ns, nd, nt = graph.kind_counts
    space = ns * nd * nt
    if graph.num_edges + num_edges > space:
        raise ValueError("universe too small for the requested noise")
    existing = graph._pack(graph.src, graph.dst, graph.ts)
    rng = np.random.default_rng(seed)
    fresh = np.empty(0, dtype=np.int64)
    existing_set = set(existing.tolist())
    while fresh.size < num_edges:
        batch = _distinct_keys(rng, space, min(num_edges * 2, space))
        keep = np.array(
            [k for k in batch.tolist() if k not in existing_set], dtype=np.int64
        )
        merged = np.concatenate([fresh, keep])
        _, first = np.unique(merged, return_index=True)
        first.sort()
        fresh = merged[first]
    fresh = fresh[:num_edges]
    s, rem = np.divmod(fresh, nd * nt)
    d, t = np.divmod(rem, nt)
    new_edges = np.concatenate(
        [np.stack([graph.src, graph.dst, graph.ts], axis=1), np.stack([s, d, t], axis=1)]
    )
    return TemporalGraph(ns, nd, nt, new_edges, labels=graph.labels)
