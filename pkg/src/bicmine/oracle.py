"""Brute-force reference implementations for small instances.

Everything here recomputes costs from the set definitions (explicit missing
and remaining edge collections) rather than through the closed-form saving
formula, so tests can pit the two paths against each other.
"""

from __future__ import annotations

import math

from .cost import CostBreakdown, Universe
from .graph import ObjectSubset, ResidualGraph, TemporalGraph


def direct_cost(
    graph: TemporalGraph,
    bicliques: list[ObjectSubset],
    universe: Universe | None = None,
) -> CostBreakdown:
    """Model cost with missing and remaining edges built as explicit collections."""
    uni = universe or Universe.from_graph(graph)
    present = set(graph.edge_triples())
    missing: list[tuple[int, int, int]] = []
    covered: set[tuple[int, int, int]] = set()
    conciseness = 0.0
    for subset in bicliques:
        for cell in subset.span():
            if cell in present:
                covered.add(cell)
            else:
                missing.append(cell)
        conciseness += (subset.total_size + 1) * math.log2(uni.num_objects)
    remaining = [e for e in present if e not in covered]
    le = uni.bits_per_edge
    return CostBreakdown(len(missing) * le, len(remaining) * le, conciseness)


def first_principles_saving(
    graph: TemporalGraph, subset: ObjectSubset, universe: Universe | None = None
) -> float:
    """Cost of the empty model minus the cost of the one-bi-clique model."""
    uni = universe or Universe.from_graph(graph)
    empty = direct_cost(graph, [], uni)
    with_one = direct_cost(graph, [subset], uni)
    return empty.total_bits - with_one.total_bits


def brute_best_subset(
    graph_or_residual: TemporalGraph | ResidualGraph, max_objects: int = 14
) -> tuple[ObjectSubset, float]:
    """Exhaustively search all object subsets for the saving maximizer.

    Ties go to the lexicographically smallest tuple of global object
    indices.  Refuses instances with more than ``max_objects`` objects.
    """
    if isinstance(graph_or_residual, ResidualGraph):
        graph = graph_or_residual.snapshot()
        universe = Universe.from_graph(graph_or_residual.base)
    else:
        graph = graph_or_residual
        universe = Universe.from_graph(graph)
    n = graph.num_objects
    if n > max_objects:
        raise ValueError(f"brute force refused: {n} objects > limit {max_objects}")

    ns, nd, _ = graph.kind_counts
    off_d, off_t = ns, ns + nd
    edge_masks = [
        (1 << s) | (1 << (off_d + d)) | (1 << (off_t + t))
        for s, d, t in graph.edge_triples()
    ]
    present = set(graph.edge_triples())
    le = universe.bits_per_edge
    log2i = universe.bits_per_object

    best_saving = -math.inf
    best_key: tuple[int, ...] | None = None
    best_subset: ObjectSubset | None = None
    for mask in range(1 << n):
        sources = tuple(i for i in range(ns) if mask >> i & 1)
        dests = tuple(i for i in range(nd) if mask >> (off_d + i) & 1)
        times = tuple(i for i in range(n - off_t) if mask >> (off_t + i) & 1)
        subset = ObjectSubset(sources, dests, times)
        induced = sum(1 for em in edge_masks if em & mask == em)
        absent = sum(1 for cell in subset.span() if cell not in present)
        # phi(empty) - phi({subset}) from the definitions:
        #   remaining drops by the induced count, missing grows by the
        #   absent span cells, and the object list is newly paid for.
        value = (induced - absent) * le - (subset.total_size + 1) * log2i
        key = tuple(sources) + tuple(off_d + d for d in dests) + tuple(
            off_t + t for t in times
        )
        if value > best_saving or (value == best_saving and key < best_key):
            best_saving = value
            best_key = key
            best_subset = subset
    assert best_subset is not None
    return best_subset, best_saving
