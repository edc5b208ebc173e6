"""MDL cost model for describing a temporal graph by near bi-cliques.

A model is scored in bits along three axes: preciseness (missing edges
charged per bi-clique), exhaustiveness (input edges covered by no
bi-clique), and conciseness (the object lists of the bi-cliques
themselves).  All logarithms are real-valued; nothing is rounded to whole
bits.  The per-edge and per-object constants are frozen from the original
input graph and reused unchanged while mining peels the residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .graph import ObjectSubset, TemporalGraph


@dataclass(frozen=True)
class Universe:
    """Frozen size constants of the input graph."""

    num_sources: int
    num_destinations: int
    num_timestamps: int
    num_edges: int

    def __post_init__(self):
        if min(self.num_sources, self.num_destinations, self.num_timestamps) < 1:
            raise ValueError("degenerate universe: every kind needs >= 1 object")

    @classmethod
    def from_graph(cls, graph: TemporalGraph) -> "Universe":
        return cls(*graph.kind_counts, graph.num_edges)

    @property
    def num_objects(self) -> int:
        return self.num_sources + self.num_destinations + self.num_timestamps

    @cached_property
    def bits_per_edge(self) -> float:
        """Bits to list one edge's three coordinates separately."""
        return (
            math.log2(self.num_sources)
            + math.log2(self.num_destinations)
            + math.log2(self.num_timestamps)
        )

    @cached_property
    def bits_per_object(self) -> float:
        return math.log2(self.num_objects)


@dataclass(frozen=True)
class CostBreakdown:
    """Total description length split into its three components."""

    preciseness_bits: float
    exhaustiveness_bits: float
    conciseness_bits: float

    @property
    def total_bits(self) -> float:
        return self.preciseness_bits + self.exhaustiveness_bits + self.conciseness_bits


def biclique_bits(universe: Universe, subset_size: int) -> float:
    """Bits to encode all edges of one bi-clique by listing its objects.

    One extra object-sized field carries the length of the list.
    """
    if subset_size < 0:
        raise ValueError("subset_size must be >= 0")
    return (subset_size + 1) * universe.bits_per_object


def saving(
    universe: Universe, subset: ObjectSubset, residual_edge_count_in_subset: int
) -> float:
    """Bit reduction from describing the residual's induced block as one bi-clique.

    Constant time given the counts: the block's live edges stop being paid
    individually, its absent span cells are charged as missing edges, and
    the object list itself costs conciseness bits.
    """
    ns, nd, nt = subset.component_sizes()
    potential = ns * nd * nt
    if residual_edge_count_in_subset > potential:
        raise ValueError("more residual edges than the subset's span can hold")
    return (2.0 * residual_edge_count_in_subset - float(potential)) * universe.bits_per_edge - (
        subset.total_size + 1.0
    ) * universe.bits_per_object


def total_cost(
    graph: TemporalGraph,
    bicliques: list[ObjectSubset],
    universe: Universe | None = None,
) -> CostBreakdown:
    """Recompute the full model cost from definitions.

    Missing edges are charged per bi-clique (an absent span cell inside two
    overlapping bi-cliques is paid twice), while coverage for the
    exhaustiveness term is the plain union of induced edges.  Induced edges
    come from ``graph`` itself, not from any residual state.
    """
    uni = universe or Universe.from_graph(graph)
    le = uni.bits_per_edge
    covered: set[int] = set()
    missing = 0
    conciseness = 0.0
    for subset in bicliques:
        ids = graph.induced_edge_ids(subset)
        covered.update(ids)
        missing += subset.potential_size - len(ids)
        conciseness += biclique_bits(uni, subset.total_size)
    remaining = graph.num_edges - len(covered)
    return CostBreakdown(missing * le, remaining * le, conciseness)


def relative_cost(breakdown: CostBreakdown, universe: Universe) -> float:
    """Total bits over the cost of listing every input edge individually."""
    if universe.num_edges == 0:
        raise ValueError("relative cost is undefined for an empty graph")
    return breakdown.total_bits / (universe.num_edges * universe.bits_per_edge)


def bits_per_edge_of_biclique(universe: Universe, subset: ObjectSubset) -> float:
    """Encoding bits per span edge; strictly decreases as bi-cliques grow."""
    if subset.potential_size == 0:
        raise ValueError("bits per edge is undefined for an empty span")
    return biclique_bits(universe, subset.total_size) / subset.potential_size
