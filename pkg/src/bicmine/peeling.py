"""Top-down greedy peeling: find one near bi-clique, then mine repeatedly.

``peel_one`` starts from every object incident to an edge of the given
view, evaluates the saving of the current object set, removes the object
with the sparsest connection ratio, and finally returns the suffix at which
the saving peaked.  ``peel`` drives it on the full residual graph until no
positive-saving structure remains.

Two interchangeable engines exist: a jitted kernel (preferred, ~20x
faster) and the pure-Python ``PeelState`` below, which doubles as the
inspectable/traceable implementation for tests.  Both follow the identical
selection rule, so outputs are bit-for-bit equal.
"""

from __future__ import annotations

import heapq
import math
from typing import Sequence

import numpy as np

from .cost import Universe
from .graph import NearBiclique, ObjectSubset, ResidualGraph, TemporalGraph

try:
    from ._peelcore import peel_kernel

    _HAVE_KERNEL = True
except ImportError:  # numba not installed
    peel_kernel = None
    _HAVE_KERNEL = False


class PeelState:
    """Mutable state of one top-down peeling run (pure-Python engine).

    Tracks, per remaining object, the number of live view edges it is
    incident to, one (degree, global index) min-heap per kind, and the
    running (sizes, live edges) needed for O(1) saving evaluation.
    """

    def __init__(self, graph: TemporalGraph, edge_ids, universe: Universe):
        gs, gd, gt = graph.global_coords
        ids = np.asarray(edge_ids, dtype=np.int64)
        self.e0 = gs[ids].tolist()
        self.e1 = gd[ids].tolist()
        self.e2 = gt[ids].tolist()
        self.off_d = graph.num_sources
        self.off_t = graph.num_sources + graph.num_destinations
        self.le = universe.bits_per_edge
        self.log2i = universe.bits_per_object

        self.adj: dict[int, list[int]] = {}
        self.within_degree: dict[int, int] = {}
        for pos in range(len(self.e0)):
            for obj in (self.e0[pos], self.e1[pos], self.e2[pos]):
                bucket = self.adj.get(obj)
                if bucket is None:
                    self.adj[obj] = [pos]
                    self.within_degree[obj] = 1
                else:
                    bucket.append(pos)
                    self.within_degree[obj] += 1

        self.counts = [0, 0, 0]
        self.heaps: tuple[list, list, list] = ([], [], [])
        for obj, degree in self.within_degree.items():
            kind = self.kind_of(obj)
            self.counts[kind] += 1
            self.heaps[kind].append((degree, obj))
        for heap in self.heaps:
            heapq.heapify(heap)

        self.alive = bytearray(b"\x01" * len(self.e0))
        self.induced_edges = len(self.e0)
        self.num_remaining = sum(self.counts)
        self.removal_log: list[int] = []
        self.best_saving = -math.inf
        self.best_step = 0

    def kind_of(self, obj: int) -> int:
        return 0 if obj < self.off_d else (1 if obj < self.off_t else 2)

    def marginal_potential(self, obj: int) -> int:
        """Span cells adjacent to ``obj``: the product of the other two sizes."""
        c_s, c_d, c_t = self.counts
        kind = self.kind_of(obj)
        return (c_d * c_t, c_s * c_t, c_s * c_d)[kind]

    def rho(self, obj: int) -> float:
        """Fraction of the object's adjacent span cells that hold live edges."""
        if obj not in self.within_degree:
            raise ValueError(f"object {obj} is not in the remaining set")
        denom = self.marginal_potential(obj)
        if denom == 0:
            return 0.0
        return self.within_degree[obj] / denom

    def saving_now(self) -> float:
        c_s, c_d, c_t = self.counts
        return (2.0 * self.induced_edges - float(c_s * c_d * c_t)) * self.le - (
            self.num_remaining + 1.0
        ) * self.log2i

    def _argmin_rho(self) -> tuple[int, int]:
        """(object, kind) minimizing rho; ties by kind order then global index."""
        best_num = best_den = -1
        best_obj = best_kind = -1
        c_s, c_d, c_t = self.counts
        denoms = (c_d * c_t, c_s * c_t, c_s * c_d)
        for kind in range(3):
            heap = self.heaps[kind]
            while heap and heap[0][0] != self.within_degree.get(heap[0][1], -1):
                heapq.heappop(heap)
            if not heap:
                continue
            degree, obj = heap[0]
            den = denoms[kind]
            num = degree if den else 0
            den = den or 1
            if best_obj < 0 or num * best_den < best_num * den:
                best_num, best_den, best_obj, best_kind = num, den, obj, kind
        return best_obj, best_kind

    def _remove(self, obj: int, kind: int):
        heapq.heappop(self.heaps[kind])
        del self.within_degree[obj]
        self.counts[kind] -= 1
        self.num_remaining -= 1
        self.removal_log.append(obj)
        for pos in self.adj[obj]:
            if self.alive[pos]:
                self.alive[pos] = 0
                self.induced_edges -= 1
                for other in (self.e0[pos], self.e1[pos], self.e2[pos]):
                    if other != obj:
                        degree = self.within_degree[other] - 1
                        self.within_degree[other] = degree
                        heapq.heappush(self.heaps[self.kind_of(other)], (degree, other))

    def run(self, trace: list | None = None) -> tuple[list[int], int, float]:
        total = self.num_remaining
        for step in range(1, total + 1):
            psi = self.saving_now()
            if trace is not None:
                trace.append(
                    (tuple(self.counts), self.induced_edges, self.num_remaining, psi)
                )
            if psi > self.best_saving:
                self.best_saving = psi
                self.best_step = step
            obj, kind = self._argmin_rho()
            self._remove(obj, kind)
        return self.removal_log, self.best_step, self.best_saving


def _suffix_subset(graph: TemporalGraph, order: Sequence[int], best_step: int) -> ObjectSubset:
    off_d = graph.num_sources
    off_t = graph.num_sources + graph.num_destinations
    suffix = order[best_step - 1 :]
    return ObjectSubset(
        tuple(int(o) for o in suffix if o < off_d),
        tuple(int(o) - off_d for o in suffix if off_d <= o < off_t),
        tuple(int(o) - off_t for o in suffix if o >= off_t),
    )


def peel_one(
    graph: TemporalGraph,
    edge_ids,
    universe: Universe | None = None,
    engine: str = "auto",
    trace: list | None = None,
) -> tuple[ObjectSubset, float]:
    """Find the saving-maximizing suffix of one greedy peel of ``edge_ids``.

    The returned saving may be zero or negative; acceptance is the caller's
    decision.  ``engine`` is "auto", "python", or "numba"; a trace request
    forces the Python engine.
    """
    if isinstance(edge_ids, np.ndarray) and edge_ids.dtype == np.int64:
        ids = edge_ids
    else:
        ids = np.asarray(edge_ids, dtype=np.int64)
    if ids.size == 0:
        raise ValueError("no edges to peel")
    uni = universe or Universe.from_graph(graph)

    use_kernel = _HAVE_KERNEL and engine != "python" and trace is None
    if engine == "numba" and not _HAVE_KERNEL:
        raise RuntimeError("numba engine requested but numba is unavailable")
    if use_kernel:
        gs, gd, gt = graph.global_coords
        order, best_step, best = peel_kernel(
            gs[ids],
            gd[ids],
            gt[ids],
            graph.num_objects,
            graph.num_sources,
            graph.num_sources + graph.num_destinations,
            uni.bits_per_edge,
            uni.bits_per_object,
        )
        return _suffix_subset(graph, order.tolist(), int(best_step)), float(best)

    state = PeelState(graph, ids, uni)
    order, best_step, best = state.run(trace)
    return _suffix_subset(graph, order, best_step), best


def peel(
    graph: TemporalGraph, universe: Universe | None = None, engine: str = "auto"
) -> list[NearBiclique]:
    """Repeatedly extract near bi-cliques until the best saving drops to <= 0.

    Accepted structures record their edges as induced from the original
    input graph; only the residual loses the claimed live edges.
    """
    if graph.num_edges == 0:
        raise ValueError("cannot mine an empty graph")
    uni = universe or Universe.from_graph(graph)
    residual = ResidualGraph(graph)
    found: list[NearBiclique] = []
    while residual.live_count > 0:
        subset, psi = peel_one(graph, residual.alive_edge_ids(), uni, engine=engine)
        if psi <= 0.0:
            break
        removed, edge_count = residual.claim(subset)
        found.append(
            NearBiclique(
                objects=subset,
                edge_count=edge_count,
                missing_count=subset.potential_size - edge_count,
                acceptance_saving=psi,
                residual_edge_count=removed,
            )
        )
    return found
