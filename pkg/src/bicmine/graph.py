"""Temporal graph data model.

A dynamic graph is stored as a deduplicated set of (source, destination,
timestamp) edge triples over three disjoint object namespaces.  Objects of
each kind are mapped to dense indices, and every object additionally has a
flat global index (sources first, then destinations, then timestamps) so
that algorithms can treat the three namespaces uniformly.

``TemporalGraph`` is immutable after construction; ``ResidualGraph`` is the
mutable live-edge view that mining algorithms peel edges from.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np


class ObjectKind(IntEnum):
    """The three object namespaces of a temporal graph."""

    SOURCE = 0
    DESTINATION = 1
    TIMESTAMP = 2


class EdgeListParseError(ValueError):
    """Raised when an edge-list line does not have exactly three fields."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(
            f"line {line_number}: expected 3 fields, got {len(line.split())}: {line!r}"
        )


@dataclass(frozen=True)
class ObjectSubset:
    """A candidate bi-clique's object sets, one sorted index tuple per kind."""

    sources: tuple[int, ...]
    destinations: tuple[int, ...]
    timestamps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(sorted(set(self.sources))))
        object.__setattr__(self, "destinations", tuple(sorted(set(self.destinations))))
        object.__setattr__(self, "timestamps", tuple(sorted(set(self.timestamps))))

    @property
    def total_size(self) -> int:
        return len(self.sources) + len(self.destinations) + len(self.timestamps)

    @property
    def potential_size(self) -> int:
        """Number of span edges a full bi-clique on these objects would have."""
        return len(self.sources) * len(self.destinations) * len(self.timestamps)

    def component_sizes(self) -> tuple[int, int, int]:
        return len(self.sources), len(self.destinations), len(self.timestamps)

    def span(self) -> Iterator[tuple[int, int, int]]:
        """Iterate all (s, d, t) triples of the full cross-product block."""
        return itertools.product(self.sources, self.destinations, self.timestamps)


@dataclass(frozen=True)
class NearBiclique:
    """An accepted subset plus its induced-edge bookkeeping.

    ``edge_count`` counts edges induced from the original input graph;
    ``residual_edge_count`` counts the live edges claimed at acceptance time
    (the quantity the acceptance saving was computed from).
    """

    objects: ObjectSubset
    edge_count: int
    missing_count: int
    acceptance_saving: float
    residual_edge_count: int = 0

    def __post_init__(self):
        if self.edge_count + self.missing_count != self.objects.potential_size:
            raise ValueError(
                "edge_count + missing_count must equal the subset's potential size"
            )

    @property
    def density(self) -> float:
        return self.edge_count / self.objects.potential_size


class TemporalGraph:
    """Immutable deduplicated set of (s, d, t) edges with per-object adjacency."""

    def __init__(
        self,
        num_sources: int,
        num_destinations: int,
        num_timestamps: int,
        edges: Iterable[tuple[int, int, int]] | np.ndarray,
        labels: tuple[list, list, list] | None = None,
    ):
        if min(num_sources, num_destinations, num_timestamps) < 1:
            raise ValueError("each object kind needs at least one object")
        self.num_sources = int(num_sources)
        self.num_destinations = int(num_destinations)
        self.num_timestamps = int(num_timestamps)
        self.labels = labels

        arr = np.asarray(
            edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64
        )
        if arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("edges must be (s, d, t) triples")
        for col, count in zip(range(3), self.kind_counts):
            if arr.shape[0] and (arr[:, col].min() < 0 or arr[:, col].max() >= count):
                raise ValueError(f"{ObjectKind(col).name.lower()} index out of range")

        keys = self._pack(arr[:, 0], arr[:, 1], arr[:, 2])
        _, first = np.unique(keys, return_index=True)
        first.sort()
        arr = arr[first]

        self.src = np.ascontiguousarray(arr[:, 0])
        self.dst = np.ascontiguousarray(arr[:, 1])
        self.ts = np.ascontiguousarray(arr[:, 2])

    # -- basic shape ------------------------------------------------------

    @property
    def kind_counts(self) -> tuple[int, int, int]:
        return self.num_sources, self.num_destinations, self.num_timestamps

    @property
    def num_objects(self) -> int:
        return self.num_sources + self.num_destinations + self.num_timestamps

    @property
    def num_edges(self) -> int:
        return int(self.src.shape[0])

    def kind_offset(self, kind: ObjectKind) -> int:
        if kind == ObjectKind.SOURCE:
            return 0
        if kind == ObjectKind.DESTINATION:
            return self.num_sources
        return self.num_sources + self.num_destinations

    def full_subset(self) -> ObjectSubset:
        return ObjectSubset(
            tuple(range(self.num_sources)),
            tuple(range(self.num_destinations)),
            tuple(range(self.num_timestamps)),
        )

    def edge_triples(self) -> Iterator[tuple[int, int, int]]:
        return zip(self.src.tolist(), self.dst.tolist(), self.ts.tolist())

    # -- derived structures (built once, on demand) ------------------------

    @cached_property
    def global_coords(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-edge global object indices for the three coordinates."""
        off_d = self.num_sources
        off_t = self.num_sources + self.num_destinations
        return self.src, self.dst + off_d, self.ts + off_t

    @cached_property
    def degrees(self) -> np.ndarray:
        """Global-indexed object degrees over all edges."""
        gs, gd, gt = self.global_coords
        return np.bincount(
            np.concatenate([gs, gd, gt]), minlength=self.num_objects
        ).astype(np.int64)

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency: (indptr over global objects, edge ids).

        Edge ids are ascending within each object's slice.
        """
        gs, gd, gt = self.global_coords
        combined = np.concatenate([gs, gd, gt])
        eids = np.tile(np.arange(self.num_edges, dtype=np.int64), 3)
        order = np.argsort(combined, kind="stable")
        indptr = np.zeros(self.num_objects + 1, dtype=np.int64)
        np.cumsum(np.bincount(combined, minlength=self.num_objects), out=indptr[1:])
        return indptr, eids[order]

    def incident_edge_ids(self, global_index: int) -> np.ndarray:
        indptr, eids = self.adjacency
        return eids[indptr[global_index] : indptr[global_index + 1]]

    @cached_property
    def _edge_key_to_id(self) -> dict[int, int]:
        keys = self._pack(self.src, self.dst, self.ts)
        return dict(zip(keys.tolist(), range(self.num_edges)))

    def _pack(self, s, d, t) -> np.ndarray:
        return (
            np.asarray(s, dtype=np.int64) * self.num_destinations
            + np.asarray(d, dtype=np.int64)
        ) * self.num_timestamps + np.asarray(t, dtype=np.int64)

    def has_edge(self, s: int, d: int, t: int) -> bool:
        key = (s * self.num_destinations + d) * self.num_timestamps + t
        return key in self._edge_key_to_id

    # -- induced subgraph queries ------------------------------------------

    def _check_subset(self, subset: ObjectSubset):
        # components are sorted, so the ends bound everything
        s, d, t = subset.sources, subset.destinations, subset.timestamps
        if (
            (s and (s[0] < 0 or s[-1] >= self.num_sources))
            or (d and (d[0] < 0 or d[-1] >= self.num_destinations))
            or (t and (t[0] < 0 or t[-1] >= self.num_timestamps))
        ):
            raise ValueError("subset index out of range")

    def induced_edge_ids(self, subset: ObjectSubset) -> list[int]:
        """Edge ids of all edges with every coordinate inside ``subset``."""
        self._check_subset(subset)
        return _induced_walk(self, subset)

    def induced_edge_count(self, subset: ObjectSubset) -> int:
        self._check_subset(subset)
        return len(_induced_walk(self, subset))


class ResidualGraph:
    """Mutable live-edge view of a ``TemporalGraph``.

    Edges only ever die; per-object residual degrees and the live count are
    kept consistent with the alive flags.
    """

    def __init__(self, base: TemporalGraph):
        self.base = base
        self.alive = np.ones(base.num_edges, dtype=np.uint8)
        self.live_count = base.num_edges
        self.res_degrees = base.degrees.copy()

    def alive_edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def induced_edge_count(self, subset: ObjectSubset) -> int:
        self.base._check_subset(subset)
        alive = self.alive
        return sum(1 for eid in _induced_walk(self.base, subset) if alive[eid])

    def remove_edges(self, subset: ObjectSubset) -> int:
        """Kill all live edges induced by ``subset``; returns how many died."""
        return self.claim(subset)[0]

    def claim(self, subset: ObjectSubset) -> tuple[int, int]:
        """Kill the subset's live induced edges in one pass.

        Returns (live edges killed, edges induced in the original graph);
        the second count is what accepted structures record.
        """
        self.base._check_subset(subset)
        ids = _induced_walk(self.base, subset)
        alive = self.alive
        gs, gd, gt = self.base.global_coords
        degrees = self.res_degrees
        killed = 0
        for eid in ids:
            if alive[eid]:
                alive[eid] = 0
                killed += 1
                degrees[gs[eid]] -= 1
                degrees[gd[eid]] -= 1
                degrees[gt[eid]] -= 1
        self.live_count -= killed
        return killed, len(ids)

    def snapshot(self) -> TemporalGraph:
        """The residual as an immutable graph over the same universe."""
        ids = self.alive_edge_ids()
        edges = np.stack(
            [self.base.src[ids], self.base.dst[ids], self.base.ts[ids]], axis=1
        )
        return TemporalGraph(*self.base.kind_counts, edges)


_SPAN_FAST_PATH = 512


def _induced_walk(graph: TemporalGraph, subset: ObjectSubset) -> list[int]:
    """Edge ids induced by ``subset``, in ascending order.

    Picks the cheaper of two equivalent strategies: enumerating the subset's
    span against the edge-key table, or walking the adjacency lists of the
    subset component with the least total degree.  Small spans skip the
    degree bookkeeping entirely (the dominant case during mining).
    """
    potential = subset.potential_size
    if potential == 0:
        return []

    comps = (subset.sources, subset.destinations, subset.timestamps)
    offsets = (0, graph.num_sources, graph.num_sources + graph.num_destinations)
    if potential > _SPAN_FAST_PATH:
        degrees = graph.degrees
        walk_costs = [
            int(degrees[np.asarray(comp, dtype=np.int64) + off].sum())
            for comp, off in zip(comps, offsets)
        ]
        best_kind = min(range(3), key=lambda k: walk_costs[k])
        if walk_costs[best_kind] < potential:
            return _adjacency_walk(graph, comps, offsets, best_kind)

    key_to_id = graph._edge_key_to_id
    nd, nt = graph.num_destinations, graph.num_timestamps
    found = []
    for s, d, t in subset.span():
        eid = key_to_id.get((s * nd + d) * nt + t)
        if eid is not None:
            found.append(eid)
    found.sort()
    return found


def _adjacency_walk(graph, comps, offsets, kind) -> list[int]:
    indptr, eids = graph.adjacency
    other = [k for k in range(3) if k != kind]
    coord_arrays = graph.src, graph.dst, graph.ts
    set_a = set(comps[other[0]])
    set_b = set(comps[other[1]])
    arr_a = coord_arrays[other[0]]
    arr_b = coord_arrays[other[1]]
    off = offsets[kind]
    found = []
    for idx in comps[kind]:
        g = idx + off
        for eid in eids[indptr[g] : indptr[g + 1]].tolist():
            if arr_a[eid] in set_a and arr_b[eid] in set_b:
                found.append(eid)
    found.sort()
    return found


def induced_edge_count(
    graph_or_residual: TemporalGraph | ResidualGraph, subset: ObjectSubset
) -> int:
    """Edges (live edges, on a residual) with all coordinates in ``subset``."""
    return graph_or_residual.induced_edge_count(subset)


def remove_edges(residual: ResidualGraph, subset: ObjectSubset) -> int:
    return residual.remove_edges(subset)


def load_edge_list(source: Iterable[str], separator: str | None = None) -> TemporalGraph:
    """Parse a text edge list into a graph.

    Each non-empty, non-comment line must carry three fields: source label,
    destination label, timestamp label.  Labels of each kind are mapped to
    dense indices in first-appearance order, so the same byte stream always
    yields the identical graph.  Duplicate triples collapse to one edge.
    """
    label_maps: tuple[dict, dict, dict] = ({}, {}, {})
    triples: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(separator) if separator else line.split()
        if len(fields) != 3:
            raise EdgeListParseError(line_number, line)
        triple = tuple(
            m.setdefault(f, len(m)) for m, f in zip(label_maps, fields)
        )
        if triple not in seen:
            seen.add(triple)
            triples.append(triple)
    if not triples:
        raise ValueError("empty graph")
    labels = tuple(list(m.keys()) for m in label_maps)
    return TemporalGraph(
        len(label_maps[0]), len(label_maps[1]), len(label_maps[2]), triples, labels
    )
