"""Min-hash style partitioning of the residual graph by one object kind.

Each anchor object gets a shingle: the minimum, over its live edges, of a
random-permutation hash of the edge's other two coordinates.  Objects with
equal shingles land in one partition together with all their live edges, so
anchor objects with similar neighborhoods (in particular, the sides of a
bi-clique) tend to stay in the same partition while unrelated parts of the
graph separate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import ObjectKind, ResidualGraph, TemporalGraph


@dataclass(frozen=True)
class RandomLabeling:
    """A random bijection from global object indices to {1, ..., |I|}."""

    values: np.ndarray
    seed: int

    @classmethod
    def from_seed(cls, seed: int, num_objects: int) -> "RandomLabeling":
        rng = np.random.default_rng(seed)
        return cls(rng.permutation(num_objects).astype(np.int64) + 1, seed)

    @property
    def num_objects(self) -> int:
        return int(self.values.shape[0])

    def __call__(self, global_index: int) -> int:
        return int(self.values[global_index])


@dataclass(frozen=True)
class Partition:
    """Anchor objects sharing one shingle value, plus their live edges.

    ``members`` holds kind-local indices of the anchor objects, sorted
    ascending; ``edges`` holds the ids of every live edge whose anchor
    coordinate is a member.
    """

    anchor_kind: ObjectKind
    members: np.ndarray
    edges: np.ndarray
    shingle: int


def shingle_value(
    graph: TemporalGraph,
    edge: tuple[int, int, int],
    anchor: ObjectKind,
    labeling: RandomLabeling,
) -> int:
    """Hash of the edge's two non-anchor coordinates, ordered per kind."""
    s, d, t = edge
    gs = s
    gd = graph.num_sources + d
    gt = graph.num_sources + graph.num_destinations + t
    h = labeling
    n = labeling.num_objects
    if anchor == ObjectKind.SOURCE:
        return h(gd) * n + h(gt)
    if anchor == ObjectKind.DESTINATION:
        return h(gt) * n + h(gs)
    return h(gs) * n + h(gd)


def cut(
    residual: ResidualGraph, anchor: ObjectKind, labeling: RandomLabeling
) -> list[Partition]:
    """Partition the residual's live edges by the anchor objects' shingles.

    Every anchor object with at least one live edge appears in exactly one
    partition; partition edge lists are disjoint and cover all live edges.
    Zero-degree anchor objects are dropped.  Runs in O(|I| + live edges).
    """
    ids = residual.alive_edge_ids()
    if ids.size == 0:
        raise ValueError("no live edges to cut")
    graph = residual.base
    h = labeling.values
    n = labeling.num_objects
    gs, gd, gt = graph.global_coords

    if anchor == ObjectKind.SOURCE:
        anchor_idx = graph.src[ids]
        g = h[gd[ids]] * n + h[gt[ids]]
    elif anchor == ObjectKind.DESTINATION:
        anchor_idx = graph.dst[ids]
        g = h[gt[ids]] * n + h[gs[ids]]
    else:
        anchor_idx = graph.ts[ids]
        g = h[gs[ids]] * n + h[gd[ids]]

    kind_count = graph.kind_counts[anchor]
    sentinel = np.iinfo(np.int64).max
    f = np.full(kind_count, sentinel, dtype=np.int64)
    np.minimum.at(f, anchor_idx, g)

    # group edges and anchor objects by shingle; both sides sort by the
    # same ascending f sequence, so group k of one matches group k of the other
    edge_f = f[anchor_idx]
    order = np.argsort(edge_f, kind="stable")
    cuts = np.flatnonzero(np.diff(edge_f[order])) + 1
    edge_groups = np.split(ids[order], cuts)

    live_objs = np.flatnonzero(f != sentinel)
    obj_order = np.argsort(f[live_objs], kind="stable")
    obj_sorted = live_objs[obj_order]
    obj_cuts = np.flatnonzero(np.diff(f[obj_sorted])) + 1
    member_groups = np.split(obj_sorted, obj_cuts)

    shingles = np.unique(f[live_objs])
    assert len(edge_groups) == len(member_groups) == len(shingles)
    return [
        Partition(anchor, members, edges, int(shingle))
        for members, edges, shingle in zip(member_groups, edge_groups, shingles)
    ]


def derive_labeling_seed(run_seed: int, iteration: int, anchor: ObjectKind) -> int:
    """A fresh yet reproducible labeling seed per (run, iteration, kind)."""
    ss = np.random.SeedSequence((run_seed, iteration, int(anchor)))
    return int(ss.generate_state(1, np.uint64)[0])
