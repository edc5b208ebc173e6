import io

import numpy as np
import pytest

from bicmine.cost import Universe
from bicmine.graph import TemporalGraph, load_edge_list
from bicmine.peeling import peel_one
from bicmine.synth import PlantSpec, add_noise, plant


def make_graph(counts, edges, labels=None) -> TemporalGraph:
    return TemporalGraph(*counts, edges, labels=labels)


def full_block(ns, nd, nt) -> TemporalGraph:
    edges = [(s, d, t) for s in range(ns) for d in range(nd) for t in range(nt)]
    return TemporalGraph(ns, nd, nt, edges)


def parse(text: str, **kwargs) -> TemporalGraph:
    return load_edge_list(io.StringIO(text), **kwargs)


def random_graph(rng: np.random.Generator, max_kind=8, max_edges=150) -> TemporalGraph:
    counts = tuple(int(rng.integers(1, max_kind + 1)) for _ in range(3))
    capacity = counts[0] * counts[1] * counts[2]
    m = int(rng.integers(1, min(max_edges, capacity) + 1))
    keys = rng.choice(capacity, size=m, replace=False)
    s, rem = np.divmod(keys, counts[1] * counts[2])
    d, t = np.divmod(rem, counts[2])
    return TemporalGraph(*counts, np.stack([s, d, t], axis=1))


def mixture_graph(seed: int, kind_range, plant_count, noise_range):
    """A planted-blocks-plus-uniform-noise instance for property tests."""
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(plant_count):
        widths = [int(rng.integers(2, 7)) for _ in range(3)]
        fill = float(rng.uniform(0.6, 1.0))
        specs.append(PlantSpec(*widths, min(fill, 1.0)))
    counts = []
    for k in range(3):
        needed = sum((s.width_s, s.width_d, s.width_t)[k] for s in specs)
        counts.append(needed + int(rng.integers(*kind_range)))
    graph, truth = plant(tuple(counts), specs, seed)
    capacity = counts[0] * counts[1] * counts[2]
    noise = min(int(rng.integers(*noise_range)), capacity - graph.num_edges)
    if graph.num_edges == 0 and noise == 0:
        noise = 1
    if noise:
        graph = add_noise(graph, noise, seed + 7919)
    return graph, truth


@pytest.fixture(scope="session")
def warm_kernel():
    """Compile the jitted peel kernel outside of any timed section."""
    g = full_block(2, 2, 2)
    peel_one(g, np.arange(g.num_edges), Universe.from_graph(g))
    return True
