"""bicmine: near bi-clique mining and MDL compression for temporal graphs."""

from .codec import (
    BicliqueRecord,
    CompressionReport,
    DecodeError,
    ModelStream,
    compression_report,
    decode,
    encode,
)
from .cost import (
    CostBreakdown,
    Universe,
    biclique_bits,
    bits_per_edge_of_biclique,
    relative_cost,
    saving,
    total_cost,
)
from .cutting import Partition, RandomLabeling, cut, shingle_value
from .driver import DriverConfig, MiningReport, ThresholdState, mine, mine_report
from .graph import (
    EdgeListParseError,
    NearBiclique,
    ObjectKind,
    ObjectSubset,
    ResidualGraph,
    TemporalGraph,
    induced_edge_count,
    load_edge_list,
    remove_edges,
)
from .peeling import PeelState, peel, peel_one
from .synth import PlantSpec, add_noise, gen_er, plant

__version__ = "0.1.0"

__all__ = [
    "BicliqueRecord",
    "CompressionReport",
    "CostBreakdown",
    "DecodeError",
    "DriverConfig",
    "EdgeListParseError",
    "MiningReport",
    "ModelStream",
    "NearBiclique",
    "ObjectKind",
    "ObjectSubset",
    "Partition",
    "PeelState",
    "PlantSpec",
    "RandomLabeling",
    "ResidualGraph",
    "TemporalGraph",
    "ThresholdState",
    "Universe",
    "add_noise",
    "biclique_bits",
    "bits_per_edge_of_biclique",
    "compression_report",
    "cut",
    "decode",
    "encode",
    "gen_er",
    "induced_edge_count",
    "load_edge_list",
    "mine",
    "mine_report",
    "peel",
    "peel_one",
    "plant",
    "relative_cost",
    "remove_edges",
    "saving",
    "shingle_value",
    "total_cost",
]
