"""Fat hierarchical partitions of the unit square and hypercube, and
low-distortion embeddings of ultrametrics built on them."""

from .estimators import PolygonalTreemap, SlackTreemap, UltrametricEmbedding
from .exceptions import (
    DegenerateCut,
    DimensionTooSmall,
    DuplicatePoints,
    EmptyTree,
    FatPartError,
    InvariantViolation,
    MalformedDocument,
    NonPositiveWeight,
    NotUltrametric,
    PreconditionViolated,
)
from .generators import lowerbound_tree, random_hierarchy, random_ultrametric
from .geometry import (
    ConvexPolygon,
    Cut,
    HyperRect,
    area,
    aspect_ratio,
    best_angular_orientation,
    cut_at_orientation,
    diameter,
    min_edge_angle,
    phi_separated,
    rect_aspect_ratio,
    unit_square,
)
from .hierarchy import BinaryTree, WeightedTree, load_tree, parse_tree, scan_filesystem, to_binary
from .partitioners import (
    PartitionConfig,
    PartitionStats,
    PolygonalPartition,
    angular_cut,
    greedy_cut,
    greedy_rect_cut,
    partition,
    random_cut,
    stats,
)
from .slack import SlackConfig, SlackPartition, slack_cut, slack_partition
from .ultrametric import (
    HST,
    DistortionReport,
    EmbeddingResult,
    MetricSpace,
    VolumeEstimates,
    ball_volume,
    build_2hst,
    compute_astar,
    distortion,
    distortion_lower_bound,
    embed,
    radius_for_volume,
    validate_ultrametric,
)

__version__ = "0.1.0"

__all__ = [
    "angular_cut",
    "area",
    "aspect_ratio",
    "ball_volume",
    "best_angular_orientation",
    "BinaryTree",
    "build_2hst",
    "compute_astar",
    "ConvexPolygon",
    "Cut",
    "cut_at_orientation",
    "DegenerateCut",
    "diameter",
    "DimensionTooSmall",
    "distortion",
    "distortion_lower_bound",
    "DistortionReport",
    "DuplicatePoints",
    "embed",
    "EmbeddingResult",
    "EmptyTree",
    "FatPartError",
    "greedy_cut",
    "greedy_rect_cut",
    "HST",
    "HyperRect",
    "InvariantViolation",
    "load_tree",
    "lowerbound_tree",
    "MalformedDocument",
    "MetricSpace",
    "min_edge_angle",
    "NonPositiveWeight",
    "NotUltrametric",
    "parse_tree",
    "partition",
    "PartitionConfig",
    "PartitionStats",
    "phi_separated",
    "PolygonalPartition",
    "PolygonalTreemap",
    "PreconditionViolated",
    "radius_for_volume",
    "random_cut",
    "random_hierarchy",
    "random_ultrametric",
    "rect_aspect_ratio",
    "scan_filesystem",
    "slack_cut",
    "slack_partition",
    "SlackConfig",
    "SlackPartition",
    "SlackTreemap",
    "stats",
    "to_binary",
    "UltrametricEmbedding",
    "unit_square",
    "validate_ultrametric",
    "VolumeEstimates",
    "WeightedTree",
]
