"""scikit-learn style wrappers around the partition and embedding pipelines.

The estimators follow the usual conventions: hyperparameters are stored
verbatim by ``__init__``, ``fit`` validates its input and sets fitted
attributes with a trailing underscore, and ``get_params``/``set_params``
come from :class:`~sklearn.base.BaseEstimator`.
"""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_random_state
from sklearn.utils.validation import check_is_fitted, check_scalar

from .hierarchy import to_binary
from .partitioners import METHODS, PartitionConfig, check_partition, partition, partition_to_svg, stats
from .slack import SlackConfig, slack_partition
from .ultrametric import MetricSpace, embed
from .validation import check_dim, check_distance_matrix, check_epsilon, check_tree

__all__ = ["PolygonalTreemap", "SlackTreemap", "UltrametricEmbedding"]


def _seed_from(random_state) -> int:
    if random_state is None:
        return 0
    if isinstance(random_state, numbers.Integral):
        return int(random_state)
    return int(check_random_state(random_state).randint(np.iinfo(np.int32).max))


class PolygonalTreemap(BaseEstimator):
    """Fat polygonal treemap of a weighted hierarchy.

    Parameters
    ----------
    method : {"greedy", "angular", "random", "greedy_rect"}
        Cut-selection strategy.
    theta_samples : int, default=64
        Orientations sampled by the greedy method.
    constructive : bool, default=True
        Add the bound-guaranteeing candidate cuts to the greedy search.
    random_state : int, RandomState or None
        Seed for ``method="random"``.
    n_jobs : int, default=1
        Threads used for independent subtrees. Results do not depend on it.

    Attributes
    ----------
    tree_ : WeightedTree
    binary_tree_ : BinaryTree
    partition_ : PolygonalPartition
    stats_ : PartitionStats
    """

    def __init__(self, method="greedy", theta_samples=64, constructive=True, random_state=None, n_jobs=1):
        self.method = method
        self.theta_samples = theta_samples
        self.constructive = constructive
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        method = str(self.method).replace("-", "_")
        if method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        check_scalar(self.theta_samples, "theta_samples", numbers.Integral, min_val=4)
        check_scalar(self.n_jobs, "n_jobs", numbers.Integral, min_val=1)
        cfg = PartitionConfig(
            theta_samples=int(self.theta_samples),
            constructive=bool(self.constructive),
            seed=_seed_from(self.random_state),
            threads=int(self.n_jobs),
        )
        self.tree_ = check_tree(X)
        self.binary_tree_ = to_binary(self.tree_)
        self.partition_ = partition(self.binary_tree_, method, cfg)
        check_partition(self.partition_)
        self.stats_ = stats(self.partition_)
        return self

    def transform(self, X=None):
        """Leaf polygons keyed by hierarchy path (absolute coordinates)."""
        check_is_fitted(self, "partition_")
        p = self.partition_
        bt = self.binary_tree_
        return {bt.path(v): p[v].vertices for v in p.leaves()}

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform()

    def to_svg(self, outlines: bool = False) -> str:
        check_is_fitted(self, "partition_")
        return partition_to_svg(self.partition_, outlines=outlines)


class SlackTreemap(BaseEstimator):
    """Hyperrectangular partition with slack; every box has aspect ratio
    at most ``1 / epsilon``.

    Attributes
    ----------
    tree_ : WeightedTree
    partition_ : SlackPartition
    max_aspect_ratio_ : float
    """

    def __init__(self, epsilon=0.1, n_dims=2):
        self.epsilon = epsilon
        self.n_dims = n_dims

    def fit(self, X, y=None):
        cfg = SlackConfig(check_epsilon(self.epsilon), check_dim(self.n_dims))
        self.tree_ = check_tree(X)
        self.partition_ = slack_partition(self.tree_, cfg)
        self.max_aspect_ratio_ = self.partition_.max_aspect_ratio()
        return self

    def transform(self, X=None):
        """``(n_nodes, 2, d)`` array of lower and upper corners in preorder."""
        check_is_fitted(self, "partition_")
        p = self.partition_
        return np.array([[p[v].origin, p[v].upper] for v in self.tree_.preorder()])

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform()


class UltrametricEmbedding(BaseEstimator):
    """Embed points of an ultrametric (given as a precomputed distance matrix).

    Like t-SNE this is transductive: there is ``fit_transform`` but no
    out-of-sample ``transform``.

    Attributes
    ----------
    embedding_ : ndarray of shape (n_samples, n_components)
        Images scaled so that no distance contracts.
    report_ : DistortionReport
    hst_ : HST
    result_ : EmbeddingResult
    """

    def __init__(self, n_components=2):
        self.n_components = n_components

    def fit(self, X, y=None):
        D = check_distance_matrix(X)
        d = check_dim(self.n_components, "n_components")
        M = MetricSpace(D)
        self.result_ = embed(M, d)
        self.embedding_ = self.result_.points
        self.report_ = self.result_.report
        self.hst_ = self.result_.hst
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X, y).embedding_
