"""Input checks shared by the estimators, built on scikit-learn's helpers."""

from __future__ import annotations

import numbers
from pathlib import Path

import numpy as np
from sklearn.utils.validation import check_array, check_scalar

from .hierarchy import WeightedTree, load_tree, parse_tree

__all__ = ["check_distance_matrix", "check_tree", "check_epsilon", "check_dim"]


def check_distance_matrix(X) -> np.ndarray:
    """Return ``X`` as a finite, square float matrix."""
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_min_samples=1, ensure_all_finite=True)
    if X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square distance matrix, got shape {X.shape}")
    return X


def check_tree(X) -> WeightedTree:
    """Accept a tree, a hierarchy document (dict or JSON text) or a path."""
    if isinstance(X, WeightedTree):
        return X
    if isinstance(X, Path):
        return load_tree(X)
    if isinstance(X, str) and not X.lstrip().startswith("{") and Path(X).exists():
        return load_tree(X)
    return parse_tree(X)


def check_epsilon(epsilon) -> float:
    return float(
        check_scalar(
            epsilon, "epsilon", numbers.Real, min_val=0.0, max_val=1.0 / 3.0, include_boundaries="neither"
        )
    )


def check_dim(d, name: str = "n_dims", min_dim: int = 2) -> int:
    return int(check_scalar(d, name, numbers.Integral, min_val=min_dim))
