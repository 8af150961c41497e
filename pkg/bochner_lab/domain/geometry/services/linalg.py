"""
Deterministic reductions and batched small-matrix linear algebra.
"""

from typing import Optional, Tuple

import numpy as np


def deterministic_sum(values: np.ndarray, mask: Optional[np.ndarray] = None) -> float:
    """
    Sum every entry in a fixed pairwise order.

    np.add.reduce over a contiguous 1-D buffer uses pairwise summation, so the
    result depends only on the values and their row-major order.
    """
    values = np.asarray(values, dtype=float)
    if mask is not None:
        values = values[np.broadcast_to(mask, values.shape)]
    return float(np.add.reduce(np.ascontiguousarray(values).ravel()))


def max_abs(values: np.ndarray, mask: Optional[np.ndarray] = None) -> float:
    """Largest absolute entry, optionally over masked nodes only."""
    values = np.abs(np.asarray(values, dtype=float))
    if mask is not None:
        values = values[mask]
    return float(values.max()) if values.size else 0.0


def generalized_eigh(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batched symmetric generalized eigenproblem A v = w B v with B > 0.

    Returns:
        Tuple of (ascending eigenvalues, B-orthonormal eigenvectors as columns)
    """
    chol = np.linalg.cholesky(b)
    chol_inv = np.linalg.inv(chol)
    reduced = chol_inv @ a @ np.swapaxes(chol_inv, -1, -2)
    reduced = 0.5 * (reduced + np.swapaxes(reduced, -1, -2))
    values, vectors = np.linalg.eigh(reduced)
    return values, np.swapaxes(chol_inv, -1, -2) @ vectors


def orthonormal_frame(g: np.ndarray) -> np.ndarray:
    """Columns form a g-orthonormal basis (E^T g E = I)."""
    chol = np.linalg.cholesky(g)
    return np.swapaxes(np.linalg.inv(chol), -1, -2)
