"""
Conjugate gradient for symmetric positive-semidefinite sparse systems.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from bochner_lab.core.exceptions import SolverDiverged
from bochner_lab.domain.decomposition.schemas.solver import SolverStats
from bochner_lab.domain.geometry.services.linalg import deterministic_sum

logger = logging.getLogger(__name__)


def _dot(x: np.ndarray, y: np.ndarray) -> float:
    return deterministic_sum(x * y)


class ConjugateGradient:
    """
    Conjugate gradient with optional Jacobi preconditioning.

    A known kernel (orthonormal columns) is projected out of the right-hand
    side and of every residual, so singular but consistent systems converge
    to the solution orthogonal to the kernel.

    Args:
        operator: Symmetric positive-semidefinite matrix
        rtol: Target of |r| / |b|
        max_iterations: Iteration cap
        preconditioner: "none" or "jacobi"
        kernel: Optional array (size, d) of orthonormal kernel vectors
    """

    def __init__(
        self,
        operator: sparse.spmatrix,
        rtol: float = 1e-8,
        max_iterations: int = 1000,
        preconditioner: str = "none",
        kernel: Optional[np.ndarray] = None,
    ):
        self.operator = operator
        self.rtol = rtol
        self.max_iterations = max_iterations
        self.preconditioner = preconditioner
        self.kernel = kernel if kernel is not None and kernel.size else None
        if preconditioner == "jacobi":
            diagonal = operator.diagonal()
            self._inverse_diagonal = np.where(diagonal > 0, 1.0 / np.where(diagonal > 0, diagonal, 1.0), 1.0)
        else:
            self._inverse_diagonal = None

    def project(self, x: np.ndarray) -> np.ndarray:
        """Remove the kernel component of x."""
        if self.kernel is None:
            return x
        return x - self.kernel @ (self.kernel.T @ x)

    def _precondition(self, r: np.ndarray) -> np.ndarray:
        if self._inverse_diagonal is None:
            return r
        return self.project(self._inverse_diagonal * r)

    def solve(self, b: np.ndarray, x0: Optional[np.ndarray] = None) -> Tuple[np.ndarray, SolverStats]:
        """
        Solve A x = b.

        Returns:
            Tuple of (solution, statistics)

        Raises:
            SolverDiverged: if the relative residual target is not reached
        """
        b = self.project(np.asarray(b, dtype=float))
        x = np.zeros_like(b) if x0 is None else self.project(np.array(x0, dtype=float))
        norm_b = np.sqrt(_dot(b, b))
        if norm_b == 0.0:
            return x, self._stats(0, 0.0, True)

        r = self.project(b - self.operator @ x)
        z = self._precondition(r)
        p = z.copy()
        rz = _dot(r, z)
        residual = np.sqrt(_dot(r, r)) / norm_b
        iterations = 0
        while residual > self.rtol and iterations < self.max_iterations:
            v = self.operator @ p
            curvature = _dot(p, v)
            if curvature <= 0.0:
                break
            step = rz / curvature
            x += step * p
            r = self.project(r - step * v)
            z = self._precondition(r)
            rz_next = _dot(r, z)
            p = z + (rz_next / rz) * p
            rz = rz_next
            residual = np.sqrt(_dot(r, r)) / norm_b
            iterations += 1

        x = self.project(x)
        converged = residual <= self.rtol
        stats = self._stats(iterations, float(residual), converged)
        logger.debug(
            "CG finished after %s iterations (relative residual %.3e)", iterations, residual
        )
        if not converged:
            raise SolverDiverged(
                f"CG reached relative residual {residual:.3e} after {iterations} iterations",
                stats=stats.model_dump(),
            )
        return x, stats

    def _stats(self, iterations: int, residual: float, converged: bool) -> SolverStats:
        return SolverStats(
            iterations=iterations,
            final_residual=residual,
            converged=converged,
            kernel_projection_applied=self.kernel is not None,
            kernel_dimension=0 if self.kernel is None else int(self.kernel.shape[1]),
            max_iterations=self.max_iterations,
            preconditioner=self.preconditioner,
        )
