"""
Levi-Civita connection, curvature tensors and curvature extremes.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import DegeneratePlane, ValidationError
from bochner_lab.domain.geometry.models.connection import levi_civita_from_jet
from bochner_lab.domain.geometry.models.fields import (
    CurvatureBundle,
    CurvatureExtreme,
    MetricField,
)
from bochner_lab.domain.geometry.models.metric_models import MetricModel
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.geometry.services.linalg import (
    generalized_eigh,
    orthonormal_frame,
)

logger = logging.getLogger(__name__)

EXTREME_KINDS = ("ric_min", "ric_max", "sec_min")
NODE_CHUNK = 4096


def build_levi_civita(
    metric: MetricField, mode: str = "analytic", order: Optional[int] = None
) -> CurvatureBundle:
    """
    Christoffel symbols, Riemann, Ricci and scalar curvature of a metric.

    Args:
        metric: Validated metric field
        mode: "analytic" (closed-form jet of metric.evaluator) or
            "finite_difference" (derivatives of the sampled components)
        order: Finite-difference order, defaults to FD_ORDER

    Returns:
        CurvatureBundle on the metric's chart

    Raises:
        StencilOutOfDomain: if the stencil does not fit a non-periodic margin
    """
    g, g_inv = metric.components, metric.inverse
    if mode == "analytic":
        if metric.evaluator is None:
            raise ValidationError("analytic mode needs a metric with a closed-form evaluator")
        _, dg, ddg = metric.evaluator.jet(metric.chart.mesh)
        order = None
        constant = metric.evaluator.constant_curvature
    elif mode == "finite_difference":
        order = order or get_settings().FD_ORDER
        fd = FiniteDifference(metric.chart, order)
        dg = fd.gradient(g)
        ddg = fd.hessian(g)
        constant = None
    else:
        raise ValidationError(f"unknown curvature mode '{mode}'")

    christoffel, riemann, ricci, scalar = levi_civita_from_jet(g, g_inv, dg, ddg)
    logger.debug(
        "Levi-Civita data on %s nodes (mode=%s, order=%s)",
        metric.chart.node_count,
        mode,
        order,
    )
    return CurvatureBundle(
        christoffel=christoffel,
        riemann=riemann,
        ricci=ricci,
        scalar=scalar,
        mode=mode,
        order=order,
        constant_curvature=constant,
    )


def sectional_curvature(
    curv: CurvatureBundle,
    metric: MetricField,
    node: Sequence[int],
    plane: Tuple[Sequence[float], Sequence[float]],
) -> float:
    """
    Sectional curvature R(X, Y, X, Y) / (|X|^2 |Y|^2 - g(X, Y)^2) at a node.

    Raises:
        DegeneratePlane: if X and Y are linearly dependent
    """
    node = tuple(int(i) for i in node)
    x = np.asarray(plane[0], dtype=float)
    y = np.asarray(plane[1], dtype=float)
    g = metric.components[node]
    xx, yy, xy = x @ g @ x, y @ g @ y, x @ g @ y
    area = xx * yy - xy**2
    if not area > 1e-14 * xx * yy:
        raise DegeneratePlane()
    numerator = np.einsum("abcd,a,b,c,d->", curv.riemann[node], x, y, x, y)
    return float(numerator / area)


def ricci_extremes(ricci: np.ndarray, g: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Smallest and largest generalized eigenvalues of (Ric, g) per node."""
    values, _ = generalized_eigh(ricci, g)
    return values[..., 0], values[..., -1]


def sectional_minimum(
    riemann: np.ndarray,
    g: np.ndarray,
    ricci: np.ndarray,
    samples: Optional[int] = None,
    refinement_steps: Optional[int] = None,
    seed: Optional[int] = None,
) -> np.ndarray:
    """
    Minimum sectional curvature per node over sampled 2-planes.

    Candidates are all pairs of coordinate and Ricci-eigenvector directions,
    then seeded random planes, then a local search around the best plane.
    The search works in a g-orthonormal frame where planes are Euclidean.
    """
    settings = get_settings()
    samples = settings.SEC_SAMPLES if samples is None else samples
    steps = settings.SEC_REFINEMENT_STEPS if refinement_steps is None else refinement_steps
    seed = settings.SEED if seed is None else seed

    batch = g.shape[:-2]
    n = g.shape[-1]
    if n < 2:
        return np.zeros(batch)
    flat_r = riemann.reshape((-1,) + (n,) * 4)
    flat_g = g.reshape(-1, n, n)
    flat_ric = ricci.reshape(-1, n, n)
    out = np.empty(flat_g.shape[0])
    for start in range(0, flat_g.shape[0], NODE_CHUNK):
        stop = start + NODE_CHUNK
        out[start:stop] = _sectional_minimum_chunk(
            flat_r[start:stop], flat_g[start:stop], flat_ric[start:stop], samples, steps, seed
        )
    return out.reshape(batch)


def _sectional_minimum_chunk(riemann, g, ricci, samples, steps, seed) -> np.ndarray:
    n = g.shape[-1]
    frame = orthonormal_frame(g)
    r_hat = riemann
    for _ in range(4):
        # contract the leading slot with the frame and rotate it to the back
        r_hat = np.einsum("Bi...,Bij->B...j", r_hat, frame)
    if n == 2:
        return r_hat[:, 0, 1, 0, 1]

    best = np.full(g.shape[0], np.inf)
    best_x = np.zeros((g.shape[0], n))
    best_y = np.zeros((g.shape[0], n))

    def consider(x: np.ndarray, y: np.ndarray) -> None:
        # x, y: (B, P, n) orthonormal pairs
        values = _plane_values(r_hat, x, y)
        pick = np.argmin(values, axis=1)
        rows = np.arange(values.shape[0])
        candidate = values[rows, pick]
        better = candidate < best
        best[better] = candidate[better]
        best_x[better] = x[rows, pick][better]
        best_y[better] = y[rows, pick][better]

    # coordinate pairs of the orthonormal frame and Ricci eigenvector pairs
    ric_hat = np.swapaxes(frame, -1, -2) @ ricci @ frame
    _, eigvecs = np.linalg.eigh(0.5 * (ric_hat + np.swapaxes(ric_hat, -1, -2)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    identity = np.broadcast_to(np.eye(n), eigvecs.shape)
    for basis in (identity, eigvecs):
        x = np.stack([basis[:, :, i] for i, _ in pairs], axis=1)
        y = np.stack([basis[:, :, j] for _, j in pairs], axis=1)
        consider(x, y)

    rng = np.random.default_rng(seed)
    if samples:
        raw = rng.standard_normal((samples, 2, n))
        x, y = _orthonormal_pair(raw[:, 0], raw[:, 1])
        consider(
            np.broadcast_to(x, (g.shape[0],) + x.shape),
            np.broadcast_to(y, (g.shape[0],) + y.shape),
        )

    step = np.full(g.shape[0], 0.5)
    for _ in range(steps):
        kick = rng.standard_normal((2 * n, 2, n))
        x = best_x[:, None, :] + step[:, None, None] * kick[None, :, 0, :]
        y = best_y[:, None, :] + step[:, None, None] * kick[None, :, 1, :]
        x, y = _orthonormal_pair(x, y)
        before = best.copy()
        consider(x, y)
        step = np.where(best < before, step, 0.5 * step)
    return best


def _plane_values(r_hat: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    inner = np.einsum("Bijkl,BPj,BPl->BPik", r_hat, y, y)
    return np.einsum("BPik,BPi,BPk->BP", inner, x, x)


def _orthonormal_pair(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    y = y - np.sum(x * y, axis=-1, keepdims=True) * x
    y = y / np.linalg.norm(y, axis=-1, keepdims=True)
    return x, y


def curvature_extremes_field(
    curv: CurvatureBundle,
    metric: MetricField,
    kind: str,
    samples: Optional[int] = None,
    refinement_steps: Optional[int] = None,
    seed: Optional[int] = None,
) -> Tuple[np.ndarray, bool]:
    """
    Per-node curvature extreme over the whole chart.

    Returns:
        Tuple of (values with the chart shape, certified flag)
    """
    if kind not in EXTREME_KINDS:
        raise ValidationError(f"unknown curvature extreme '{kind}'")
    certified = curv.constant_curvature is not None
    if kind == "sec_min":
        if certified:
            return np.full(metric.chart.shape, curv.constant_curvature), True
        values = sectional_minimum(
            curv.riemann, metric.components, curv.ricci, samples, refinement_steps, seed
        )
        return values, False
    low, high = ricci_extremes(curv.ricci, metric.components)
    return (low if kind == "ric_min" else high), certified


def curvature_extremes(
    curv: CurvatureBundle,
    metric: MetricField,
    node: Sequence[int],
    kind: str,
    samples: Optional[int] = None,
    refinement_steps: Optional[int] = None,
    seed: Optional[int] = None,
) -> CurvatureExtreme:
    """Curvature extreme at a single node."""
    if kind not in EXTREME_KINDS:
        raise ValidationError(f"unknown curvature extreme '{kind}'")
    node = tuple(int(i) for i in node)
    if len(node) != metric.chart.dim or any(
        not 0 <= i < n for i, n in zip(node, metric.chart.shape)
    ):
        raise ValidationError(f"invalid node {node}")
    certified = curv.constant_curvature is not None
    g = metric.components[node]
    if kind == "sec_min":
        if certified:
            value = float(curv.constant_curvature) if metric.dim >= 2 else 0.0
        else:
            value = float(
                sectional_minimum(
                    curv.riemann[node], g, curv.ricci[node], samples, refinement_steps, seed
                )
            )
    else:
        low, high = ricci_extremes(curv.ricci[node], g)
        value = float(low if kind == "ric_min" else high)
    return CurvatureExtreme(kind=kind, value=value, certified=certified)


def model_extremes(
    model: MetricModel,
    points: np.ndarray,
    samples: Optional[int] = None,
    refinement_steps: Optional[int] = None,
    seed: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
    """
    Curvature extremes of an analytic metric at arbitrary points.

    Returns:
        Tuple of (ric_min, ric_max, sec_min, certified)
    """
    points = np.asarray(points, dtype=float)
    batch = points.shape[:-1]
    if model.constant_curvature is not None:
        c = model.constant_curvature
        ric = np.full(batch, (model.dim - 1) * c)
        sec = np.full(batch, c if model.dim >= 2 else 0.0)
        return ric, ric.copy(), sec, True
    g, dg, ddg = model.jet(points)
    _, riemann, ricci, _ = levi_civita_from_jet(g, np.linalg.inv(g), dg, ddg)
    low, high = ricci_extremes(ricci, g)
    sec = sectional_minimum(riemann, g, ricci, samples, refinement_steps, seed)
    return low, high, sec, False
