"""
Builders of catalog geometries.

Every builder takes validated parameters, a node count per axis (None for
the default) and a finite-difference order, and returns the built
instance with its closed-form references.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import InvalidParameters
from bochner_lab.domain.catalog.models.entry import Instance, Reference
from bochner_lab.domain.catalog.schemas import parameters as p
from bochner_lab.domain.geometry.models.fields import MetricField
from bochner_lab.domain.geometry.models.metric_models import (
    FlatMetric,
    HypersphericalMetric,
    JoinSphereMetric,
    MetricModel,
    ProductMetric,
)
from bochner_lab.domain.geometry.schemas.chart import MIN_RESOLUTION, ChartGrid
from bochner_lab.domain.geometry.services.curvature import build_levi_civita
from bochner_lab.domain.maps.models.smooth_map import ChartedManifold, SmoothMap
from bochner_lab.domain.submanifolds.models.immersion import AmbientSpace, Immersion

Built = Tuple[Instance, List[Reference]]

# Codomain grids only carry bounds and periods; geometry is evaluated at image points.
CODOMAIN_RESOLUTION = MIN_RESOLUTION
RESOLUTION_CAPS = {3: 24, 4: 12}


def resolve_resolution(resolution: Optional[int], dim: int) -> int:
    """Explicit node count, or the default capped for 3- and 4-dimensional charts."""
    if resolution is not None:
        return int(resolution)
    default = get_settings().DEFAULT_RESOLUTION
    return min(default, RESOLUTION_CAPS.get(dim, default))


def sphere_chart(k: int, resolution: int) -> ChartGrid:
    """Angle chart of S^k: periodic circle for k = 1, lat-long otherwise."""
    if k == 1:
        return ChartGrid.box([2.0 * math.pi], resolution)
    settings = get_settings()
    return ChartGrid.lat_long(k, resolution, settings.POLE_CUT, settings.POLAR_MARGIN)


def product_chart(charts: Sequence[ChartGrid]) -> ChartGrid:
    return ChartGrid(
        dim=sum(c.dim for c in charts),
        bounds=[b for c in charts for b in c.bounds],
        resolution=[r for c in charts for r in c.resolution],
        periodic=[q for c in charts for q in c.periodic],
        margin=[m for c in charts for m in c.margin],
    )


def sphere_points(angles: np.ndarray, k: int) -> np.ndarray:
    """Unit vectors in R^(k+1) from the k angles (theta_1, ..., theta_{k-1}, phi)."""
    prefix = np.ones(angles.shape[:-1])
    out = []
    for axis in range(k - 1):
        out.append(prefix * np.cos(angles[..., axis]))
        prefix = prefix * np.sin(angles[..., axis])
    out.append(prefix * np.cos(angles[..., k - 1]))
    out.append(prefix * np.sin(angles[..., k - 1]))
    return np.stack(out, axis=-1)


def charted(name: str, chart: ChartGrid, model: MetricModel) -> ChartedManifold:
    metric = MetricField.from_model(chart, model)
    return ChartedManifold(name, chart, metric, build_levi_civita(metric, "analytic"), model)


def _curvature_references(sec: float, ric_min: float, ric_max: float, scalar: float, source: str):
    return [
        Reference("sec_min", sec, source),
        Reference("ric_min", ric_min, source),
        Reference("ric_max", ric_max, source),
        Reference("scalar", scalar, source),
    ]


# Manifolds


def flat_torus(params: p.FlatTorusParams, resolution: Optional[int], order: int) -> Built:
    chart = ChartGrid.box(params.periods, resolve_resolution(resolution, params.n))
    manifold = charted("flat_torus", chart, FlatMetric(params.n))
    refs = _curvature_references(0.0, 0.0, 0.0, 0.0, "flat metric")
    if params.n < 2:
        refs = [ref for ref in refs if ref.quantity != "sec_min"]
    return manifold, refs


def round_sphere(params: p.RoundSphereParams, resolution: Optional[int], order: int) -> Built:
    n, r = params.n, params.r
    chart = sphere_chart(n, resolve_resolution(resolution, n))
    manifold = charted("round_sphere", chart, HypersphericalMetric(n, r))
    refs = _curvature_references(
        1.0 / r**2, (n - 1) / r**2, (n - 1) / r**2, n * (n - 1) / r**2, "sec = 1/r^2, Ric = (n-1)/r^2 g"
    )
    return manifold, refs


def product_sphere(params: p.ProductSphereParams, resolution: Optional[int], order: int) -> Built:
    k1, k2 = 1.0 / params.r1**2, 1.0 / params.r2**2
    res = resolve_resolution(resolution, 4)
    chart = product_chart([sphere_chart(2, res), sphere_chart(2, res)])
    model = ProductMetric([HypersphericalMetric(2, params.r1), HypersphericalMetric(2, params.r2)])
    manifold = charted("product_sphere", chart, model)
    refs = _curvature_references(
        0.0, min(k1, k2), max(k1, k2), 2.0 * (k1 + k2), "mixed planes are flat; Ric = 1/r_i^2 on factor i"
    )
    return manifold, refs


MANIFOLD_BUILDERS = {
    "flat_torus": (p.FlatTorusParams, flat_torus),
    "round_sphere": (p.RoundSphereParams, round_sphere),
    "product_sphere": (p.ProductSphereParams, product_sphere),
}


def _manifold(name: str, raw: dict, resolution: Optional[int], order: int) -> Tuple[ChartedManifold, List[Reference]]:
    model, builder = MANIFOLD_BUILDERS[name]
    return builder(model(**raw), resolution, order)


# Ambient spaces


def join_sphere(n1: int, n2: int) -> AmbientSpace:
    """S^(n1+n2+1) in join coordinates (eta, y1, y2), eta in [0, pi/2]."""
    eta = ChartGrid(
        dim=1, bounds=[(0.0, math.pi / 2)], resolution=[CODOMAIN_RESOLUTION], periodic=[False], margin=[0.0]
    )
    chart = product_chart([eta, sphere_chart(n1, CODOMAIN_RESOLUTION), sphere_chart(n2, CODOMAIN_RESOLUTION)])
    return AmbientSpace(f"S^{n1 + n2 + 1}", JoinSphereMetric(n1, n2), chart=chart)


def hyperspherical_sphere(dim: int) -> AmbientSpace:
    return AmbientSpace(f"S^{dim}", HypersphericalMetric(dim), chart=sphere_chart(dim, CODOMAIN_RESOLUTION))


def flat_three_torus() -> AmbientSpace:
    chart = ChartGrid.box([2.0 * math.pi] * 3, CODOMAIN_RESOLUTION, lower=[0.0, 0.0, -math.pi])
    return AmbientSpace("T^3", FlatMetric(3), chart=chart)


# Immersions


def clifford_torus(params: p.CliffordTorusParams, resolution: Optional[int], order: int) -> Built:
    n1, n2 = params.n1, params.n2
    n = n1 + n2
    r1, r2 = math.sqrt(n1 / n), math.sqrt(n2 / n)
    res = resolve_resolution(resolution, n)
    chart = product_chart([sphere_chart(n1, res), sphere_chart(n2, res)])
    mesh = chart.mesh
    # sin(eta0) = r1 places the torus on a level set of the join coordinate
    eta0 = np.full(chart.shape + (1,), math.asin(r1))
    if params.codimension == 1:
        ambient = join_sphere(n1, n2)
        components = np.concatenate([eta0, mesh], axis=-1)
    else:
        # second factor sits on the equator of S^(n2+1), a great sphere S^(n+1) in S^(n+2)
        ambient = join_sphere(n1, n2 + 1)
        equatorial = np.full(chart.shape + (1,), math.pi / 2)
        components = np.concatenate([eta0, mesh[..., :n1], equatorial, mesh[..., n1:]], axis=-1)
    imm = Immersion(chart, ambient, components, order, f"clifford_torus({n1},{n2})")

    source = "minimal product S^n1(sqrt(n1/n)) x S^n2(sqrt(n2/n))"
    refs = [
        Reference("phi_norm_sq", float(n), source),
        Reference("mean_curvature", 0.0, source, signed=False),
    ]
    if params.codimension == 1:
        lambda_1, lambda_2 = math.sqrt(n2 / n1), -math.sqrt(n1 / n2)
        principal = np.broadcast_to(np.sort([lambda_1] * n1 + [lambda_2] * n2), chart.shape + (n,))
        refs.append(Reference("principal_curvatures", principal, source, signed=False))
        refs.append(Reference("normal_ricci", float(n), "Ric-bar = n g-bar on the unit S^(n+1)"))
    return imm, refs


def equator(params: p.EquatorParams, resolution: Optional[int], order: int) -> Built:
    n = params.n
    chart = sphere_chart(n, resolve_resolution(resolution, n))
    mesh = chart.mesh
    components = np.concatenate([np.full(chart.shape + (1,), math.pi / 2), mesh], axis=-1)
    imm = Immersion(chart, hyperspherical_sphere(n + 1), components, order, f"equator({n})")
    refs = [
        Reference("phi_norm_sq", 0.0, "totally geodesic"),
        Reference("mean_curvature", 0.0, "totally geodesic", signed=False),
        Reference("normal_ricci", float(n), "Ric-bar = n g-bar on the unit S^(n+1)"),
    ]
    return imm, refs


def round_sphere_in_flat(params: p.RoundSphereInFlatParams, resolution: Optional[int], order: int) -> Built:
    n, r = params.n, params.r
    chart = sphere_chart(n, resolve_resolution(resolution, n))
    components = r * sphere_points(chart.mesh, n)
    imm = Immersion(
        chart,
        AmbientSpace(f"R^{n + 1}", FlatMetric(n + 1)),
        components,
        order,
        f"round_sphere_in_flat({n},{r:g})",
        normal_reference=-components,
    )
    source = "inward normal: phi = g / r"
    refs = [
        Reference("phi_norm_sq", n / r**2, source),
        Reference("mean_curvature", 1.0 / r, source),
        Reference("principal_curvatures", np.full(chart.shape + (n,), 1.0 / r), source),
    ]
    return imm, refs


def flat_subtorus(params: p.FlatSubtorusParams, resolution: Optional[int], order: int) -> Built:
    chart = ChartGrid.box([2.0 * math.pi] * 2, resolve_resolution(resolution, 2))
    mesh = chart.mesh
    components = np.concatenate([mesh, np.full(chart.shape + (1,), params.z0)], axis=-1)
    imm = Immersion(chart, flat_three_torus(), components, order, f"flat_subtorus({params.z0:g})")
    refs = [
        Reference("phi_norm_sq", 0.0, "flat slice"),
        Reference("mean_curvature", 0.0, "flat slice", signed=False),
        Reference("normal_ricci", 0.0, "flat ambient"),
    ]
    return imm, refs


def graph_fields(epsilon: float, mesh: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form H and ||phi||^2 of the graph of epsilon sin x cos y, upward normal."""
    x, y = mesh[..., 0], mesh[..., 1]
    grad = np.stack([epsilon * np.cos(x) * np.cos(y), -epsilon * np.sin(x) * np.sin(y)], axis=-1)
    fxx = -epsilon * np.sin(x) * np.cos(y)
    fxy = -epsilon * np.cos(x) * np.sin(y)
    hess = np.stack([np.stack([fxx, fxy], -1), np.stack([fxy, fxx], -1)], -2)
    w_sq = 1.0 + np.einsum("...i,...i->...", grad, grad)
    phi = hess / np.sqrt(w_sq)[..., None, None]
    g_inv = np.eye(2) - np.einsum("...i,...j->...ij", grad, grad) / w_sq[..., None, None]
    mean = 0.5 * np.einsum("...ij,...ij->...", g_inv, phi)
    norm_sq = np.einsum("...ik,...jl,...ij,...kl->...", g_inv, g_inv, phi, phi)
    return mean, norm_sq


def graph_hypersurface(params: p.GraphHypersurfaceParams, resolution: Optional[int], order: int) -> Built:
    eps = params.epsilon
    chart = ChartGrid.box([2.0 * math.pi] * 2, resolve_resolution(resolution, 2))
    mesh = chart.mesh
    height = eps * np.sin(mesh[..., 0]) * np.cos(mesh[..., 1])
    components = np.concatenate([mesh, height[..., None]], axis=-1)
    imm = Immersion(chart, flat_three_torus(), components, order, f"graph_hypersurface({eps:g})")
    mean, norm_sq = graph_fields(eps, mesh)
    source = "graph formulas phi = Hess f / W"
    refs = [
        Reference("mean_curvature", mean, source, signed=False),
        Reference("phi_norm_sq", norm_sq, source),
        Reference("normal_ricci", 0.0, "flat ambient"),
    ]
    return imm, refs


# Maps


def _map_references(energy: float, tension: float, source: str) -> List[Reference]:
    return [
        Reference("energy_density", energy, source),
        Reference("tension_norm", tension, source),
    ]


def identity_map(params: p.IdentityMapParams, resolution: Optional[int], order: int) -> Built:
    manifold, _ = _manifold(params.manifold, params.manifold_params, resolution, order)
    chart = manifold.chart
    n = chart.dim
    f = SmoothMap.from_components(
        manifold,
        manifold,
        chart.mesh,
        differential=np.broadcast_to(np.eye(n), chart.shape + (n, n)).copy(),
        second_derivatives=np.zeros(chart.shape + (n, n, n)),
        order=order,
        name=f"identity({params.manifold})",
    )
    return f, _map_references(n / 2.0, 0.0, "e = n/2, harmonic")


def constant_map(params: p.ConstantMapParams, resolution: Optional[int], order: int) -> Built:
    manifold, _ = _manifold(params.manifold, params.manifold_params, resolution, order)
    chart = manifold.chart
    n = chart.dim
    if params.point is None:
        point = chart.node_coordinates([r // 2 for r in chart.resolution])
    else:
        point = np.asarray(params.point, dtype=float)
        if point.shape != (n,):
            raise InvalidParameters(f"point needs {n} coordinates")
    f = SmoothMap.from_components(
        manifold,
        manifold,
        np.broadcast_to(point, chart.shape + (n,)).copy(),
        differential=np.zeros(chart.shape + (n, n)),
        second_derivatives=np.zeros(chart.shape + (n, n, n)),
        order=order,
        name=f"constant({params.manifold})",
    )
    return f, _map_references(0.0, 0.0, "df = 0")


def linear_torus_map(params: p.LinearTorusMapParams, resolution: Optional[int], order: int) -> Built:
    matrix = np.asarray(params.matrix, dtype=float)
    n = matrix.shape[0]
    torus, _ = flat_torus(p.FlatTorusParams(n=n), resolution, order)
    chart = torus.chart
    f = SmoothMap.from_components(
        torus,
        torus,
        chart.mesh @ matrix.T,
        differential=np.broadcast_to(matrix.T, chart.shape + (n, n)).copy(),
        second_derivatives=np.zeros(chart.shape + (n, n, n)),
        order=order,
        name="linear_torus_map",
    )
    return f, _map_references(0.5 * float(np.sum(matrix**2)), 0.0, "e = 1/2 |A|_F^2, affine")


def circle_to_sphere(params: p.CircleToSphereParams, resolution: Optional[int], order: int) -> Built:
    theta0 = params.theta0
    sphere = charted("round_sphere", sphere_chart(2, CODOMAIN_RESOLUTION), HypersphericalMetric(2))
    lo, hi = sphere.chart.bounds[0]
    if not lo <= theta0 <= hi:
        raise InvalidParameters(f"theta0 must lie in [{lo:.6g}, {hi:.6g}]")
    circle = charted("circle", ChartGrid.box([2.0 * math.pi], resolve_resolution(resolution, 1)), FlatMetric(1))
    chart = circle.chart
    components = np.concatenate([np.full(chart.shape + (1,), theta0), chart.mesh], axis=-1)
    differential = np.zeros(chart.shape + (1, 2))
    differential[..., 0, 1] = 1.0
    f = SmoothMap.from_components(
        circle,
        sphere,
        components,
        differential=differential,
        second_derivatives=np.zeros(chart.shape + (1, 1, 2)),
        order=order,
        name=f"circle_to_sphere({theta0:g})",
    )
    s, c = math.sin(theta0), math.cos(theta0)
    return f, _map_references(0.5 * s * s, abs(s * c), "latitude circle: tau = -sin cos d_theta")


def equator_map(params: p.EquatorMapParams, resolution: Optional[int], order: int) -> Built:
    n = params.n
    domain, _ = round_sphere(p.RoundSphereParams(n=n), resolution, order)
    codomain = charted(f"S^{n + 1}", sphere_chart(n + 1, CODOMAIN_RESOLUTION), HypersphericalMetric(n + 1))
    chart = domain.chart
    components = np.concatenate([np.full(chart.shape + (1,), math.pi / 2), chart.mesh], axis=-1)
    differential = np.zeros(chart.shape + (n, n + 1))
    for i in range(n):
        differential[..., i, i + 1] = 1.0
    f = SmoothMap.from_components(
        domain,
        codomain,
        components,
        differential=differential,
        second_derivatives=np.zeros(chart.shape + (n, n, n + 1)),
        order=order,
        name=f"equator_map({n})",
    )
    return f, _map_references(n / 2.0, 0.0, "totally geodesic isometric inclusion")
