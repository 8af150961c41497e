"""
Registry of catalog entries.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Type

from bochner_lab.core.exceptions import UnknownEntry
from bochner_lab.domain.catalog.models.entry import EntryKind
from bochner_lab.domain.catalog.schemas import parameters as p
from bochner_lab.domain.catalog.services import builders as b


@dataclass(frozen=True)
class CatalogSpec:
    """Name, kind, parameter schema and builder of one entry."""

    name: str
    kind: EntryKind
    params_model: Type[p.EntryParams]
    builder: Callable
    description: str
    dim: Optional[int] = None


DEFAULT_SPECS = [
    CatalogSpec("flat_torus", EntryKind.MANIFOLD, p.FlatTorusParams, b.flat_torus,
                "Flat torus R^n / (sides) Z^n"),
    CatalogSpec("round_sphere", EntryKind.MANIFOLD, p.RoundSphereParams, b.round_sphere,
                "Round n-sphere of radius r in a lat-long chart"),
    CatalogSpec("product_sphere", EntryKind.MANIFOLD, p.ProductSphereParams, b.product_sphere,
                "Riemannian product S^2(r1) x S^2(r2)", dim=4),
    CatalogSpec("clifford_torus", EntryKind.IMMERSION, p.CliffordTorusParams, b.clifford_torus,
                "Minimal S^n1(sqrt(n1/n)) x S^n2(sqrt(n2/n)) in the unit sphere"),
    CatalogSpec("equator", EntryKind.IMMERSION, p.EquatorParams, b.equator,
                "Totally geodesic S^n in S^(n+1)"),
    CatalogSpec("round_sphere_in_flat", EntryKind.IMMERSION, p.RoundSphereInFlatParams,
                b.round_sphere_in_flat, "Umbilical S^n(r) in R^(n+1), inward normal"),
    CatalogSpec("flat_subtorus", EntryKind.IMMERSION, p.FlatSubtorusParams, b.flat_subtorus,
                "Slice z = z0 of the flat 3-torus", dim=2),
    CatalogSpec("graph_hypersurface", EntryKind.IMMERSION, p.GraphHypersurfaceParams,
                b.graph_hypersurface, "Graph of epsilon sin x cos y in the flat 3-torus", dim=2),
    CatalogSpec("identity_map", EntryKind.MAP, p.IdentityMapParams, b.identity_map,
                "Identity of a catalog manifold"),
    CatalogSpec("constant_map", EntryKind.MAP, p.ConstantMapParams, b.constant_map,
                "Constant map of a catalog manifold to a point"),
    CatalogSpec("linear_torus_map", EntryKind.MAP, p.LinearTorusMapParams, b.linear_torus_map,
                "x -> A x on the flat torus, A integer"),
    CatalogSpec("circle_to_sphere", EntryKind.MAP, p.CircleToSphereParams, b.circle_to_sphere,
                "Latitude circle theta = theta0 in the unit S^2", dim=1),
    CatalogSpec("equator_map", EntryKind.MAP, p.EquatorMapParams, b.equator_map,
                "Equatorial inclusion S^n -> S^(n+1)"),
]


class CatalogRepository:
    """
    Lookup of catalog specs by name.
    """

    def __init__(self, specs: Optional[List[CatalogSpec]] = None):
        """
        Initialize the repository.

        Args:
            specs: Entries to register, the built-in catalog by default
        """
        specs = DEFAULT_SPECS if specs is None else specs
        self._specs: Dict[str, CatalogSpec] = {spec.name: spec for spec in specs}

    def get(self, name: str) -> CatalogSpec:
        """
        Get a spec by name.

        Raises:
            UnknownEntry: if the name is not registered
        """
        try:
            return self._specs[name]
        except KeyError:
            raise UnknownEntry(name) from None

    def names(self) -> List[str]:
        return sorted(self._specs)

    def all(self) -> List[CatalogSpec]:
        return [self._specs[name] for name in self.names()]

    def __contains__(self, name: str) -> bool:
        return name in self._specs
