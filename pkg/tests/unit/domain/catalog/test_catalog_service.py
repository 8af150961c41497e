"""
Unit tests for the geometry catalog.
"""

import math

import pytest

from bochner_lab.core.exceptions import InvalidParameters, UnknownEntry
from bochner_lab.domain.catalog.models.entry import EntryKind
from bochner_lab.domain.catalog.repositories.catalog_repository import CatalogRepository
from bochner_lab.domain.maps.models.smooth_map import ChartedManifold, SmoothMap
from bochner_lab.domain.submanifolds.models.immersion import Immersion

ENTRY_NAMES = [
    "circle_to_sphere",
    "clifford_torus",
    "constant_map",
    "equator",
    "equator_map",
    "flat_subtorus",
    "flat_torus",
    "graph_hypersurface",
    "identity_map",
    "linear_torus_map",
    "product_sphere",
    "round_sphere",
    "round_sphere_in_flat",
]


class TestCatalogRepository:
    """Test suite for CatalogRepository."""

    def test_names_are_sorted(self):
        assert CatalogRepository().names() == ENTRY_NAMES

    def test_unknown_name(self):
        with pytest.raises(UnknownEntry) as exc_info:
            CatalogRepository().get("klein_bottle")

        assert exc_info.value.name == "klein_bottle"
        assert exc_info.value.exit_code == 4

    def test_custom_specs(self):
        repository = CatalogRepository(specs=[])

        assert "flat_torus" not in repository
        assert repository.all() == []


class TestBuild:
    """Test suite for CatalogService.build."""

    @pytest.mark.parametrize(
        "name, kind, instance_type",
        [
            ("flat_torus", EntryKind.MANIFOLD, ChartedManifold),
            ("clifford_torus", EntryKind.IMMERSION, Immersion),
            ("circle_to_sphere", EntryKind.MAP, SmoothMap),
        ],
    )
    def test_kinds(self, build_entry, name, kind, instance_type):
        entry = build_entry(name)

        assert entry.kind is kind
        assert isinstance(entry.instance, instance_type)

    def test_defaults_are_recorded(self, build_entry):
        entry = build_entry("circle_to_sphere")

        assert entry.params == {"theta0": pytest.approx(math.pi / 2)}

    def test_default_resolution_is_capped(self, catalog):
        assert catalog.build("product_sphere").resolution == 12
        assert catalog.build("round_sphere", {"n": 3}).resolution == 16

    def test_unknown_key_rejected(self, build_entry):
        with pytest.raises(InvalidParameters) as exc_info:
            build_entry("flat_torus", radius=1.0)

        assert "flat_torus" in exc_info.value.detail

    @pytest.mark.parametrize(
        "name, params",
        [
            ("flat_torus", {"n": 2, "sides": [1.0]}),
            ("round_sphere", {"r": -1.0}),
            ("clifford_torus", {"n1": 3, "n2": 2}),
            ("linear_torus_map", {"matrix": [[1, 0, 0], [0, 1, 0]]}),
            ("circle_to_sphere", {"theta0": 0.0}),
        ],
    )
    def test_invalid_parameters(self, build_entry, name, params):
        with pytest.raises(InvalidParameters):
            build_entry(name, **params)


class TestReferences:
    """Test suite for describe and reference_check."""

    def test_list_entries(self, catalog):
        listing = catalog.list_entries()

        assert [item["name"] for item in listing] == ENTRY_NAMES
        assert all(item["description"] for item in listing)

    def test_describe(self, catalog):
        description = catalog.describe("round_sphere", {"r": 2.0})

        values = {ref.quantity: ref.value for ref in description.references}
        assert description.kind == "manifold"
        assert values["sec_min"] == pytest.approx(0.25)
        assert values["scalar"] == pytest.approx(0.5)
        assert "r" in description.parameters["properties"]

    def test_describe_field_reference(self, catalog):
        description = catalog.describe("graph_hypersurface")

        values = {ref.quantity: ref.value for ref in description.references}
        assert values["mean_curvature"] is None
        assert values["normal_ricci"] == 0.0

    @pytest.mark.parametrize(
        "name, params",
        [
            ("flat_torus", {}),
            ("round_sphere", {}),
            ("clifford_torus", {}),
            ("equator", {}),
            ("flat_subtorus", {"z0": 1.0}),
            ("linear_torus_map", {"matrix": [[2, 1], [1, 1]]}),
            ("identity_map", {"manifold": "flat_torus"}),
            ("constant_map", {}),
        ],
    )
    def test_reference_check_passes(self, catalog, build_entry, name, params):
        report = catalog.reference_check(build_entry(name, **params))

        assert report.passes, [row for row in report.rows if not row.passes]
        assert report.rows

    def test_reference_check_at_other_resolution(self, catalog, build_entry):
        entry = build_entry("clifford_torus")

        report = catalog.reference_check(entry, resolution=24)

        assert report.resolution == 24
        rows = {row.quantity: row for row in report.rows}
        assert rows["phi_norm_sq"].deviation < 1e-8
        assert rows["principal_curvatures"].expected is None
