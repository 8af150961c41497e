import factory

from bochner_lab.domain.checks.schemas.report import GeometrySpec
from bochner_lab.domain.checks.schemas.run_config import RunConfig
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig


class GeometrySpecFactory(factory.Factory):
    """
    Factory for geometry selections.

    Usage:
        spec = GeometrySpecFactory(name="clifford_torus", params={"n1": 1, "n2": 2})
    """

    class Meta:
        model = GeometrySpec

    name = "flat_torus"
    params = factory.LazyFunction(dict)


class RunConfigFactory(factory.Factory):
    """
    Factory for run configurations with small, fast defaults.

    Usage:
        config = RunConfigFactory(resolution=32, order=4)
    """

    class Meta:
        model = RunConfig

    resolution = 16
    resolutions = factory.LazyFunction(lambda: [16, 32, 64])
    order = 2
    tol = None
    seed = 0
    strict = False
    threads = 2
    solver = factory.LazyFunction(SolverConfig)
