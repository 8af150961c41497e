import math

import factory

from bochner_lab.domain.geometry.schemas.chart import ChartGrid


class ChartGridFactory(factory.Factory):
    """
    Factory for chart grids.

    Usage:
        # Periodic 2D box of side 2*pi, 16 nodes per axis
        chart = ChartGridFactory()

        # 3D box at 12 nodes per axis
        chart = ChartGridFactory(resolution=[12, 12, 12])

        # Lat-long chart of the 2-sphere
        chart = ChartGridFactory(sphere=True)
    """

    class Meta:
        model = ChartGrid

    class Params:
        side = 2.0 * math.pi
        sphere = factory.Trait(
            bounds=[(0.01 * math.pi, 0.99 * math.pi), (0.0, 2.0 * math.pi)],
            periodic=[False, True],
            margin=[0.05, 0.0],
        )

    resolution = factory.LazyFunction(lambda: [16, 16])
    dim = factory.LazyAttribute(lambda o: len(o.resolution))
    bounds = factory.LazyAttribute(lambda o: [(0.0, o.side)] * o.dim)
    periodic = factory.LazyAttribute(lambda o: [True] * o.dim)
    margin = factory.LazyAttribute(lambda o: [0.0] * o.dim)
