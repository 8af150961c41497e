"""
Catalog domain package.

Named, parameterized geometries with closed-form reference values:
manifolds, maps between them and immersions into ambient spaces.
"""
