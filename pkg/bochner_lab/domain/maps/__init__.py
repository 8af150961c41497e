"""
Maps domain package.

Differential, energy, map Hessian, Bochner-type residuals and curvature
hypothesis checks for smooth maps between charted manifolds.
"""
