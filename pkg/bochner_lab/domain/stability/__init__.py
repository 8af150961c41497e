"""
Stability domain package.

The Jacobi operator of a hypersurface, its extreme eigenvalues and the
superharmonic and rigidity checks built on it.
"""
