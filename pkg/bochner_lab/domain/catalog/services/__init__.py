"""
Catalog services.
"""
