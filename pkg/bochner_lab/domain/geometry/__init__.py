"""
Geometry domain package.

Chart discretization, metric and curvature fields, and the differential
operators every other domain consumes.
"""
