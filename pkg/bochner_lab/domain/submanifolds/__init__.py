"""
Submanifolds domain package.

Second fundamental form, mean curvature, Simons and Codazzi identities and
the pinching bound for immersions into ambient manifolds.
"""
