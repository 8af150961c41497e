"""
Verification checks: registry, dispatch, reports and convergence studies.
"""
