"""
Test utilities for common test operations.
"""
