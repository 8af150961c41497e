"""
Check services.
"""
