"""
bochner-lab

A numerical verification engine for Bochner-technique identities and rigidity
hypotheses on coordinate-chart geometries.
"""

__version__ = "0.1.0"
