"""Inhomogeneous polynuclear growth / last passage percolation toolkit.

Simulation, exact brute-force oracles, finite determinantal distribution
formulas and their KPZ-scaling limits.
"""

__version__ = "0.1.0"
