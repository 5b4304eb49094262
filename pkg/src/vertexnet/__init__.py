"""Exact verification of the vertex-model description of electrical networks.

Boundary measurement matrices of standard networks are built from
elementary symplectic generators; the package checks, in exact rational
arithmetic, the algebraic and positivity facts around them.
"""

__version__ = "0.1.0"
