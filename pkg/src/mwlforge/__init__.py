"""Exact lattice and Weierstrass computations for the elliptic fibrations
of the singular K3 surface of discriminant -12 that come from the Niemeier
lattices N(D6^4) and N(A9^2 D6).
"""

__version__ = "0.1.0"
