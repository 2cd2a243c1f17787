"""Exact equivariant K-ring computations for quasitoric manifolds.

The package works entirely over the integers: Smith normal forms of
characteristic data, sparse Laurent polynomial arithmetic for
representation rings, fixed-point restriction tuples, and the
K-theoretic face ring of a simple polytope, together with the explicit
isomorphism between the two presentations.
"""

__version__ = "0.1.0"
