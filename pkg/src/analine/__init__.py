"""Computations on the analytic line over the complex numbers.

Normed series rings with certified weighted norms, their splitting,
division and duality maps, an evaluation-point model of the Berkovich
spectrum of finitely presented complex algebras, a region lattice with
a pointwise axiom suite, and a symbolic site of discrete Huber pairs.
"""

__version__ = "0.1.0"
