"""Exact computation in finitely generated virtually free groups.

Groups are presented as finite graphs of finite groups; the package
computes Britton normal forms, Bass-Serre tree geometry, deformation-space
moves, equivariant folds, Whitehead/filling certificates, random-walk
genericity experiments, and first-order formula emitters, plus a CLI.
"""

__version__ = "0.1.0"
