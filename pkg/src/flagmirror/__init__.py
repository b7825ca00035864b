"""Exact-arithmetic toolkit for Landau-Ginzburg models on flag varieties.

Subpackages cover the coefficient domains (:mod:`flagmirror.scalars`),
Weyl-group combinatorics (:mod:`flagmirror.weyl`), generic matrices and
planar-network minors (:mod:`flagmirror.matrices`), Lusztig-style charts on
the decorated group (:mod:`flagmirror.charts`), quiver decorations and
Toeplitz-style factorizations (:mod:`flagmirror.quiver`,
:mod:`flagmirror.toeplitz`), and the tropical side: superpotential polytopes
and ideal fillings (:mod:`flagmirror.tropical`).
"""

__version__ = "0.1.0"
