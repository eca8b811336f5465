"""Exact tools for weight spaces on triangulated surfaces and 3-manifolds.

The package is organized around five computational layers:

- ``ordgroup``: exact rational scalars and lexicographically ordered tuples,
  the value group of every metric quantity in the package;
- ``lamtree``: finite metric trees over those scalars, the four-point
  condition, and pushing maps toward a distinguished end;
- ``track``: train tracks on oriented surfaces, their weight spaces, the
  skew pairing on weights, and dual triangulations;
- ``cone3``: triangulated 3-manifolds with boundary, tetrahedron forms,
  the per-tetrahedron opposite-pair subspaces, and the resulting
  piecewise linear boundary cone with exact membership tests;
- ``flatsurf``: surfaces glued from rational Euclidean triangles,
  Delaunay retriangulation, dual train tracks, and three independent
  exact evaluations of the symplectic pairing on period deformations.

All arithmetic outside the clearly marked quadrature helper is exact.
"""

from isocone import ordgroup, lamtree, track, cone3, flatsurf

__all__ = ["ordgroup", "lamtree", "track", "cone3", "flatsurf"]
__version__ = "0.1.0"
