"""Tetrahedron forms, cancellation, and the isotropic boundary cone.

Weights on a triangulated 3-manifold live on its edge classes.  Summing
each tetrahedron's alternating form gives a 2-form that only sees the
boundary: interior faces appear twice with opposite orientations and
cancel.  Choosing one opposite-pair equality per tetrahedron cuts out a
subspace on which that form vanishes; restricting the union of these
subspaces to the boundary and intersecting with a dual train track's
admissible cone yields the piecewise linear boundary cone, with exact
rational membership certificates.
"""

import itertools
import random
from fractions import Fraction

from isocone.fixtures import (
    two_tets, chain_tets, g2_product_bundle, mf_weight,
    diagonal_boundary_weight,
)
from isocone.cone3 import member, verify_witness, compute_cone, BoundaryTrack


def main():
    print("== cancellation on two glued tetrahedra ==")
    m = two_tets()
    rng = random.Random(0)
    u = {c: Fraction(rng.randint(-5, 5)) for c in m.edge_classes}
    v = {c: Fraction(rng.randint(-5, 5)) for c in m.edge_classes}
    print("Omega(u, v)                 =", m.omega(u, v))
    print("boundary form of restrictions =",
          m.boundary_form(m.restrict(u), m.restrict(v)))

    print()
    print("== choice subspaces of a 4-tetrahedron chain ==")
    m4 = chain_tets(4)
    dims = set()
    for combo in itertools.product(range(3), repeat=4):
        choices = dict(zip(m4.tets, combo))
        assert m4.isotropy_check(choices)
        dims.add(len(m4.w4_subspace(choices)))
    print("all 81 subspaces are isotropic; dimensions seen:", sorted(dims))

    print()
    print("== the genus-2 product and its diagonal ==")
    bundle = g2_product_bundle()
    m = bundle["manifold"]
    btrack = bundle["boundary_track"]
    print("tetrahedra:", len(m.tets))
    print("boundary components:",
          [(c["genus"], "torus" if c["torus"] else "higher genus")
           for c in m.boundary_components])
    print("boundary weight space dimension:", btrack.weight_space_dim())

    w = mf_weight(bundle["track"], random.Random(1))
    wb = diagonal_boundary_weight(bundle, w)
    res = member(m, btrack, wb)
    print("diagonal weight is in the cone:", res.member)
    print("witness verified by substitution:",
          verify_witness(m, btrack, wb, res))
    interior = [c for c in m.edge_classes
                if res.witness[c] != 0 and c not in m.torus_classes]
    print("nonzero witness entries:", len(interior), "of", len(m.edge_classes))

    print()
    print("== a sampled union of cone components ==")
    rng = random.Random(2)
    sampled = (tuple(rng.randrange(3) for _ in m.tets) for _ in range(25))
    cone = compute_cone(m, btrack, choice_iter=sampled)
    by_dim = {}
    for comp in cone.components:
        by_dim[comp["dimension"]] = by_dim.get(comp["dimension"], 0) + 1
    print("components by dimension:", dict(sorted(by_dim.items())))
    print("all within half the weight-space dimension:",
          all(c["dimension"] <= btrack.weight_space_dim() / 2
              for c in cone.components))


if __name__ == "__main__":
    main()
