"""Deterministic combinatorial fixtures used across the package and tests.

The main export is the genus-2 pair: a triangulated closed genus-2 surface
with 4 vertices, 18 edges and 12 triangles, together with the maximal
generic train track dual to it (every complementary region a trigon, weight
space of dimension 6).  It is produced from the standard one-vertex octagon
triangulation of the genus-2 surface by splitting three alternating fan
triangles at an interior point; each split vertex collects exactly three
region cusps, and the three unsplit triangles leave three cusps at the
original vertex.
"""

from isocone.track import SurfaceTriangulation, track_dual_to_triangulation
from isocone.cone3 import FACE_CYCLES, Triangulation3


def genus2_one_vertex_surface():
    """One-vertex triangulation of the closed genus-2 surface.

    Fan triangulation of the octagon with side word a b a~ b~ c d c~ d~:
    six triangles, nine undirected edges, a single vertex.
    """
    triangles = {
        "T0": ("s0", "s1", "G1"),
        "T1": ("g1", "s2", "G2"),
        "T2": ("g2", "s3", "G3"),
        "T3": ("g3", "s4", "G4"),
        "T4": ("g4", "s5", "G5"),
        "T5": ("g5", "s6", "s7"),
    }
    glu = {}
    for x, y in [("s0", "s2"), ("s1", "s3"), ("s4", "s6"), ("s5", "s7"),
                 ("g1", "G1"), ("g2", "G2"), ("g3", "G3"), ("g4", "G4"),
                 ("g5", "G5")]:
        glu[x] = y
        glu[y] = x
    return SurfaceTriangulation(triangles, glu)


def split_triangle(surface, t, tag):
    """Replace triangle ``t`` by three triangles around a new interior vertex.

    New directed edges are named ``(tag, 'in'|'out', i)``: the spoke toward
    the new vertex from corner i, and back.  The ccw orientation of the
    three sub-triangles matches the original.
    """
    ds = surface.triangles[t]
    triangles = {k: v for k, v in surface.triangles.items() if k != t}
    glu = dict(surface.glue)
    for i in range(3):
        d = ds[i]
        tri = (d, (tag, "in", (i + 1) % 3), (tag, "out", i))
        triangles[f"{t}.{i}"] = tri
    for i in range(3):
        glu[(tag, "in", i)] = (tag, "out", i)
        glu[(tag, "out", i)] = (tag, "in", i)
    return SurfaceTriangulation(triangles, glu)


def genus2_four_vertex_surface():
    """Genus-2 surface with 4 vertices, 18 edges, 12 triangles."""
    surf = genus2_one_vertex_surface()
    for t in ("T1", "T3", "T5"):
        surf = split_triangle(surf, t, f"p{t}")
    return surf


def genus2_maximal_track():
    """Maximal generic track on the genus-2 surface, with its dual data.

    Returns ``(track, surface, edge_to_branch, outgoing)`` where the dual
    triangulation of the track is ``surface`` (branch ids are its edge
    classes).  All four complementary regions are trigons and the admissible
    weight space has dimension 6.
    """
    surf = genus2_four_vertex_surface()
    outgoing = {}
    for t in surf.triangles:
        if "." in t:
            # sub-triangle of a split: the original (outer) edge sits in
            # slot 0, both spokes incoming, cusp at the new vertex
            outgoing[t] = 0
        else:
            outgoing[t] = 0
    track, edge_to_branch = track_dual_to_triangulation(surf, outgoing)
    return track, surf, edge_to_branch, outgoing


# -- 3-manifold fixtures -------------------------------------------------------


def reversing_gluing(f1, f2, rotation=0):
    """An orientation-reversing corner bijection between two faces.

    Maps the induced corner cycle of ``f1`` onto the reversed induced
    cycle of ``f2``; ``rotation`` in 0..2 picks among the three such maps.
    """
    c1 = FACE_CYCLES[f1]
    c2 = tuple(reversed(FACE_CYCLES[f2]))
    return {c1[k]: c2[(k + rotation) % 3] for k in range(3)}


def glue_tets(gluings, t1, f1, t2, f2, rotation=0):
    perm = reversing_gluing(f1, f2, rotation)
    gluings[(t1, f1)] = (t2, f2, perm)
    gluings[(t2, f2)] = (t1, f1, {v: k for k, v in perm.items()})


def single_tet():
    return Triangulation3(["T0"], {})


def two_tets():
    """Two tetrahedra glued along one face; boundary is a 2-sphere."""
    glu = {}
    glue_tets(glu, "T0", 0, "T1", 0)
    return Triangulation3(["T0", "T1"], glu)


def chain_tets(n):
    """A chain of n tetrahedra, consecutive ones glued along one face."""
    glu = {}
    for k in range(n - 1):
        glue_tets(glu, f"T{k}", 0, f"T{k+1}", 1)
    return Triangulation3([f"T{k}" for k in range(n)], glu)


# -- the genus-2 product bundle ---------------------------------------------------


def g2_product_bundle():
    """Product of the genus-2 fixture surface with an interval, plus track.

    Returns a dict with the product data, a manifold whose tetrahedra have
    plain string names (prism of triangle t, piece k, named "t.k"), the
    matching dual tracks on both boundary copies as an ``outgoing`` map,
    and the per-copy boundary-edge correspondences.
    """
    from isocone.cone3 import product_triangulation, Triangulation3 as T3, \
        BoundaryTrack
    track, g2, e2b, outgoing = genus2_maximal_track()
    prod = product_triangulation(g2)

    name = {tet: f"{tet[0]}.{tet[1]}" for tet in prod.manifold.tets}
    gluings = {}
    for (tet, f), (tet2, f2, perm) in prod.manifold.gluings.items():
        gluings[(name[tet], f)] = (name[tet2], f2, dict(perm))
    manifold = T3(name.values(), gluings)

    out = {}
    for t, slot in outgoing.items():
        (tet, f), smap = prod.bottom[t]
        out[(name[tet], f)] = smap[slot]
        (tet2, f2), smap2 = prod.top[t]
        out[(name[tet2], f2)] = smap2[slot]

    def renamed_edge(dedge):
        tet, f, kk = dedge
        return manifold.boundary.edge_class[(name[tet], f, kk)]

    bottom_edge_of = {E: renamed_edge(prod.bottom_dedge_of[E])
                      for E in g2.edge_classes}
    top_edge_of = {E: renamed_edge(prod.top_dedge_of[E])
                   for E in g2.edge_classes}
    return {
        "surface": g2,
        "track": track,
        "manifold": manifold,
        "outgoing": out,
        "boundary_track": BoundaryTrack(manifold, out),
        "bottom_edge_of": bottom_edge_of,
        "top_edge_of": top_edge_of,
    }


def mf_weight(track, rng, hi=6):
    """A random nonnegative admissible weight, by rejection on the basis."""
    from fractions import Fraction
    basis = track.weight_space_basis()
    while True:
        w = {e: Fraction(0) for e in track.branches}
        for vec in basis:
            c = Fraction(rng.randint(0, hi), rng.randint(1, 3))
            for e, val in vec.items():
                w[e] += c * val
        if all(v >= 0 for v in w.values()):
            return w


def diagonal_boundary_weight(bundle, w):
    """Push one admissible surface weight to both boundary copies."""
    from fractions import Fraction
    wb = {E: Fraction(0)
          for E in bundle["manifold"].boundary.edge_classes}
    for E, val in w.items():
        wb[bundle["bottom_edge_of"][E]] = val
        wb[bundle["top_edge_of"][E]] = val
    return wb
