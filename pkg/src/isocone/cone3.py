"""Triangulated oriented 3-manifolds with boundary and their weight cones.

A ``Triangulation3`` is a set of abstract tetrahedra with corner slots
0..3, oriented by the slot order, glued along faces by corner bijections
(face ``f`` is opposite corner ``f``).  Gluings must be involutive and
orientation-reversing across each face, which makes the complex an
oriented 3-manifold with boundary; the unglued faces assemble into a
closed oriented ``SurfaceTriangulation``.

Weights live on the edge classes (tetrahedron edges identified by the
gluings).  Each oriented tetrahedron carries an alternating 2-form in the
sums of its three opposite-edge pairs; the sum of these forms over all
tetrahedra coincides with the per-triangle form of the boundary
restriction, because interior faces appear twice with opposite
orientations and cancel.

For every choice of one pair-sum equality per tetrahedron there is a
linear subspace of weights (with torus boundary components pinned to
zero); each such subspace is isotropic for the total form.  Restricting
the union of these subspaces to the boundary and intersecting with the
switch relations and nonnegativity of a dual train track on the boundary
yields a finite union of polyhedral cones; membership of a boundary weight
is an exact rational feasibility question over the choices.
"""

import itertools
from fractions import Fraction

from isocone import linalg
from isocone.ordgroup import rat
from isocone.track import (
    SurfaceTriangulation, TrainTrack, track_dual_to_triangulation,
    triangle_form_sum,
)

# induced oriented corner triples of the four faces of a positively
# oriented tetrahedron (face f is opposite corner f)
FACE_CYCLES = {
    0: (1, 2, 3),
    1: (0, 3, 2),
    2: (0, 1, 3),
    3: (0, 2, 1),
}


class GluingError(ValueError):
    pass


class OrientationError(ValueError):
    pass


def _edge_pairs():
    return [frozenset(p) for p in itertools.combinations(range(4), 2)]


def opposite_pairs():
    """The three opposite-edge pairs of a tetrahedron, in form order.

    The first members run around an induced boundary face, so the cyclic
    order of the three pairs is the one entering the tetrahedron form.
    Face 3 of the standard tetrahedron is the cycle (0, 2, 1); its edges
    {0,2}, {2,1}, {1,0} are completed by the opposite edges {1,3}, {0,3},
    {2,3}.
    """
    x, y, z = FACE_CYCLES[3]
    first = [frozenset((x, y)), frozenset((y, z)), frozenset((z, x))]
    return [(e, frozenset(range(4)) - e) for e in first]


OPPOSITE_PAIRS = opposite_pairs()


def tet_form_values(u_edges, v_edges):
    """Alternating form of one oriented tetrahedron on two edge weights.

    ``u_edges`` and ``v_edges`` map each corner pair (frozenset) to a
    rational.  The value is -1/2 of the cyclic sum of wedges of the three
    opposite-pair sums.
    """
    A = [(rat(u_edges[e]) + rat(u_edges[e2]),
          rat(v_edges[e]) + rat(v_edges[e2])) for e, e2 in OPPOSITE_PAIRS]
    total = Fraction(0)
    for i in range(3):
        (ui, vi), (uj, vj) = A[i], A[(i + 1) % 3]
        total += ui * vj - uj * vi
    return -total / 2


class Triangulation3:
    """Oriented tetrahedra with involutive, orientation-reversing gluings.

    ``tets`` is an iterable of tetrahedron ids.  ``gluings`` maps
    ``(tet, face)`` to ``(tet2, face2, perm)`` where ``perm`` maps the
    three corner slots of the face to corner slots of the target face.
    """

    def __init__(self, tets, gluings):
        self.tets = sorted(tets, key=repr)
        if not self.tets:
            raise ValueError("need at least one tetrahedron")
        self.gluings = {}
        for (t, f), (t2, f2, perm) in gluings.items():
            self.gluings[(t, f)] = (t2, f2, dict(perm))
        self._validate_gluings()
        self._build_vertex_classes()
        self._build_edge_classes()
        self._build_boundary()

    # -- validation ------------------------------------------------------------

    def _validate_gluings(self):
        tset = set(self.tets)
        for (t, f), (t2, f2, perm) in self.gluings.items():
            if t not in tset or t2 not in tset:
                raise GluingError(f"gluing touches unknown tetrahedron {t!r}")
            if not 0 <= f <= 3 or not 0 <= f2 <= 3:
                raise GluingError("face index out of range")
            face_verts = [v for v in range(4) if v != f]
            if sorted(perm.keys()) != face_verts:
                raise GluingError(f"bad permutation domain at {(t, f)}")
            if sorted(perm.values()) != [v for v in range(4) if v != f2]:
                raise GluingError(f"bad permutation range at {(t, f)}")
            back = self.gluings.get((t2, f2))
            if back is None:
                raise GluingError(f"gluing at {(t, f)} has no inverse entry")
            t3, f3, perm2 = back
            if (t3, f3) != (t, f) or any(perm2[perm[v]] != v for v in perm):
                raise GluingError(f"gluing at {(t, f)} is not involutive")
            if (t2, f2) == (t, f):
                raise GluingError("face glued to itself")
            # orientation: the induced cycle of f must map to the reversed
            # induced cycle of f2
            cyc = FACE_CYCLES[f]
            img = tuple(perm[v] for v in cyc)
            rev = tuple(reversed(FACE_CYCLES[f2]))
            if not _same_cycle(img, rev):
                raise OrientationError(
                    f"gluing at {(t, f)} is not orientation-reversing")

    def _build_vertex_classes(self):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in self.tets:
            for v in range(4):
                parent[(t, v)] = (t, v)
        for (t, f), (t2, f2, perm) in self.gluings.items():
            for v, v2 in perm.items():
                a, b = find((t, v)), find((t2, v2))
                if a != b:
                    parent[a] = b
        self.vertex_class = {c: find(c) for c in parent}

    def _build_edge_classes(self):
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in self.tets:
            for e in _edge_pairs():
                parent[(t, e)] = (t, e)
        for (t, f), (t2, f2, perm) in self.gluings.items():
            for pair in itertools.combinations([v for v in range(4) if v != f], 2):
                e = frozenset(pair)
                e2 = frozenset(perm[v] for v in pair)
                a, b = find((t, e)), find((t2, e2))
                if a != b:
                    parent[a] = b
        self.edge_class = {c: find(c) for c in parent}
        self.edge_classes = sorted(set(self.edge_class.values()), key=repr)

    # -- boundary ---------------------------------------------------------------

    def _build_boundary(self):
        unglued = [(t, f) for t in self.tets for f in range(4)
                   if (t, f) not in self.gluings]
        self.boundary_faces = unglued

        # fan walk around each edge class, pairing up the free face sides
        # slots: (t, edge, f) with f one of the two faces containing edge
        def glued_neighbor(slot):
            t, e, f = slot
            got = self.gluings.get((t, f))
            if got is None:
                return None
            t2, f2, perm = got
            e2 = frozenset(perm[v] for v in e)
            return (t2, e2, f2)

        def other_face(slot):
            t, e, f = slot
            (g,) = [x for x in range(4) if x != f and x not in e]
            return (t, e, g)

        slots = {(t, e, f)
                 for t in self.tets for e in _edge_pairs()
                 for f in range(4) if f not in e}
        boundary_sides = {}
        seen = set()
        for start in sorted(slots, key=repr):
            if start in seen or glued_neighbor(start) is not None:
                continue
            # free end: walk through tetrahedra and gluings to the far end
            side_a = start
            cur = start
            seen.add(cur)
            while True:
                nxt = other_face(cur)
                seen.add(nxt)
                step = glued_neighbor(nxt)
                if step is None:
                    side_b = nxt
                    break
                seen.add(step)
                cur = step
            boundary_sides[side_a] = side_b
            boundary_sides[side_b] = side_a
        self._boundary_sides = boundary_sides

        # boundary surface: one oriented triangle per unglued face
        triangles = {}
        directed_of_slot = {}
        for (t, f) in unglued:
            cyc = FACE_CYCLES[f]
            ds = []
            for k in range(3):
                d = (t, f, k)
                ds.append(d)
                e = frozenset((cyc[k], cyc[(k + 1) % 3]))
                directed_of_slot[(t, e, f)] = d
            triangles[(t, f)] = tuple(ds)
        glu = {}
        for slot, other in boundary_sides.items():
            glu[directed_of_slot[slot]] = directed_of_slot[other]
        self.boundary = SurfaceTriangulation(triangles, glu) if triangles \
            else None

        # map boundary edge classes to 3-manifold edge classes
        self.boundary_edge_to_class = {}
        if self.boundary is not None:
            for slot, d in directed_of_slot.items():
                t, e, f = slot
                E = self.boundary.edge_class[d]
                self.boundary_edge_to_class[E] = self.edge_class[(t, e)]

        self._classify_boundary_components()

    def _classify_boundary_components(self):
        """Split the boundary surface into components; flag tori."""
        self.boundary_components = []
        self.torus_classes = set()
        surf = self.boundary
        if surf is None:
            return
        tris = list(surf.triangles)
        comp_of = {}
        comps = []
        for t0 in tris:
            if t0 in comp_of:
                continue
            comp = set()
            stack = [t0]
            while stack:
                t = stack.pop()
                if t in comp:
                    continue
                comp.add(t)
                comp_of[t] = len(comps)
                for d in surf.triangles[t]:
                    t2 = surf.triangle_of(surf.glue[d])
                    if t2 not in comp:
                        stack.append(t2)
            comps.append(sorted(comp, key=repr))
        for comp in comps:
            edges = {surf.edge_class[d] for t in comp
                     for d in surf.triangles[t]}
            corners = {surf.corner_class[(t, i)] for t in comp
                       for i in range(3)}
            chi = len(corners) - len(edges) + len(comp)
            is_torus = (chi == 0)
            self.boundary_components.append({
                "triangles": comp,
                "edge_classes": sorted(edges, key=repr),
                "euler_characteristic": chi,
                "genus": (2 - chi) // 2,
                "torus": is_torus,
            })
            if is_torus:
                for E in edges:
                    self.torus_classes.add(self.boundary_edge_to_class[E])

    def report(self):
        """Validation summary: boundary shape, edge classes, torus flags."""
        classes = []
        members = {}
        for (t, e), cls in self.edge_class.items():
            members.setdefault(cls, []).append((t, sorted(e)))
        for cls in self.edge_classes:
            classes.append({
                "id": cls,
                "members": sorted(members[cls], key=repr),
                "torus": cls in self.torus_classes,
                "boundary": any(c == cls
                                for c in self.boundary_edge_to_class.values()),
            })
        comps = [dict(c) for c in self.boundary_components]
        return {
            "tetrahedra": len(self.tets),
            "edge_classes": classes,
            "boundary_components": comps,
            "boundary_triangles": 0 if self.boundary is None
            else len(self.boundary.triangles),
            "all_torus_boundary": bool(comps) and all(c["torus"] for c in comps),
            "closed": self.boundary is None,
        }

    # -- forms -------------------------------------------------------------------

    def tet_edge_values(self, t, w):
        """Pull a weight on edge classes back to the six edges of a tet."""
        return {e: w[self.edge_class[(t, e)]] for e in _edge_pairs()}

    def omega(self, u, v):
        """Sum of the tetrahedron forms over all tetrahedra."""
        total = Fraction(0)
        for t in self.tets:
            total += tet_form_values(self.tet_edge_values(t, u),
                                     self.tet_edge_values(t, v))
        return total

    def omega_matrix(self):
        """The total form as a sparse matrix over edge classes.

        ``omega(u, v) == sum_{c,d} u[c] * M[c][d] * v[d]``; cached.
        """
        if getattr(self, "_omega_matrix", None) is not None:
            return self._omega_matrix
        M = {}
        for t in self.tets:
            pair_classes = [
                (self.edge_class[(t, e)], self.edge_class[(t, e2)])
                for e, e2 in OPPOSITE_PAIRS]
            for i in range(3):
                ci, cj = pair_classes[i], pair_classes[(i + 1) % 3]
                for a in ci:
                    row = M.setdefault(a, {})
                    for b in cj:
                        row[b] = row.get(b, Fraction(0)) - Fraction(1, 2)
                for a in cj:
                    row = M.setdefault(a, {})
                    for b in ci:
                        row[b] = row.get(b, Fraction(0)) + Fraction(1, 2)
        self._omega_matrix = M
        return M

    def omega_fast(self, u, v):
        M = self.omega_matrix()
        total = Fraction(0)
        for a, ua in u.items():
            if ua == 0:
                continue
            row = M.get(a)
            if not row:
                continue
            for b, coef in row.items():
                vb = v.get(b, 0)
                if vb:
                    total += ua * coef * vb
        return total

    def restrict(self, w):
        """Boundary restriction: forget interior classes.

        Returns a weight on the boundary surface's undirected edges; a
        single interior class may restrict to several boundary edges.
        """
        if self.boundary is None:
            return {}
        return {E: w[cls] for E, cls in self.boundary_edge_to_class.items()}

    def boundary_form(self, ub, vb):
        """Per-triangle form of the boundary surface on boundary weights."""
        if self.boundary is None:
            return Fraction(0)
        return triangle_form_sum(self.boundary, ub, vb)

    # -- choice subspaces ---------------------------------------------------------

    def pair_sum_rows(self, t):
        """Coefficient rows of the three opposite-pair sums of tet ``t``."""
        idx = {E: i for i, E in enumerate(self.edge_classes)}
        rows = []
        for e, e2 in OPPOSITE_PAIRS:
            row = [Fraction(0)] * len(self.edge_classes)
            row[idx[self.edge_class[(t, e)]]] += 1
            row[idx[self.edge_class[(t, e2)]]] += 1
            rows.append(row)
        return rows

    def choice_row(self, t, choice):
        """Constraint row: equality of two of the three pair sums.

        ``choice`` is 0, 1 or 2, naming the unordered pair of opposite-edge
        pairs set equal: 0 = first and second, 1 = first and third,
        2 = second and third.
        """
        rows = self.pair_sum_rows(t)
        i, j = [(0, 1), (0, 2), (1, 2)][choice]
        return [a - b for a, b in zip(rows[i], rows[j])]

    def torus_zero_rows(self):
        idx = {E: i for i, E in enumerate(self.edge_classes)}
        rows = []
        for cls in sorted(self.torus_classes, key=repr):
            row = [Fraction(0)] * len(self.edge_classes)
            row[idx[cls]] = 1
            rows.append(row)
        return rows

    def w4_subspace(self, choices):
        """Reduced-echelon basis of one choice subspace.

        ``choices`` maps every tetrahedron to 0, 1, or 2.  The subspace is
        cut out by one pair-sum equality per tetrahedron plus zero weight
        on every edge class of each torus boundary component.
        """
        rows = self.torus_zero_rows()
        for t in self.tets:
            rows.append(self.choice_row(t, choices[t]))
        basis = linalg.kernel_basis(rows, len(self.edge_classes))
        return [dict(zip(self.edge_classes, vec)) for vec in basis]

    def satisfied_choices(self, w):
        """Per-tetrahedron sets of satisfied pair-sum equalities.

        Works for rational or tuple-valued weights (only addition and
        comparison are used).  The weight lies in the four-point locus iff
        every tetrahedron has at least one satisfied equality.
        """
        out = {}
        for t in self.tets:
            vals = self.tet_edge_values(t, w)
            sums = [vals[e] + vals[e2] for e, e2 in OPPOSITE_PAIRS]
            sat = [k for k, (i, j) in enumerate([(0, 1), (0, 2), (1, 2)])
                   if sums[i] == sums[j]]
            out[t] = sat
        return out

    def w4_member(self, w):
        """Membership in the four-point locus, with the per-tet evidence."""
        per_tet = self.satisfied_choices(w)
        return all(per_tet[t] for t in self.tets), per_tet

    def isotropy_check(self, choices):
        """Whether the total form vanishes on one choice subspace."""
        basis = self.w4_subspace(choices)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if self.omega_fast(basis[i], basis[j]) != 0:
                    return False
        return True


def _same_cycle(a, b):
    return b in (a, (a[1], a[2], a[0]), (a[2], a[0], a[1]))


# -- boundary train tracks and the cone -----------------------------------------


class BoundaryTrack:
    """Dual train track on the non-torus boundary of a triangulation.

    ``outgoing`` assigns to each boundary triangle (on non-torus
    components) the slot 0..2 of its outgoing dual branch.  Branch ids are
    the undirected edge classes of the boundary surface; torus components
    carry no track and their edges are constrained to zero elsewhere.
    """

    def __init__(self, manifold, outgoing):
        self.manifold = manifold
        surf = manifold.boundary
        if surf is None:
            raise ValueError("manifold has no boundary")
        torus_tris = set()
        for comp in manifold.boundary_components:
            if comp["torus"]:
                torus_tris.update(comp["triangles"])
        expected = set(surf.triangles) - torus_tris
        if set(outgoing) != expected:
            raise ValueError("outgoing slots must cover exactly the "
                             "non-torus boundary triangles")
        sub_tris = {t: surf.triangles[t] for t in expected}
        sub_glue = {d: surf.glue[d] for t in expected
                    for d in surf.triangles[t]}
        for d, d2 in sub_glue.items():
            if surf.triangle_of(d2) not in expected:
                raise ValueError("track boundary mixes torus and non-torus "
                                 "components")
        self.surface = surf
        self.track, _ = track_dual_to_triangulation(
            SurfaceTriangulation(sub_tris, sub_glue), outgoing)
        self.outgoing = dict(outgoing)

    def check_weight(self, w):
        return self.track.check_weight(w)

    def weight_space_dim(self):
        return len(self.track.weight_space_basis())


class PLCone:
    """Finite union of rational polyhedral cones in boundary weight space.

    Each component is the reduced-echelon basis of a linear span inside
    the admissible weight space of the boundary track, intersected with
    the nonnegativity block on all branch coordinates.  Components are
    deduplicated by their canonical span.
    """

    def __init__(self, edge_order, components):
        self.edge_order = list(edge_order)
        self.components = components  # list of dicts

    def __len__(self):
        return len(self.components)


def compute_cone(manifold, btrack, choice_iter=None):
    """Union over choice vectors of restricted subspaces meeting the track.

    For each choice vector the subspace is restricted to boundary-edge
    coordinates and intersected with the switch-relation space of the
    boundary track; identical spans are merged.  ``choice_iter`` defaults
    to the full product over tetrahedra (exact cone); a sampled iterator
    gives a partial union.
    """
    tets = manifold.tets
    if choice_iter is None:
        choice_iter = itertools.product(range(3), repeat=len(tets))
    surf = manifold.boundary
    edge_order = sorted(surf.edge_classes, key=repr)
    eidx = {E: i for i, E in enumerate(edge_order)}
    n = len(edge_order)

    # switch relations of the boundary track in boundary-edge coordinates
    switch_rows = []
    for s in sorted(btrack.track.switches, key=repr):
        a, b, c = btrack.track.switches[s]
        row = [Fraction(0)] * n
        row[eidx[a]] += 1
        row[eidx[b]] += 1
        row[eidx[c]] -= 1
        switch_rows.append(row)
    # torus edges are zero in every subspace; also force them here so the
    # component spans live inside the track's weight space
    for comp in manifold.boundary_components:
        if comp["torus"]:
            for E in comp["edge_classes"]:
                row = [Fraction(0)] * n
                row[eidx[E]] = 1
                switch_rows.append(row)

    seen = {}
    for combo in choice_iter:
        choices = dict(zip(tets, combo))
        basis = manifold.w4_subspace(choices)
        proj = []
        for vec in basis:
            w = manifold.restrict(vec)
            proj.append([w.get(E, Fraction(0)) for E in edge_order])
        # intersect span(proj) with the kernel of switch_rows
        red, _ = linalg.rref(proj)
        if not red:
            span = []
        else:
            # x = sum l_i red_i with switch_rows . x = 0
            coeff = [[sum(row[k] * red[i][k] for k in range(n))
                      for i in range(len(red))] for row in switch_rows]
            lam = linalg.kernel_basis(coeff, len(red))
            span = [[sum(l[i] * red[i][k] for i in range(len(red)))
                     for k in range(n)] for l in lam]
        key = linalg.canonical_span_key(span)
        if key not in seen:
            seen[key] = {
                "span": [list(r) for r in key],
                "dimension": len(key),
                "choice": dict(choices),
            }
    comps = sorted(seen.values(), key=lambda c: (c["dimension"], repr(c["span"])))
    return PLCone(edge_order, comps)


class MemberResult:
    def __init__(self, member, reason=None, witness=None, choices=None):
        self.member = member
        self.reason = reason
        self.witness = witness      # dict edge class -> Fraction
        self.choices = choices      # dict tet -> 0/1/2


def member(manifold, btrack, w_boundary):
    """Exact membership of a boundary weight in the cone, with a witness.

    ``w_boundary`` maps the boundary surface's undirected edges (the
    track's branches, plus any torus edges, which must be zero) to
    rationals.  The weight must satisfy nonnegativity and the switch
    relations; membership then asks for an exact extension to all edge
    classes satisfying one pair-sum equality in every tetrahedron and zero
    on torus classes.  Found by depth-first search over the per-tet
    choices with incremental exact elimination.
    """
    track = btrack.track
    for e in track.branches:
        if e not in w_boundary:
            return MemberResult(False, reason=f"missing weight for {e!r}")
        if rat(w_boundary[e]) < 0:
            return MemberResult(False, reason="negative")
    if not track.check_weight({e: w_boundary[e] for e in track.branches}):
        return MemberResult(False, reason="switch")

    classes = manifold.edge_classes
    cidx = {c: i for i, c in enumerate(classes)}
    sysm = linalg.IncrementalSystem(len(classes))

    def unit_row(cls):
        row = [Fraction(0)] * len(classes)
        row[cidx[cls]] = 1
        return row

    # pin boundary values (several boundary edges may share a class; any
    # conflict makes the system inconsistent here)
    for E in sorted(manifold.boundary_edge_to_class, key=repr):
        cls = manifold.boundary_edge_to_class[E]
        val = w_boundary.get(E, Fraction(0))
        if not sysm.push(unit_row(cls), rat(val)):
            return MemberResult(False, reason="class-conflict")
    for cls in sorted(manifold.torus_classes, key=repr):
        if not sysm.push(unit_row(cls), 0):
            return MemberResult(False, reason="torus-nonzero")

    tets = manifold.tets
    choice_rows = {(t, k): manifold.choice_row(t, k)
                   for t in tets for k in range(3)}

    chosen = {}

    def dfs(i):
        if i == len(tets):
            return True
        t = tets[i]
        for k in range(3):
            mark = sysm.checkpoint()
            if sysm.push(choice_rows[(t, k)], 0) and dfs(i + 1):
                chosen[t] = k
                return True
            sysm.rollback(mark)
        return False

    if not dfs(0):
        return MemberResult(False, reason="no-choice-vector")
    sol = sysm.solution()
    witness = dict(zip(classes, sol))
    return MemberResult(True, witness=witness, choices=dict(chosen))


# -- product triangulations -------------------------------------------------


def _acyclic_edge_senses(surface):
    """Per-edge rising directions with no triangle cyclically ordered.

    Returns a dict mapping each undirected edge class to True when its
    canonical directed edge points from the lower to the higher corner.
    Found by deterministic backtracking over edges in id order with unit
    propagation; a solution always exists at the sizes used here.
    """
    edge_lits = {}  # triangle -> [(edge, flag)]: sense_i = x_edge == flag
    for t, ds in sorted(surface.triangles.items(), key=lambda kv: repr(kv[0])):
        lits = []
        for d in ds:
            E = surface.edge_class[d]
            lits.append((E, d == E))
        edge_lits[t] = lits

    edges = sorted(surface.edge_classes, key=repr)
    assign = {}

    def triangle_ok(t):
        senses = []
        for E, flag in edge_lits[t]:
            if E not in assign:
                return True
            senses.append(assign[E] == flag)
        return not (all(senses) or not any(senses))

    def consistent():
        return all(triangle_ok(t) for t in edge_lits)

    def bt(i):
        if i == len(edges):
            return True
        for val in (True, False):
            assign[edges[i]] = val
            if consistent() and bt(i + 1):
                return True
        del assign[edges[i]]
        return False

    if not bt(0):
        raise ValueError("no acyclic edge orientation found")
    return assign


_EVEN3 = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


class ProductTriangulation:
    """The product of a closed oriented surface with an interval.

    Every triangle becomes a prism cut into three tetrahedra along a
    staircase determined by a corner order; the corner orders come from
    edge directions chosen so that no triangle is cyclic, which makes the
    wall diagonals agree across neighboring prisms.  The boundary is two
    copies of the surface with opposite induced orientations.

    Attributes: ``manifold``; per-copy data ``bottom`` and ``top`` mapping
    each surface triangle to ``(boundary_triangle, slot_map)`` where
    ``slot_map[surface_slot] = boundary_slot``; and ``bottom_edge_of`` /
    ``top_edge_of`` mapping each surface edge class to the corresponding
    undirected edge of the boundary surface.
    """

    def __init__(self, surface):
        if surface.boundary_edges:
            raise ValueError("product of a closed surface only")
        self.surface = surface
        senses = _acyclic_edge_senses(surface)

        node_tuple = {}   # tet id -> 4-tuple of ('b'|'t', corner)
        sigma_of = {}
        for t, ds in surface.triangles.items():
            s = []
            for d in ds:
                E = surface.edge_class[d]
                s.append(senses[E] == (d == E))
            # rank order: min has (not s[j-1]) and s[j]
            mn = next(j for j in range(3) if not s[(j + 2) % 3] and s[j])
            mx = next(j for j in range(3) if s[(j + 2) % 3] and not s[j])
            md = 3 - mn - mx
            sigma = (mn, md, mx)
            sigma_of[t] = sigma
            parity = 1 if sigma in _EVEN3 else -1
            raw = [
                ([("b", sigma[0]), ("b", sigma[1]), ("b", sigma[2]),
                  ("t", sigma[2])], 1),
                ([("b", sigma[0]), ("b", sigma[1]), ("t", sigma[1]),
                  ("t", sigma[2])], -1),
                ([("b", sigma[0]), ("t", sigma[0]), ("t", sigma[1]),
                  ("t", sigma[2])], 1),
            ]
            for k, (nodes, base) in enumerate(raw):
                if base * parity == -1:
                    nodes = [nodes[1], nodes[0]] + nodes[2:]
                node_tuple[(t, k)] = tuple(nodes)

        self._node_tuple = node_tuple
        node_pos = {tet: {n: i for i, n in enumerate(nodes)}
                    for tet, nodes in node_tuple.items()}

        gluings = {}

        def add_gluing(tetA, triA, tetB, triB):
            """Glue the faces spanned by matching ordered node triples."""
            posA = [node_pos[tetA][n] for n in triA]
            posB = [node_pos[tetB][n] for n in triB]
            fA = ({0, 1, 2, 3} - set(posA)).pop()
            fB = ({0, 1, 2, 3} - set(posB)).pop()
            perm = dict(zip(posA, posB))
            gluings[(tetA, fA)] = (tetB, fB, perm)
            gluings[(tetB, fB)] = (tetA, fA, {v: k for k, v in perm.items()})

        def find_tet(t, nodes):
            hits = [(t, k) for k in range(3)
                    if set(nodes) <= set(node_tuple[(t, k)])]
            if len(hits) != 1:
                raise AssertionError(f"wall triple in {len(hits)} tets")
            return hits[0]

        # internal prism gluings
        for t in surface.triangles:
            sigma = sigma_of[t]
            tri01 = [("b", sigma[0]), ("b", sigma[1]), ("t", sigma[2])]
            add_gluing((t, 0), tri01, (t, 1), tri01)
            tri12 = [("b", sigma[0]), ("t", sigma[1]), ("t", sigma[2])]
            add_gluing((t, 1), tri12, (t, 2), tri12)

        # wall gluings across each surface edge
        done = set()
        for d in sorted(surface.glue, key=repr):
            E = surface.edge_class[d]
            if E in done:
                continue
            done.add(E)
            d2 = surface.glue[d]
            tA, iA = surface.locate(d)
            tB, jB = surface.locate(d2)
            # corner identification: tail(d) ~ head(d2), head(d) ~ tail(d2)
            phi = {iA: (jB + 1) % 3, (iA + 1) % 3: jB}
            rankA = {c: p for p, c in enumerate(sigma_of[tA])}
            xA, yA = iA, (iA + 1) % 3
            lowA, highA = (xA, yA) if rankA[xA] < rankA[yA] else (yA, xA)
            lowB, highB = phi[lowA], phi[highA]
            lowerA = [("b", lowA), ("b", highA), ("t", highA)]
            lowerB = [("b", lowB), ("b", highB), ("t", highB)]
            add_gluing(find_tet(tA, lowerA), lowerA,
                       find_tet(tB, lowerB), lowerB)
            upperA = [("b", lowA), ("t", highA), ("t", lowA)]
            upperB = [("b", lowB), ("t", highB), ("t", lowB)]
            add_gluing(find_tet(tA, upperA), upperA,
                       find_tet(tB, upperB), upperB)

        self.manifold = Triangulation3(node_tuple.keys(), gluings)
        self._index_boundary()

    def _index_boundary(self):
        """Locate the two surface copies inside the boundary triangulation."""
        surf = self.surface
        man = self.manifold
        self.bottom = {}
        self.top = {}
        self.bottom_edge_of = {}
        self.top_edge_of = {}
        self.bottom_dedge_of = {}
        self.top_dedge_of = {}
        corner_pair_to_slot = {}
        for t, ds in surf.triangles.items():
            for i in range(3):
                corner_pair_to_slot[(t, frozenset((i, (i + 1) % 3)))] = i
        for (tet, f) in man.boundary_faces:
            t, k = tet
            cyc = FACE_CYCLES[f]
            nodes = [self._node_tuple[tet][c] for c in cyc]
            level = nodes[0][0]
            if level == "b":
                store, edge_store, dedge_store = (
                    self.bottom, self.bottom_edge_of, self.bottom_dedge_of)
            else:
                store, edge_store, dedge_store = (
                    self.top, self.top_edge_of, self.top_dedge_of)
            slot_map = {}
            for kk in range(3):
                c1 = nodes[kk][1]
                c2 = nodes[(kk + 1) % 3][1]
                i = corner_pair_to_slot[(t, frozenset((c1, c2)))]
                slot_map[i] = kk
                E = surf.edge_class[surf.triangles[t][i]]
                edge_store[E] = man.boundary.edge_class[(tet, f, kk)]
                dedge_store[E] = (tet, f, kk)
            store[t] = ((tet, f), slot_map)


def product_triangulation(surface):
    """Triangulate surface x interval; see ProductTriangulation."""
    return ProductTriangulation(surface)


def verify_witness(manifold, btrack, w_boundary, result):
    """Check a membership witness by direct substitution."""
    if not result.member:
        return False
    w = result.witness
    ok, per_tet = manifold.w4_member(w)
    if not ok:
        return False
    for t, k in result.choices.items():
        if k not in per_tet[t]:
            return False
    back = manifold.restrict(w)
    for E, val in back.items():
        if rat(w_boundary.get(E, 0)) != val:
            return False
    for cls in manifold.torus_classes:
        if w[cls] != 0:
            return False
    return True
