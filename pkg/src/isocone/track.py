"""Triangulated oriented surfaces, train tracks, and weight-space forms.

A ``SurfaceTriangulation`` stores oriented triangles as counterclockwise
triples of directed edge ids together with a perfect matching of directed
edges (two triangles traverse a shared undirected edge in opposite
directions).  A ``TrainTrack`` is a trivalent switched graph: every switch
has two incoming slots and one outgoing slot, listed as a positively
oriented (counterclockwise) triple ``(a, b, c)``.

Weights live on branches; the admissible ones satisfy the switch relation
``w(a) + w(b) = w(c)`` at every switch.  The skew pairing of two admissible
weights is half the sum over switches of the 2x2 determinant of incoming
values.  The same pairing is computed independently as a sum of per-triangle
alternating forms on the dual triangulation, and, for consistently
orientable tracks, as a homological intersection number of weighted cycles.
"""

from fractions import Fraction

from isocone.ordgroup import rat
from isocone.homology import RibbonGraph, SurfaceHomology
from isocone import linalg


class NotMaximalError(ValueError):
    """Some complementary region of the track is not a trigon."""


class NotOrientableError(ValueError):
    """The track admits no consistent smooth orientation."""


class InvalidWeightError(ValueError):
    """A weight violating the switch relations was supplied."""


class SurfaceTriangulation:
    """Closed oriented surface built from oriented triangles.

    ``triangles`` maps a triangle id to a ccw triple of directed edge ids;
    ``gluings`` is an involution pairing each directed edge with the
    oppositely traversed copy in the neighboring triangle.  Unpaired edges
    are only accepted with ``allow_boundary``.
    """

    def __init__(self, triangles, gluings, allow_boundary=False):
        self.triangles = {t: tuple(ds) for t, ds in triangles.items()}
        self.glue = dict(gluings)
        owner = {}
        for t, ds in self.triangles.items():
            if len(ds) != 3 or len(set(ds)) != 3:
                raise ValueError(f"triangle {t!r} needs 3 distinct edges")
            for i, d in enumerate(ds):
                if d in owner:
                    raise ValueError(f"directed edge {d!r} used twice")
                owner[d] = (t, i)
        self._owner = owner
        for d, d2 in self.glue.items():
            if d2 == d:
                raise ValueError(f"directed edge {d!r} glued to itself")
            if self.glue.get(d2) != d:
                raise ValueError(f"gluing not involutive at {d!r}")
            if d not in owner or d2 not in owner:
                raise ValueError(f"gluing touches unknown edge {d!r}")
        self.boundary_edges = sorted(
            (d for d in owner if d not in self.glue), key=repr)
        if self.boundary_edges and not allow_boundary:
            raise ValueError(f"unglued edges: {self.boundary_edges!r}")
        self._build_classes()

    def _build_classes(self):
        # undirected edge classes
        canon = {}
        for d in self._owner:
            p = self.glue.get(d)
            canon[d] = d if p is None else min(d, p, key=repr)
        self.edge_class = canon
        self.edge_classes = sorted(set(canon.values()), key=repr)

        # vertex classes via union-find over corners; corner (t, i) sits at
        # the tail of triangle t's i-th directed edge
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, ds in self.triangles.items():
            for i in range(3):
                parent[(t, i)] = (t, i)
        for t, ds in self.triangles.items():
            for i in range(3):
                prev = ds[(i + 2) % 3]        # edge whose head is this corner
                p = self.glue.get(prev)
                if p is None:
                    continue
                t2, j = self._owner[p]
                a, b = find((t, i)), find((t2, j))
                if a != b:
                    parent[a] = b
        self.corner_class = {c: find(c) for c in parent}
        self.vertex_classes = sorted(set(self.corner_class.values()), key=repr)

    def triangle_of(self, d):
        return self._owner[d][0]

    def locate(self, d):
        """(triangle, slot) of a directed edge."""
        return self._owner[d]

    def corner_at_tail(self, d):
        t, i = self._owner[d]
        return self.corner_class[(t, i)]

    def corner_at_head(self, d):
        t, i = self._owner[d]
        return self.corner_class[(t, (i + 1) % 3)]

    def euler_characteristic(self):
        return (len(self.vertex_classes) - len(self.edge_classes)
                + len(self.triangles))

    def genus(self):
        if self.boundary_edges:
            raise ValueError("genus of a closed surface only")
        chi = self.euler_characteristic()
        if chi % 2 != 0:
            raise ValueError("odd Euler characteristic")
        return (2 - chi) // 2

    def is_connected(self):
        tris = list(self.triangles)
        if not tris:
            return True
        seen = {tris[0]}
        stack = [tris[0]]
        while stack:
            t = stack.pop()
            for d in self.triangles[t]:
                p = self.glue.get(d)
                if p is None:
                    continue
                t2, _ = self._owner[p]
                if t2 not in seen:
                    seen.add(t2)
                    stack.append(t2)
        return len(seen) == len(tris)

    def reversed_orientation(self):
        """The same surface with every triangle's cyclic order reversed."""
        tris = {t: (ds[0], ds[2], ds[1]) for t, ds in self.triangles.items()}
        return SurfaceTriangulation(tris, self.glue,
                                    allow_boundary=bool(self.boundary_edges))

    def skeleton_ribbon(self):
        """Ribbon graph of the 1-skeleton (closed surfaces only).

        Graph edges are the undirected edge classes; the reference direction
        of class ``E`` is the direction of its canonical directed edge.  The
        rotation at a vertex lists, in ccw order, the outgoing directions of
        the corners around it.
        """
        if self.boundary_edges:
            raise ValueError("ribbon skeleton of a closed surface only")
        edges = {}
        for E in self.edge_classes:
            edges[E] = (self.corner_at_tail(E), self.corner_at_head(E))
        # walk corners ccw around each vertex: from corner (t, i) cross the
        # edge preceding it to reach the matching corner of the neighbor
        rot = {}
        visited = set()
        for t, ds in self.triangles.items():
            for i in range(3):
                corner = (t, i)
                if corner in visited:
                    continue
                cycle = []
                c = corner
                while c not in visited:
                    visited.add(c)
                    cycle.append(c)
                    ct, ci = c
                    prev = self.triangles[ct][(ci + 2) % 3]
                    p = self.glue[prev]
                    nt, nj = self._owner[p]
                    c = (nt, nj)
                v = self.corner_class[corner]
                darts = []
                for (ct, ci) in cycle:
                    d = self.triangles[ct][ci]
                    E = self.edge_class[d]
                    darts.append((E, 0 if d == E else 1))
                rot[v] = darts
        return RibbonGraph(edges, rot)


def triangle_form(surface, t, u, v):
    """Alternating form of one oriented triangle on two edge weights.

    With the triangle's undirected edges E, F, G in ccw order the value is
    -1/2 (dE^dF + dF^dG + dG^dE) applied to (u, v).
    """
    ds = surface.triangles[t]
    E = [surface.edge_class[d] for d in ds]
    total = Fraction(0)
    for i in range(3):
        a, b = E[i], E[(i + 1) % 3]
        total += rat(u.get(a, 0)) * rat(v.get(b, 0)) \
            - rat(u.get(b, 0)) * rat(v.get(a, 0))
    return -total / 2


def triangle_form_sum(surface, u, v):
    """Sum of the triangle forms over all triangles of the surface."""
    return sum((triangle_form(surface, t, u, v) for t in surface.triangles),
               Fraction(0))


class TrainTrack:
    """Generic trivalent train track given by its switch records.

    ``switches`` maps a switch id to a ccw-positively-oriented triple
    ``(a, b, c)`` of branch ids: ``a`` and ``b`` are the incoming slots,
    ``c`` the outgoing slot.  Each branch must occupy exactly two slots in
    total (possibly both at one switch).
    """

    def __init__(self, switches):
        self.switches = {s: tuple(abc) for s, abc in switches.items()}
        ends = {}
        for s, abc in self.switches.items():
            if len(abc) != 3:
                raise ValueError(f"switch {s!r} is not trivalent")
            for pos, e in enumerate(abc):
                ends.setdefault(e, []).append((s, pos))
        for e, slots in ends.items():
            if len(slots) != 2:
                raise ValueError(
                    f"branch {e!r} has {len(slots)} ends, expected 2")
        self.branch_ends = {e: tuple(sorted(slots, key=repr))
                            for e, slots in ends.items()}
        self.branches = sorted(self.branch_ends, key=repr)

    def check_weight(self, w):
        """Whether the switch relation holds exactly at every switch."""
        for e in self.branches:
            if e not in w:
                raise ValueError(f"missing weight for branch {e!r}")
        for s, (a, b, c) in self.switches.items():
            if rat(w[a]) + rat(w[b]) != rat(w[c]):
                return False
        return True

    def weight_space_basis(self):
        """Exact basis of the solution space of all switch relations."""
        idx = {e: i for i, e in enumerate(self.branches)}
        rows = []
        for s in sorted(self.switches, key=repr):
            a, b, c = self.switches[s]
            row = [Fraction(0)] * len(self.branches)
            row[idx[a]] += 1
            row[idx[b]] += 1
            row[idx[c]] -= 1
            rows.append(row)
        basis = linalg.kernel_basis(rows, len(self.branches))
        return [{e: vec[idx[e]] for e in self.branches} for vec in basis]

    def thurston_form(self, w1, w2):
        """Half the sum over switches of det of the incoming weight pairs."""
        for w in (w1, w2):
            if not self.check_weight(w):
                raise InvalidWeightError("weight violates a switch relation")
        total = Fraction(0)
        for s in sorted(self.switches, key=repr):
            a, b, _ = self.switches[s]
            total += rat(w1[a]) * rat(w2[b]) - rat(w1[b]) * rat(w2[a])
        return total / 2

    # -- embedding structure -------------------------------------------------

    def ribbon(self):
        """Underlying embedded graph: switches with ccw dart order (a, b, c)."""
        edges = {}
        rot = {s: [] for s in self.switches}
        for e, (s1, s2) in self.branch_ends.items():
            edges[e] = (s1[0], s2[0])
        # build rotations slot by slot; dart end 0 belongs to the first slot
        for s in self.switches:
            for pos in range(3):
                e = self.switches[s][pos]
                first, second = self.branch_ends[e]
                end = 0 if (s, pos) == first else 1
                rot[s].append((e, end))
        return RibbonGraph(edges, rot)

    def region_cusp_counts(self):
        """Cusps per complementary region (ribbon face) of the track.

        A cusp of a region is a passage between the two incoming slots of a
        switch (positions 0 and 1 consecutively in the ccw rotation).
        """
        rg = self.ribbon()
        pos_of_dart = {}
        for s, ds in rg.rot.items():
            for i, d in enumerate(ds):
                pos_of_dart[d] = i
        counts = []
        for face in rg.faces():
            cusps = 0
            n = len(face)
            for k in range(n):
                d = face[k]
                e, i = d
                opp = (e, 1 - i)
                # the face turns at the vertex of opp, from slot(opp) to the
                # next ccw slot; a 0 -> 1 passage is a cusp
                if pos_of_dart[opp] == 0:
                    cusps += 1
            counts.append(cusps)
        return counts

    def dual_triangulation(self):
        """Triangulation dual to a maximal track, plus the correspondence.

        One triangle per switch with directed edges ``(switch, slot)`` in
        the ccw slot order, one undirected edge per branch, one vertex per
        complementary region.  Raises unless every region is a trigon.
        Returns ``(surface, branch_to_edge)``.
        """
        for cusps in self.region_cusp_counts():
            if cusps != 3:
                raise NotMaximalError(
                    f"complementary region with {cusps} cusps")
        triangles = {s: ((s, 0), (s, 1), (s, 2)) for s in self.switches}
        glu = {}
        for e, (s1, s2) in self.branch_ends.items():
            glu[s1] = s2
            glu[s2] = s1
        surf = SurfaceTriangulation(triangles, glu)
        branch_to_edge = {e: surf.edge_class[self.branch_ends[e][0]]
                          for e in self.branches}
        return surf, branch_to_edge

    def orientation(self):
        """Per-switch flow states of a consistent orientation.

        Returns a dict switch -> +1/-1 where +1 means the incoming slots
        carry flow into the switch.  Raises NotOrientableError if no
        consistent assignment exists.  The orientation of each branch runs
        from its flow-out end to its flow-in end.
        """
        state = {}
        for s0 in sorted(self.switches, key=repr):
            if s0 in state:
                continue
            state[s0] = 1
            stack = [s0]
            while stack:
                s = stack.pop()
                for pos in range(3):
                    e = self.switches[s][pos]
                    first, second = self.branch_ends[e]
                    other = second if (s, pos) == first else first
                    s2, pos2 = other
                    here_in = (pos <= 1) == (state[s] == 1)
                    # the other end must be flow-in iff this end is flow-out
                    need = 1 if ((pos2 <= 1) == (not here_in)) else -1
                    if s2 in state:
                        if state[s2] != need:
                            raise NotOrientableError(
                                f"branch {e!r} cannot be oriented")
                    else:
                        state[s2] = need
                        stack.append(s2)
        return state

    def oriented_flow(self, w):
        """The weighted cycle of an admissible weight, as a ribbon flow.

        Flows are measured along each branch's reference direction in
        ``ribbon()`` (end 0 to end 1); the sign is fixed by the consistent
        orientation.
        """
        state = self.orientation()
        flow = {}
        for e in self.branches:
            (s1, p1), (s2, p2) = self.branch_ends[e]
            in_at_first = (p1 <= 1) == (state[s1] == 1)
            # reference direction is end 0 -> end 1; flow runs out -> in
            flow[e] = -rat(w[e]) if in_at_first else rat(w[e])
        return flow

    def cycle_pairing(self, w1, w2):
        """Intersection number of the weighted cycles of two weights.

        Requires a consistently orientable track; computed through a
        homology basis of the filled surface and its intersection matrix.
        """
        for w in (w1, w2):
            if not self.check_weight(w):
                raise InvalidWeightError("weight violates a switch relation")
        hom = SurfaceHomology(self.ribbon())
        return hom.pair_cycles(self.oriented_flow(w1), self.oriented_flow(w2))


def embed_weights(track, branch_to_edge, w):
    """Push an admissible branch weight to a weight on dual-triangulation edges."""
    if not track.check_weight(w):
        raise InvalidWeightError("weight violates a switch relation")
    return {branch_to_edge[e]: rat(w[e]) for e in track.branches}


def track_dual_to_triangulation(surface, outgoing):
    """Train track dual to a triangulation, given each triangle's outgoing edge.

    ``outgoing`` maps each triangle id to the slot (0, 1, or 2) whose edge
    is dual to the outgoing branch; the two other edges are dual to the
    incoming branches.  Branch ids are the undirected edge classes of the
    surface.  Returns ``(track, edge_to_branch)`` where the correspondence
    is the identity on edge classes.
    """
    switches = {}
    for t, ds in surface.triangles.items():
        p = outgoing[t]
        trip = (surface.edge_class[ds[(p + 1) % 3]],
                surface.edge_class[ds[(p + 2) % 3]],
                surface.edge_class[ds[p]])
        switches[t] = trip
    track = TrainTrack(switches)
    edge_to_branch = {E: E for E in surface.edge_classes}
    return track, edge_to_branch
