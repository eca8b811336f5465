"""Cycles on graphs embedded in oriented surfaces, and their intersections.

A ``RibbonGraph`` is a graph together with a counterclockwise cyclic order
of dart ends around every vertex; that data determines a closed oriented
surface.  Flows (rational 1-cycles supported on the edges) can be paired
exactly: the homological intersection number is computed by pushing the
first cycle slightly to the left of each edge and the second slightly to
the right, and counting signed chord crossings inside every vertex disk.
The count does not depend on how strands are routed inside a disk, so a
simple stack matching is used.

On top of that the module provides a deterministic homology basis
(spanning-tree fundamental cycles reduced modulo face boundaries) and the
induced pairing of 1-cohomology classes given by their edge periods.
"""

from fractions import Fraction

from isocone import linalg


class RibbonGraph:
    """Graph with a ccw rotation system.

    ``edges`` maps an edge id to its ``(tail, head)`` vertex pair (the
    reference direction).  ``rot`` maps each vertex to the list of incident
    darts in counterclockwise order; a dart is ``(edge_id, end)`` with end 0
    at the tail and end 1 at the head.  Every dart must appear exactly once.
    """

    def __init__(self, edges, rot):
        self.edges = dict(edges)
        self.rot = {v: list(ds) for v, ds in rot.items()}
        expected = {(e, i) for e in self.edges for i in (0, 1)}
        seen = [d for ds in self.rot.values() for d in ds]
        if len(seen) != len(expected) or set(seen) != expected:
            raise ValueError("rotation system does not list each dart once")
        self.dart_vertex = {}
        for v, ds in self.rot.items():
            for d in ds:
                e, i = d
                if self.edges[e][i] != v:
                    raise ValueError(f"dart {d} listed at wrong vertex")
                self.dart_vertex[d] = v

    @property
    def vertices(self):
        return sorted(self.rot, key=repr)

    def num_faces(self):
        return len(self.faces())

    def faces(self):
        """Orbits of darts under the face-tracing permutation."""
        nxt = {}
        pos = {}
        for v, ds in self.rot.items():
            for i, d in enumerate(ds):
                pos[d] = (v, i)
        for d in pos:
            e, i = d
            opp = (e, 1 - i)
            v, j = pos[opp]
            ds = self.rot[v]
            nxt[d] = ds[(j + 1) % len(ds)]
        faces = []
        todo = set(nxt)
        while todo:
            d = min(todo, key=repr)
            orbit = []
            while d in todo:
                todo.remove(d)
                orbit.append(d)
                d = nxt[d]
            faces.append(orbit)
        return faces

    def euler_characteristic(self):
        return len(self.rot) - len(self.edges) + self.num_faces()

    def genus(self):
        chi = self.euler_characteristic()
        if chi % 2 != 0:
            raise ValueError("odd Euler characteristic")
        return (2 - chi) // 2

    # -- flows ----------------------------------------------------------------

    def check_flow(self, flow):
        """A flow is conservative: net inflow vanishes at every vertex."""
        net = {v: Fraction(0) for v in self.rot}
        for e, val in flow.items():
            u, v = self.edges[e]
            net[u] -= Fraction(val)
            net[v] += Fraction(val)
        return all(x == 0 for x in net.values())

    def intersection(self, x, y):
        """Exact homological intersection number of two flows."""
        if not self.check_flow(x) or not self.check_flow(y):
            raise ValueError("intersection requires conservative flows")
        total = Fraction(0)
        for v, ds in self.rot.items():
            pts = []  # (position, system, signed mass); + flows into v
            p = 0
            for d in ds:
                e, i = d
                sgn = 1 if i == 1 else -1
                xm = Fraction(x.get(e, 0)) * sgn
                ym = Fraction(y.get(e, 0)) * sgn
                # along each edge the x strands ride on the left of the
                # reference direction: ccw order within a tail arc is then
                # (y, x) and within a head arc (x, y)
                order = [("y", ym), ("x", xm)] if i == 0 else [("x", xm), ("y", ym)]
                for system, mass in order:
                    if mass != 0:
                        pts.append((p, system, mass))
                    p += 1
            xchords = _chords([(pos, m) for pos, s, m in pts if s == "x"])
            ychords = _chords([(pos, m) for pos, s, m in pts if s == "y"])
            for (p1, q1, m1) in xchords:
                for (p2, q2, m2) in ychords:
                    total += _crossing_sign(p1, q1, p2, q2) * m1 * m2
        return total


def _chords(points):
    """Stack matching of signed masses on a circle into directed chords.

    Points are ``(position, mass)`` with positive mass entering the disk.
    Returns chords ``(pos_in, pos_out, mass)`` with ``mass > 0``.  Any
    matching gives the same total crossing count against the other system,
    so the first-fit stack matching is as good as any.
    """
    stack = []  # (position, remaining signed mass)
    chords = []
    for pos, mass in points:
        m = mass
        while m != 0:
            if not stack or (stack[-1][1] > 0) == (m > 0):
                stack.append((pos, m))
                m = Fraction(0)
            else:
                spos, sm = stack.pop()
                take = min(abs(m), abs(sm))
                if m > 0:
                    chords.append((pos, spos, take))
                else:
                    chords.append((spos, pos, take))
                if abs(sm) > take:
                    stack.append((spos, sm + (take if m > 0 else -take)))
                m += -take if m > 0 else take
    if stack:
        raise ValueError("unbalanced masses at a vertex")
    return chords


def _crossing_sign(p, q, r, s):
    """Sign of the crossing of directed chords p->q and r->s, else 0.

    Positions are distinct integers on a ccw circle.  The chords cross iff
    exactly one of r, s lies inside the ccw arc (p, q); the sign is +1 when
    the ccw order around the circle reads p, r, q, s.
    """
    r_in = _ccw_between(p, r, q)
    s_in = _ccw_between(p, s, q)
    if r_in == s_in:
        return 0
    return 1 if r_in else -1


def _ccw_between(a, x, b):
    if a < b:
        return a < x < b
    return x > a or x < b


class SurfaceHomology:
    """Deterministic homology basis and pairings for a closed ribbon surface.

    The basis consists of fundamental cycles of edges outside a BFS spanning
    forest, reduced modulo face boundaries; its intersection matrix is
    computed with ``RibbonGraph.intersection``.  Disconnected surfaces are
    handled componentwise (the matrix is block diagonal).
    """

    def __init__(self, ribbon):
        self.ribbon = ribbon
        self._build()

    def _build(self):
        rg = self.ribbon
        verts = rg.vertices
        adj = {v: [] for v in verts}
        for e, (u, v) in sorted(rg.edges.items(), key=lambda kv: repr(kv[0])):
            adj[u].append((e, v))
            adj[v].append((e, u))
        # BFS spanning forest, one tree per connected component
        parent = {}
        order = []
        for root in verts:
            if root in parent:
                continue
            parent[root] = (None, None)
            order.append(root)
            qi = len(order) - 1
            while qi < len(order):
                w = order[qi]
                qi += 1
                for e, nb in adj[w]:
                    if nb not in parent:
                        parent[nb] = (w, e)
                        order.append(nb)
        tree_edges = {e for (_, e) in parent.values() if e is not None}
        self.nontree = sorted((e for e in rg.edges if e not in tree_edges),
                              key=repr)
        self._parent = parent
        self._order = order

        # face boundary flows, restricted to non-tree coordinates
        face_rows = []
        for face in rg.faces():
            flow = {}
            for e, i in face:
                flow[e] = flow.get(e, Fraction(0)) + (1 if i == 0 else -1)
            face_rows.append([Fraction(flow.get(e, 0)) for e in self.nontree])
        self._face_red, self._face_pivots = linalg.rref(face_rows)
        pivset = set(self._face_pivots)
        self.basis_columns = [j for j in range(len(self.nontree))
                              if j not in pivset]
        self.basis_flows = [self.flow_from_nontree({self.nontree[j]: Fraction(1)})
                            for j in self.basis_columns]
        n = len(self.basis_flows)
        self.pairing_matrix = [
            [rg.intersection(self.basis_flows[i], self.basis_flows[j])
             for j in range(n)] for i in range(n)]

    def flow_from_nontree(self, nontree_values):
        """The unique conservative flow with the given non-tree values."""
        rg = self.ribbon
        flow = {e: Fraction(v) for e, v in nontree_values.items()}
        # net inflow at each vertex from the edges fixed so far
        net = {v: Fraction(0) for v in rg.rot}
        for e, val in flow.items():
            u, v = rg.edges[e]
            net[v] += val
            net[u] -= val
        # children-first: conservation at v pins the flow on its tree edge,
        # and pushes the surplus net[v] up to the parent either way
        for v in reversed(self._order):
            p, e = self._parent[v]
            if p is None:
                continue
            u, w = rg.edges[e]
            flow[e] = -net[v] if w == v else net[v]
            net[p] += net[v]
            net[v] = Fraction(0)
        return {e: val for e, val in flow.items() if val != 0}

    def rank(self):
        return len(self.basis_flows)

    def class_coordinates(self, flow):
        """Coordinates of a flow's homology class in the chosen basis."""
        if not self.ribbon.check_flow(flow):
            raise ValueError("not a cycle")
        vec = [Fraction(flow.get(e, 0)) for e in self.nontree]
        for prow, pcol in zip(self._face_red, self._face_pivots):
            f = vec[pcol]
            if f != 0:
                vec = [a - f * b for a, b in zip(vec, prow)]
        coords = [vec[j] for j in self.basis_columns]
        # sanity: nothing may remain outside the chosen columns
        leftovers = [vec[j] for j in range(len(vec))
                     if j not in self.basis_columns and vec[j] != 0]
        if leftovers:
            raise ValueError("flow does not reduce into the basis")
        return coords

    def pair_cycles(self, x, y):
        """Intersection number through basis coordinates and the matrix."""
        cx = self.class_coordinates(x)
        cy = self.class_coordinates(y)
        total = Fraction(0)
        for i, a in enumerate(cx):
            if a == 0:
                continue
            row = self.pairing_matrix[i]
            for j, b in enumerate(cy):
                if b != 0:
                    total += a * row[j] * b
        return total

    def pair_cocycles(self, alpha, beta):
        """Cup-product pairing of edge-period classes.

        ``alpha`` and ``beta`` assign a rational period to each edge
        (measured along the reference direction).  For classes represented
        by closed forms, the pairing equals the integral of their wedge.
        """
        pa = [self._period(alpha, f) for f in self.basis_flows]
        pb = [self._period(beta, f) for f in self.basis_flows]
        n = self.rank()
        if n == 0:
            return Fraction(0)
        # solve J z = pb, answer is -pa . z
        sol = linalg.solve([list(r) for r in self.pairing_matrix], pb)
        if sol is None:
            raise ValueError("degenerate intersection matrix")
        return -sum((a * z for a, z in zip(pa, sol)), Fraction(0))

    @staticmethod
    def _period(alpha, flow):
        return sum((Fraction(alpha.get(e, 0)) * val for e, val in flow.items()),
                   Fraction(0))
