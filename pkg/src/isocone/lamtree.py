"""Finite metric trees with lexicographic tuple lengths.

A ``MetricTree`` is a finite combinatorial tree whose edges carry strictly
positive ``LexVec`` lengths, all of one rank.  An optional *end* is a formal
semi-infinite ray attached at an anchor vertex; points on the ray are
recorded by their excess distance past the anchor.  That is enough structure
to evaluate horofunction differences and pushing maps exactly while keeping
every object finite.

Points of the tree (``TreePoint``) are vertices, interior points of edges
(by offset from the stored first endpoint), or ray points.  Distances are
exact LexVec values.
"""

from fractions import Fraction

from isocone.ordgroup import LexVec, rat, DimensionError


class NotAMetricError(ValueError):
    pass


class NotAnIsometryError(ValueError):
    pass


class OrderViolationError(ValueError):
    pass


class TreePoint:
    """A point of a MetricTree: vertex, edge-interior point, or ray point."""

    __slots__ = ("kind", "vertex", "edge", "offset", "excess")

    def __init__(self, kind, vertex=None, edge=None, offset=None, excess=None):
        self.kind = kind
        self.vertex = vertex
        self.edge = edge
        self.offset = offset
        self.excess = excess

    def __eq__(self, other):
        if not isinstance(other, TreePoint):
            return NotImplemented
        return (self.kind, self.vertex, self.edge, self.offset, self.excess) == \
               (other.kind, other.vertex, other.edge, other.offset, other.excess)

    def __hash__(self):
        return hash((self.kind, self.vertex, self.edge, self.offset, self.excess))

    def __repr__(self):
        if self.kind == "vertex":
            return f"TreePoint(vertex {self.vertex!r})"
        if self.kind == "edge":
            return f"TreePoint(edge {self.edge!r} at {self.offset!r})"
        return f"TreePoint(ray at excess {self.excess!r})"


class MetricTree:
    """Finite tree with positive LexVec edge lengths and an optional end.

    ``edges`` maps an edge id to ``(u, v, length)``.  The graph must be
    connected and acyclic.  Trees are immutable once built; distances are
    cached internally.
    """

    def __init__(self, vertices, edges, end=None):
        self.vertices = tuple(sorted(vertices, key=repr))
        self.edges = dict(edges)
        self.end = end
        vset = set(self.vertices)
        if not vset:
            raise ValueError("tree needs at least one vertex")

        ranks = set()
        self.adj = {v: [] for v in self.vertices}
        for eid, (u, v, length) in self.edges.items():
            if u not in vset or v not in vset:
                raise ValueError(f"edge {eid!r} touches unknown vertex")
            if not isinstance(length, LexVec):
                raise TypeError(f"edge {eid!r} length must be LexVec")
            if not length > LexVec.zero(length.rank):
                raise ValueError(f"edge {eid!r} has nonpositive length")
            ranks.add(length.rank)
            self.adj[u].append((eid, v))
            self.adj[v].append((eid, u))
        if len(ranks) > 1:
            raise DimensionError(f"mixed length ranks: {sorted(ranks)}")
        self.rank = ranks.pop() if ranks else 1

        if len(self.edges) != len(self.vertices) - 1:
            raise ValueError("edge count does not match a tree")
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            w = stack.pop()
            for _, nb in self.adj[w]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if seen != vset:
            raise ValueError("tree is not connected")

        if end is not None and end not in vset:
            raise ValueError(f"end anchor {end!r} is not a vertex")

        self._vdist = {}
        self._parent = None

    # -- point constructors ------------------------------------------------

    def point(self, v):
        if v not in self.adj:
            raise ValueError(f"unknown vertex {v!r}")
        return TreePoint("vertex", vertex=v)

    def point_on_edge(self, eid, offset):
        u, v, length = self.edges[eid]
        if not isinstance(offset, LexVec):
            if self.rank != 1:
                raise TypeError("offset must be a LexVec for rank > 1")
            offset = LexVec([rat(offset)])
        if offset.rank != self.rank:
            raise DimensionError("offset rank mismatch")
        zero = LexVec.zero(self.rank)
        if not (zero <= offset <= length):
            raise ValueError(f"offset {offset} outside edge {eid!r}")
        if offset == zero:
            return self.point(u)
        if offset == length:
            return self.point(v)
        return TreePoint("edge", edge=eid, offset=offset)

    def point_on_ray(self, excess):
        if self.end is None:
            raise ValueError("tree has no end")
        if not isinstance(excess, LexVec):
            excess = LexVec([rat(excess)] if self.rank == 1 else excess)
        if excess.rank != self.rank:
            raise DimensionError("excess rank mismatch")
        zero = LexVec.zero(self.rank)
        if excess < zero:
            raise ValueError("ray excess must be nonnegative")
        if excess == zero:
            return self.point(self.end)
        return TreePoint("ray", excess=excess)

    # -- distances ---------------------------------------------------------

    def vertex_distance(self, a, b):
        if a == b:
            return LexVec.zero(self.rank)
        key = (a, b) if repr(a) <= repr(b) else (b, a)
        got = self._vdist.get(key)
        if got is not None:
            return got
        # BFS from key[0], caching every distance found along the way
        src = key[0]
        dist = {src: LexVec.zero(self.rank)}
        queue = [src]
        while queue:
            w = queue.pop()
            for eid, nb in self.adj[w]:
                if nb not in dist:
                    dist[nb] = dist[w] + self.edges[eid][2]
                    queue.append(nb)
        for w, d in dist.items():
            k = (src, w) if repr(src) <= repr(w) else (w, src)
            self._vdist[k] = d
        return self._vdist[key]

    def _point_anchors(self, p):
        """(vertex, cost) pairs through which paths from p leave its cell."""
        if p.kind == "vertex":
            return [(p.vertex, LexVec.zero(self.rank))]
        if p.kind == "edge":
            u, v, length = self.edges[p.edge]
            return [(u, p.offset), (v, length - p.offset)]
        # ray point: every path to the finite tree passes the end anchor
        return [(self.end, p.excess)]

    def distance(self, p, q):
        """Exact distance between two tree points."""
        if not isinstance(p, TreePoint) or not isinstance(q, TreePoint):
            raise TypeError("distance expects TreePoints")
        if p == q:
            return LexVec.zero(self.rank)
        if p.kind == "ray" and q.kind == "ray":
            return abs(p.excess - q.excess)
        if p.kind == "edge" and q.kind == "edge" and p.edge == q.edge:
            return abs(p.offset - q.offset)
        best = None
        for va, ca in self._point_anchors(p):
            for vb, cb in self._point_anchors(q):
                d = ca + self.vertex_distance(va, vb) + cb
                if best is None or d < best:
                    best = d
        return best

    # -- paths toward the end ----------------------------------------------

    def _parents(self):
        """Parent vertex/edge pointers toward the end anchor."""
        if self._parent is None:
            if self.end is None:
                raise ValueError("tree has no end")
            parent = {self.end: (None, None)}
            stack = [self.end]
            while stack:
                w = stack.pop()
                for eid, nb in self.adj[w]:
                    if nb not in parent:
                        parent[nb] = (w, eid)
                        stack.append(nb)
            self._parent = parent
        return self._parent

    def busemann(self, p):
        """Horofunction of the end, normalized to 0 at the anchor.

        Only rank-1 trees carry this; the value is an exact Fraction.
        Differences of values do not depend on the normalization.
        """
        if self.rank != 1:
            raise DimensionError("horofunction requires rank 1")
        if self.end is None:
            raise ValueError("tree has no end")
        if p.kind == "ray":
            return -p.excess.coords[0]
        anchor = self.point(self.end)
        return self.distance(p, anchor).coords[0]

    def push(self, p, s):
        """Slide p by distance s along its ray toward the end.

        Defined on rank-1 trees with an end.  For any two points p, q and
        any s past the junction of their rays toward the end, the images are
        exactly |busemann(p) - busemann(q)| apart; the map never increases
        distances.
        """
        if self.rank != 1:
            raise DimensionError("pushing requires rank 1")
        if self.end is None:
            raise ValueError("tree has no end")
        s = rat(s)
        if s < 0:
            raise ValueError("push distance must be nonnegative")
        if s == 0:
            return p
        sv = LexVec([s])
        if p.kind == "ray":
            return self.point_on_ray(p.excess + sv)
        parent = self._parents()
        # from an edge point, first move to the endpoint on the anchor side
        if p.kind == "edge":
            u, v, length = self.edges[p.edge]
            anchor = self.end
            cost_u = p.offset + self.vertex_distance(u, anchor)
            cost_v = (length - p.offset) + self.vertex_distance(v, anchor)
            if cost_u <= cost_v:
                first_vertex, first_cost = u, p.offset
            else:
                first_vertex, first_cost = v, length - p.offset
            if sv <= first_cost:
                # stay on the same edge, moving toward first_vertex
                if first_vertex == u:
                    return self.point_on_edge(p.edge, p.offset - sv)
                return self.point_on_edge(p.edge, p.offset + sv)
            remaining = sv - first_cost
            w = first_vertex
        else:
            remaining = sv
            w = p.vertex
        zero = LexVec.zero(1)
        while w != self.end:
            pw, eid = parent[w]
            u, v, length = self.edges[eid]
            if remaining <= length:
                if remaining == zero:
                    return self.point(w)
                if w == u:
                    return self.point_on_edge(eid, remaining)
                return self.point_on_edge(eid, length - remaining)
            remaining = remaining - length
            w = pw
        return self.point_on_ray(remaining)


# -- four-point machinery ----------------------------------------------------


def four_point_check(dmat):
    """Whether a symmetric 4x4 distance matrix satisfies the tree condition.

    Of the three pairings d(x,y)+d(z,t), d(x,z)+d(y,t), d(x,t)+d(y,z), the
    two largest must be equal.
    """
    if len(dmat) != 4 or any(len(r) != 4 for r in dmat):
        raise ValueError("need a 4x4 matrix")
    s1 = dmat[0][1] + dmat[2][3]
    s2 = dmat[0][2] + dmat[1][3]
    s3 = dmat[0][3] + dmat[1][2]
    a, b, c = sorted([s1, s2, s3])
    return b == c


def _check_metric(dmat):
    n = len(dmat)
    if n <= 1:
        return
    rank = dmat[0][1].rank
    zero = LexVec.zero(rank)
    for i in range(n):
        if len(dmat[i]) != n:
            raise NotAMetricError("matrix not square")
        if dmat[i][i] != zero:
            raise NotAMetricError("nonzero diagonal")
        for j in range(n):
            if dmat[i][j] != dmat[j][i]:
                raise NotAMetricError("matrix not symmetric")
            if dmat[i][j] < zero:
                raise NotAMetricError("negative distance")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if dmat[i][j] > dmat[i][k] + dmat[k][j]:
                    raise NotAMetricError(
                        f"triangle inequality fails on ({i},{j},{k})")


def is_zero_hyperbolic(dmat):
    """Brute-force four-point check over every 4-tuple of a finite metric."""
    _check_metric(dmat)
    n = len(dmat)
    if n <= 3:
        return True
    idx = range(n)
    for a in idx:
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    sub = [[dmat[p][q] for q in (a, b, c, d)]
                           for p in (a, b, c, d)]
                    if not four_point_check(sub):
                        return False
    return True


def vertex_distance_matrix(tree):
    vs = list(tree.vertices)
    return [[tree.vertex_distance(u, v) for v in vs] for u in vs]


# -- isometries and displacement ---------------------------------------------


def min_displacement(tree, g):
    """Minimum of d(x, g(x)) over vertices and edge midpoints.

    ``g`` is a vertex permutation; it must send edges to edges of equal
    length.  Evaluating at midpoints handles the edge-swapping case without
    changing the underlying tree.
    """
    vset = set(tree.vertices)
    if set(g.keys()) != vset or set(g.values()) != vset:
        raise NotAnIsometryError("not a vertex bijection")
    edge_by_pair = {}
    for eid, (u, v, length) in tree.edges.items():
        edge_by_pair[frozenset((u, v))] = (eid, length)
    for eid, (u, v, length) in tree.edges.items():
        img = frozenset((g[u], g[v]))
        if img not in edge_by_pair or edge_by_pair[img][1] != length:
            raise NotAnIsometryError(
                f"edge {eid!r} does not map to an edge of equal length")
    best = None
    for v in tree.vertices:
        d = tree.distance(tree.point(v), tree.point(g[v]))
        if best is None or d < best:
            best = d
    for eid, (u, v, length) in tree.edges.items():
        mid = tree.point_on_edge(eid, length.half())
        img_eid, _ = edge_by_pair[frozenset((g[u], g[v]))]
        iu, iv, ilen = tree.edges[img_eid]
        img_mid = tree.point_on_edge(img_eid, ilen.half())
        d = tree.distance(mid, img_mid)
        if best is None or d < best:
            best = d
    return best


# -- base change ---------------------------------------------------------------


class LinearMap:
    """Rational linear map between tuple groups, given by matrix rows."""

    def __init__(self, rows):
        self.rows = tuple(tuple(rat(x) for x in r) for r in rows)
        if not self.rows:
            raise ValueError("empty matrix")
        self.src_rank = len(self.rows[0])
        self.dst_rank = len(self.rows)

    @classmethod
    def scaling(cls, n, factor):
        f = rat(factor)
        return cls([[f if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def embed_last(cls, src_rank, dst_rank):
        rows = [[0] * src_rank for _ in range(dst_rank)]
        for i in range(src_rank):
            rows[dst_rank - src_rank + i][i] = 1
        return cls(rows)

    def apply(self, vec):
        if vec.rank != self.src_rank:
            raise DimensionError("rank mismatch in linear map")
        return LexVec(
            sum((r[j] * vec.coords[j] for j in range(self.src_rank)),
                Fraction(0))
            for r in self.rows)


def base_change(tree, m):
    """Replace every edge length by its image under ``m``.

    The combinatorics are unchanged; every distance is mapped through ``m``.
    Fails if some length is sent to a nonpositive tuple.
    """
    new_edges = {}
    for eid, (u, v, length) in tree.edges.items():
        img = m.apply(length)
        if not img > LexVec.zero(m.dst_rank):
            raise OrderViolationError(
                f"length of edge {eid!r} maps to nonpositive {img}")
        new_edges[eid] = (u, v, img)
    return MetricTree(tree.vertices, new_edges, end=tree.end)


# -- convex-subgroup subtree ----------------------------------------------------


def subtree_at(tree, x, k):
    """Subtree of points whose distance to x has zero leading coordinates.

    ``k`` indexes the convex subgroup: tuples vanishing before coordinate k
    (1-based).  The result keeps the vertices at such distances, truncates
    lengths to coordinates k..n, and is connected and contains x.
    """
    if not 1 <= k <= tree.rank:
        raise DimensionError(f"k={k} outside 1..{tree.rank}")
    keep = set()
    for v in tree.vertices:
        d = tree.vertex_distance(x, v)
        if all(c == 0 for c in d.coords[: k - 1]):
            keep.add(v)
    new_edges = {}
    for eid, (u, v, length) in tree.edges.items():
        if u in keep and v in keep:
            new_edges[eid] = (u, v, LexVec(length.coords[k - 1:]))
    end = tree.end if tree.end in keep else None
    return MetricTree(keep, new_edges, end=end)


# -- weights from maps into trees ------------------------------------------------


def weight_from_vertex_map(domain, f, edges):
    """Edge weights induced by mapping vertices into a tree.

    ``f`` is a TreeMap (or a plain dict together with a tree held by a
    TreeMap); the weight of an edge {u, v} is the distance between the
    images of its endpoints.  Returns a dict keyed by the pairs given in
    ``edges``; every weight is nonnegative.
    """
    for v in domain:
        f(v)  # totality check
    return f.edge_weights(edges)


class TreeMap:
    """Total assignment of domain vertices to points of a target tree."""

    def __init__(self, tree, assignment):
        self.tree = tree
        self.assignment = {}
        for v, p in assignment.items():
            if not isinstance(p, TreePoint):
                p = tree.point(p)
            self.assignment[v] = p

    def __call__(self, v):
        if v not in self.assignment:
            raise ValueError(f"vertex {v!r} not in the domain")
        return self.assignment[v]

    def edge_weights(self, edges):
        """Distance between endpoint images, for each vertex pair given."""
        out = {}
        for pair in edges:
            u, v = tuple(pair)
            out[pair] = self.tree.distance(self(u), self(v))
        return out
