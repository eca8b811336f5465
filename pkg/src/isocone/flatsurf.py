"""Exact flat surfaces glued from rational Euclidean triangles.

A ``FlatSurface`` is a collection of positively oriented triangles whose
directed edges carry exact rational plane vectors, glued in pairs.  A
``neg`` gluing identifies charts by a translation (the partner edge carries
the negated vector); a ``pos`` gluing identifies them by a point reflection
(equal vectors).  Translation surfaces use only ``neg`` gluings and have
cone angles in 2*pi*Z; half-translation surfaces also allow ``pos`` gluings
and cone angles in pi*Z.

The module provides exact Delaunay retriangulation by edge flips, edge
heights and the dual train track of a triangulation with no horizontal
edges, first-order deformations of the edge vectors (period tangents), and
three independent exact evaluations of the symplectic pairing of two
tangents, cross-checked by a floating-point quadrature of the defining
integral (the only inexact computation in the package).
"""

import math
from fractions import Fraction

from isocone.ordgroup import rat
from isocone.track import SurfaceTriangulation, track_dual_to_triangulation
from isocone.homology import SurfaceHomology
from isocone import linalg


class FlatSurfaceError(ValueError):
    pass


class NeedsRotationError(FlatSurfaceError):
    """A horizontal edge (or a height tie) blocks the operation."""


class QC:
    """Exact rational complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = rat(re)
        self.im = rat(im)

    def __add__(self, o):
        return QC(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QC(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, QC):
            return QC(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)
        return QC(self.re * rat(o), self.im * rat(o))

    __rmul__ = __mul__

    def conj(self):
        return QC(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, o):
        return isinstance(o, QC) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"QC({self.re},{self.im})"


def cross(u, v):
    return u.re * v.im - u.im * v.re


def dot(u, v):
    return u.re * v.re + u.im * v.im


class FlatSurface:
    """Glued rational triangles; see the module docstring.

    ``triangles`` maps triangle ids to ccw triples of directed edge ids;
    ``vectors`` maps each directed edge to a QC; ``gluings`` maps each
    directed edge to its partner; ``signs`` maps each directed edge to
    'neg' or 'pos' (symmetric on a gluing pair).
    """

    def __init__(self, kind, triangles, vectors, gluings, signs=None):
        if kind not in ("translation", "half-translation"):
            raise FlatSurfaceError(f"unknown kind {kind!r}")
        self.kind = kind
        self.vectors = dict(vectors)
        if signs is None:
            signs = {d: "neg" for d in gluings}
        self.signs = dict(signs)
        self.comb = SurfaceTriangulation(triangles, gluings)
        self.triangles = self.comb.triangles
        self.glue = self.comb.glue
        self._check_structure()

    def _check_structure(self):
        for t, ds in self.triangles.items():
            vs = [self.vectors[d] for d in ds]
            total = vs[0] + vs[1] + vs[2]
            if not total.is_zero():
                raise FlatSurfaceError(f"triangle {t!r} does not close up")
            if cross(vs[0], vs[1]) <= 0:
                raise FlatSurfaceError(f"triangle {t!r} has nonpositive area")
        for d, d2 in self.glue.items():
            s = self.signs.get(d)
            if s not in ("neg", "pos"):
                raise FlatSurfaceError(f"missing gluing sign at {d!r}")
            if s != self.signs.get(d2):
                raise FlatSurfaceError(f"gluing signs disagree at {d!r}")
            want = -self.vectors[d] if s == "neg" else self.vectors[d]
            if self.vectors[d2] != want:
                raise FlatSurfaceError(
                    f"gluing at {d!r} is not vector-compatible")
            if self.kind == "translation" and s == "pos":
                raise FlatSurfaceError(
                    "translation surfaces allow only neg gluings")

    # -- basic quantities -----------------------------------------------------

    def total_area(self):
        area = Fraction(0)
        for t in sorted(self.triangles, key=repr):
            d0, d1, _ = self.triangles[t]
            area += cross(self.vectors[d0], self.vectors[d1]) / 2
        return area

    def chart_factor(self, d):
        """Chart transition multiplier when crossing the gluing at d."""
        return 1 if self.signs[d] == "neg" else -1

    def cone_angles(self):
        """Exact cone angle at each vertex class, as a multiple of pi.

        Sweeps the corner wedges around every vertex, counting crossings of
        a fixed reference line; each corner wedge is strictly inside a half
        plane, so the count equals the total angle divided by pi.
        """
        surf = self.comb
        visited = set()
        angles = {}
        for t0, ds0 in sorted(self.triangles.items(), key=lambda kv: repr(kv[0])):
            for i0 in range(3):
                if (t0, i0) in visited:
                    continue
                # collect the ccw corner cycle
                cycle = []
                c = (t0, i0)
                while c not in visited:
                    visited.add(c)
                    cycle.append(c)
                    ct, ci = c
                    prev = self.triangles[ct][(ci + 2) % 3]
                    c = surf.locate(self.glue[prev])
                # sweep in the chart of the first corner
                k = 0
                sigma = 1
                t, i = cycle[0]
                ref = self.vectors[self.triangles[t][i]]
                for (ct, ci) in cycle:
                    ds = self.triangles[ct]
                    P = sigma * self.vectors[ds[ci]]
                    Q = sigma * (-self.vectors[ds[(ci + 2) % 3]])
                    if cross(P, Q) <= 0:
                        raise FlatSurfaceError("degenerate corner wedge")
                    for L in (ref, -ref):
                        if cross(Q, L) == 0 and dot(Q, L) > 0:
                            k += 1          # arrival exactly on the line
                        elif cross(P, L) > 0 and cross(L, Q) > 0:
                            k += 1
                    prev = ds[(ci + 2) % 3]
                    sigma *= self.chart_factor(prev)
                v = surf.corner_class[cycle[0]]
                angles[v] = k
        return angles

    def validate(self):
        """Full validation: symbol, genus, areas, angles.

        Returns a dict with the zero multiplicities ('symbol', weakly
        decreasing, zeros of order 0 omitted), the square flag ('epsilon',
        +1 exactly for translation surfaces), genus, vertex angles, and the
        exact total area.
        """
        angles = self.cone_angles()
        genus = self.comb.genus()
        mults = []
        for v, k in angles.items():
            if self.kind == "translation" and k % 2 != 0:
                raise FlatSurfaceError(
                    f"odd cone angle {k}*pi on a translation surface")
            if k - 2 != 0:
                mults.append(k - 2)
        mults.sort(reverse=True)
        if sum(mults) != 4 * genus - 4:
            raise FlatSurfaceError("zero orders inconsistent with genus")
        return {
            "symbol": tuple(mults),
            "epsilon": 1 if self.kind == "translation" else -1,
            "genus": genus,
            "angles": angles,
            "area": self.total_area(),
        }

    # -- similarity and shearing ------------------------------------------------

    def rotate(self, c):
        """Multiply every edge vector by a nonzero rational complex number."""
        if not isinstance(c, QC):
            c = QC(c)
        if c.is_zero():
            raise FlatSurfaceError("rotation by zero is degenerate")
        vectors = {d: c * v for d, v in self.vectors.items()}
        return FlatSurface(self.kind, self.triangles, vectors, self.glue,
                           self.signs)

    def apply_matrix(self, a, b, c, d):
        """Apply an orientation-preserving rational linear map to all vectors."""
        a, b, c, d = map(rat, (a, b, c, d))
        if a * d - b * c <= 0:
            raise FlatSurfaceError("matrix must preserve orientation")
        vectors = {k: QC(a * v.re + b * v.im, c * v.re + d * v.im)
                   for k, v in self.vectors.items()}
        return FlatSurface(self.kind, self.triangles, vectors, self.glue,
                           self.signs)

    def shear(self, s):
        return self.apply_matrix(1, rat(s), 0, 1)

    # -- heights and the dual track ----------------------------------------------

    def heights(self):
        """|imaginary part| per undirected edge; fails on horizontal edges."""
        out = {}
        for E in self.comb.edge_classes:
            v = self.vectors[E]
            if v.im == 0:
                raise NeedsRotationError(f"horizontal edge {E!r}")
            out[E] = abs(v.im)
        return out

    def dual_track(self):
        """Dual train track: tallest edge outgoing in every triangle.

        Returns ``(track, edge_to_branch)``; branch ids are the undirected
        edge classes, and the heights satisfy every switch relation.
        Raises NeedsRotationError on horizontal edges or height ties.
        """
        h = self.heights()
        outgoing = {}
        for t, ds in self.triangles.items():
            hs = [h[self.comb.edge_class[d]] for d in ds]
            top = max(hs)
            if hs.count(top) != 1:
                raise NeedsRotationError(f"height tie in triangle {t!r}")
            outgoing[t] = hs.index(top)
        return track_dual_to_triangulation(self.comb, outgoing)

    def adapted(self, candidates=None):
        """Rotate by the first multiplier leaving no horizontal edge or tie.

        The search runs over a deterministic sequence of small rational
        complex numbers; returns ``(surface, multiplier)``.
        """
        if candidates is None:
            candidates = [QC(1, 0)]
            for n in range(1, 12):
                for p in range(n + 1):
                    q = n - p
                    if math.gcd(p, q) == 1:
                        candidates.append(QC(p, q))
        for c in candidates:
            s = self.rotate(c)
            try:
                s.dual_track()
            except NeedsRotationError:
                continue
            return s, c
        raise NeedsRotationError("no adapted rotation among the candidates")


# -- Delaunay retriangulation ----------------------------------------------------


def _positions(surface, t):
    """Developed corner positions of a triangle in its own chart."""
    d0, d1, d2 = surface.triangles[t]
    p0 = QC(0)
    p1 = surface.vectors[d0]
    p2 = p1 + surface.vectors[d1]
    return [p0, p1, p2]


def _incircle_strict(A, B, C, D):
    """D strictly inside the circumcircle of ccw triangle ABC."""
    rows = []
    for P in (A, B, C):
        x = P.re - D.re
        y = P.im - D.im
        rows.append([x, y, x * x + y * y])
    det = (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
           - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
           + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
    return det > 0


def _edge_quad(surface, d):
    """Developed quad around edge d: (A, B, C, D, data for the flip).

    A->B is the edge in its own triangle's chart, C the opposite corner on
    the d side, D the opposite corner of the partner triangle developed
    across the gluing.
    """
    p = surface.glue[d]
    t1, i = surface.comb.locate(d)
    t2, j = surface.comb.locate(p)
    pos1 = _positions(surface, t1)
    A = pos1[i]
    B = pos1[(i + 1) % 3]
    C = pos1[(i + 2) % 3]
    mu = surface.chart_factor(d)
    pos2 = _positions(surface, t2)
    # psi(z) = mu * z + tau maps the partner chart here, tail(p) to B
    tau = B - mu * pos2[j]
    D = mu * pos2[(j + 2) % 3] + tau
    return A, B, C, D, (t1, i, t2, j, mu)


def is_delaunay(surface):
    """Non-strict global Delaunay check over all undirected edges."""
    for E in surface.comb.edge_classes:
        A, B, C, D, _ = _edge_quad(surface, E)
        if _incircle_strict(A, B, C, D):
            return False
    return True


def _flip(surface, d):
    """Flip the undirected edge of d; returns the new surface."""
    A, B, C, D, (t1, i, t2, j, mu) = _edge_quad(surface, d)
    p = surface.glue[d]
    ds1 = surface.triangles[t1]
    ds2 = surface.triangles[t2]
    e1, e2 = ds1[(i + 1) % 3], ds1[(i + 2) % 3]
    f1, f2 = ds2[(j + 1) % 3], ds2[(j + 2) % 3]

    triangles = {t: v for t, v in surface.triangles.items()
                 if t not in (t1, t2)}
    vectors = dict(surface.vectors)
    glu = dict(surface.glue)
    signs = dict(surface.signs)

    # new triangles in the common chart: (A, D, C) and (D, B, C), with the
    # old diagonal ids reused for the new one (C -> D and back)
    vectors[f1] = mu * surface.vectors[f1]
    vectors[f2] = mu * surface.vectors[f2]
    vectors[d] = D - C
    vectors[p] = C - D
    triangles[t1] = (f1, p, e2)        # A->D, D->C, C->A
    triangles[t2] = (f2, e1, d)        # D->B, B->C, C->D
    signs[d] = signs[p] = "neg"

    # recompute the gluing signs of the outer edges from current vectors
    for x in (e1, e2, f1, f2):
        y = glu[x]
        if vectors[y] == -vectors[x]:
            signs[x] = signs[y] = "neg"
        elif vectors[y] == vectors[x]:
            signs[x] = signs[y] = "pos"
        else:
            raise AssertionError("flip broke a gluing")

    return FlatSurface(surface.kind, triangles, vectors, glu, signs)


def delaunay(surface):
    """Flip strictly illegal edges until every edge passes the circle test.

    Cocircular configurations are legal and never flipped, which makes the
    procedure deterministic and terminating; area, symbol, genus, and the
    gluing kind are preserved exactly.
    """
    s = surface
    cap = 1000 + 100 * len(s.comb.edge_classes) ** 2
    steps = 0
    while True:
        flipped = False
        for E in sorted(s.comb.edge_classes, key=repr):
            A, B, C, D, _ = _edge_quad(s, E)
            if _incircle_strict(A, B, C, D):
                s = _flip(s, E)
                steps += 1
                if steps > cap:
                    raise RuntimeError("flip loop exceeded its bound")
                flipped = True
                break
        if not flipped:
            return s


# -- period tangents ---------------------------------------------------------------


class PeriodTangent:
    """First-order deformation of the edge vectors with fixed combinatorics.

    ``delta`` maps every directed edge to a QC; the values close up around
    every triangle and transform across gluings exactly like the vectors.
    """

    def __init__(self, surface, delta):
        self.surface = surface
        self.delta = dict(delta)
        for t, ds in surface.triangles.items():
            total = self.delta[ds[0]] + self.delta[ds[1]] + self.delta[ds[2]]
            if not total.is_zero():
                raise FlatSurfaceError(f"tangent does not close on {t!r}")
        for d, d2 in surface.glue.items():
            want = -self.delta[d] if surface.signs[d] == "neg" else self.delta[d]
            if self.delta[d2] != want:
                raise FlatSurfaceError(f"tangent breaks the gluing at {d!r}")

    def times_i(self):
        return PeriodTangent(self.surface,
                             {d: QC(0, 1) * v for d, v in self.delta.items()})

    def scale(self, q):
        q = rat(q)
        return PeriodTangent(self.surface,
                             {d: v * q for d, v in self.delta.items()})

    def __add__(self, other):
        return PeriodTangent(self.surface,
                             {d: v + other.delta[d]
                              for d, v in self.delta.items()})

    @classmethod
    def scaling(cls, surface):
        """The tangent moving every period along itself."""
        return cls(surface, dict(surface.vectors))

    @classmethod
    def from_class_values(cls, surface, values):
        """Expand values on undirected edge classes to all directed edges."""
        delta = {}
        for d in surface.vectors:
            E = surface.comb.edge_class[d]
            if d == E:
                delta[d] = values[E]
            else:
                mu = 1 if surface.signs[d] == "pos" else -1
                delta[d] = mu * values[E]
        return cls(surface, delta)


def tangent_coefficient_rows(surface):
    """Closure constraints on class values, one +-1 row per triangle."""
    classes = surface.comb.edge_classes
    idx = {E: k for k, E in enumerate(classes)}
    rows = []
    for t in sorted(surface.triangles, key=repr):
        row = [Fraction(0)] * len(classes)
        for d in surface.triangles[t]:
            E = surface.comb.edge_class[d]
            if d == E:
                row[idx[E]] += 1
            else:
                row[idx[E]] += 1 if surface.signs[d] == "pos" else -1
        rows.append(row)
    return rows, classes


def tangent_basis(surface):
    """Complex basis of the period tangent space.

    Returns a list of PeriodTangents; together with their i-multiples they
    span all valid tangents over the rationals.
    """
    rows, classes = tangent_coefficient_rows(surface)
    kernel = linalg.kernel_basis(rows, len(classes))
    out = []
    for vec in kernel:
        values = {E: QC(x) for E, x in zip(classes, vec)}
        out.append(PeriodTangent.from_class_values(surface, values))
    return out


def random_tangent(surface, rng, lo=-2, hi=2, maxden=2):
    basis = tangent_basis(surface)
    values = {d: QC(0) for d in surface.vectors}
    t = PeriodTangent(surface, values)
    for b in basis:
        cr = Fraction(rng.randint(lo, hi), rng.randint(1, maxden))
        ci = Fraction(rng.randint(lo, hi), rng.randint(1, maxden))
        t = t + b.scale(cr) + b.times_i().scale(ci)
    return t


# -- the three exact pairings --------------------------------------------------------


def height_derivative(surface, tangent):
    """Derivative of the edge heights along a tangent, per branch.

    The height of an edge is |Im| of its vector; with no horizontal edges
    the derivative is sign(Im v) * Im(delta), independent of the directed
    representative.  The result satisfies the linearized switch relations
    of the dual track.
    """
    out = {}
    for E in surface.comb.edge_classes:
        v = surface.vectors[E]
        if v.im == 0:
            raise NeedsRotationError(f"horizontal edge {E!r}")
        s = 1 if v.im > 0 else -1
        out[E] = s * tangent.delta[E].im
    return out


def omega_thurston(surface, t1, t2):
    """Pairing via the dual track: Thurston form of the height derivatives."""
    track, e2b = surface.dual_track()
    w1 = height_derivative(surface, t1)
    w2 = height_derivative(surface, t2)
    return track.thurston_form(w1, w2)


def omega_hessian(surface, t1, t2):
    """Pairing via the exact Hessian of the area in period coordinates.

    The total area N is a constant quadratic form in the edge periods,
    per triangle N = Im(conj(u) v)/2 on consecutive directed edges.  Its
    alternating (1,1)-Hessian, contracted on the vertical components of
    the two deformations, gives per triangle

        (Im u1 * Im v2 - Im v1 * Im u2) / 2.

    On multiples of the base periods (and in general whenever the
    horizontal and vertical period classes pair equally) this agrees with
    the full hermitian contraction; the convention is pinned against the
    quadrature oracle on exactly such pairs (docs/conventions.md).  The
    result is independent of which two consecutive edges are used, by the
    per-triangle closure of tangents.
    """
    total = Fraction(0)
    for t in sorted(surface.triangles, key=repr):
        d0, d1, _ = surface.triangles[t]
        u1, v1 = t1.delta[d0], t1.delta[d1]
        u2, v2 = t2.delta[d0], t2.delta[d1]
        total += Fraction(u1.im * v2.im - v1.im * u2.im, 2)
    return total


def _double_cover_data(surface):
    """Orientation double cover with lifts; translation input doubles."""
    triangles = {}
    vectors = {}
    glu = {}
    signs = {}
    for t, ds in surface.triangles.items():
        for sheet in (0, 1):
            triangles[(t, sheet)] = tuple((d, sheet) for d in ds)
    for d, v in surface.vectors.items():
        vectors[(d, 0)] = v
        vectors[(d, 1)] = -v
    for d, d2 in surface.glue.items():
        if surface.signs[d] == "neg":
            pairs = [((d, 0), (d2, 0)), ((d, 1), (d2, 1))]
        else:
            pairs = [((d, 0), (d2, 1)), ((d, 1), (d2, 0))]
        for a, b in pairs:
            glu[a] = b
            glu[b] = a
            signs[a] = signs[b] = "neg"
    cover = FlatSurface("translation", triangles, vectors, glu, signs)
    involution = {(d, s): (d, 1 - s) for d in surface.vectors for s in (0, 1)}
    return cover, involution


def orientation_double_cover(surface):
    """The translation double cover and its sheet-swapping involution.

    On a translation surface the cover is two disjoint copies; on a
    half-translation surface the sign-reversing gluings connect the sheets
    and every gluing of the cover is a translation.  The involution negates
    the lifted edge vectors; the covering area is twice the base area.
    """
    return _double_cover_data(surface)


def lift_tangent(cover, tangent):
    delta = {}
    for (d, sheet) in cover.vectors:
        v = tangent.delta[d]
        delta[(d, sheet)] = v if sheet == 0 else -v
    return PeriodTangent(cover, delta)


def omega_homological(surface, t1, t2):
    """Pairing via cup products of the vertical-part cohomology classes.

    For a translation surface the classes with periods Im(delta) on the
    base pair by the intersection form of a homology basis.  Half
    translation surfaces route through the orientation double cover with
    the pinned factor 1/2.
    """
    if surface.kind != "translation":
        cover, _ = _double_cover_data(surface)
        l1 = lift_tangent(cover, t1)
        l2 = lift_tangent(cover, t2)
        return omega_homological(cover, l1, l2) / 2
    ribbon = surface.comb.skeleton_ribbon()
    hom = SurfaceHomology(ribbon)
    alpha = {E: t1.delta[E].im for E in surface.comb.edge_classes}
    beta = {E: t2.delta[E].im for E in surface.comb.edge_classes}
    return hom.pair_cocycles(alpha, beta)


# -- quadrature oracle (floating point, clearly inexact) ------------------------------


def kahler_pairing_numeric(surface, t1, t2, depth=4):
    """Numerical pairing integral with piecewise-affine representatives.

    Each tangent is realized on every triangle as the affine interpolant
    of its three edge periods; the hermitian pairing integrand
    (i/2) theta_1 wedge conj(theta_2) is integrated by the centroid rule
    over ``depth`` barycentric subdivisions.  Returns a complex number
    whose imaginary part approximates the exact pairings; the real part is
    the metric pairing.  Half-translation surfaces integrate on the
    orientation double cover with the factor 1/2.
    """
    if surface.kind != "translation":
        cover, _ = _double_cover_data(surface)
        return kahler_pairing_numeric(
            cover, lift_tangent(cover, t1), lift_tangent(cover, t2),
            depth) / 2.0

    total = complex(0)
    for t in sorted(surface.triangles, key=repr):
        ds = surface.triangles[t]
        pos = _positions(surface, t)
        P = [complex(p.re, p.im) for p in pos]
        per1 = [complex(t1.delta[d].re, t1.delta[d].im) for d in ds]
        per2 = [complex(t2.delta[d].re, t2.delta[d].im) for d in ds]
        total += _triangle_pairing_quadrature(P, per1, per2, depth)
    return total


def _triangle_pairing_quadrature(P, per1, per2, depth):
    # barycentric gradients: lambda_k is affine with gradient g_k
    (x0, y0), (x1, y1), (x2, y2) = ((p.real, p.imag) for p in P)
    twoA = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    grads = [
        ((y1 - y2) / twoA, (x2 - x1) / twoA),
        ((y2 - y0) / twoA, (x0 - x2) / twoA),
        ((y0 - y1) / twoA, (x1 - x0) / twoA),
    ]

    def lam(k, x, y):
        refs = [(x1, y1), (x2, y2), (x0, y0)]
        gx, gy = grads[k]
        rx, ry = refs[k]          # lambda_k vanishes on the opposite edge
        return gx * (x - rx) + gy * (y - ry)

    # edge k runs from corner k to corner k+1: Whitney form
    #   W_k = lam_k d(lam_{k+1}) - lam_{k+1} d(lam_k)
    def theta(per, x, y):
        cx = complex(0)
        cy = complex(0)
        for k in range(3):
            a, b = k, (k + 1) % 3
            la = lam(a, x, y)
            lb = lam(b, x, y)
            ga, gb = grads[a], grads[b]
            wx = la * gb[0] - lb * ga[0]
            wy = la * gb[1] - lb * ga[1]
            cx += per[k] * wx
            cy += per[k] * wy
        return cx, cy

    def integrand(x, y):
        ax, ay = theta(per1, x, y)
        bx, by = theta(per2, x, y)
        # (i/2) theta1 ^ conj(theta2) = (i/2)(ax*conj(by) - ay*conj(bx)) dx^dy
        return 0.5j * (ax * by.conjugate() - ay * bx.conjugate())

    pieces = [P]
    for _ in range(depth):
        nxt = []
        for (a, b, c) in pieces:
            ab = (a + b) / 2
            bc = (b + c) / 2
            ca = (c + a) / 2
            nxt.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
        pieces = nxt
    area_factor = abs(twoA) / 2 / len(pieces)
    total = complex(0)
    for (a, b, c) in pieces:
        z = (a + b + c) / 3
        total += integrand(z.real, z.imag)
    return total * area_factor


# -- fixture surfaces -------------------------------------------------------------


def square_torus():
    """Unit square torus: two triangles, one marked point, area 1."""
    tris = {"t0": ("a", "b", "c"), "t1": ("A", "B", "C")}
    vectors = {"a": QC(1, 0), "b": QC(0, 1), "c": QC(-1, -1),
               "A": QC(-1, 0), "B": QC(0, -1), "C": QC(1, 1)}
    glu = {"a": "A", "A": "a", "b": "B", "B": "b", "c": "C", "C": "c"}
    return FlatSurface("translation", tris, vectors, glu)


def hex_torus():
    """Hexagonal torus: opposite sides of a rational hexagon identified."""
    a = QC(2, 0)
    b = QC(1, 2)
    c = QC(-2, 2)
    # fan from the first corner; corners 0, a, a+b, a+b+c, b+c, c
    tris = {
        "t0": ("sa", "sb", "d1r"),
        "t1": ("d1", "sc", "d2r"),
        "t2": ("d2", "sar", "d3r"),
        "t3": ("d3", "sbr", "scr"),
    }
    p = [QC(0), a, a + b, a + b + c, b + c, c]
    vectors = {
        "sa": a, "sb": b, "sc": c,
        "sar": -a, "sbr": -b, "scr": -c,
        "d1": p[2] - p[0], "d1r": p[0] - p[2],
        "d2": p[3] - p[0], "d2r": p[0] - p[3],
        "d3": p[4] - p[0], "d3r": p[0] - p[4],
    }
    glu = {}
    for x, y in [("sa", "sar"), ("sb", "sbr"), ("sc", "scr"),
                 ("d1", "d1r"), ("d2", "d2r"), ("d3", "d3r")]:
        glu[x] = y
        glu[y] = x
    return FlatSurface("translation", tris, vectors, glu)


def lshape_h2():
    """L-shaped translation surface from three unit squares (genus 2).

    One cone point of angle 6*pi; as a squared differential the symbol is
    (4) with epsilon = +1 and the area is 3.
    """
    tris = {}
    vectors = {}
    glu = {}

    def add_square(name):
        d = f"{name}d"
        tris[f"{name}0"] = (f"{name}b", f"{name}r", d + "r")
        tris[f"{name}1"] = (d, f"{name}t", f"{name}l")
        vectors[f"{name}b"] = QC(1, 0)
        vectors[f"{name}r"] = QC(0, 1)
        vectors[d + "r"] = QC(-1, -1)
        vectors[d] = QC(1, 1)
        vectors[f"{name}t"] = QC(-1, 0)
        vectors[f"{name}l"] = QC(0, -1)
        glu[d] = d + "r"
        glu[d + "r"] = d

    for name in ("P", "Q", "R"):
        add_square(name)

    def pair(x, y):
        glu[x] = y
        glu[y] = x

    # L shape: P = [0,1]^2, Q = [1,2]x[0,1], R = [0,1]x[1,2]
    # interior shared edges
    pair("Pr", "Ql")      # x = 1, 0 <= y <= 1
    pair("Pt", "Rb")      # y = 1, 0 <= x <= 1
    # identifications of the outer boundary by translations
    pair("Pb", "Rt")      # (x,0) ~ (x,2)
    pair("Qb", "Qt")      # (x,0) ~ (x,1) on 1 <= x <= 2
    pair("Pl", "Qr")      # (0,y) ~ (2,y)
    pair("Rl", "Rr")      # (0,y) ~ (1,y) on 1 <= y <= 2
    return FlatSurface("translation", tris, vectors, glu)


def pillowcase():
    """Half-translation sphere: the double of a unit square, four poles."""
    tris = {}
    vectors = {}
    glu = {}
    # upper copy [0,1]x[0,1] and lower copy [0,1]x[-1,0]
    tris["u0"] = ("ub", "ur", "udr")
    tris["u1"] = ("ud", "ut", "ul")
    vectors.update({"ub": QC(1, 0), "ur": QC(0, 1), "udr": QC(-1, -1),
                    "ud": QC(1, 1), "ut": QC(-1, 0), "ul": QC(0, -1)})
    tris["l0"] = ("lb", "lr", "ldr")
    tris["l1"] = ("ld", "lt", "ll")
    vectors.update({"lb": QC(1, 0), "lr": QC(0, 1), "ldr": QC(-1, -1),
                    "ld": QC(1, 1), "lt": QC(-1, 0), "ll": QC(0, -1)})

    def pair(x, y, sign):
        glu[x] = y
        glu[y] = x
        return {x: sign, y: sign}

    signs = {}
    signs.update(pair("ud", "udr", "neg"))
    signs.update(pair("ld", "ldr", "neg"))
    signs.update(pair("ub", "lt", "neg"))     # shared edge y = 0
    signs.update(pair("ut", "lb", "neg"))     # top of strip to its bottom
    signs.update(pair("ul", "ll", "pos"))     # left fold
    signs.update(pair("ur", "lr", "pos"))     # right fold
    return FlatSurface("half-translation", tris, vectors, glu, signs)
