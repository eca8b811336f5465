"""Line-based text formats for trees, tracks, surfaces, and 3-manifolds.

Every format is a sequence of directives, one per line; ``#`` starts a
comment.  Rationals are serialized as ``p/q`` (or ``p`` for integers) and
tuples as ``(p,q/r,...)``.  Parsers normalize rationals to lowest terms,
record a note when the input was not normalized, reject unknown
directives with the offending line number, and round-trip exactly with
the serializers on normalized files.
"""

from fractions import Fraction

from isocone.ordgroup import format_rat, parse_lexvec
from isocone.lamtree import MetricTree
from isocone.track import SurfaceTriangulation, TrainTrack
from isocone.cone3 import Triangulation3
from isocone.flatsurf import FlatSurface, QC, PeriodTangent


class ParseError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def clean_id(x):
    """Whitespace-free string form of an id (tuples joined with '_')."""
    if isinstance(x, tuple):
        return "_".join(clean_id(p) for p in x)
    s = str(x)
    if any(c.isspace() for c in s):
        raise ValueError(f"id {x!r} contains whitespace")
    return s


def rename_track(track):
    """Copy of a track with all ids flattened to clean strings."""
    from isocone.track import TrainTrack
    switches = {clean_id(s): tuple(clean_id(b) for b in abc)
                for s, abc in track.switches.items()}
    return TrainTrack(switches)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _rat(tok, lineno, notes):
    try:
        q = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad rational {tok!r}")
    if format_rat(q) != tok:
        notes.append(f"normalized {tok} to {format_rat(q)}")
    return q


# -- metric trees -------------------------------------------------------------


def parse_tree(text):
    vertices = []
    edges = {}
    end = None
    notes = []
    for lineno, toks in _lines(text):
        if toks[0] == "vertex" and len(toks) == 2:
            vertices.append(toks[1])
        elif toks[0] == "edge" and len(toks) == 5:
            eid, u, v, vec = toks[1], toks[2], toks[3], toks[4]
            try:
                length = parse_lexvec(vec)
            except ValueError as e:
                raise ParseError(lineno, str(e))
            edges[eid] = (u, v, length)
        elif toks[0] == "end" and len(toks) == 2:
            end = toks[1]
        else:
            raise ParseError(lineno, f"unknown directive {' '.join(toks)!r}")
    try:
        tree = MetricTree(vertices, edges, end=end)
    except ValueError as e:
        raise ParseError(0, f"invalid tree: {e}")
    return tree, notes


def serialize_tree(tree):
    out = []
    for v in sorted(tree.vertices, key=str):
        out.append(f"vertex {v}")
    for eid in sorted(tree.edges, key=str):
        u, v, length = tree.edges[eid]
        out.append(f"edge {eid} {u} {v} {length!r}")
    if tree.end is not None:
        out.append(f"end {tree.end}")
    return "\n".join(out) + "\n"


# -- train tracks --------------------------------------------------------------


def parse_track(text):
    switches = {}
    branches = []
    notes = []
    for lineno, toks in _lines(text):
        if toks[0] == "branch" and len(toks) == 2:
            branches.append(toks[1])
        elif toks[0] == "switch":
            body = toks[1:]
            ccw = True
            if body and body[-1] == "ccw":
                body = body[:-1]
            if len(body) != 6 or body[1] != "in" or body[4] != "out":
                raise ParseError(lineno, "switch wants: <id> in <a> <b> out <c> [ccw]")
            sid, _, a, b, _, c = body
            switches[sid] = (a, b, c)
        else:
            raise ParseError(lineno, f"unknown directive {' '.join(toks)!r}")
    try:
        track = TrainTrack(switches)
    except ValueError as e:
        raise ParseError(0, f"invalid track: {e}")
    if branches and sorted(branches) != sorted(track.branches):
        raise ParseError(0, "branch list disagrees with switch records")
    return track, notes


def serialize_track(track):
    out = [f"branch {e}" for e in sorted(track.branches, key=str)]
    for s in sorted(track.switches, key=str):
        a, b, c = track.switches[s]
        out.append(f"switch {s} in {a} {b} out {c} ccw")
    return "\n".join(out) + "\n"


# -- surface triangulations ------------------------------------------------------


def parse_surface(text):
    triangles = {}
    gluings = {}
    notes = []
    for lineno, toks in _lines(text):
        if toks[0] == "triangle" and len(toks) == 5:
            triangles[toks[1]] = (toks[2], toks[3], toks[4])
        elif toks[0] == "glue" and len(toks) == 3:
            gluings[toks[1]] = toks[2]
            gluings[toks[2]] = toks[1]
        else:
            raise ParseError(lineno, f"unknown directive {' '.join(toks)!r}")
    try:
        surf = SurfaceTriangulation(triangles, gluings)
    except ValueError as e:
        raise ParseError(0, f"invalid surface: {e}")
    return surf, notes


def serialize_surface(surface):
    out = []
    for t in sorted(surface.triangles, key=str):
        d0, d1, d2 = surface.triangles[t]
        out.append(f"triangle {t} {d0} {d1} {d2}")
    done = set()
    for d in sorted(surface.glue, key=str):
        d2 = surface.glue[d]
        key = tuple(sorted((str(d), str(d2))))
        if key not in done:
            done.add(key)
            out.append(f"glue {d} {d2}")
    return "\n".join(out) + "\n"


# -- flat surfaces ----------------------------------------------------------------


def parse_flatsurface(text):
    kind = None
    triangles = {}
    vectors = {}
    gluings = {}
    signs = {}
    tangents = {}
    notes = []
    for lineno, toks in _lines(text):
        if toks[0] == "kind" and len(toks) == 2:
            kind = toks[1]
        elif toks[0] == "triangle" and len(toks) == 5:
            triangles[toks[1]] = (toks[2], toks[3], toks[4])
        elif toks[0] == "vector" and len(toks) == 4:
            vectors[toks[1]] = QC(_rat(toks[2], lineno, notes),
                                  _rat(toks[3], lineno, notes))
        elif toks[0] == "glue" and len(toks) in (3, 4):
            sign = toks[3] if len(toks) == 4 else "neg"
            if sign not in ("neg", "pos"):
                raise ParseError(lineno, f"bad gluing sign {sign!r}")
            gluings[toks[1]] = toks[2]
            gluings[toks[2]] = toks[1]
            signs[toks[1]] = signs[toks[2]] = sign
        elif toks[0] == "tangent" and len(toks) == 5:
            idx = toks[1]
            tangents.setdefault(idx, {})[toks[2]] = QC(
                _rat(toks[3], lineno, notes), _rat(toks[4], lineno, notes))
        else:
            raise ParseError(lineno, f"unknown directive {' '.join(toks)!r}")
    if kind is None:
        raise ParseError(0, "missing kind directive")
    try:
        surf = FlatSurface(kind, triangles, vectors, gluings, signs)
    except ValueError as e:
        raise ParseError(0, f"invalid flat surface: {e}")
    tlist = []
    for idx in sorted(tangents, key=str):
        try:
            tlist.append(PeriodTangent(surf, tangents[idx]))
        except ValueError as e:
            raise ParseError(0, f"invalid tangent {idx}: {e}")
    return surf, tlist, notes


def serialize_flatsurface(surface, tangents=()):
    out = [f"kind {surface.kind}"]
    for t in sorted(surface.triangles, key=str):
        d0, d1, d2 = surface.triangles[t]
        out.append(f"triangle {t} {d0} {d1} {d2}")
    for d in sorted(surface.vectors, key=str):
        v = surface.vectors[d]
        out.append(f"vector {d} {format_rat(v.re)} {format_rat(v.im)}")
    done = set()
    for d in sorted(surface.glue, key=str):
        d2 = surface.glue[d]
        key = tuple(sorted((str(d), str(d2))))
        if key not in done:
            done.add(key)
            out.append(f"glue {d} {d2} {surface.signs[d]}")
    for i, tan in enumerate(tangents, start=1):
        for d in sorted(tan.delta, key=str):
            v = tan.delta[d]
            out.append(
                f"tangent {i} {d} {format_rat(v.re)} {format_rat(v.im)}")
    return "\n".join(out) + "\n"


# -- 3-manifolds with boundary data ------------------------------------------------


def parse_manifold(text):
    """Parse a combined file: tetrahedra, gluings, boundary track, weights.

    Returns ``(manifold, outgoing, weights, notes)`` where ``outgoing``
    maps boundary triangles to outgoing slots (empty when no ``switch``
    lines are present) and ``weights`` maps boundary-edge names to
    rationals.
    """
    tets = []
    gluings = {}
    switch_lines = []
    weight_lines = []
    notes = []
    for lineno, toks in _lines(text):
        if toks[0] == "tet" and len(toks) == 2:
            tets.append(toks[1])
        elif toks[0] == "glue" and len(toks) == 4:
            try:
                t1, f1 = toks[1].rsplit(".", 1)
                t2, f2 = toks[2].rsplit(".", 1)
                f1, f2 = int(f1), int(f2)
                images = [int(x) for x in toks[3].split(",")]
            except ValueError:
                raise ParseError(lineno, f"bad gluing {' '.join(toks)!r}")
            if len(images) != 3:
                raise ParseError(lineno, "permutation wants 3 images")
            src = [v for v in range(4) if v != f1]
            perm = dict(zip(src, images))
            gluings[(t1, f1)] = (t2, f2, perm)
            gluings[(t2, f2)] = (t1, f1, {v: k for k, v in perm.items()})
        elif toks[0] == "switch" and len(toks) == 4 and toks[2] == "out":
            switch_lines.append((lineno, toks[1], toks[3]))
        elif toks[0] == "weight" and len(toks) == 3:
            weight_lines.append((lineno, toks[1], toks[2]))
        else:
            raise ParseError(lineno, f"unknown directive {' '.join(toks)!r}")
    try:
        manifold = Triangulation3(tets, gluings)
    except ValueError as e:
        raise ParseError(0, f"invalid triangulation: {e}")

    tri_by_name = {boundary_triangle_name(tf): tf
                   for tf in manifold.boundary_faces}
    outgoing = {}
    for lineno, name, slot in switch_lines:
        if name not in tri_by_name:
            raise ParseError(lineno, f"unknown boundary triangle {name!r}")
        try:
            outgoing[tri_by_name[name]] = int(slot)
        except ValueError:
            raise ParseError(lineno, f"bad slot {slot!r}")

    weights = {}
    if manifold.boundary is not None:
        edge_by_name = {boundary_edge_name(E): E
                        for E in manifold.boundary.edge_classes}
        for lineno, name, val in weight_lines:
            if name not in edge_by_name:
                raise ParseError(lineno, f"unknown boundary edge {name!r}")
            weights[edge_by_name[name]] = _rat(val, lineno, notes)
    elif weight_lines:
        raise ParseError(weight_lines[0][0], "weights on a closed manifold")
    return manifold, outgoing, weights, notes


def boundary_triangle_name(tf):
    t, f = tf
    return f"{t}.{f}"


def boundary_edge_name(E):
    t, f, k = E
    return f"{t}.{f}.{k}"


def edge_class_name(cls):
    t, e = cls
    i, j = sorted(e)
    return f"{t}:{i}{j}"


def serialize_manifold(manifold, outgoing=None, weights=None):
    out = [f"tet {t}" for t in manifold.tets]
    done = set()
    for (t, f) in sorted(manifold.gluings, key=repr):
        t2, f2, perm = manifold.gluings[(t, f)]
        key = frozenset(((t, f), (t2, f2)))
        if key in done:
            continue
        done.add(key)
        src = [v for v in range(4) if v != f]
        images = ",".join(str(perm[v]) for v in src)
        out.append(f"glue {t}.{f} {t2}.{f2} {images}")
    if outgoing:
        for tf in sorted(outgoing, key=repr):
            out.append(
                f"switch {boundary_triangle_name(tf)} out {outgoing[tf]}")
    if weights:
        for E in sorted(weights, key=repr):
            out.append(
                f"weight {boundary_edge_name(E)} {format_rat(weights[E])}")
    return "\n".join(out) + "\n"
