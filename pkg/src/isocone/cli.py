"""Command-line interface.

Thin wrappers over the library: every subcommand parses its input file,
calls library operations, and prints a deterministic report of exact
rationals (the quadrature section of ``symplectic-check`` is the single
floating-point block, and is labeled as such).  Exit codes: 0 success,
1 domain error (a named invariant fails), 2 parse or I/O error.
"""

import argparse
import itertools
import random
import sys
from fractions import Fraction

from isocone import io, fixtures
from isocone.ordgroup import format_rat
from isocone.lamtree import vertex_distance_matrix, is_zero_hyperbolic
from isocone.cone3 import BoundaryTrack, compute_cone, member, verify_witness
from isocone.flatsurf import (
    QC, delaunay, is_delaunay, PeriodTangent, random_tangent,
    omega_thurston, omega_hessian, omega_homological,
    kahler_pairing_numeric, NeedsRotationError,
)

class DomainError(ValueError):
    pass


def _read(path):
    with open(path) as fh:
        return fh.read()


def _emit(lines, args):
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)


def _parse_rotate(text):
    """Parse a rational complex multiplier like '3+1i' or '2' or '1/2-3i'."""
    s = text.replace(" ", "")
    if s.endswith("i"):
        body = s[:-1]
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                re = body[:k]
                im = body[k:] or "1"
                if im in ("+", "-"):
                    im += "1"
                return QC(Fraction(re), Fraction(im))
        im = body if body not in ("", "+", "-") else body + "1"
        return QC(0, Fraction(im))
    return QC(Fraction(s), 0)


def _choice_iter(manifold, args):
    mode = args.choices or "all"
    if mode == "all":
        return itertools.product(range(3), repeat=len(manifold.tets)), "all"
    if mode.startswith("sample:"):
        n = int(mode.split(":", 1)[1])
        if n < 1:
            raise DomainError("sample size must be at least 1")
        if args.seed is None:
            raise DomainError("sampling requires --seed")
        rng = random.Random(args.seed)

        def it():
            for _ in range(n):
                yield tuple(rng.randrange(3) for _ in manifold.tets)
        return it(), f"sample:{n}"
    raise DomainError(f"bad --choices value {mode!r}")


# -- cone subcommands ---------------------------------------------------------


def _coverage_lines(manifold, mode):
    total = 3 ** len(manifold.tets)
    if mode == "all":
        return [f"coverage: {total}/{total}", "certified: true"]
    n = int(mode.split(":", 1)[1])
    return [f"coverage: {min(n, total)}/{total}", "certified: false"]


def cmd_cone_compute(args):
    manifold, outgoing, _, notes = io.parse_manifold(_read(args.input))
    btrack = BoundaryTrack(manifold, outgoing)
    it, mode = _choice_iter(manifold, args)
    cone = compute_cone(manifold, btrack, choice_iter=it)
    lines = [f"status: ok", f"choices: {mode}",
             *_coverage_lines(manifold, mode),
             f"components: {len(cone)}"]
    lines += [f"note: {n}" for n in notes]
    names = [io.boundary_edge_name(E) for E in cone.edge_order]
    lines.append("edges: " + " ".join(names))
    branches = sorted(btrack.track.branches, key=repr)
    for i, comp in enumerate(cone.components):
        lines.append(f"component {i} dimension {comp['dimension']}")
        for row in comp["span"]:
            lines.append("span: " + " ".join(format_rat(x) for x in row))
        lines.append("active: " +
                     " ".join(io.boundary_edge_name(e) for e in branches))
    return lines


def cmd_cone_member(args):
    manifold, outgoing, weights, notes = io.parse_manifold(_read(args.input))
    btrack = BoundaryTrack(manifold, outgoing)
    full = {E: weights.get(E, Fraction(0))
            for E in manifold.boundary.edge_classes}
    res = member(manifold, btrack, full)
    lines = [f"member: {'true' if res.member else 'false'}"]
    lines += [f"note: {n}" for n in notes]
    if not res.member:
        lines.append(f"reason: {res.reason}")
    else:
        if not verify_witness(manifold, btrack, full, res):
            raise DomainError("witness failed substitution check")
        lines.append("witness-verified: true")
        for t in manifold.tets:
            lines.append(f"choice {t} {res.choices[t]}")
        for cls in manifold.edge_classes:
            lines.append(
                f"witness {io.edge_class_name(cls)} "
                f"{format_rat(res.witness[cls])}")
    return lines


def cmd_cone_isotropy(args):
    manifold, outgoing, _, notes = io.parse_manifold(_read(args.input))
    it, mode = _choice_iter(manifold, args)
    checked = 0
    failures = []
    for combo in it:
        choices = dict(zip(manifold.tets, combo))
        checked += 1
        if not manifold.isotropy_check(choices):
            failures.append(combo)
    lines = [f"status: ok", f"choices: {mode}",
             *_coverage_lines(manifold, mode),
             f"checked: {checked}",
             f"isotropic: {'true' if not failures else 'false'}"]
    lines += [f"note: {n}" for n in notes]
    for f in failures:
        lines.append("failure: " + ",".join(map(str, f)))
    return lines


# -- surface subcommands ----------------------------------------------------------


def _load_surface(args):
    surf, tangents, notes = io.parse_flatsurface(_read(args.input))
    if getattr(args, "rotate", None):
        c = _parse_rotate(args.rotate)
        surf = surf.rotate(c)
        tangents = [PeriodTangent(surf, {d: c * v
                                         for d, v in t.delta.items()})
                    for t in tangents]
        notes = notes + [f"rotated by {format_rat(c.re)}+{format_rat(c.im)}i"]
    return surf, tangents, notes


def cmd_surface_validate(args):
    surf, tangents, notes = _load_surface(args)
    v = surf.validate()
    lines = ["status: ok",
             f"kind: {surf.kind}",
             f"genus: {v['genus']}",
             "symbol: (" + ",".join(map(str, v["symbol"])) + ")",
             f"epsilon: {v['epsilon']}",
             f"area: {format_rat(v['area'])}",
             f"delaunay: {'true' if is_delaunay(surf) else 'false'}",
             f"tangents: {len(tangents)}"]
    for vtx in sorted(v["angles"], key=repr):
        lines.append(f"angle {v['angles'][vtx]}pi")
    lines += [f"note: {n}" for n in notes]
    return lines


def cmd_surface_delaunay(args):
    surf, tangents, notes = _load_surface(args)
    if tangents:
        raise DomainError("delaunay retriangulation drops tangents; "
                          "strip them first")
    d = delaunay(surf)
    return io.serialize_flatsurface(d).splitlines()


def cmd_surface_heights(args):
    surf, _, notes = _load_surface(args)
    hs = surf.heights()
    lines = ["status: ok"] + [f"note: {n}" for n in notes]
    for E in sorted(hs, key=str):
        lines.append(f"height {E} {format_rat(hs[E])}")
    return lines


def cmd_surface_track(args):
    surf, _, notes = _load_surface(args)
    track, e2b = surf.dual_track()
    lines = io.serialize_track(track).splitlines()
    hs = surf.heights()
    for e in sorted(track.branches, key=str):
        lines.append(f"weight {e} {format_rat(hs[e])}")
    return lines


def cmd_surface_symplectic_check(args):
    surf, tangents, notes = _load_surface(args)
    if not getattr(args, "rotate", None):
        try:
            surf.dual_track()
        except NeedsRotationError:
            rotated, c = surf.adapted()
            tangents = [PeriodTangent(rotated, {d: c * v
                                                for d, v in t.delta.items()})
                        for t in tangents]
            surf = rotated
            notes = notes + [
                f"auto-rotated by {format_rat(c.re)}+{format_rat(c.im)}i"]
    if len(tangents) < 2:
        if args.seed is None:
            raise DomainError("need two bundled tangents or --seed")
        rng = random.Random(args.seed)
        while len(tangents) < 2:
            tangents.append(random_tangent(surf, rng))
    t1, t2 = tangents[0], tangents[1]
    a = omega_thurston(surf, t1, t2)
    b = omega_hessian(surf, t1, t2)
    c3 = omega_homological(surf, t1, t2)
    lines = ["status: ok"] + [f"note: {n}" for n in notes]
    lines.append(f"omega_thurston: {format_rat(a)}")
    lines.append(f"omega_homological: {format_rat(c3)}")
    lines.append(f"omega_hessian: {format_rat(b)}")
    lines.append(f"agree: {'true' if a == b == c3 else 'false'}")
    depth = args.depth if args.depth is not None else 4
    num = kahler_pairing_numeric(surf, t1, t2, depth=depth)
    lines.append("quadrature (floating point):")
    lines.append(f"  depth: {depth}")
    lines.append(f"  pairing: {num.real:.12g}{num.imag:+.12g}i")
    if a != b or a != c3:
        raise DomainError("the three exact pairings disagree")
    return lines


# -- tree subcommand -----------------------------------------------------------------


def cmd_tree_fourpoint(args):
    tree, notes = io.parse_tree(_read(args.input))
    dm = vertex_distance_matrix(tree)
    n = len(dm)
    ok = is_zero_hyperbolic(dm)
    tuples = n * (n - 1) * (n - 2) * (n - 3) // 24 if n >= 4 else 0
    lines = ["status: ok",
             f"vertices: {n}",
             f"tuples-checked: {tuples}",
             f"four-point: {'pass' if ok else 'fail'}"]
    lines += [f"note: {n}" for n in notes]
    return lines


# -- fixtures ---------------------------------------------------------------------


def _fixture_text(name):
    from isocone import flatsurf

    if name in ("square_torus", "hex_torus", "lshape_h2", "pillowcase"):
        surf = getattr(flatsurf, name)()
        t1 = PeriodTangent.scaling(surf)
        t2 = t1.times_i()
        return io.serialize_flatsurface(surf, [t1, t2])
    if name == "g2_track":
        track, *_ = fixtures.genus2_maximal_track()
        return io.serialize_track(io.rename_track(track))
    if name == "two_tets":
        m = fixtures.two_tets()
        out = {tf: 0 for tf in m.boundary_faces}
        return io.serialize_manifold(m, outgoing=out)
    if name == "chain4":
        m = fixtures.chain_tets(4)
        out = {tf: 0 for tf in m.boundary_faces}
        return io.serialize_manifold(m, outgoing=out)
    if name == "g2xI":
        b = fixtures.g2_product_bundle()
        rng = random.Random(0)
        w = fixtures.mf_weight(b["track"], rng)
        wb = fixtures.diagonal_boundary_weight(b, w)
        return io.serialize_manifold(b["manifold"], outgoing=b["outgoing"],
                                     weights=wb)
    raise DomainError(f"unknown fixture {name!r}; try: square_torus, "
                      "hex_torus, lshape_h2, pillowcase, g2_track, two_tets, "
                      "chain4, g2xI")


def cmd_fixtures(args):
    return _fixture_text(args.name).splitlines()


# -- driver -----------------------------------------------------------------------


def _add_common(p, need_input=True):
    if need_input:
        p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--choices", default="all")
    p.add_argument("--seed", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--rotate")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isocone",
        description="Exact boundary cones, train-track pairings, and flat "
                    "surface cross-checks.")
    sub = parser.add_subparsers(dest="group", required=True)

    cone = sub.add_parser("cone").add_subparsers(dest="cmd", required=True)
    for name, fn in [("compute", cmd_cone_compute),
                     ("member", cmd_cone_member),
                     ("isotropy", cmd_cone_isotropy)]:
        p = cone.add_parser(name)
        _add_common(p)
        p.set_defaults(fn=fn)

    surf = sub.add_parser("surface").add_subparsers(dest="cmd", required=True)
    for name, fn in [("validate", cmd_surface_validate),
                     ("delaunay", cmd_surface_delaunay),
                     ("heights", cmd_surface_heights),
                     ("track", cmd_surface_track),
                     ("symplectic-check", cmd_surface_symplectic_check)]:
        p = surf.add_parser(name)
        _add_common(p)
        p.set_defaults(fn=fn)

    tree = sub.add_parser("tree").add_subparsers(dest="cmd", required=True)
    p = tree.add_parser("fourpoint")
    _add_common(p)
    p.set_defaults(fn=cmd_tree_fourpoint)

    p = sub.add_parser("fixtures")
    p.add_argument("name")
    _add_common(p, need_input=False)
    p.set_defaults(fn=cmd_fixtures)
    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        lines = args.fn(args)
    except io.ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"io error: {e}\n")
        return 2
    except (DomainError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    _emit(lines, args)
    return 0


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
