import random
from fractions import Fraction

import pytest

from isocone.flatsurf import (
    FlatSurface, QC, FlatSurfaceError, NeedsRotationError,
    square_torus, hex_torus, lshape_h2, pillowcase,
    delaunay, is_delaunay, PeriodTangent, tangent_basis, random_tangent,
    height_derivative, omega_thurston, omega_hessian, omega_homological,
    kahler_pairing_numeric, orientation_double_cover, lift_tangent,
)


class TestValidate:
    def test_square_torus(self):
        v = square_torus().validate()
        assert v["genus"] == 1 and v["symbol"] == () and v["epsilon"] == 1
        assert v["area"] == 1

    def test_lshape(self):
        v = lshape_h2().validate()
        assert v["genus"] == 2 and v["symbol"] == (4,) and v["epsilon"] == 1
        assert v["area"] == 3
        assert sorted(v["angles"].values()) == [6]   # one 6*pi cone point

    def test_hex_torus(self):
        v = hex_torus().validate()
        assert v["genus"] == 1 and v["symbol"] == ()
        assert sorted(v["angles"].values()) == [2, 2]

    def test_pillowcase(self):
        v = pillowcase().validate()
        assert v["genus"] == 0 and v["epsilon"] == -1
        assert v["symbol"] == (-1, -1, -1, -1)

    def test_closure_violation(self):
        s = square_torus()
        bad = dict(s.vectors)
        bad["a"] = QC(2, 0)    # triangle sums to (1, 0) instead of zero
        with pytest.raises(FlatSurfaceError):
            FlatSurface("translation", s.triangles, bad, s.glue, s.signs)

    def test_gluing_sign_mismatch(self):
        s = square_torus()
        bad = dict(s.vectors)
        bad["A"] = QC(1, 0)   # should be the negation of a
        with pytest.raises(FlatSurfaceError):
            FlatSurface("translation", s.triangles, bad, s.glue, s.signs)

    def test_pos_gluing_rejected_on_translation(self):
        p = pillowcase()
        with pytest.raises(FlatSurfaceError):
            FlatSurface("translation", p.triangles, p.vectors, p.glue,
                        p.signs)


class TestArea:
    def test_fixture_areas(self):
        assert square_torus().total_area() == 1
        assert lshape_h2().total_area() == 3
        assert pillowcase().total_area() == 2

    def test_scaling_by_two(self):
        s = lshape_h2()
        assert s.rotate(QC(2, 0)).total_area() == 4 * s.total_area()


class TestDelaunay:
    def test_cocircular_torus_unchanged(self):
        s = square_torus()
        assert is_delaunay(s)
        d = delaunay(s)
        assert all(d.vectors[k] == s.vectors[k] for k in s.vectors)

    def test_fixed_point(self):
        d = delaunay(lshape_h2())
        d2 = delaunay(d)
        assert all(d2.vectors[k] == d.vectors[k] for k in d.vectors)

    def test_bad_diagonal_gets_flipped(self):
        s = lshape_h2().shear(3)
        assert not is_delaunay(s)
        d = delaunay(s)
        assert is_delaunay(d)

    def test_invariants_preserved_on_shears(self):
        rng = random.Random(70)
        base = lshape_h2()
        v0 = base.validate()
        for _ in range(12):
            sh = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
            s = base.shear(sh)
            d = delaunay(s)
            assert is_delaunay(d)
            v = d.validate()
            assert v["area"] == v0["area"]
            assert v["symbol"] == v0["symbol"]
            assert v["genus"] == v0["genus"]
            assert d.kind == base.kind

    def test_half_translation_delaunay(self):
        s = pillowcase().shear(Fraction(5, 2))
        d = delaunay(s)
        assert is_delaunay(d)
        assert d.validate()["symbol"] == (-1, -1, -1, -1)
        assert d.kind == "half-translation"


class TestHeightsAndTrack:
    def test_heights_of_triangle(self):
        # vectors (1,1), (-2,1), (1,-2): heights 1, 1, 2
        tris = {"t": ("x", "y", "z"), "t2": ("X", "Y", "Z")}
        vecs = {"x": QC(1, 1), "y": QC(-2, 1), "z": QC(1, -2),
                "X": QC(-1, -1), "Y": QC(2, -1), "Z": QC(-1, 2)}
        glu = {"x": "X", "X": "x", "y": "Y", "Y": "y", "z": "Z", "Z": "z"}
        s = FlatSurface("translation", tris, vecs, glu)
        hs = s.heights()
        assert sorted(hs.values()) == [1, 1, 2]

    def test_horizontal_edge_rejected(self):
        with pytest.raises(NeedsRotationError):
            square_torus().heights()

    def test_rotation_by_i_swaps_re_im(self):
        s, _ = lshape_h2().adapted(candidates=[QC(2, 1)])
        r = s.rotate(QC(0, 1))
        hr = r.heights()
        for E in s.comb.edge_classes:
            assert hr[E] == abs(s.vectors[E].re)

    def test_dual_track_switch_relations(self):
        s, _ = delaunay(lshape_h2()).adapted()
        track, e2b = s.dual_track()
        assert track.check_weight(s.heights())

    def test_one_zero_genus2_counts(self):
        s, _ = delaunay(lshape_h2()).adapted()
        track, _ = s.dual_track()
        assert len(track.switches) == 6
        assert len(track.branches) == 9
        # connected orientable track: the switch equations have exactly one
        # dependency (the orientation coloring), so dim = E - V + 1
        assert len(track.weight_space_basis()) == 4

    def test_dimension_rule(self):
        # orientable connected tracks: E - V + 1; non-orientable: E - V
        s, _ = delaunay(square_torus()).adapted()
        tr, _ = s.dual_track()
        assert len(tr.weight_space_basis()) == 3 - 2 + 1
        from isocone.fixtures import genus2_maximal_track
        mx, *_ = genus2_maximal_track()
        assert len(mx.weight_space_basis()) == 18 - 12

    def test_translation_track_orientable(self):
        s, _ = delaunay(lshape_h2()).adapted()
        track, _ = s.dual_track()
        track.orientation()    # no NotOrientableError

    def test_cycle_pairing_on_torus_track(self):
        s, _ = delaunay(square_torus()).adapted()
        track, _ = s.dual_track()
        rng = random.Random(71)
        basis = track.weight_space_basis()
        for _ in range(10):
            w1 = {e: Fraction(0) for e in track.branches}
            w2 = {e: Fraction(0) for e in track.branches}
            for vec in basis:
                c1 = Fraction(rng.randint(-4, 4))
                c2 = Fraction(rng.randint(-4, 4))
                for e, val in vec.items():
                    w1[e] += c1 * val
                    w2[e] += c2 * val
            assert track.cycle_pairing(w1, w2) == track.thurston_form(w1, w2)


class TestTangents:
    def test_scaling_tangent_derivative_is_heights(self):
        s, _ = delaunay(lshape_h2()).adapted()
        t = PeriodTangent.scaling(s)
        assert height_derivative(s, t) == s.heights()

    def test_i_scaling_derivative_is_signed_re(self):
        s, _ = delaunay(lshape_h2()).adapted()
        t = PeriodTangent.scaling(s).times_i()
        hd = height_derivative(s, t)
        for E in s.comb.edge_classes:
            v = s.vectors[E]
            sign = 1 if v.im > 0 else -1
            assert hd[E] == sign * v.re

    def test_linearized_switch_relations(self):
        s, _ = delaunay(lshape_h2()).adapted()
        track, _ = s.dual_track()
        rng = random.Random(72)
        for _ in range(15):
            t = random_tangent(s, rng)
            assert track.check_weight(height_derivative(s, t))

    def test_invalid_tangent_rejected(self):
        s = square_torus()
        delta = {d: QC(0) for d in s.vectors}
        delta["a"] = QC(1)
        with pytest.raises(FlatSurfaceError):
            PeriodTangent(s, delta)

    def test_dimensions(self):
        # relative period dimension: E - F + 1 for translation surfaces
        for maker, dim in [(square_torus, 2), (hex_torus, 3), (lshape_h2, 4)]:
            assert len(tangent_basis(maker())) == dim


class TestPairings:
    @pytest.mark.parametrize("maker", [square_torus, hex_torus, lshape_h2])
    def test_three_routes_agree_translation(self, maker):
        s, _ = delaunay(maker()).adapted()
        rng = random.Random(73)
        for _ in range(12):
            t1 = random_tangent(s, rng)
            t2 = random_tangent(s, rng)
            a = omega_thurston(s, t1, t2)
            assert a == omega_hessian(s, t1, t2)
            assert a == omega_homological(s, t1, t2)

    def test_three_routes_agree_half_translation(self):
        s, _ = delaunay(pillowcase()).adapted()
        rng = random.Random(74)
        for _ in range(12):
            t1 = random_tangent(s, rng)
            t2 = random_tangent(s, rng)
            a = omega_thurston(s, t1, t2)
            assert a == omega_hessian(s, t1, t2)
            assert a == omega_homological(s, t1, t2)

    def test_antisymmetry_and_bilinearity(self):
        s, _ = delaunay(lshape_h2()).adapted()
        rng = random.Random(75)
        t1 = random_tangent(s, rng)
        t2 = random_tangent(s, rng)
        assert omega_thurston(s, t1, t1) == 0
        assert omega_hessian(s, t1, t1) == 0
        v = omega_thurston(s, t1, t2)
        assert omega_thurston(s, t2, t1) == -v
        assert omega_thurston(s, t1.scale(3), t2) == 3 * v

    def test_scaling_pair_value_is_minus_area(self):
        for maker in (square_torus, hex_torus, lshape_h2):
            s, _ = delaunay(maker()).adapted()
            t = PeriodTangent.scaling(s)
            assert omega_hessian(s, t, t.times_i()) == -s.total_area()

    def test_metric_positivity_on_scaling(self):
        s, _ = delaunay(lshape_h2()).adapted()
        t = PeriodTangent.scaling(s)
        g = abs(omega_hessian(s, t, t.times_i()))
        assert g == s.total_area() > 0


class TestQuadratureOracle:
    def test_norm_of_base_point(self):
        for maker in (square_torus, lshape_h2):
            s, _ = delaunay(maker()).adapted()
            half = PeriodTangent(
                s, {d: v * Fraction(1, 2) for d, v in s.vectors.items()})
            num = kahler_pairing_numeric(s, half, half, depth=5)
            assert abs(num.real - float(s.total_area()) / 4) < 1e-9
            assert abs(num.imag) < 1e-12

    def test_hermitian_diagonal_real(self):
        s, _ = delaunay(lshape_h2()).adapted()
        rng = random.Random(76)
        t = random_tangent(s, rng)
        num = kahler_pairing_numeric(s, t, t, depth=3)
        assert abs(num.imag) < 1e-9

    def test_matches_exact_on_period_multiples(self):
        s, _ = delaunay(hex_torus()).adapted()
        t1 = PeriodTangent.scaling(s)
        t2 = t1.times_i()
        exact = float(omega_thurston(s, t1, t2))
        num = kahler_pairing_numeric(s, t1, t2, depth=5)
        assert abs(num.imag - exact) < 1e-4

    def test_error_decays_with_depth(self):
        # a pair with genuinely quadratic integrand: affine reps of a
        # nonconstant tangent
        s, _ = delaunay(lshape_h2()).adapted()
        rng = random.Random(77)
        t1 = random_tangent(s, rng)
        t2 = random_tangent(s, rng)
        ref = kahler_pairing_numeric(s, t1, t2, depth=8)
        errs = [abs(kahler_pairing_numeric(s, t1, t2, depth=d) - ref)
                for d in (2, 3, 4)]
        assert errs[0] >= errs[1] >= errs[2]


class TestDoubleCover:
    def test_translation_cover_disjoint(self):
        s = square_torus()
        cover, inv = orientation_double_cover(s)
        assert not cover.comb.is_connected()
        assert cover.total_area() == 2 * s.total_area()

    def test_pillowcase_cover_is_torus(self):
        s = pillowcase()
        cover, inv = orientation_double_cover(s)
        assert cover.comb.is_connected()
        assert cover.kind == "translation"
        v = cover.validate()
        assert v["genus"] == 1 and v["symbol"] == ()
        assert cover.total_area() == 2 * s.total_area()

    def test_involution_negates_vectors(self):
        s = pillowcase()
        cover, inv = orientation_double_cover(s)
        for d, d2 in inv.items():
            assert cover.vectors[d2] == -cover.vectors[d]

    def test_lifted_tangent_odd(self):
        s = pillowcase()
        cover, inv = orientation_double_cover(s)
        rng = random.Random(78)
        t = random_tangent(s, rng)
        lt = lift_tangent(cover, t)
        for d, d2 in inv.items():
            assert lt.delta[d2] == -lt.delta[d]


class TestAdapted:
    def test_adapted_reports_multiplier(self):
        s, c = lshape_h2().adapted()
        assert isinstance(c, QC)
        s.dual_track()   # no NeedsRotationError

    def test_rotate_by_zero_rejected(self):
        with pytest.raises(FlatSurfaceError):
            square_torus().rotate(QC(0, 0))
