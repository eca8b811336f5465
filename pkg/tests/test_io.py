import pytest
from fractions import Fraction

from isocone import io
from isocone.fixtures import (genus2_maximal_track, two_tets, chain_tets,
                              g2_product_bundle, mf_weight,
                              diagonal_boundary_weight)
from isocone.flatsurf import lshape_h2, pillowcase, PeriodTangent
from isocone.lamtree import MetricTree
from isocone.ordgroup import LexVec


class TestTreeFormat:
    def test_roundtrip(self):
        tree = MetricTree(
            ["a", "b", "c"],
            {"e1": ("a", "b", LexVec((1, 0))),
             "e2": ("b", "c", LexVec((0, Fraction(3, 2))))},
            end="a")
        text = io.serialize_tree(tree)
        tree2, notes = io.parse_tree(text)
        assert io.serialize_tree(tree2) == text
        assert not notes

    def test_unknown_directive(self):
        with pytest.raises(io.ParseError) as e:
            io.parse_tree("vertex a\nfrob x\n")
        assert "line 2" in str(e.value)


class TestTrackFormat:
    def test_roundtrip(self):
        track, *_ = genus2_maximal_track()
        track = io.rename_track(track)
        text = io.serialize_track(track)
        track2, _ = io.parse_track(text)
        assert io.serialize_track(track2) == text
        assert len(track2.branches) == len(track.branches)


class TestFlatFormat:
    def test_roundtrip_with_tangents(self):
        s = lshape_h2()
        t1 = PeriodTangent.scaling(s)
        text = io.serialize_flatsurface(s, [t1, t1.times_i()])
        s2, tangents, notes = io.parse_flatsurface(text)
        assert io.serialize_flatsurface(s2, tangents) == text
        assert len(tangents) == 2
        assert s2.validate()["symbol"] == (4,)

    def test_half_translation_signs_roundtrip(self):
        s = pillowcase()
        text = io.serialize_flatsurface(s)
        s2, _, _ = io.parse_flatsurface(text)
        assert io.serialize_flatsurface(s2) == text
        assert s2.kind == "half-translation"

    def test_normalization_note(self):
        s = lshape_h2()
        text = io.serialize_flatsurface(s).replace(
            "vector Pb 1 0", "vector Pb 2/2 0", 1)
        s2, _, notes = io.parse_flatsurface(text)
        assert any("normalized 2/2 to 1" in n for n in notes)

    def test_missing_kind(self):
        with pytest.raises(io.ParseError):
            io.parse_flatsurface("triangle t a b c\n")


class TestManifoldFormat:
    def test_roundtrip_plain(self):
        m = chain_tets(3)
        text = io.serialize_manifold(m)
        m2, out, w, _ = io.parse_manifold(text)
        assert io.serialize_manifold(m2) == text
        assert len(m2.tets) == 3 and not out and not w

    def test_roundtrip_with_track_and_weights(self):
        b = g2_product_bundle()
        import random
        w = mf_weight(b["track"], random.Random(0))
        wb = diagonal_boundary_weight(b, w)
        text = io.serialize_manifold(b["manifold"], outgoing=b["outgoing"],
                                     weights=wb)
        m2, out2, w2, _ = io.parse_manifold(text)
        assert io.serialize_manifold(m2, outgoing=out2, weights=w2) == text

    def test_bad_permutation(self):
        with pytest.raises(io.ParseError):
            io.parse_manifold("tet A\ntet B\nglue A.0 B.0 1,2\n")
