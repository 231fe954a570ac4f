"""Characteristic pairs: validation, signs, vertices, dual data."""

import itertools
import random
from fractions import Fraction as F

import pytest

from qtk import charpair as cpm
from qtk import exact
from qtk.catalog import all_instances, get
from qtk.errors import MalformedInputError, NotAConeError, NotAFaceError


class TestValidate:
    def test_cp2_passes(self, cp2):
        report = cpm.validate(cp2)
        assert report.ok
        assert [c.name for c in report.checks] == \
            ["simplicial", "unimodular", "facet_pairing", "point_coverage"]

    def test_all_catalog_pairs_pass(self):
        for inst in all_instances():
            assert cpm.validate(inst.cp).ok, inst.label

    def test_missing_cone_breaks_pairing(self):
        bad = cpm.toric_pair([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])
        report = cpm.validate(bad)
        assert not report.ok
        assert not [c for c in report.checks if c.name == "facet_pairing"][0].passed

    def test_non_unimodular_lambda(self):
        bad = cpm.make_pair(2, [(1, 0), (0, 1), (-1, -1)],
                            [(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
        report = cpm.validate(bad)
        assert not report.ok
        assert not [c for c in report.checks if c.name == "unimodular"][0].passed

    def test_incomplete_fan_fails_coverage(self):
        bad = cpm.toric_pair([(1, 0), (0, 1), (1, -1)], [(0, 1), (1, 2), (0, 2)])
        report = cpm.validate(bad)
        failed = {c.name for c in report.checks if not c.passed}
        assert "point_coverage" in failed

    def test_dependent_rays_fail_simpliciality(self):
        bad = cpm.make_pair(2, [(1, 0), (2, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)],
                            [(0, 1), (1, 2), (0, 2)])
        report = cpm.validate(bad)
        assert not [c for c in report.checks if c.name == "simplicial"][0].passed

    def test_malformed_inputs_rejected(self):
        with pytest.raises(MalformedInputError):
            cpm.make_pair(2, [(1, 0)], [(1, 0)], [(0, 1)])  # index out of range
        with pytest.raises(MalformedInputError):
            cpm.make_pair(2, [(1, 0, 0), (0, 1)], [(1, 0), (0, 1)], [(0, 1)])

    def test_coverage_is_seed_stable(self, cp2):
        a = cpm.validate(cp2, samples=16, seed=5)
        b = cpm.validate(cp2, samples=16, seed=5)
        assert a == b


class TestConeSign:
    def test_cp1_both_positive(self, cp1):
        assert cpm.cone_sign(cp1, (0,)).value == 1
        assert cpm.cone_sign(cp1, (1,)).value == 1

    def test_cp2_identity_cone(self, cp2):
        assert cpm.cone_sign(cp2, (0, 1)).value == 1

    def test_toric_pairs_all_positive(self):
        for name in ("cp2", "cp3", "cp1xcp1", "hirzebruch-toric"):
            cp = get(name).cp
            for cone in cp.max_cones:
                assert cpm.cone_sign(cp, cone).value == 1, (name, cone)

    def test_twist_has_negative_signs(self):
        cp = get("cp2-twist").cp
        signs = sorted(cpm.cone_sign(cp, c).value for c in cp.max_cones)
        assert signs == [-1, -1, 1]

    def test_ordering_independence(self, cp3):
        for cone in cp3.max_cones:
            base = cpm.cone_sign(cp3, cone).value
            for perm in itertools.permutations(cone):
                assert cpm.cone_sign(cp3, perm).value == base

    def test_not_a_cone(self, cp2):
        with pytest.raises(NotAConeError):
            cpm.cone_sign(cp2, (0, 0))


class TestVertex:
    def test_cp2_examples(self, cp2):
        h = [F(1), F(1), F(1)]
        assert cpm.vertex(cp2, h, (0, 1)) == (F(1), F(1))
        assert cpm.vertex(cp2, h, (1, 2)) == (F(-2), F(1))

    def test_cp1_negative_ray(self, cp1):
        assert cpm.vertex(cp1, [F(2), F(7)], (1,)) == (F(-7),)

    def test_adjacent_cones_share_facet_equations(self):
        rng = random.Random(8)
        for inst in all_instances():
            cp = inst.cp
            h = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(cp.s)]
            for facet, c1, c2 in _facet_pairs(cp):
                v1 = cpm.vertex(cp, h, cp.max_cones[c1])
                v2 = cpm.vertex(cp, h, cp.max_cones[c2])
                for i in facet:
                    assert exact.dot(cp.lam[i], v1) == h[i]
                    assert exact.dot(cp.lam[i], v2) == h[i]


def _facet_pairs(cp):
    owners = {}
    for ci, cone in enumerate(cp.max_cones):
        for drop in range(cp.n):
            facet = cone[:drop] + cone[drop + 1:]
            owners.setdefault(facet, []).append(ci)
    return [(f, cs[0], cs[1]) for f, cs in owners.items() if len(cs) == 2]


class TestDualEdgeFrame:
    def test_cp2_identity_cone(self, cp2):
        assert cpm.dual_edge_frame(cp2, (0, 1)) == ((F(1), F(0)), (F(0), F(1)))

    def test_cp2_mixed_cone(self, cp2):
        assert cpm.dual_edge_frame(cp2, (1, 2)) == ((F(-1), F(1)), (F(-1), F(0)))

    def test_cp1(self, cp1):
        assert cpm.dual_edge_frame(cp1, (1,)) == ((F(-1),),)

    def test_frame_inverts_lambda_rows(self):
        for inst in all_instances():
            cp = inst.cp
            for cone in cp.max_cones:
                frame = cpm.dual_edge_frame(cp, cone)
                for j, i in enumerate(cone):
                    for k, w in enumerate(frame):
                        assert exact.dot(cp.lam[i], w) == (1 if j == k else 0)

    def test_vertex_is_frame_combination(self, cp2):
        h = [F(3), F(-1), F(2)]
        for cone in cp2.max_cones:
            frame = cpm.dual_edge_frame(cp2, cone)
            combo = [sum((h[i] * w[r] for i, w in zip(cone, frame)), F(0))
                     for r in range(cp2.n)]
            assert tuple(combo) == cpm.vertex(cp2, h, cone)


class TestDualCharacter:
    def test_cp2_examples(self, cp2):
        assert cpm.dual_character(cp2, (0,), 0) == (1, 0)
        assert cpm.dual_character(cp2, (0, 1), 0) == (1, 0)

    def test_cp1_fiber_pair(self, cp1):
        assert cpm.dual_character(cp1, (0,), 0) == (1,)

    def test_defining_equations_hold_everywhere(self):
        for inst in all_instances():
            cp = inst.cp
            for face in cpm.faces(cp):
                for j in face:
                    chi = cpm.dual_character(cp, face, j)
                    assert all(isinstance(c, int) for c in chi)
                    for i in face:
                        assert exact.dot(cp.lam[i], chi) == (1 if i == j else 0)

    def test_not_a_face(self, cp2):
        with pytest.raises(NotAFaceError):
            cpm.dual_character(cp2, (0, 1, 2), 0)
        with pytest.raises(NotAFaceError):
            cpm.dual_character(cp2, (0, 1), 2)


class TestJson:
    def test_roundtrip(self, cp2):
        again = cpm.from_json(cpm.to_json(cp2))
        assert again == cp2

    def test_one_based_cones_in_files(self, cp2):
        data = cpm.to_json(cp2)
        assert data["max_cones"][0] == [1, 2]
