"""Potentials, annihilators, Hilbert functions, Frobenius kernels."""

import random
from fractions import Fraction as F
from math import comb

import pytest

from qtk import basealg as ba
from qtk import charpair as cpm
from qtk import invsys as iv
from qtk import multipoly as mp
from qtk import srbundle as sr
from qtk.catalog import all_instances, get
from qtk.errors import OddClassesPresentError
from qtk.poly import MultiPoly

from conftest import hirzebruch_ring


def fan_h_vector(cp):
    """h-vector from face counts alone: h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_{i-1}."""
    f = [0] * (cp.n + 1)
    f[0] = 1
    for face in cpm.faces(cp):
        f[len(face)] += 1
    return [sum((-1) ** (k - i) * comb(cp.n - i, k - i) * f[i]
                for i in range(k + 1)) for k in range(cp.n + 1)]


class TestVolumePotential:
    def test_cp1(self, cp1):
        p = iv.volume_potential(cp1)
        assert p.poly == MultiPoly.linear_form([1, 1], weights=(2, 2))
        assert p.degree == 2

    def test_cp2(self, cp2):
        p = iv.volume_potential(cp2)
        assert p.poly == MultiPoly.linear_form([1, 1, 1], weights=(2, 2, 2)) ** 2 / 2

    def test_hirzebruch_toric_matches_numeric_integrals(self):
        inst = get("hirzebruch-toric?m=1")
        p = iv.volume_potential(inst.cp)
        rng = random.Random(31)
        for _ in range(10):
            h = [F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(inst.cp.s)]
            assert p.poly.evaluate(h) == mp.volume(mp.multipolytope(inst.cp, h))


class TestBasePotential:
    def test_cp1(self, base_cp1):
        p = iv.base_potential(base_cp1)
        assert p.var_names == ("t",)
        assert p.poly == MultiPoly.variable(1, 0, weights=(2,))

    def test_cp2(self, base_cp2):
        p = iv.base_potential(base_cp2)
        assert p.var_names == ("t", "t2")
        expected = MultiPoly(2, {(2, 0): F(1, 2), (0, 1): F(1)}, weights=(2, 4))
        assert p.poly == expected

    def test_point_degenerate(self):
        p = iv.base_potential(ba.make_point())
        assert p.degree == 0 and p.var_names == ()
        assert p.poly.coefficient(()) == 1

    def test_rejects_odd_classes(self):
        odd = ba.GradedBaseAlgebra(
            ["1", "e"], [0, 1],
            {(0, 0): {0: F(1)}, (0, 1): {1: F(1)}, (1, 0): {1: F(1)}},
            [0, 1])
        with pytest.raises(OddClassesPresentError):
            iv.base_potential(odd)


class TestBundlePotentials:
    def test_hirzebruch_closed_form(self):
        for a in (0, 1, 2, 3):
            ring = hirzebruch_ring(a)
            p = iv.bundle_potential_integral(ring)
            assert p.var_names == ("t", "h1", "h2")
            expected = MultiPoly(3, {
                (0, 2, 0): F(a, 2), (0, 0, 2): F(-a, 2),
                (1, 1, 0): F(1), (1, 0, 1): F(1),
            }, weights=(2, 2, 2))
            assert p.poly == expected

    def test_point_base_reduces_to_volume(self):
        for name in ("cp1", "cp2", "cp3", "cp2-twist"):
            inst = get(name)
            ring = inst.ring()
            p = iv.bundle_potential_integral(ring)
            v = iv.volume_potential(inst.cp)
            assert p.poly == v.poly and p.degree == v.degree, name

    def test_direct_equals_integral_everywhere(self, all_instances):
        for inst in all_instances:
            ring = inst.ring()
            pi = iv.bundle_potential_integral(ring)
            pd = iv.bundle_potential_direct(ring)
            assert pi.var_names == pd.var_names
            assert pi.poly == pd.poly, inst.label

    def test_quasi_homogeneous(self, all_instances):
        for inst in all_instances:
            ring = inst.ring()
            p = iv.bundle_potential_integral(ring)
            assert p.degree == ring.total_degree
            assert p.poly.is_quasi_homogeneous(p.degree)


class TestAnnHilbert:
    def test_cp2_volume(self, cp2):
        hf = iv.ann_hilbert(iv.volume_potential(cp2))
        assert hf.even() == (1, 1, 1)
        assert hf.dims == (1, 0, 1, 0, 1)

    def test_hirzebruch_bundle(self):
        hf = iv.ann_hilbert(iv.bundle_potential_integral(hirzebruch_ring(1)))
        assert hf.even() == (1, 2, 1)

    def test_constant_potential(self):
        hf = iv.ann_hilbert(iv.base_potential(ba.make_point()))
        assert hf.dims == (1,)

    def test_matches_betti_everywhere(self, all_instances):
        for inst in all_instances:
            ring = inst.ring()
            hf = iv.ann_hilbert(iv.bundle_potential_integral(ring))
            dims = sr.betti(ring)
            assert list(hf.dims) == dims, inst.label

    def test_symmetry(self, all_instances):
        for inst in all_instances:
            hf = iv.ann_hilbert(iv.bundle_potential_integral(inst.ring()))
            assert hf.is_symmetric(), inst.label

    def test_h_vector_for_point_base_toric_pairs(self):
        for name in ("cp1", "cp2", "cp3", "cp1xcp1", "hirzebruch-toric"):
            inst = get(name)
            hf = iv.ann_hilbert(iv.volume_potential(inst.cp))
            assert list(hf.even()) == fan_h_vector(inst.cp), name

    def test_scale_invariance(self, cp2):
        p = iv.volume_potential(cp2)
        scaled = iv.Potential(p.var_names, p.weights, p.poly * 7, p.degree)
        assert iv.ann_hilbert(scaled).dims == iv.ann_hilbert(p).dims


class TestAnnGenerators:
    def test_cp1_generators(self, cp1):
        p = iv.volume_potential(cp1)
        gens = iv.ann_generators(p)
        assert sorted(gens) == [2, 4]
        assert len(gens[2]) == 1
        diff = gens[2][0]
        # proportional to d1 - d2
        assert diff.coefficient((1, 0)) == -diff.coefficient((0, 1)) != 0
        assert len(gens[4]) == 1

    def test_cp2_volume_generators(self, cp2):
        p = iv.volume_potential(cp2)
        gens = iv.ann_generators(p)
        assert len(gens[2]) == 2  # differences of the three first partials
        for g in gens[2]:
            assert sum(g.terms.values()) == 0  # killed by symmetry of the potential

    def test_hirzebruch_single_weight2_generator(self):
        ring = hirzebruch_ring(2)
        p = iv.bundle_potential_integral(ring)
        gens = iv.ann_generators(p)
        assert len(gens[2]) == 1

    def test_every_generator_kills_potential(self, all_instances):
        for inst in all_instances:
            p = iv.bundle_potential_integral(inst.ring())
            for _, gs in iv.ann_generators(p).items():
                for g in gs:
                    assert not iv.apply_operator(g, p.poly), inst.label

    def test_generators_span_annihilator_dimensions(self, cp2):
        # dim Ann_d = dim Sym_d - hilbert_d must be reproduced by the ideal
        from qtk import exact
        from qtk.poly import weighted_monomials
        p = iv.volume_potential(cp2)
        hf = iv.ann_hilbert(p)
        gens = iv.ann_generators(p)
        flat = [(d, g) for d, gs in gens.items() for g in gs]
        for d in range(0, p.degree + 1, 2):
            monos = weighted_monomials(p.weights, d)
            index = {m: i for i, m in enumerate(monos)}
            vectors = []
            for gd, g in flat:
                if gd > d:
                    continue
                for m in weighted_monomials(p.weights, d - gd):
                    prod = g * MultiPoly.monomial(m, 1, p.weights)
                    vec = [F(0)] * len(monos)
                    for expo, c in prod.terms.items():
                        vec[index[expo]] += c
                    vectors.append(vec)
            ideal_dim = exact.rank(vectors) if vectors else 0
            assert len(monos) - ideal_dim == hf.dims[d]


class TestFrobeniusKernel:
    def test_cp2_quotient_already_self_dual(self, point_ring_cp2):
        qa = sr.quotient_algebra(point_ring_cp2)
        assert iv.frobenius_kernel(qa) == {}

    def test_truncated_line_gorenstein(self, base_cp2):
        # Q[x]/x^3 with top functional on x^2
        assert iv.frobenius_kernel(base_cp2) == {}

    def test_zero_multiplication_square(self):
        # 1, x, y with all positive products zero and socle degree 2:
        # the pairing matrix in degree 1 is the 2x2 zero matrix
        alg = ba.GradedBaseAlgebra(
            ["1", "x", "y"], [0, 1, 1],
            {(0, 0): {0: F(1)}, (0, 1): {1: F(1)}, (1, 0): {1: F(1)},
             (0, 2): {2: F(1)}, (2, 0): {2: F(1)}},
            [0, 0, 0])
        kernel = iv.frobenius_kernel(alg, top=2)
        assert kernel[1] == [{1: F(1)}, {2: F(1)}]

    def test_kernel_quotient_dims_are_self_dual(self, all_instances):
        for inst in all_instances[:4]:
            qa = sr.quotient_algebra(inst.ring())
            kernel = iv.frobenius_kernel(qa)
            dims = {}
            for d in sorted(set(qa.degrees)):
                dims[d] = len(qa.indices_of_degree(d)) - len(kernel.get(d, []))
            for d, v in dims.items():
                assert dims.get(qa.top - d, 0) == v


class TestPotentialJson:
    def test_roundtrip(self):
        ring = hirzebruch_ring(2)
        p = iv.bundle_potential_integral(ring)
        again = iv.potential_from_json(p.to_json())
        assert again == p

    def test_point_roundtrip(self):
        p = iv.base_potential(ba.make_point())
        again = iv.potential_from_json(p.to_json())
        assert again.poly.coefficient(()) == 1
