"""Sparse polynomials, polarization, powers of linear forms."""

import random
from fractions import Fraction as F

import pytest

from qtk.errors import DegreeMismatchError
from qtk.poly import (MultiPoly, monomials_of_degree, polarize,
                      power_of_linear_forms, weighted_monomials)


def random_poly(rng, nvars, degree, homogeneous=True):
    terms = {}
    monos = monomials_of_degree(nvars, degree)
    for m in monos:
        if rng.random() < 0.7:
            terms[m] = F(rng.randint(-5, 5), rng.randint(1, 3))
    if not homogeneous and monos:
        terms[(0,) * nvars] = F(rng.randint(1, 5))
    return MultiPoly(nvars, terms)


class TestArithmetic:
    def test_ring_identities(self):
        x = MultiPoly.variable(2, 0)
        y = MultiPoly.variable(2, 1)
        assert (x + y) * (x - y) == x ** 2 - y ** 2
        assert (x + y) ** 2 == x ** 2 + 2 * x * y + y ** 2
        assert x - x == MultiPoly.zero(2)
        assert not (x - x)

    def test_no_zero_terms_stored(self):
        x = MultiPoly.variable(1, 0)
        assert (x - x).terms == {}
        assert (x * 0).terms == {}

    def test_evaluate(self):
        p = MultiPoly(2, {(2, 1): F(3), (0, 0): F(-1)})
        assert p.evaluate([F(2), F(5)]) == 3 * 4 * 5 - 1

    def test_substitute_linear(self):
        # f(x, y) = x*y under x -> u+v, y -> u-v
        f = MultiPoly.monomial((1, 1))
        u_plus_v = MultiPoly.linear_form([1, 1])
        u_minus_v = MultiPoly.linear_form([1, -1])
        g = f.substitute([u_plus_v, u_minus_v])
        u = MultiPoly.variable(2, 0)
        v = MultiPoly.variable(2, 1)
        assert g == u ** 2 - v ** 2

    def test_partial_and_apply(self):
        p = MultiPoly(2, {(3, 1): F(1)})
        assert p.partial(0) == MultiPoly(2, {(2, 1): F(3)})
        # d^(2,0) x^3 y = 3!/1! x y
        assert p.apply_derivative((2, 0)) == MultiPoly(2, {(1, 1): F(6)})
        assert p.apply_derivative((4, 0)) == MultiPoly.zero(2)

    def test_weighted_degrees(self):
        p = MultiPoly(2, {(1, 1): F(1)}, weights=(2, 4))
        assert p.is_quasi_homogeneous(6)
        assert not p.is_quasi_homogeneous(4)

    def test_lex_iteration_is_sorted(self):
        p = MultiPoly(2, {(1, 0): F(1), (0, 1): F(1), (0, 0): F(1)})
        assert [e for e, _ in p.items()] == [(0, 0), (0, 1), (1, 0)]

    def test_monomial_enumeration(self):
        assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
        assert weighted_monomials((2, 4), 6) == [(1, 1), (3, 0)]
        assert weighted_monomials((), 0) == [()]
        assert weighted_monomials((), 2) == []


class TestPolarize:
    def test_square(self):
        f = MultiPoly.monomial((2,))
        assert polarize(f, [(F(3),), (F(5),)]) == 15

    def test_xy_on_basis(self):
        f = MultiPoly.monomial((1, 1))
        assert polarize(f, [(1, 0), (0, 1)]) == F(1, 2)

    def test_diagonal_recovers_value(self):
        rng = random.Random(2)
        for _ in range(15):
            nvars = rng.randint(1, 4)
            degree = rng.randint(1, 4)
            f = random_poly(rng, nvars, degree)
            v = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nvars)]
            assert polarize(f, [v] * degree) == f.evaluate(v)

    def test_symmetry_and_multilinearity(self):
        rng = random.Random(9)
        for _ in range(10):
            nvars = rng.randint(1, 3)
            degree = rng.randint(2, 3)
            f = random_poly(rng, nvars, degree)
            vecs = [[F(rng.randint(-3, 3)) for _ in range(nvars)]
                    for _ in range(degree)]
            base = polarize(f, vecs)
            shuffled = list(vecs)
            rng.shuffle(shuffled)
            assert polarize(f, shuffled) == base
            # linearity in the first slot
            w = [F(rng.randint(-3, 3)) for _ in range(nvars)]
            c = F(rng.randint(1, 5), rng.randint(1, 3))
            combo = [[c * a + b for a, b in zip(vecs[0], w)]] + vecs[1:]
            assert polarize(f, combo) == c * base + polarize(f, [w] + vecs[1:])

    def test_rejects_inhomogeneous(self):
        f = MultiPoly(1, {(2,): F(1), (1,): F(1)})
        with pytest.raises(DegreeMismatchError):
            polarize(f, [(F(1),), (F(1),)])


class TestPowersOfLinearForms:
    def test_pure_power_passthrough(self):
        out = power_of_linear_forms((2,))
        assert out == [(F(1), (F(1),))]

    def test_xy_decomposition(self):
        out = power_of_linear_forms((1, 1))
        assert sorted(c for c, _ in out) == [F(-1, 4), F(1, 4)]
        self._assert_reexpands((1, 1), out)

    def test_xyz_eight_signed_cubes(self):
        out = power_of_linear_forms((1, 1, 1))
        # folded to eps_1 = +1: 4 distinct cubes
        assert len(out) == 4
        self._assert_reexpands((1, 1, 1), out)

    def test_random_reexpansion(self):
        rng = random.Random(4)
        for _ in range(20):
            nvars = rng.randint(1, 3)
            alpha = tuple(rng.randint(0, 2) for _ in range(nvars))
            if sum(alpha) == 0:
                continue
            self._assert_reexpands(alpha, power_of_linear_forms(alpha))

    @staticmethod
    def _assert_reexpands(alpha, decomposition):
        nvars = len(alpha)
        d = sum(alpha)
        acc = MultiPoly.zero(nvars)
        for coeff, form in decomposition:
            acc = acc + MultiPoly.linear_form(list(form)) ** d * coeff
        assert acc == MultiPoly.monomial(alpha)
