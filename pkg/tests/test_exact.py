"""Exact linear algebra: SNF, solving, kernels, determinants."""

import random
from fractions import Fraction as F

import pytest

from qtk import exact
from qtk.errors import SingularMatrixError


def frac_rows(rows):
    return [[F(v) for v in row] for row in rows]


class TestSnf:
    def test_diag_2_3(self):
        diag, U, V = exact.snf([[2, 0], [0, 3]])
        assert diag == [1, 6]
        assert exact.matmul_int(exact.matmul_int(U, [[2, 0], [0, 3]]), V) == \
            [[1, 0], [0, 6]]

    def test_identity(self):
        diag, U, V = exact.snf([[1, 0], [0, 1]])
        assert diag == [1, 1]
        assert abs(exact.int_det_unimodular(U)) == 1
        assert abs(exact.int_det_unimodular(V)) == 1

    def test_wide_matrix(self):
        # transposed stack of e1, e2, -e1-e2
        m = [[1, 0, -1], [0, 1, -1]]
        diag, U, V = exact.snf(m)
        assert diag == [1, 1]

    def test_empty(self):
        diag, U, V = exact.snf([])
        assert diag == []

    def test_random_properties(self):
        rng = random.Random(7)
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
            diag, U, V = exact.snf(m)
            prod = exact.matmul_int(exact.matmul_int(U, m), V)
            for i in range(rows):
                for j in range(cols):
                    expected = diag[i] if i == j and i < len(diag) else 0
                    assert prod[i][j] == expected
            for a, b in zip(diag, diag[1:]):
                assert b % a == 0 or (a == 0 and b == 0)
            assert abs(exact.int_det_unimodular(U)) == 1
            assert abs(exact.int_det_unimodular(V)) == 1
            assert all(d >= 0 for d in diag)


class TestSolve:
    def test_identity(self):
        assert exact.solve_exact(frac_rows([[1, 0], [0, 1]]), [F(1), F(1)]) == [F(1), F(1)]

    def test_cp2_vertex_system(self):
        a = frac_rows([[0, 1], [-1, -1]])
        assert exact.solve_exact(a, [F(1), F(1)]) == [F(-2), F(1)]
        a = frac_rows([[1, 0], [-1, -1]])
        assert exact.solve_exact(a, [F(1), F(1)]) == [F(1), F(-2)]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            exact.solve_exact(frac_rows([[1, 1], [2, 2]]), [F(1), F(1)])

    def test_roundtrip_random(self):
        rng = random.Random(11)
        done = 0
        while done < 30:
            n = rng.randint(1, 5)
            a = [[F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
                 for _ in range(n)]
            if exact.det(a) == 0:
                continue
            x = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            b = exact.matvec(a, x)
            assert exact.solve_exact(a, b) == x
            done += 1


class TestKernel:
    def test_full_rank(self):
        assert exact.kernel_basis(frac_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []

    def test_one_relation(self):
        basis = exact.kernel_basis(frac_rows([[1, 1]]))
        assert len(basis) == 1
        v = basis[0]
        assert v[0] + v[1] == 0 and v != [0, 0]

    def test_rank_one_wide(self):
        basis = exact.kernel_basis(frac_rows([[1, 1, 1], [1, 1, 1]]))
        assert len(basis) == 2
        for v in basis:
            assert sum(v) == 0

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(3)
        for _ in range(25):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            a = [[F(rng.randint(-5, 5)) for _ in range(cols)] for _ in range(rows)]
            basis = exact.kernel_basis(a)
            for v in basis:
                assert all(av == 0 for av in exact.matvec(a, v))
            assert exact.rank(a) + len(basis) == cols


class TestDet:
    @pytest.mark.parametrize("m, expected", [
        ([[0, 1], [-1, -1]], 1),
        ([[1, 0], [-1, -1]], -1),
        ([[2, 0], [0, 3]], 6),
        ([[1, 2], [2, 4]], 0),
    ])
    def test_small(self, m, expected):
        assert exact.det(frac_rows(m)) == expected

    def test_det_multiplicative(self):
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randint(1, 4)
            a = frac_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            b = frac_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            ab = [[exact.dot(ra, col) for col in zip(*b)] for ra in a]
            assert exact.det(ab) == exact.det(a) * exact.det(b)


class TestBackends:
    def test_both_backends_agree(self):
        from qtk import _bareiss_py
        try:
            from qtk import _bareiss
        except ImportError:
            pytest.skip("compiled kernel not built")
        rng = random.Random(13)
        for _ in range(40):
            rows = rng.randint(0, 5)
            cols = rng.randint(1, 5)
            m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
            assert _bareiss.echelon_int(m, cols) == _bareiss_py.echelon_int(m, cols)
