"""Exact rational scalars and exact linear algebra.

Scalars are fractions.Fraction: always reduced, positive denominator, so
structural equality is semantic equality.  Matrices are plain nested lists
in row-major order.  Row reduction is delegated to the integer Bareiss
kernel (qtk.kernels) after clearing denominators row by row, which changes
neither ranks, kernels, nor solutions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import MalformedInputError, SingularMatrixError
from .kernels import echelon_int

Scalar = Fraction

Row = Sequence[Scalar]
Matrix = Sequence[Row]


def as_scalar(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational: {x!r}") from exc
    raise MalformedInputError(f"not a rational: {x!r}")


def scalar_str(x: Fraction) -> str:
    """Serialize a rational as 'p' or 'p/q'; inverse of as_scalar."""
    return str(x)


def check_matrix(rows: Matrix) -> tuple[int, int]:
    """Validate rectangular shape, return (nrows, ncols)."""
    nrows = len(rows)
    if nrows == 0:
        return 0, 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise MalformedInputError("ragged matrix")
    return nrows, ncols


def _int_rows(rows: Matrix, ncols: int) -> list[list[int]]:
    """Scale each row by the lcm of its denominators: integer rows, same row space."""
    out = []
    for row in rows:
        scale = lcm(*(Fraction(v).denominator for v in row)) if ncols else 1
        out.append([int(Fraction(v) * scale) for v in row])
    return out


def rank(rows: Matrix) -> int:
    """Rank of a rational matrix."""
    nrows, ncols = check_matrix(rows)
    if nrows == 0 or ncols == 0:
        return 0
    r, _, _, _ = echelon_int(_int_rows(rows, ncols), ncols)
    return r


def det(rows: Matrix) -> Fraction:
    """Determinant of a square rational matrix."""
    nrows, ncols = check_matrix(rows)
    if nrows != ncols:
        raise MalformedInputError("determinant of a non-square matrix")
    if nrows == 0:
        return Fraction(1)
    scaled = []
    scale = Fraction(1)
    for row in rows:
        s = lcm(*(Fraction(v).denominator for v in row))
        scale *= s
        scaled.append([int(Fraction(v) * s) for v in row])
    r, ech, _, sign = echelon_int(scaled, ncols)
    if r < nrows:
        return Fraction(0)
    # One-step Bareiss leaves det(int matrix) = swap_sign * last pivot.
    return Fraction(sign * ech[nrows - 1][ncols - 1], 1) / scale


def _backsubstitute_kernel(ech: list[list[int]], pivot_cols: list[int], ncols: int,
                           rank_: int) -> list[list[Fraction]]:
    """Kernel basis from an echelon form: one vector per free column."""
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(rank_ - 1, -1, -1):
            p = pivot_cols[i]
            acc = Fraction(0)
            for j in range(p + 1, ncols):
                if v[j]:
                    acc += Fraction(ech[i][j]) * v[j]
            v[p] = -acc / ech[i][p]
        basis.append(v)
    return basis


def kernel_basis(rows: Matrix) -> list[list[Fraction]]:
    """Basis of the right null space; empty list iff full column rank.

    Deterministic: one basis vector per free column in increasing column
    order, normalized to have entry 1 at its free column.
    """
    nrows, ncols = check_matrix(rows)
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    r, ech, pivot_cols, _ = echelon_int(_int_rows(rows, ncols), ncols)
    return _backsubstitute_kernel(ech, pivot_cols, ncols, r)


def solve_exact(a: Matrix, b: Row) -> list[Fraction]:
    """Unique exact solution of a*x = b for square invertible a."""
    nrows, ncols = check_matrix(a)
    if nrows != ncols:
        raise MalformedInputError("solve_exact needs a square matrix")
    if len(b) != nrows:
        raise MalformedInputError("right-hand side has wrong length")
    if nrows == 0:
        return []
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, ech, pivot_cols, _ = echelon_int(_int_rows(aug, ncols + 1), ncols + 1)
    if r < nrows or pivot_cols != list(range(nrows)):
        raise SingularMatrixError("matrix is singular")
    x = [Fraction(0)] * ncols
    for i in range(nrows - 1, -1, -1):
        acc = Fraction(ech[i][ncols])
        for j in range(i + 1, ncols):
            acc -= Fraction(ech[i][j]) * x[j]
        x[i] = acc / ech[i][i]
    return x


def matvec(a: Matrix, x: Row) -> list[Fraction]:
    """Matrix-vector product over the rationals."""
    return [sum((Fraction(v) * Fraction(w) for v, w in zip(row, x)), Fraction(0))
            for row in a]


def dot(u: Row, v: Row) -> Fraction:
    """Rational inner product."""
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# Smith normal form over the integers.

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(m: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (diag, U, V) with U*m*V diagonal, diag[i] >= 0, diag[i] | diag[i+1],
    and U, V unimodular.  diag lists only the min(nrows, ncols) diagonal entries.
    """
    nrows, ncols = check_matrix(m)
    A = [[int(v) for v in row] for row in m]
    U = _identity(nrows)
    V = _identity(ncols)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):
        # row dst -= q * row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, q):
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    def row_negate(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # Pick the nonzero entry of smallest magnitude in the trailing block.
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(A[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        # Reduce the pivot row and column until both are clean.
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, q)
                    if A[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, q)
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
        # Enforce divisibility: fold any non-multiple into the pivot block.
        pivot = A[t][t]
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if A[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, -1)
            continue
        t += 1

    for i in range(limit):
        if A[i][i] < 0:
            row_negate(i)
    diag = [A[i][i] for i in range(limit)]
    return diag, U, V


def matmul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer matrix product (used by SNF tests and back-substitution)."""
    if not a or not b:
        return []
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def int_det_unimodular(u: Sequence[Sequence[int]]) -> int:
    """Determinant of a small integer matrix (for checking unimodularity)."""
    n = len(u)
    if n == 0:
        return 1
    d = det([[Fraction(v) for v in row] for row in u])
    if d.denominator != 1:
        raise MalformedInputError("non-integer determinant for integer matrix")
    return int(d)


def gcd_vector(v: Sequence[int]) -> int:
    """gcd of a vector of ints (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g
