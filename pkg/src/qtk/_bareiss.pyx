# cython: language_level=3
"""Fraction-free integer row reduction (Bareiss), compiled implementation.

Behavioural twin of qtk._bareiss_py.echelon_int; see that module for the
contract.  Entries are arbitrary-precision Python ints, so the speedup over
the fallback comes from removing interpreter overhead on the inner loops,
not from native integer arithmetic.
"""


def echelon_int(rows, Py_ssize_t ncols):
    """Row echelon form of an integer matrix; see qtk._bareiss_py.echelon_int."""
    cdef list mat = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(mat)
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, j, pivot_row
    cdef int swap_sign = 1
    cdef list pivot_cols = []
    cdef list row_i, pivot_row_vals
    prev = 1
    for col in range(ncols):
        pivot_row = -1
        for i in range(rank, nrows):
            if (<list>mat[i])[col] != 0:
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != rank:
            mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
            swap_sign = -swap_sign
        pivot_row_vals = <list>mat[rank]
        pivot = pivot_row_vals[col]
        for i in range(rank + 1, nrows):
            row_i = <list>mat[i]
            factor = row_i[col]
            # Full Bareiss update; the division by `prev` is exact.
            for j in range(col, ncols):
                row_i[j] = (pivot * row_i[j] - factor * pivot_row_vals[j]) // prev
        prev = pivot
        pivot_cols.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, mat, pivot_cols, swap_sign
