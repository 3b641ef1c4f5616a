# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination over table-encoded finite fields."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def rref_tables(i64[:, ::1] M, const i64[:, ::1] add, const i64[:, ::1] mul,
                const i64[::1] neg, const i64[::1] inv):
    """Reduce M in place; return the list of pivot columns."""
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef i64 s, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                t = M[r, j]
                M[r, j] = M[pr, j]
                M[pr, j] = t
        s = inv[M[r, c]]
        if s != 1:
            for j in range(c, cols):
                M[r, j] = mul[s, M[r, j]]
        for i in range(rows):
            if i != r and M[i, c] != 0:
                f = neg[M[i, c]]
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = add[M[i, j], mul[f, M[r, j]]]
        pivots.append(c)
        r += 1
    return pivots


def rref_prime(i64[:, ::1] M, i64 p):
    """Reduce M in place over GF(p) with native modular arithmetic."""
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef i64 s, f, t, a, b, e
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, cols):
                t = M[r, j]
                M[r, j] = M[pr, j]
                M[pr, j] = t
        # modular inverse by Fermat
        a = M[r, c]
        s = 1
        e = p - 2
        b = a
        while e > 0:
            if e & 1:
                s = s * b % p
            b = b * b % p
            e >>= 1
        if s != 1:
            for j in range(c, cols):
                M[r, j] = M[r, j] * s % p
        for i in range(rows):
            if i != r and M[i, c] != 0:
                f = p - M[i, c]
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = (M[i, j] + f * M[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
