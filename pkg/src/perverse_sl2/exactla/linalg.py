"""Deterministic dense linear algebra over GF(q).

Matrices are 2-d numpy int64 arrays of field codes.  Vectors are rows and
act on the right: the kernel of M is ``{x : x @ M == 0}``.  Subspaces are
kept as reduced row echelon bases so that equal subspaces compare equal
byte for byte.

The elimination kernel is compiled (Cython) when the extension is built
and ``PERVERSE_SL2_PURE`` is unset; otherwise a numpy implementation with
the same output is used.
"""
from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from . import _rref_py
from .field import GF

try:
    if os.environ.get("PERVERSE_SL2_PURE"):
        raise ImportError("pure backend requested")
    from . import _rref as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "pure"


def set_backend(name: str) -> None:
    """Switch between ``"compiled"`` and ``"pure"`` at runtime (benchmarks, tests)."""
    global BACKEND
    if name == "compiled" and _compiled is None:
        raise RuntimeError("compiled kernel not available")
    if name not in ("compiled", "pure"):
        raise ValueError(name)
    BACKEND = name


def compiled_available() -> bool:
    return _compiled is not None


class RREF(NamedTuple):
    R: np.ndarray
    rank: int
    pivots: tuple[int, ...]


class ShapeError(ValueError):
    pass


def _as_mat(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ShapeError(f"expected a matrix, got shape {M.shape}")
    return M


def _rref_inplace(F: GF, M: np.ndarray) -> list[int]:
    if BACKEND == "compiled" and M.size:
        if F.n == 1:
            return _compiled.rref_prime(M, F.p)
        if F._add_table is not None:
            return _compiled.rref_tables(M, F._add_table, F._mul_table, F._neg, F._inv)
    return _rref_py.rref_inplace(F, M)


def rref(F: GF, M) -> RREF:
    """Reduced row echelon form; pivoting is topmost row, leftmost column."""
    R = np.ascontiguousarray(_as_mat(M), dtype=np.int64).copy()
    piv = _rref_inplace(F, R)
    return RREF(R, len(piv), tuple(piv))


def rank(F: GF, M) -> int:
    return rref(F, M).rank


def echelon_basis(F: GF, M) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the row space of M."""
    R, r, _ = rref(F, M)
    return R[:r].copy()


def nullspace_right(F: GF, M) -> np.ndarray:
    """Rows spanning ``{x : M @ x^T == 0}``."""
    M = _as_mat(M)
    R, r, piv = rref(F, M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        if r:
            out[k, list(piv)] = F.neg(R[:r, f])
    return out


def kernel_basis(F: GF, M) -> np.ndarray:
    """Echelon basis of the left kernel ``{x : x @ M == 0}``."""
    M = _as_mat(M)
    if M.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if M.shape[1] == 0:
        return np.eye(M.shape[0], dtype=np.int64)
    N = nullspace_right(F, M.T)
    if N.shape[0] == 0:
        return N.reshape(0, M.shape[0])
    return echelon_basis(F, N)


def solve(F: GF, M, b) -> np.ndarray | None:
    """Some x with ``x @ M == b`` or None when inconsistent."""
    M = _as_mat(M)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != M.shape[1]:
        raise ShapeError("rhs length does not match matrix columns")
    aug = np.concatenate([M.T, b[:, None]], axis=1)
    R, r, piv = rref(F, aug)
    if piv and piv[-1] == M.shape[0]:
        return None
    x = np.zeros(M.shape[0], dtype=np.int64)
    for k, c in enumerate(piv):
        x[c] = R[k, -1]
    return x


def coordinates(F: GF, basis, vectors) -> np.ndarray:
    """Coordinates of row vectors in a basis (rows); raises if not in the span."""
    basis = _as_mat(basis)
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    k = basis.shape[0]
    if k == 0:
        if np.any(vectors):
            raise ValueError("vector not in span")
        return np.zeros((vectors.shape[0], 0), dtype=np.int64)
    aug = np.concatenate([basis.T, vectors.T], axis=1)
    R, r, piv = rref(F, aug)
    if r < k or (piv and piv[-1] >= k):
        if r < k:
            raise ValueError("basis is linearly dependent")
        raise ValueError("vector not in span")
    return R[:k, k:].T.copy()


def inverse(F: GF, M) -> np.ndarray:
    M = _as_mat(M)
    n = M.shape[0]
    if M.shape[1] != n:
        raise ShapeError("inverse of a non-square matrix")
    R, r, piv = rref(F, np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1))
    if r < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:].copy()


def is_invertible(F: GF, M) -> bool:
    M = _as_mat(M)
    return M.shape[0] == M.shape[1] and rank(F, M) == M.shape[0]


def rowspace_sum(F: GF, U, V) -> np.ndarray:
    U, V = _as_mat(U), _as_mat(V)
    if U.shape[1] != V.shape[1]:
        raise ShapeError("ambient dimensions differ")
    return echelon_basis(F, np.concatenate([U, V], axis=0))


def rowspace_intersect(F: GF, U, V) -> np.ndarray:
    """Zassenhaus intersection, returned in echelon form."""
    U, V = _as_mat(U), _as_mat(V)
    if U.shape[1] != V.shape[1]:
        raise ShapeError("ambient dimensions differ")
    n = U.shape[1]
    top = np.concatenate([U, U], axis=1)
    bot = np.concatenate([V, np.zeros_like(V)], axis=1)
    R, r, piv = rref(F, np.concatenate([top, bot], axis=0))
    rows = [k for k, c in enumerate(piv) if c >= n]
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return echelon_basis(F, R[rows, n:])


def kron(F: GF, A, B) -> np.ndarray:
    """Kronecker product, entry ((i, k), (j, l)) at (i*rows(B)+k, j*cols(B)+l)."""
    A, B = _as_mat(A), _as_mat(B)
    out = F.mul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def reduce_mod(F: GF, E: np.ndarray, pivots, V) -> np.ndarray:
    """Reduce rows of V modulo the row space of the echelon basis E."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    if E.shape[0] == 0:
        return V.copy()
    coeff = V[:, list(pivots)]
    return F.sub(V, F.matmul(coeff, E))


def in_rowspace(F: GF, E: np.ndarray, pivots, V) -> np.ndarray:
    return ~np.any(reduce_mod(F, E, pivots, V), axis=1)


def complement_columns(dim: int, pivots) -> list[int]:
    ps = set(pivots)
    return [c for c in range(dim) if c not in ps]


def matpow(F: GF, M: np.ndarray, e: int) -> np.ndarray:
    result = np.eye(M.shape[0], dtype=np.int64)
    base = M
    while e:
        if e & 1:
            result = F.matmul(result, base)
        base = F.matmul(base, base)
        e >>= 1
    return result


def scalar_matrix(F: GF, k: int, c: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64) * int(c)
