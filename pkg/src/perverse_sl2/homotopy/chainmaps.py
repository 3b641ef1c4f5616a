"""Chain maps modulo homotopy between complexes of projectives."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactla import echelon_basis, kernel_basis, rref
from ..exactla.linalg import reduce_mod
from .category import CategoryError, LinearCategory
from .complexes import ChainMap, ProjectiveComplex, bm, identity_map, shift


class _Layout:
    """Positions of the coefficient vectors of all entries of maps X^k -> Y^{k+offset}."""

    def __init__(self, C: LinearCategory, X: ProjectiveComplex, Y: ProjectiveComplex, offset: int):
        self.slots = {}
        n = 0
        for k in X.degrees:
            for i, a in enumerate(X.term(k)):
                for j, b in enumerate(Y.term(k + offset)):
                    d = C.dims[(a, b)]
                    if d:
                        self.slots[(k, i, j)] = (n, d, a, b)
                        n += d
        self.size = n


@dataclass
class ChainMapBasis:
    source: ProjectiveComplex
    target: ProjectiveComplex
    shift: int
    layout: object
    chains: np.ndarray        # basis of chain maps (rows)
    bound: np.ndarray         # echelon basis of null-homotopic maps
    bound_piv: tuple
    quot: np.ndarray          # canonical representatives of a quotient basis
    quot_piv: tuple
    target_shifted: ProjectiveComplex

    @property
    def dim(self) -> int:
        return self.quot.shape[0]

    def to_map(self, vec) -> ChainMap:
        out: dict = {}
        X, Y = self.source, self.target_shifted
        for (k, i, j), (o, d, a, b) in self.layout.slots.items():
            v = np.asarray(vec[o:o + d], dtype=np.int64)
            if np.any(v):
                out.setdefault(k, {})[(i, j)] = v
        return {k: bm(X.term(k), Y.term(k), e) for k, e in out.items()}

    def from_map(self, f: ChainMap) -> np.ndarray:
        vec = np.zeros(self.layout.size, dtype=np.int64)
        for k, m in f.items():
            for (i, j), v in m.ent.items():
                slot = self.layout.slots.get((k, i, j))
                if slot is None:
                    raise CategoryError("map has an entry outside the layout")
                vec[slot[0]:slot[0] + slot[1]] = v
        return vec

    def basis_maps(self) -> list[ChainMap]:
        return [self.to_map(v) for v in self.quot]

    def reduce(self, vec) -> np.ndarray:
        F = self.source.cat.field
        return reduce_mod(F, self.bound, self.bound_piv, np.asarray(vec).reshape(1, -1))[0]

    def coords(self, f) -> np.ndarray:
        """Coordinates of the homotopy class of f in the quotient basis."""
        vec = f if isinstance(f, np.ndarray) else self.from_map(f)
        r = self.reduce(vec)
        c = r[list(self.quot_piv)] if self.dim else np.zeros(0, dtype=np.int64)
        F = self.source.cat.field
        if np.any(F.sub(r, F.matmul(c[None, :], self.quot)[0] if self.dim else 0)):
            raise CategoryError("not a chain map")
        return c

    def is_null(self, f) -> bool:
        return not np.any(self.reduce(f if isinstance(f, np.ndarray) else self.from_map(f)))


def _add_block(M: np.ndarray, r0: int, c0: int, block: np.ndarray, F) -> None:
    rs, cs = block.shape
    M[r0:r0 + rs, c0:c0 + cs] = F.add(M[r0:r0 + rs, c0:c0 + cs], block)


def _maps_matrix(C, X, Y, unk: _Layout, out: _Layout, unk_off: int, sign_right: int) -> np.ndarray:
    """For unknown maps u of degree unk_off, the map u -> (d_X then u) + sign_right*(u then d_Y)
    landing in maps of degree unk_off + 1."""
    F = C.field
    M = np.zeros((unk.size, out.size), dtype=np.int64)
    # d_X^k then u^{k+1}: output slot (k, i, l) from unknown slot (k+1, j, l)
    for (k1, j, l), (o, d, b, c) in unk.slots.items():
        k = k1 - 1
        dX = X.diff(k)
        for (i, jj), x in dX.ent.items():
            if jj != j:
                continue
            tgt = out.slots.get((k, i, l))
            if tgt is None:
                continue
            a = dX.rows[i]
            L = C.left_matrix(a, b, c, x)           # d_bc x d_ac
            _add_block(M, o, tgt[0], L, F)
    # u^k then d_Y: output slot (k, i, l) from unknown (k, i, m)
    for (k, i, m), (o, d, a, b) in unk.slots.items():
        dY = Y.diff(k + unk_off)
        for (mm, l), y in dY.ent.items():
            if mm != m:
                continue
            tgt = out.slots.get((k, i, l))
            if tgt is None:
                continue
            c = dY.cols[l]
            R = C.right_matrix(a, b, c, y)          # d_ab x d_ac
            if sign_right < 0:
                R = F.neg(R)
            _add_block(M, o, tgt[0], R, F)
    return M


def hom_k(X: ProjectiveComplex, Y: ProjectiveComplex, s: int = 0) -> ChainMapBasis:
    """Hom in the homotopy category from X to Y[s]."""
    C = X.cat
    if Y.cat is not C:
        raise CategoryError("complexes over different categories")
    F = C.field
    Ys = shift(Y, s) if s else Y
    lay0 = _Layout(C, X, Ys, 0)
    lay1 = _Layout(C, X, Ys, 1)
    laym = _Layout(C, X, Ys, -1)
    if lay0.size == 0:
        z = np.zeros((0, 0), dtype=np.int64)
        return ChainMapBasis(X, Y, s, lay0, z, z, (), z, (), Ys)
    D = _maps_matrix(C, X, Ys, lay0, lay1, 0, -1)
    Z = kernel_basis(F, D) if lay1.size else np.eye(lay0.size, dtype=np.int64)
    Z = Z.reshape(-1, lay0.size)
    if laym.size:
        H = _maps_matrix(C, X, Ys, laym, lay0, -1, +1)
        Bnd, r, bpiv = rref(F, H)
        Bnd = Bnd[:r]
    else:
        Bnd, bpiv = np.zeros((0, lay0.size), dtype=np.int64), ()
    if Z.shape[0]:
        res = reduce_mod(F, Bnd, bpiv, Z) if Bnd.shape[0] else Z
        Q, r, qpiv = rref(F, res)
        Q = Q[:r]
    else:
        Q, qpiv = np.zeros((0, lay0.size), dtype=np.int64), ()
    return ChainMapBasis(X, Y, s, lay0, Z, Bnd, tuple(bpiv), Q, tuple(qpiv), Ys)


def hom_k_dim(X: ProjectiveComplex, Y: ProjectiveComplex, s: int = 0) -> int:
    return hom_k(X, Y, s).dim
