"""Linear categories: the basic algebra of a block, one object per label.

``C(a, b)`` stands for Hom(P_a, P_b).  Morphisms are coefficient vectors in a
fixed basis; for a = b the first basis element is the identity and the rest
span the radical.  Composition is written "x then y" (matrix order x @ y for
right modules) and is stored as structure constants.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactla import GF, coordinates, echelon_basis, rank
from ..modkernel import Ambient, ModuleError, Representation, hom_space


class CategoryError(ValueError):
    pass


@dataclass(eq=False)
class LinearCategory:
    field: GF
    labels: tuple
    dims: dict                     # (a, b) -> int
    const: dict                    # (a, b, c) -> array (d_ab, d_bc, d_ac)
    realization: dict | None = None   # (a, b) -> basis matrices, when built from modules
    name: str = ""
    _lm: dict = dc_field(default_factory=dict, repr=False)
    _rm: dict = dc_field(default_factory=dict, repr=False)

    def dim(self, a, b) -> int:
        return self.dims[(a, b)]

    def zero(self, a, b) -> np.ndarray:
        return np.zeros(self.dims[(a, b)], dtype=np.int64)

    def identity(self, a) -> np.ndarray:
        v = self.zero(a, a)
        v[0] = 1
        return v

    def scalar(self, a, x) -> int:
        """Coefficient of the identity in an endomorphism."""
        return int(x[0]) if len(x) else 0

    def compose(self, a, b, c, x, y) -> np.ndarray:
        F = self.field
        T = self.const[(a, b, c)]
        if T.size == 0 or not (np.any(x) and np.any(y)):
            return self.zero(a, c)
        outer = F.mul(np.asarray(x)[:, None], np.asarray(y)[None, :]).reshape(1, -1)
        return F.matmul(outer, T.reshape(-1, T.shape[2]))[0]

    def left_matrix(self, a, b, c, x) -> np.ndarray:
        """Matrix of f -> x then f, for x in C(a,b), f in C(b,c)."""
        key = (a, b, c, np.asarray(x).tobytes())
        M = self._lm.get(key)
        if M is None:
            T = self.const[(a, b, c)]
            M = self.field.matmul(np.asarray(x)[None, :], T.reshape(T.shape[0], -1)).reshape(T.shape[1], T.shape[2])
            self._lm[key] = M
        return M

    def right_matrix(self, a, b, c, y) -> np.ndarray:
        """Matrix of f -> f then y, for f in C(a,b), y in C(b,c)."""
        key = (a, b, c, np.asarray(y).tobytes())
        M = self._rm.get(key)
        if M is None:
            T = self.const[(a, b, c)]
            Tt = T.transpose(1, 0, 2).reshape(T.shape[1], -1)
            M = self.field.matmul(np.asarray(y)[None, :], Tt).reshape(T.shape[0], T.shape[2])
            self._rm[key] = M
        return M

    def inverse_endo(self, a, x) -> np.ndarray:
        """Inverse of lam*id + n with n radical: lam^-1 * sum (-n/lam)^k."""
        F = self.field
        lam = self.scalar(a, x)
        if lam == 0:
            raise CategoryError("endomorphism is not invertible")
        li = int(F.inv(lam))
        n = np.array(x, dtype=np.int64)
        n[0] = 0
        step = F.mul(F.neg(n), li)
        term = self.identity(a)
        total = self.identity(a)
        for _ in range(self.dims[(a, a)] + 1):
            term = self.compose(a, a, a, term, step)
            if not np.any(term):
                break
            total = F.add(total, term)
        else:
            raise CategoryError("radical part is not nilpotent")
        return F.mul(total, li)

    def cartan(self) -> np.ndarray:
        return np.array([[self.dims[(a, b)] for b in self.labels] for a in self.labels], dtype=np.int64)

    def total_dim(self) -> int:
        return int(self.cartan().sum())

    def check_associative(self) -> bool:
        F = self.field
        L = self.labels
        for a in L:
            for b in L:
                for c in L:
                    for d in L:
                        T1, T2 = self.const[(a, b, c)], self.const[(a, c, d)]
                        T3, T4 = self.const[(b, c, d)], self.const[(a, b, d)]
                        dab, dbc, dcd, dad = T1.shape[0], T1.shape[1], T3.shape[1], T4.shape[2]
                        if 0 in (dab, dbc, dcd, dad, T1.shape[2], T3.shape[2]):
                            continue
                        # (x y) z and x (y z), indices (i, j, k, n)
                        lhs = F.matmul(T1.reshape(-1, T1.shape[2]), T2.reshape(T2.shape[0], -1))
                        lhs = lhs.reshape(dab, dbc, dcd, dad)
                        rhs = F.matmul(T3.reshape(-1, T3.shape[2]), T4.transpose(1, 0, 2).reshape(T4.shape[1], -1))
                        rhs = rhs.reshape(dbc, dcd, dab, dad).transpose(2, 0, 1, 3)
                        if not np.array_equal(lhs, rhs):
                            return False
        return True


def category_from_projectives(projs: dict, simples: dict, name: str = "") -> LinearCategory:
    """Basic algebra of a block from its projective indecomposables."""
    labels = tuple(projs)
    F = next(iter(projs.values())).field
    bases = {}
    for a in labels:
        for b in labels:
            H = hom_space(projs[a], projs[b]).basis
            if a == b:
                H = _identity_first(F, projs[a], simples[a], H)
            bases[(a, b)] = H
    return _category_from_bases(F, labels, bases, name)


def _identity_first(F: GF, P: Representation, S: Representation, H: np.ndarray) -> np.ndarray:
    d = P.dim
    pi = hom_space(P, S).basis
    if pi.shape[0] != 1:
        raise CategoryError(f"{P.tag} does not have a simple top {S.tag}")
    pi = pi[0]
    idx = np.unravel_index(int(np.flatnonzero(pi)[0]), pi.shape)
    lam = []
    for X in H:
        img = F.matmul(X, pi)
        lam.append(int(F.div(img[idx], pi[idx])))
    rad = []
    for X, l in zip(H, lam):
        rad.append(F.sub(X, np.eye(d, dtype=np.int64) * l).reshape(-1))
    R = echelon_basis(F, np.array(rad).reshape(len(rad), -1)) if rad else np.zeros((0, d * d), dtype=np.int64)
    if R.shape[0] != H.shape[0] - 1:
        raise CategoryError(f"End({P.tag}) is not local")
    return np.concatenate([np.eye(d, dtype=np.int64).reshape(1, d, d), R.reshape(-1, d, d)])


def _category_from_bases(F: GF, labels, bases: dict, name: str) -> LinearCategory:
    dims = {k: v.shape[0] for k, v in bases.items()}
    const = {}
    for a in labels:
        for b in labels:
            for c in labels:
                X, Y, Z = bases[(a, b)], bases[(b, c)], bases[(a, c)]
                T = np.zeros((X.shape[0], Y.shape[0], Z.shape[0]), dtype=np.int64)
                if T.size:
                    prods = F.matmul(X[:, None], Y[None, :]).reshape(X.shape[0] * Y.shape[0], -1)
                    T = coordinates(F, Z.reshape(Z.shape[0], -1), prods).reshape(T.shape)
                elif X.shape[0] and Y.shape[0]:
                    prods = F.matmul(X[:, None], Y[None, :])
                    if np.any(prods):
                        raise CategoryError("composite outside the Hom basis")
                const[(a, b, c)] = T
    return LinearCategory(F, tuple(labels), dims, const, bases, name)


# --- modules over a linear category ------------------------------------------------


def generator_list(C: LinearCategory) -> list[tuple]:
    """(a, b, k): the k-th basis morphism of C(a, b), in a fixed order."""
    return [(a, b, k) for a in C.labels for b in C.labels for k in range(C.dims[(a, b)])]


def module_from_spaces(C: LinearCategory, spaces: dict, action, tag: str) -> Representation:
    """Build a module with M_a of dimension spaces[a]; action(a, b, k) gives M_b -> M_a."""
    offs, o = {}, 0
    for a in C.labels:
        offs[a] = o
        o += spaces[a]
    gens = []
    for a, b, k in generator_list(C):
        G = np.zeros((o, o), dtype=np.int64)
        if spaces[a] and spaces[b]:
            G[offs[b]:offs[b] + spaces[b], offs[a]:offs[a] + spaces[a]] = action(a, b, k)
        gens.append(G)
    M = Representation(C.field, o, gens, tag, "algebra")
    M._cache["offsets"] = offs
    M._cache["parts"] = {a: spaces[a] for a in C.labels}
    return M


def regular_module(C: LinearCategory, z) -> Representation:
    """P'_z with (P'_z)_a = C(a, z); x in C(a, b) acts by precomposition."""
    spaces = {a: C.dims[(a, z)] for a in C.labels}
    return module_from_spaces(C, spaces, lambda a, b, k: C.const[(a, b, z)][k], f"P{z}")


def simple_cat_module(C: LinearCategory, z) -> Representation:
    spaces = {a: int(a == z) for a in C.labels}

    def act(a, b, k):
        return np.array([[1 if (a == b == z and k == 0) else 0]], dtype=np.int64)
    return module_from_spaces(C, spaces, act, f"S{z}")


def category_ambient(C: LinearCategory) -> Ambient:
    key = "_ambient"
    amb = C.__dict__.get(key)
    if amb is None:
        amb = Ambient({z: simple_cat_module(C, z) for z in C.labels},
                      {z: regular_module(C, z) for z in C.labels})
        C.__dict__[key] = amb
    return amb


def module_part(M: Representation, C: LinearCategory, a) -> slice:
    o = M._cache["offsets"][a]
    return slice(o, o + M._cache["parts"][a])
