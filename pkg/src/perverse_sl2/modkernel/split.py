"""Indecomposable decomposition by Fitting's lemma, and isomorphism tests."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactla import GF, echelon_basis, inverse, is_invertible, kernel_basis, rank, rref
from ..exactla.linalg import matpow
from .homs import hom_space
from .rep import ModuleError, Representation, rng_for, submodule

RETRY_BUDGET = 64


class SplitError(ModuleError):
    pass


class UndecidedIsomorphism(ModuleError):
    """Equal dimensions and Homs both ways, but no invertible map was found."""


@dataclass
class Summand:
    module: Representation
    inclusion: np.ndarray    # dim summand x dim M
    projection: np.ndarray   # dim M x dim summand


def _eigenvalue(F: GF, X: np.ndarray) -> int | None:
    d = X.shape[0]
    for c in range(F.q):
        if rank(F, F.sub(X, np.eye(d, dtype=np.int64) * c)) < d:
            return c
    return None


def _stable_power(F: GF, X: np.ndarray) -> np.ndarray:
    return matpow(F, X, X.shape[0])


def local_check(F: GF, basis: np.ndarray) -> bool:
    """Whether the algebra spanned by ``basis`` (which contains the identity) is local.

    Each basis element must be scalar plus nilpotent, and the nilpotent
    parts must span a nilpotent ideal.
    """
    if basis.shape[0] == 0:
        return False
    d = basis.shape[1]
    nil = []
    for X in basis:
        lam = _eigenvalue(F, X)
        if lam is None:
            return False
        N = F.sub(X, np.eye(d, dtype=np.int64) * lam)
        if np.any(_stable_power(F, N)):
            return False
        if np.any(N):
            nil.append(N)
    if not nil:
        return True
    J = echelon_basis(F, np.array(nil).reshape(len(nil), -1))
    cur = J
    for _ in range(d + 1):
        mats = cur.reshape(-1, d, d)
        prods = F.matmul(mats[:, None], J.reshape(-1, d, d)[None, :]).reshape(-1, d * d)
        if not np.any(prods):
            return True
        nxt = echelon_basis(F, prods)
        # products must stay inside J
        if rank(F, np.concatenate([J, nxt])) != J.shape[0]:
            return False
        cur = nxt
    return False


def is_indecomposable(M: Representation) -> bool:
    E = hom_space(M, M)
    return E.dim == 1 or local_check(M.field, E.basis)


def _split_once(M: Representation, rng) -> tuple[np.ndarray, np.ndarray] | None:
    """Find a nontrivial Fitting decomposition; return (kernel rows, image rows)."""
    F, d = M.field, M.dim
    E = hom_space(M, M)
    if E.dim <= 1:
        return None
    for _ in range(RETRY_BUDGET):
        theta = E.combination(F.random(rng, E.dim))
        lam = _eigenvalue(F, theta)
        if lam is None:
            continue
        N = _stable_power(F, F.sub(theta, np.eye(d, dtype=np.int64) * lam))
        r = rank(F, N)
        if r == 0 or r == d:
            continue
        return kernel_basis(F, N), echelon_basis(F, N)
    return None


def fitting_split(M: Representation, label: str = "") -> list[Summand]:
    """Decompose M into indecomposable summands with inclusions and projections."""
    F = M.field
    if M.dim == 0:
        raise SplitError("cannot split the zero module")
    rng = rng_for("split", M.fingerprint(), label)
    out: list[Summand] = []
    stack = [(M, np.eye(M.dim, dtype=np.int64), np.eye(M.dim, dtype=np.int64))]
    while stack:
        X, inc, proj = stack.pop()
        parts = _split_once(X, rng)
        if parts is None:
            if not is_indecomposable(X):
                raise SplitError(f"no splitting found for {M.tag} within the retry budget")
            out.append(Summand(X, inc, proj))
            continue
        K, I = parts
        B = np.concatenate([K, I], axis=0)
        Binv = inverse(F, B)
        k = K.shape[0]
        for rows, cols in ((K, slice(0, k)), (I, slice(k, X.dim))):
            sub = submodule(X, rows, tag=X.tag, check=False).module
            # coordinates of rows in the echelon basis are at the pivots
            R, r, piv = rref(F, rows)
            sub_inc = F.matmul(R[:r], inc)
            # coordinates along ``rows``, then in the echelon basis (values at pivots)
            sub_proj = F.matmul(proj, F.matmul(Binv[:, cols], rows[:, list(piv)]))
            stack.append((sub, sub_inc, sub_proj))
    out.sort(key=lambda s: (s.module.dim, s.inclusion.tobytes()))
    return out


def find_isomorphism(X: Representation, Y: Representation) -> np.ndarray | None:
    """An invertible hom X -> Y, or None if X and Y are not isomorphic."""
    F = X.field
    if X.dim != Y.dim:
        return None
    if X.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    H = hom_space(X, Y)
    if H.dim == 0:
        return None
    for B in H.basis:
        if is_invertible(F, B):
            return B
    G = hom_space(Y, X)
    if G.dim == 0:
        return None
    E = hom_space(X, X)
    if local_check(F, E.basis):
        # X local: X = Y iff some composite X -> Y -> X is not in the radical
        for f in H.basis:
            for g in G.basis:
                if is_invertible(F, F.matmul(f, g)):
                    break
            else:
                continue
            break
        else:
            return None
    rng = rng_for("iso", X.fingerprint(), Y.fingerprint())
    for _ in range(RETRY_BUDGET):
        f = H.combination(F.random(rng, H.dim))
        if is_invertible(F, f):
            return f
    raise UndecidedIsomorphism(f"could not decide {X.tag} ~ {Y.tag}")


def is_isomorphic(X: Representation, Y: Representation) -> bool:
    return find_isomorphism(X, Y) is not None
