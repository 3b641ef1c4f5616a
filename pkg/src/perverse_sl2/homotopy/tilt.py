"""Approximations, elementary and simply alternating tilts of summand families."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..exactla import echelon_basis, inverse, is_invertible, rank
from ..modkernel import rng_for
from .category import CategoryError, LinearCategory, _category_from_bases
from .chainmaps import ChainMapBasis, hom_k
from .complexes import (
    ChainMap, ProjectiveComplex, bm, bm_hstack, bm_vstack, compose_maps, cone, direct_sum,
    identity_map, map_at, minimize, notation, shift, stalk,
)


@dataclass
class Family:
    """One summand per simple label; the summands of a (candidate) tilting complex."""
    cat: LinearCategory
    members: dict
    history: list = dc_field(default_factory=list)
    _hom: dict = dc_field(default_factory=dict, repr=False)
    _rad: dict = dc_field(default_factory=dict, repr=False)

    @property
    def labels(self) -> list:
        return list(self.members)

    def __getitem__(self, z) -> ProjectiveComplex:
        return self.members[z]

    def hom(self, a, b, s: int = 0) -> ChainMapBasis:
        key = (a, b, s)
        H = self._hom.get(key)
        if H is None:
            H = hom_k(self.members[a], self.members[b], s)
            self._hom[key] = H
        return H

    def radical(self, a, b) -> list[ChainMap]:
        """Basis of the radical morphisms from summand a to summand b."""
        key = (a, b)
        if key not in self._rad:
            H = self.hom(a, b)
            if a != b:
                self._rad[key] = H.basis_maps()
            else:
                self._rad[key] = [H.to_map(v) for v in radical_endomorphisms(H)]
        return self._rad[key]

    def notation(self) -> dict:
        return {z: notation(X) for z, X in self.members.items()}

    def shapes(self) -> dict:
        return {z: X.shape() for z, X in self.members.items()}


def stalk_family(C: LinearCategory) -> Family:
    return Family(C, {a: stalk(C, a) for a in C.labels})


# --- tops and isomorphisms ------------------------------------------------------------


def top_matrix(C: LinearCategory, X: ProjectiveComplex, Y: ProjectiveComplex, f: ChainMap, k: int) -> np.ndarray:
    """Scalar parts of f^k between equal labels: the induced map on tops."""
    rows, cols = X.term(k), Y.term(k)
    T = np.zeros((len(rows), len(cols)), dtype=np.int64)
    m = map_at(X, Y, f, k)
    for (i, j), v in m.ent.items():
        if rows[i] == cols[j]:
            T[i, j] = C.scalar(rows[i], v)
    return T


def _eigenvalue(F, T: np.ndarray) -> int | None:
    d = T.shape[0]
    for c in range(F.q):
        if rank(F, F.sub(T, np.eye(d, dtype=np.int64) * c)) < d:
            return c
    return None


def endo_scalar(X: ProjectiveComplex, f: ChainMap) -> int:
    """lambda with f - lambda*id in the radical, for X indecomposable and minimal."""
    C = X.cat
    if X.is_zero:
        return 0
    k = min(X.terms)
    lam = _eigenvalue(C.field, top_matrix(C, X, X, f, k))
    if lam is None:
        raise CategoryError("endomorphism with no eigenvalue on the top")
    return lam


def radical_endomorphisms(H: ChainMapBasis) -> np.ndarray:
    """Canonical basis (as quotient representatives) of the radical of End(X)."""
    X = H.source
    F = X.cat.field
    if H.dim == 0:
        return H.quot
    idv = H.reduce(H.from_map(identity_map(X)))
    lams = [endo_scalar(X, H.to_map(v)) for v in H.quot]
    rows = [F.sub(v, F.mul(idv, lam)) for v, lam in zip(H.quot, lams)]
    R = echelon_basis(F, np.array(rows))
    R = np.array([H.reduce(r) for r in R]).reshape(-1, H.quot.shape[1])
    R = echelon_basis(F, R) if R.shape[0] else R
    if R.shape[0] != H.dim - 1:
        raise CategoryError("endomorphism ring of a summand is not local")
    return R


def is_iso_map(X: ProjectiveComplex, Y: ProjectiveComplex, f: ChainMap) -> bool:
    C = X.cat
    if X.shape() != Y.shape():
        return False
    for k in X.terms:
        T = top_matrix(C, X, Y, f, k)
        if T.shape[0] != T.shape[1] or not is_invertible(C.field, T):
            return False
    return True


def isomorphic_complexes(X: ProjectiveComplex, Y: ProjectiveComplex, tries: int = 64) -> bool:
    """Isomorphism of minimal complexes in the homotopy category."""
    if X.shape() != Y.shape():
        return False
    if X.is_zero:
        return True
    H = hom_k(X, Y)
    if H.dim == 0:
        return False
    for v in H.quot:
        if is_iso_map(X, Y, H.to_map(v)):
            return True
    F = X.cat.field
    rng = rng_for("iso-complex", notation(X), notation(Y))
    for _ in range(tries):
        v = F.matmul(F.random(rng, (1, H.dim)), H.quot)[0]
        if is_iso_map(X, Y, H.to_map(v)):
            return True
    return False


# --- approximations ---------------------------------------------------------------------


def _complement(F, span: np.ndarray, dim: int) -> list[int]:
    """Indices of unit vectors completing span to the whole space, greedily."""
    cur = span.reshape(-1, dim)
    r = rank(F, cur) if cur.shape[0] else 0
    chosen = []
    for i in range(dim):
        e = np.zeros((1, dim), dtype=np.int64)
        e[0, i] = 1
        trial = np.concatenate([cur, e])
        if rank(F, trial) > r:
            cur, r = trial, r + 1
            chosen.append(i)
    return chosen


def right_approximation(fam: Family, W, X: ProjectiveComplex) -> list[tuple]:
    """Minimal right approximation of X by the summands in W: list of (label, map g -> X)."""
    F = fam.cat.field
    pieces = []
    homs = {g: hom_k(fam[g], X) for g in sorted(W)}
    for g in sorted(W):
        H = homs[g]
        if H.dim == 0:
            continue
        gens = []
        for g2 in sorted(W):
            H2 = homs[g2]
            if H2.dim == 0:
                continue
            for r in fam.radical(g, g2):
                for h in H2.basis_maps():
                    gens.append(H.coords(compose_maps(fam.cat, fam[g], fam[g2], X, r, h)))
        span = np.array(gens, dtype=np.int64).reshape(-1, H.dim)
        for i in _complement(F, span, H.dim):
            pieces.append((g, H.to_map(H.quot[i])))
    return pieces


def left_approximation(fam: Family, W, X: ProjectiveComplex) -> list[tuple]:
    """Minimal left approximation of X by the summands in W: list of (label, map X -> g)."""
    F = fam.cat.field
    pieces = []
    homs = {g: hom_k(X, fam[g]) for g in sorted(W)}
    for g in sorted(W):
        H = homs[g]
        if H.dim == 0:
            continue
        gens = []
        for g2 in sorted(W):
            H2 = homs[g2]
            if H2.dim == 0:
                continue
            for r in fam.radical(g2, g):
                for h in H2.basis_maps():
                    gens.append(H.coords(compose_maps(fam.cat, X, fam[g2], fam[g], h, r)))
        span = np.array(gens, dtype=np.int64).reshape(-1, H.dim)
        for i in _complement(F, span, H.dim):
            pieces.append((g, H.to_map(H.quot[i])))
    return pieces


def approximation_cone(fam: Family, X: ProjectiveComplex, pieces, side: str, label) -> ProjectiveComplex:
    if not pieces:
        return X.relabel(label)
    mods = [fam[g] for g, _ in pieces]
    S = direct_sum(mods)
    degs = sorted(set(S.terms) | set(X.terms))
    f = {}
    for k in degs:
        if side == "right":
            f[k] = bm_vstack([map_at(M, X, m, k) for M, (_, m) in zip(mods, pieces)], X.term(k))
        else:
            f[k] = bm_hstack([map_at(X, M, m, k) for M, (_, m) in zip(mods, pieces)], X.term(k))
    if side == "right":
        return cone(S, X, f, label)
    return shift(cone(X, S, f, label), -1)


def approximation_multiplicities(pieces) -> dict:
    out: dict = {}
    for g, _ in pieces:
        out[g] = out.get(g, 0) + 1
    return out


# --- tilts ----------------------------------------------------------------------------


def elementary_tilt(fam: Family, W, direction: str = "raise") -> Family:
    """Raise: W-summands shift by [1], others become cones of right approximations.
    Lower: W-summands shift by [-1], others become shifted cones of left approximations."""
    W = set(W)
    if not W <= set(fam.labels):
        raise CategoryError(f"labels {sorted(W - set(fam.labels))} not in the family")
    if direction not in ("raise", "lower"):
        raise ValueError(direction)
    new = {}
    for z, X in fam.members.items():
        if z in W:
            new[z] = shift(X, 1 if direction == "raise" else -1)
        elif direction == "raise":
            new[z] = minimize(approximation_cone(fam, X, right_approximation(fam, W, X), "right", z))
        else:
            new[z] = minimize(approximation_cone(fam, X, left_approximation(fam, W, X), "left", z))
    hist = fam.history + [(direction, tuple(sorted(W)))]
    return Family(fam.cat, {z: new[z].relabel(z) for z in fam.labels}, hist)


def simply_alternating_tilt(fam: Family, I, J) -> Family:
    """Raise at I and J together, then lower at J (J empty: a plain raise)."""
    I, J = set(I), set(J)
    if not I:
        raise CategoryError("empty I")
    step = elementary_tilt(fam, I | J, "raise")
    if J:
        step = elementary_tilt(step, J, "lower")
    out = Family(fam.cat, {z: minimize(X) for z, X in step.members.items()}, step.history)
    return out


def direct_shape_tilt(fam: Family, I, J, plain: bool = False) -> Family:
    """The three summand shapes built directly from the old family.

    z in J stays; z in I becomes (z -> J-approximation) with z in degree -1;
    z elsewhere becomes (I-part -> z).  The I-part is taken from the minimal
    right approximation by I and J together; with ``plain`` it is the minimal
    right approximation by I alone, which can be too large.
    """
    I, J = set(I), set(J)
    new = {}
    for z, X in fam.members.items():
        if z in J:
            new[z] = X
        elif z in I:
            if J:
                Y = approximation_cone(fam, X, left_approximation(fam, J, X), "left", z)
                new[z] = minimize(shift(Y, 1))
            else:
                new[z] = shift(X, 1)
        else:
            if plain:
                pieces = right_approximation(fam, I, X)
            else:
                pieces = [pc for pc in right_approximation(fam, I | J, X) if pc[0] in I]
            new[z] = minimize(approximation_cone(fam, X, pieces, "right", z))
    hist = fam.history + [("direct", tuple(sorted(I)), tuple(sorted(J)))]
    return Family(fam.cat, {z: new[z].relabel(z) for z in fam.labels}, hist)


def global_shift(fam: Family, s: int) -> Family:
    return Family(fam.cat, {z: shift(X, s) for z, X in fam.members.items()}, fam.history + [("shift", s)])


def lower_at_complement(fam: Family, I) -> Family:
    """Lower at the labels outside I, then shift so the old stalks sit in degree 0.

    This is the convention under which the classical A5 summands
    P_k, P_V -> P_k, P_W -> P_k appear (with I = {V, W}).
    """
    rest = set(fam.labels) - set(I)
    if not rest:
        raise CategoryError("complement of I is empty")
    return global_shift(elementary_tilt(fam, rest, "lower"), 1)


def families_isomorphic(A: Family, B: Family) -> bool:
    if set(A.labels) != set(B.labels):
        return False
    return all(isomorphic_complexes(A[z], B[z]) for z in A.labels)


# --- endomorphism algebra -------------------------------------------------------------------


def end_algebra(fam: Family, name: str = "") -> LinearCategory:
    """End in the homotopy category of the sum of the family, as a linear category."""
    C = fam.cat
    F = C.field
    labels = tuple(fam.labels)
    reps: dict = {}
    change: dict = {}
    for a in labels:
        for b in labels:
            H = fam.hom(a, b)
            if a == b and H.dim:
                idv = H.reduce(H.from_map(identity_map(fam[a])))
                rad = radical_endomorphisms(H)
                vecs = np.concatenate([idv[None, :], rad]) if rad.size else idv[None, :]
            else:
                vecs = H.quot
            # express vecs in quotient coordinates; store the inverse change of basis
            if H.dim:
                coords = np.array([H.coords(v) for v in vecs], dtype=np.int64)
                change[(a, b)] = inverse(F, coords)
            else:
                vecs = []
                change[(a, b)] = np.zeros((0, 0), dtype=np.int64)
            reps[(a, b)] = [H.to_map(v) for v in vecs]
    const = {}
    for a in labels:
        for b in labels:
            for c in labels:
                xs, ys = reps[(a, b)], reps[(b, c)]
                H = fam.hom(a, c)
                T = np.zeros((len(xs), len(ys), H.dim), dtype=np.int64)
                for i, x in enumerate(xs):
                    for j, y in enumerate(ys):
                        comp = compose_maps(C, fam[a], fam[b], fam[c], x, y)
                        T[i, j] = F.matmul(H.coords(comp)[None, :], change[(a, c)])[0] if H.dim else 0
                const[(a, b, c)] = T
    dims = {k: len(v) for k, v in reps.items()}
    E = LinearCategory(F, labels, dims, const, None, name)
    E.__dict__["chain_reps"] = reps
    return E
