"""SL(2,q), its Borel subgroup, and the coset data used for induction."""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from ..exactla import GF, field_of_order, inverse, rank

Mat2 = tuple  # ((a, b), (c, d)) of field codes


def _m(F: GF, a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64).reshape(2, 2)


def _key(A: np.ndarray) -> Mat2:
    return tuple(map(tuple, A.tolist()))


def _point_of_line(F: GF, row) -> tuple[int, int]:
    """Normalized projective coordinates [x:1] or [1:0] of a nonzero row."""
    a, b = int(row[0]), int(row[1])
    if b == 0:
        return (1, 0)
    return (int(F.div(a, b)), 1)


@dataclass(frozen=True)
class GroupSpec:
    field: GF
    kind: str                     # "SL2" or "Borel"
    generators: tuple             # 2x2 matrices
    generator_names: tuple

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        q = self.q
        return q * (q * q - 1) if self.kind == "SL2" else q * (q - 1)


def sl2_generators(F: GF) -> list[np.ndarray]:
    z = F.primitive
    u = _m(F, [[1, 1], [0, 1]])
    t = _m(F, [[z, 0], [0, int(F.inv(z))]])
    w = _m(F, [[0, 1], [int(F.neg(1)), 0]])
    return [u, t, w]


@functools.cache
def sl2_group(q: int) -> GroupSpec:
    F = field_of_order(q)
    gens = tuple(sl2_generators(F))
    G = GroupSpec(F, "SL2", gens, ("u", "t", "w"))
    _check_generation(G)
    return G


@functools.cache
def borel_group(q: int) -> GroupSpec:
    F = field_of_order(q)
    u, t, _ = sl2_generators(F)
    return GroupSpec(F, "Borel", (u, t), ("u", "t"))


def _check_generation(G: GroupSpec) -> None:
    """The generators must act transitively on the q+1 points of the projective line."""
    F = G.field
    seen = {(1, 0)}
    todo = [(1, 0)]
    while todo:
        pt = todo.pop()
        for g in G.generators:
            img = _point_of_line(F, F.matmul(np.array([pt]), g)[0])
            if img not in seen:
                seen.add(img)
                todo.append(img)
    if len(seen) != G.q + 1:
        raise RuntimeError("generators do not act transitively on the projective line")
    for g in G.generators:
        det = F.sub(F.mul(g[0, 0], g[1, 1]), F.mul(g[0, 1], g[1, 0]))
        if int(det) != 1:
            raise RuntimeError("generator not of determinant 1")


@functools.cache
def coset_representatives(q: int) -> tuple:
    """Representatives of the right cosets H\\G, indexed by the projective line.

    The coset H r corresponds to the line spanned by the second row of r:
    first [1:0], then [x:1] for x = 0, 1, ..., q-1 in code order.
    """
    F = field_of_order(q)
    reps = [_m(F, [[0, int(F.neg(1))], [1, 0]])]
    for x in range(q):
        reps.append(_m(F, [[1, 0], [x, 1]]))
    return tuple(reps)


def coset_index(q: int, g: np.ndarray) -> int:
    F = field_of_order(q)
    pt = _point_of_line(F, g[1])
    return 0 if pt == (1, 0) else 1 + pt[0]


@dataclass(frozen=True)
class InductionData:
    """For each group generator: the permutation of cosets and the Borel cocycle."""
    perms: tuple      # perms[k][i] = j with r_i g_k in H r_j
    cocycles: tuple   # cocycles[k][i] = r_i g_k r_j^-1 in H


@functools.cache
def induction_data(q: int) -> InductionData:
    F = field_of_order(q)
    G = sl2_group(q)
    reps = coset_representatives(q)
    inv = [inverse(F, r) for r in reps]
    perms, cocs = [], []
    for g in G.generators:
        pk, ck = [], []
        for r in reps:
            rg = F.matmul(r, g)
            j = coset_index(q, rg)
            h = F.matmul(rg, inv[j])
            assert int(h[1, 0]) == 0, "cocycle not in the Borel subgroup"
            pk.append(j)
            ck.append(h)
        perms.append(tuple(pk))
        cocs.append(tuple(ck))
    return InductionData(tuple(perms), tuple(cocs))


@functools.cache
def unipotent_basis(q: int) -> tuple:
    """Exponents m_k with x(zeta^(-2 m_k)) forming a GF(p)-basis of the unipotent radical.

    Here x(c) = [[1, c], [0, 1]] and t^-m u t^m = x(zeta^(-2m)).
    """
    F = field_of_order(q)
    zeta = F.primitive
    ms, vecs = [], []
    m = 0
    while len(ms) < F.n:
        c = F.power(zeta, -2 * m)
        d = F.digits(np.array(c)).reshape(-1)
        trial = vecs + [d]
        if rank(field_of_order(F.p), np.array(trial)) == len(trial):
            ms.append(m)
            vecs.append(d)
        m += 1
        if m > q:
            raise RuntimeError("squares of the primitive root do not span the field")
    return tuple(ms), np.array(vecs, dtype=np.int64)
