"""Hom spaces between representations.

The main routine spins the source module from a few seed vectors.  A
homomorphism is then fixed by the images of the seeds, and every
dependent product ``b_j g`` gives linear constraints on those images.  The
system has (#seeds * dim N) unknowns instead of dim M * dim N.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactla import GF, echelon_basis, inverse, kernel_basis, kron, rref
from .rep import ModuleError, Representation, _compatible, rng_for

_CHUNK = 384


class _Echelon:
    """Incrementally maintained reduced echelon basis."""

    def __init__(self, F: GF, dim: int):
        self.F = F
        self.E = np.zeros((dim, dim), dtype=np.int64)
        self.piv: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.piv)

    def reduce(self, w: np.ndarray) -> np.ndarray:
        r = self.rank
        if r == 0:
            return w.copy()
        F = self.F
        return F.sub(w, F.matmul(w[self.piv][None, :], self.E[:r])[0])

    def add(self, w: np.ndarray) -> bool:
        """Insert w; return whether it was new."""
        F = self.F
        w = self.reduce(w)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = F.mul(w, int(F.inv(w[c])))
        r = self.rank
        if r:
            col = self.E[:r, c].copy()
            self.E[:r] = F.sub(self.E[:r], F.mul(col[:, None], w[None, :]))
        self.E[r] = w
        self.piv.append(c)
        return True


@dataclass
class Spin:
    basis: np.ndarray          # dim x dim, spin order
    basis_inv: np.ndarray
    seed_of: np.ndarray        # seed index for each basis vector
    parent: np.ndarray         # parent index, -1 for seeds
    gen: np.ndarray            # generator used to reach it, -1 for seeds
    seeds: int
    rel_src: np.ndarray        # relation r: b[rel_src[r]] @ g[rel_gen[r]] ...
    rel_gen: np.ndarray
    rel_coeff: np.ndarray      # ... equals rel_coeff[r] @ basis


def spin(M: Representation) -> Spin:
    """Spin basis of M (cached on the module)."""
    cached = M._cache.get("spin")
    if cached is not None:
        return cached
    F, d = M.field, M.dim
    ech = _Echelon(F, d)
    vecs: list[np.ndarray] = []
    seed_of, parent, gen = [], [], []
    made = set()
    rng = rng_for("spin", M.fingerprint())
    nseeds = 0
    misses = 0
    std = 0
    head = 0
    while ech.rank < d:
        if misses < 8:
            v = F.random(rng, d)
        else:
            while std < d and not np.any(ech.reduce(np.eye(d, dtype=np.int64)[std])):
                std += 1
            v = np.eye(d, dtype=np.int64)[std]
        if not ech.add(v):
            misses += 1
            continue
        vecs.append(v)
        seed_of.append(nseeds)
        parent.append(-1)
        gen.append(-1)
        nseeds += 1
        while head < len(vecs):
            b = vecs[head]
            for k, g in enumerate(M.generators):
                w = F.matmul(b[None, :], g)[0]
                if ech.add(w):
                    vecs.append(w)
                    seed_of.append(seed_of[head])
                    parent.append(head)
                    gen.append(k)
                    made.add((head, k))
            head += 1
    B = np.array(vecs, dtype=np.int64).reshape(d, d)
    Binv = inverse(F, B) if d else B
    rel = [(j, k) for j in range(d) for k in range(M.ngens) if (j, k) not in made]
    rel_src = np.array([j for j, _ in rel], dtype=np.int64)
    rel_gen = np.array([k for _, k in rel], dtype=np.int64)
    coeff = np.zeros((len(rel), d), dtype=np.int64)
    for k, g in enumerate(M.generators):
        idx = np.flatnonzero(rel_gen == k)
        if idx.size:
            prod = F.matmul(B[rel_src[idx]], g)
            coeff[idx] = F.matmul(prod, Binv)
    s = Spin(B, Binv, np.array(seed_of, dtype=np.int64), np.array(parent, dtype=np.int64),
             np.array(gen, dtype=np.int64), nseeds, rel_src, rel_gen, coeff)
    M._cache["spin"] = s
    return s


def spin_span(M: Representation, vectors) -> tuple[np.ndarray, tuple]:
    """Echelon basis and pivots of the submodule generated by some vectors."""
    F, d = M.field, M.dim
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, d)
    ech = _Echelon(F, d)
    todo = []
    for v in vectors:
        if ech.add(v):
            todo.append(v)
    while todo:
        b = todo.pop()
        for g in M.generators:
            w = F.matmul(b[None, :], g)[0]
            if ech.add(w):
                todo.append(w)
    if ech.rank == 0:
        return np.zeros((0, d), dtype=np.int64), ()
    R, r, piv = rref(F, ech.E[:ech.rank])
    return R[:r], piv


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    basis: np.ndarray  # (d, dim source, dim target)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.basis.shape[0]

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def combination(self, coeffs) -> np.ndarray:
        F = self.source.field
        c = np.asarray(coeffs, dtype=np.int64).reshape(1, -1)
        flat = self.basis.reshape(self.dim, -1)
        return F.matmul(c, flat).reshape(self.basis.shape[1:])


def canonical_basis(F: GF, mats, m: int, n: int) -> np.ndarray:
    mats = np.asarray(mats, dtype=np.int64).reshape(-1, m * n)
    if mats.shape[0] == 0 or m * n == 0:
        return np.zeros((0, m, n), dtype=np.int64)
    E = echelon_basis(F, mats)
    return E.reshape(-1, m, n)


def _solve_chunked(F: GF, C: np.ndarray) -> np.ndarray:
    """Basis of the left kernel of C, processing column chunks."""
    Sol = np.eye(C.shape[0], dtype=np.int64)
    for start in range(0, C.shape[1], _CHUNK):
        A = F.matmul(Sol, C[:, start:start + _CHUNK])
        if not np.any(A):
            continue
        K = kernel_basis(F, A)
        if K.shape[0] == 0:
            return np.zeros((0, C.shape[0]), dtype=np.int64)
        Sol = F.matmul(K, Sol)
    return Sol


def hom_space(M: Representation, N: Representation) -> HomBasis:
    """All X with g_M X = X g_N for every generator, in canonical order."""
    _compatible(M, N)
    F, m, n = M.field, M.dim, N.dim
    if m == 0 or n == 0:
        return HomBasis(M, N, np.zeros((0, m, n), dtype=np.int64))
    key = ("hom", N.fingerprint())
    hit = M._cache.get(key)
    if hit is not None:
        return HomBasis(M, N, hit)
    sp = spin(M)
    s = sp.seeds
    R = np.zeros((m, n, n), dtype=np.int64)
    for j in range(m):
        if sp.parent[j] < 0:
            R[j] = np.eye(n, dtype=np.int64)
        else:
            R[j] = F.matmul(R[sp.parent[j]], N.generators[sp.gen[j]])
    nrel = sp.rel_src.shape[0]
    if nrel:
        T1 = np.zeros((nrel, n, n), dtype=np.int64)
        for k, g in enumerate(N.generators):
            idx = np.flatnonzero(sp.rel_gen == k)
            if idx.size:
                T1[idx] = F.matmul(R[sp.rel_src[idx]], g)
        blocks = []
        for i in range(s):
            mask = np.flatnonzero(sp.seed_of == i)
            T2 = F.matmul(sp.rel_coeff[:, mask], R[mask].reshape(mask.size, n * n)).reshape(nrel, n, n)
            own = (sp.seed_of[sp.rel_src] == i)
            blk = F.sub(np.where(own[:, None, None], T1, 0), T2)
            blocks.append(blk.transpose(1, 0, 2).reshape(n, nrel * n))
        C = np.concatenate(blocks, axis=0)
        Sol = _solve_chunked(F, C)
    else:
        Sol = np.eye(s * n, dtype=np.int64)
    d = Sol.shape[0]
    if d == 0:
        basis = np.zeros((0, m, n), dtype=np.int64)
    else:
        U = Sol.reshape(d, s, n)
        Img = np.zeros((d, m, n), dtype=np.int64)
        for j in range(m):
            Img[:, j, :] = F.matmul(U[:, sp.seed_of[j], :], R[j])
        X = F.matmul(sp.basis_inv, Img)
        basis = canonical_basis(F, X, m, n)
    basis.setflags(write=False)
    if len(M._cache) < 256:
        M._cache[key] = basis
    return HomBasis(M, N, basis)


def hom_space_kron(M: Representation, N: Representation) -> HomBasis:
    """Reference solver: the full Kronecker system in m*n unknowns."""
    _compatible(M, N)
    F, m, n = M.field, M.dim, N.dim
    if m == 0 or n == 0:
        return HomBasis(M, N, np.zeros((0, m, n), dtype=np.int64))
    Im, In = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)
    cols = [F.sub(kron(F, a.T, In), kron(F, Im, b)) for a, b in zip(M.generators, N.generators)]
    K = kernel_basis(F, np.concatenate(cols, axis=1))
    return HomBasis(M, N, canonical_basis(F, K, m, n))


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_space(M, N).dim


def is_hom(M: Representation, N: Representation, X) -> bool:
    F = M.field
    X = np.asarray(X, dtype=np.int64)
    return all(np.array_equal(F.matmul(a, X), F.matmul(X, b)) for a, b in zip(M.generators, N.generators))
