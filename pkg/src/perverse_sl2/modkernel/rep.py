"""Matrix representations and the constructions on them.

A :class:`Representation` stores one matrix per abstract generator.  Vectors
are rows and act on the right, ``v -> v @ g``.  Group modules have
invertible generators; algebra modules (``kind="algebra"``) carry one
matrix per basis element of the acting algebra and need not be invertible.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from ..exactla import GF, ShapeError, inverse, is_invertible, kron
from ..exactla.linalg import complement_columns, reduce_mod

_GLOBAL_SEED = 0


def set_global_seed(seed: int) -> None:
    global _GLOBAL_SEED
    _GLOBAL_SEED = int(seed)


def get_global_seed() -> int:
    return _GLOBAL_SEED


def rng_for(*keys) -> np.random.Generator:
    """Generator seeded by the global seed and a canonical call fingerprint."""
    h = hashlib.blake2b(repr((_GLOBAL_SEED,) + keys).encode(), digest_size=8)
    return np.random.default_rng(int.from_bytes(h.digest(), "little"))


class ModuleError(ValueError):
    pass


@dataclass(eq=False)
class Representation:
    field: GF
    dim: int
    generators: tuple
    tag: str | None = None
    kind: str = "group"
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens = tuple(np.ascontiguousarray(np.asarray(g, dtype=np.int64)) for g in self.generators)
        for g in gens:
            if g.shape != (self.dim, self.dim):
                raise ShapeError(f"generator of shape {g.shape} for dim {self.dim}")
            g.setflags(write=False)
        self.generators = gens
        if self.kind not in ("group", "algebra"):
            raise ModuleError(f"unknown kind {self.kind!r}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def check(self) -> None:
        if self.kind == "group":
            for g in self.generators:
                if not is_invertible(self.field, g):
                    raise ModuleError("group generator is not invertible")

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=12)
        h.update(repr((self.field.p, self.field.n, self.dim, self.ngens, self.kind)).encode())
        for g in self.generators:
            h.update(g.tobytes())
        return h.hexdigest()

    def with_tag(self, tag: str | None) -> "Representation":
        return Representation(self.field, self.dim, self.generators, tag, self.kind)

    def act(self, v: np.ndarray, k: int) -> np.ndarray:
        return self.field.matmul(v, self.generators[k])

    def __repr__(self) -> str:
        return f"Representation({self.tag or '?'}, dim={self.dim}, {self.field!r})"


def _compatible(M: Representation, N: Representation) -> None:
    if M.field is not N.field:
        raise ModuleError("modules over different fields")
    if M.ngens != N.ngens:
        raise ModuleError("modules for different generator sets")
    if M.kind != N.kind:
        raise ModuleError("group and algebra modules mixed")


def zero_module(like: Representation) -> Representation:
    z = np.zeros((0, 0), dtype=np.int64)
    return Representation(like.field, 0, [z] * like.ngens, "0", like.kind)


def trivial_module(F: GF, ngens: int, tag: str = "k") -> Representation:
    return Representation(F, 1, [np.ones((1, 1), dtype=np.int64)] * ngens, tag)


def direct_sum(mods: Sequence[Representation], tag: str | None = None) -> Representation:
    if not mods:
        raise ModuleError("empty direct sum")
    M0 = mods[0]
    for M in mods[1:]:
        _compatible(M0, M)
    dim = sum(M.dim for M in mods)
    gens = []
    for k in range(M0.ngens):
        g = np.zeros((dim, dim), dtype=np.int64)
        o = 0
        for M in mods:
            g[o:o + M.dim, o:o + M.dim] = M.generators[k]
            o += M.dim
        gens.append(g)
    if tag is None:
        tag = " (+) ".join(M.tag or "?" for M in mods)
    return Representation(M0.field, dim, gens, tag, M0.kind)


def tensor(M: Representation, N: Representation, tag: str | None = None) -> Representation:
    _compatible(M, N)
    if M.kind != "group":
        raise ModuleError("tensor products are defined for group modules only")
    F = M.field
    gens = [kron(F, a, b) for a, b in zip(M.generators, N.generators)]
    return Representation(F, M.dim * N.dim, gens, tag or f"{M.tag}*{N.tag}")


def dual(M: Representation, tag: str | None = None) -> Representation:
    if M.kind != "group":
        raise ModuleError("dual needs invertible generators")
    F = M.field
    gens = [inverse(F, g).T.copy() for g in M.generators]
    return Representation(F, M.dim, gens, tag or f"{M.tag}^*")


def opposite(M: Representation, tag: str | None = None) -> Representation:
    """Transpose of the action: for a group, g acts by (g^-1)^T; for an algebra, by x^T.

    For an algebra this is a module over the opposite algebra, with the
    generator list unchanged.
    """
    if M.kind == "group":
        return dual(M, tag or f"{M.tag}^op")
    gens = [g.T.copy() for g in M.generators]
    return Representation(M.field, M.dim, gens, tag or f"{M.tag}^op", "algebra")


def frobenius_twist(M: Representation, m: int = 1, tag: str | None = None) -> Representation:
    F = M.field
    gens = [F.frobenius(g, m) for g in M.generators]
    return Representation(F, M.dim, gens, tag or f"{M.tag}^({m})", M.kind)


def monomials(d: int, r: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree r in d variables, lexicographically increasing."""
    return sorted(e for e in itertools.product(range(r + 1), repeat=d) if sum(e) == r)


def _sym_matrix(F: GF, g: np.ndarray, r: int, basis: list[tuple[int, ...]]) -> np.ndarray:
    d = g.shape[0]
    index = {e: i for i, e in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for row, e in enumerate(basis):
        # product over variables of (sum_j g[i, j] x_j) ** e_i
        poly = {(0,) * d: 1}
        for i in range(d):
            for _ in range(e[i]):
                nxt: dict[tuple[int, ...], int] = {}
                for mono, c in poly.items():
                    for j in range(d):
                        a = int(g[i, j])
                        if a == 0:
                            continue
                        m2 = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                        nxt[m2] = int(F.add(nxt.get(m2, 0), F.mul(c, a)))
                poly = nxt
        for mono, c in poly.items():
            out[row, index[mono]] = c
    return out


def sym_power(M: Representation, r: int, tag: str | None = None) -> Representation:
    if r < 0:
        raise ModuleError("negative symmetric power")
    basis = monomials(M.dim, r)
    gens = [_sym_matrix(M.field, g, r, basis) for g in M.generators]
    return Representation(M.field, len(basis), gens, tag or f"Sym^{r}({M.tag})", M.kind)


# --- subspaces, submodules, quotients ------------------------------------------


@dataclass
class Submodule:
    """A submodule given by an echelon basis of rows, with its own action."""
    ambient: Representation
    basis: np.ndarray
    pivots: tuple
    module: Representation

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _is_invariant(M: Representation, E: np.ndarray, pivots) -> bool:
    F = M.field
    for g in M.generators:
        if np.any(reduce_mod(F, E, pivots, F.matmul(E, g))):
            return False
    return True


def submodule(M: Representation, rows, tag: str | None = None, check: bool = True) -> Submodule:
    """Submodule with the given spanning rows (must already be invariant)."""
    from ..exactla import rref

    F = M.field
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, M.dim)
    R, r, piv = rref(F, rows) if rows.shape[0] else (rows, 0, ())
    E = R[:r]
    if check and not _is_invariant(M, E, piv):
        raise ModuleError("subspace is not a submodule")
    gens = [F.matmul(E, g)[:, list(piv)] for g in M.generators]
    sub = Representation(F, r, gens, tag, M.kind)
    return Submodule(M, E, tuple(piv), sub)


def submodule_generated(M: Representation, vectors, tag: str | None = None) -> Submodule:
    """Smallest submodule containing the given vectors."""
    from .homs import spin_span

    E, piv = spin_span(M, vectors)
    return submodule(M, E, tag, check=False)


@dataclass
class Quotient:
    """M / U with basis the images of the standard vectors off the pivots of U."""
    ambient: Representation
    kernel: np.ndarray
    pivots: tuple
    columns: list
    module: Representation
    projection: np.ndarray  # dim M x dim quotient


def quotient(M: Representation, U, tag: str | None = None) -> Quotient:
    F = M.field
    if isinstance(U, Submodule):
        E, piv = U.basis, U.pivots
    else:
        from ..exactla import rref

        U = np.asarray(U, dtype=np.int64).reshape(-1, M.dim)
        R, r, piv = rref(F, U) if U.shape[0] else (U, 0, ())
        E = R[:r]
    cols = complement_columns(M.dim, piv)
    proj = reduce_mod(F, E, piv, np.eye(M.dim, dtype=np.int64))[:, cols]
    gens = [reduce_mod(F, E, piv, g[cols])[:, cols] for g in M.generators]
    Q = Representation(F, len(cols), gens, tag, M.kind)
    return Quotient(M, E, tuple(piv), cols, Q, proj)
