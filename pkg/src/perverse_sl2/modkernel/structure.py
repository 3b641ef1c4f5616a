"""Radical and socle series, multiplicities, projective covers and syzygies.

Everything is relative to an :class:`Ambient`: the simple modules of the
block (and, for covers, its indecomposable projectives).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Callable, Hashable, Mapping

import numpy as np

from ..exactla import echelon_basis, kernel_basis, rank
from .homs import hom_space
from .rep import ModuleError, Representation, Submodule, direct_sum, quotient, submodule


@dataclass
class Ambient:
    """Simple modules of a block, and optionally its projectives.

    ``projectives`` may be a mapping or a callable ``label -> module`` so that
    projectives are only built when needed.
    """
    simples: Mapping[Hashable, Representation]
    projectives: Mapping[Hashable, Representation] | Callable | None = None
    _proj_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def labels(self) -> list:
        return list(self.simples)

    def projective(self, z) -> Representation:
        if z not in self.simples:
            raise ModuleError(f"unknown label {z!r}")
        if self.projectives is None:
            raise ModuleError("projectives are not available for this block")
        if callable(self.projectives):
            if z not in self._proj_cache:
                self._proj_cache[z] = self.projectives(z)
            return self._proj_cache[z]
        return self.projectives[z]


@dataclass
class SubmoduleChain:
    module: Representation
    layers: list            # list of Counter label -> multiplicity
    top_first: bool = True

    def labels(self) -> list[list]:
        return [sorted(c.elements(), key=repr) for c in self.layers]


def top_multiplicities(M: Representation, amb: Ambient) -> Counter:
    c = Counter()
    for z, S in amb.simples.items():
        d = hom_space(M, S).dim
        if d:
            c[z] = d
    return c


def socle_multiplicities(M: Representation, amb: Ambient) -> Counter:
    c = Counter()
    for z, S in amb.simples.items():
        d = hom_space(S, M).dim
        if d:
            c[z] = d
    return c


def radical(M: Representation, amb: Ambient) -> Submodule:
    """Common kernel of all homomorphisms to simple modules."""
    F = M.field
    cols = [np.concatenate(list(hom_space(M, S).basis), axis=1)
            for S in amb.simples.values() if hom_space(M, S).dim]
    if not cols or M.dim == 0:
        return submodule(M, np.eye(M.dim, dtype=np.int64), check=False)
    H = np.concatenate(cols, axis=1)
    K = kernel_basis(F, H)
    return submodule(M, K.reshape(-1, M.dim), check=False)


def socle(M: Representation, amb: Ambient) -> Submodule:
    """Sum of the images of all homomorphisms from simple modules."""
    rows = [X for S in amb.simples.values() for X in hom_space(S, M).basis]
    if not rows:
        return submodule(M, np.zeros((0, M.dim), dtype=np.int64), check=False)
    return submodule(M, np.concatenate(rows, axis=0), check=False)


def _check_complete(M: Representation, amb: Ambient, layer: Counter, dim_layer: int) -> None:
    got = sum(amb.simples[z].dim * m for z, m in layer.items())
    if got != dim_layer:
        raise ModuleError("simple list of the block is incomplete for this module")


def loewy_layers(M: Representation, amb: Ambient) -> SubmoduleChain:
    """Radical layers, top first."""
    layers = []
    cur = M
    while cur.dim:
        rad = radical(cur, amb)
        top = top_multiplicities(cur, amb)
        _check_complete(cur, amb, top, cur.dim - rad.dim)
        layers.append(top)
        cur = rad.module
    return SubmoduleChain(M, layers, True)


def socle_layers(M: Representation, amb: Ambient) -> SubmoduleChain:
    """Socle layers, socle first."""
    layers = []
    cur = M
    while cur.dim:
        soc = socle(cur, amb)
        c = socle_multiplicities(cur, amb)
        _check_complete(cur, amb, c, soc.dim)
        layers.append(c)
        cur = quotient(cur, soc).module
    return SubmoduleChain(M, layers, False)


def composition_factors(M: Representation, amb: Ambient) -> Counter:
    total = Counter()
    for layer in loewy_layers(M, amb).layers:
        total.update(layer)
    return total


def multiplicity(M: Representation, z, amb: Ambient) -> int:
    """Number of composition factors isomorphic to S_z, as dim Hom(P_z, M)."""
    return hom_space(amb.projective(z), M).dim


@dataclass
class ProjectiveCover:
    module: Representation       # the projective P
    cover: np.ndarray            # dim P x dim M, surjective hom
    labels: list                 # summand labels in order
    offsets: list                # start row of each summand


def projective_cover(M: Representation, amb: Ambient) -> ProjectiveCover:
    F = M.field
    if M.dim == 0:
        return ProjectiveCover(M, np.zeros((0, 0), dtype=np.int64), [], [])
    rad = radical(M, amb)
    Q = quotient(M, rad)
    chosen, labels = [], []
    image = np.zeros((0, Q.module.dim), dtype=np.int64)
    for z, S in amb.simples.items():
        need = hom_space(M, S).dim
        if not need:
            continue
        P = amb.projective(z)
        got = 0
        for X in hom_space(P, M).basis:
            img = F.matmul(X, Q.projection)
            trial = np.concatenate([image, img], axis=0)
            if rank(F, trial) == image.shape[0] + S.dim:
                image = echelon_basis(F, trial)
                chosen.append((P, X))
                labels.append(z)
                got += 1
                if got == need:
                    break
        if got != need:
            raise ModuleError(f"could not cover the top of {M.tag} at label {z!r}")
    if image.shape[0] != Q.module.dim:
        raise ModuleError("top of module not covered; simple list incomplete")
    Pmod = direct_sum([P for P, _ in chosen], tag=" (+) ".join(f"P{z}" for z in labels))
    cover = np.concatenate([X for _, X in chosen], axis=0)
    offs = list(np.cumsum([0] + [P.dim for P, _ in chosen[:-1]]))
    if rank(F, cover) != M.dim:
        raise ModuleError("projective cover is not surjective")
    return ProjectiveCover(Pmod, cover, labels, [int(o) for o in offs])


def syzygy(M: Representation, amb: Ambient) -> Submodule:
    """Kernel of the projective cover, as a submodule of the cover."""
    pc = projective_cover(M, amb)
    if pc.module.dim == 0:
        return submodule(M, np.zeros((0, 0), dtype=np.int64), check=False)
    K = kernel_basis(M.field, pc.cover).reshape(-1, pc.module.dim)
    sub = submodule(pc.module, K, tag=f"Omega({M.tag})", check=False)
    return sub


def stable_hom_dim(M: Representation, N: Representation, amb: Ambient) -> int:
    """dim Hom(M, N) minus the maps factoring through the projective cover of N."""
    F = M.field
    H = hom_space(M, N)
    if H.dim == 0:
        return 0
    pc = projective_cover(N, amb)
    G = hom_space(M, pc.module)
    if G.dim == 0:
        return H.dim
    through = F.matmul(G.basis, pc.cover).reshape(G.dim, -1)
    return H.dim - rank(F, through)


def ext1_dim(M: Representation, N: Representation, amb: Ambient) -> int:
    """dim Ext^1(M, N), as stable Hom(Omega M, N) (valid for self-injective algebras)."""
    return stable_hom_dim(syzygy(M, amb).module, N, amb)
