"""Per-q cache of simple modules, projectives and the Green correspondence."""
from __future__ import annotations

import functools

import numpy as np

from ..modkernel import (
    Ambient, ModuleError, Representation, direct_sum, fitting_split, hom_space, tensor,
    top_multiplicities,
)
from . import modules as _m
from .modules import (
    BlockSpec, block_by_name, borel_simple, induce_from_borel, simple_module, steinberg,
    torus_induced,
)


class SL2Context:
    """Everything about SL(2,q) and its Borel subgroup that the pipeline needs."""

    def __init__(self, q: int, sign: int | None = None):
        self.q = q
        self.sign = _m.BOREL_SIGN if sign is None else sign
        self.simples = {z: simple_module(q, z) for z in range(q)}
        self.group = Ambient(self.simples, self._projective)
        self.borel = Ambient({b: borel_simple(q, b, self.sign) for b in range(q - 1)},
                             lambda b: torus_induced(q, b, self.sign))
        self._block_amb: dict[str, Ambient] = {}

    @property
    def field(self):
        return self.simples[0].field

    def _projective(self, z: int) -> Representation:
        q = self.q
        if z == q - 1:
            return steinberg(q)
        src = tensor(steinberg(q), simple_module(q, q - 1 - z))
        want = {z: 1}
        for part in fitting_split(src, label=f"P{z}"):
            if dict(top_multiplicities(part.module, self.group)) == want:
                return part.module.with_tag(f"P{z}")
        raise ModuleError(f"no summand with top S{z} in St (x) S{q - 1 - z}")

    def projective(self, z: int) -> Representation:
        return self.group.projective(z)

    def block(self, name: str) -> BlockSpec:
        return block_by_name(self.q, name)

    def block_ambient(self, block: BlockSpec) -> Ambient:
        amb = self._block_amb.get(block.parity)
        if amb is None:
            amb = Ambient({z: self.simples[z] for z in block.labels}, self._projective)
            self._block_amb[block.parity] = amb
        return amb

    def block_projectives(self, block: BlockSpec) -> dict:
        return {z: self.projective(z) for z in block.labels}

    def borel_projectives(self, block: BlockSpec) -> dict:
        return {b: self.borel.projective(b) for b in block.labels}

    def is_projective_indecomposable(self, X: Representation) -> bool:
        """An indecomposable module with simple top S_z is projective iff dim X = dim P_z."""
        top = top_multiplicities(X, self.group)
        if sum(top.values()) != 1:
            return False
        (z,) = top
        return X.dim == self.projective(z).dim

    def green_nonprojective_part(self, M: Representation, expect_indecomposable: bool = True) -> Representation | None:
        """Discard the projective summands of M; None if nothing remains."""
        keep = [s.module for s in fitting_split(M, label="green")
                if not self.is_projective_indecomposable(s.module)]
        if not keep:
            return None
        if expect_indecomposable and len(keep) != 1:
            raise ModuleError(f"{M.tag}: {len(keep)} non-projective summands")
        return keep[0] if len(keep) == 1 else direct_sum(keep)

    @functools.cache
    def green_of_borel_simple(self, b: int) -> Representation:
        """T_b (x)_B M: the non-projective part of the induced module."""
        X = self.green_nonprojective_part(induce_from_borel(self.borel.simples[b]))
        if X is None:
            raise ModuleError(f"Ind(T{b}) is projective")
        return X.with_tag(f"T{b}(x)M")

    def __hash__(self):
        return hash((self.q, self.sign))


@functools.cache
def context(q: int, sign: int | None = None) -> SL2Context:
    return SL2Context(q, sign)


def pin_borel_convention(q: int = 9) -> int:
    """The sign for which Top(T_{q-2} (x) M) = S_{q-2}; -1 is tried first."""
    for s in (-1, 1):
        X = context(q, s).green_of_borel_simple(q - 2)
        if dict(top_multiplicities(X, context(q, s).group)) == {q - 2: 1}:
            return s
    raise ModuleError("neither Borel convention gives the expected top")
