"""Simple modules, blocks, induction and restriction, projectives."""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from ..exactla import GF, field_of_order
from ..exactla.linalg import coordinates, matpow
from ..modkernel import (
    Ambient, ModuleError, Representation, direct_sum, find_isomorphism, fitting_split,
    frobenius_twist, hom_space, sym_power, tensor, top_multiplicities,
)
from .groups import borel_group, induction_data, sl2_group, unipotent_basis

# The standard Borel acts on T_b through alpha^b where t = diag(alpha^-1, alpha);
# with t = diag(zeta, zeta^-1) that is zeta^(-b).  See pin_borel_convention.
BOREL_SIGN = -1


def digits(q: int, z: int) -> list[int]:
    F = field_of_order(q)
    out = []
    for _ in range(F.n):
        out.append(z % F.p)
        z //= F.p
    return out


def natural_module(q: int) -> Representation:
    G = sl2_group(q)
    return Representation(G.field, 2, G.generators, "V")


@functools.cache
def simple_module(q: int, z: int) -> Representation:
    """S_z as the tensor product of Frobenius twists of Sym^{z_i} V."""
    if not 0 <= z <= q - 1:
        raise ValueError(f"simple label {z} out of range for q={q}")
    V = natural_module(q)
    S = None
    for i, zi in enumerate(digits(q, z)):
        piece = frobenius_twist(sym_power(V, zi), i) if i else sym_power(V, zi)
        S = piece if S is None else tensor(S, piece)
    S = S.with_tag(f"S{z}")
    return S


def steinberg(q: int) -> Representation:
    return simple_module(q, q - 1)


@dataclass(frozen=True)
class BlockSpec:
    q: int
    parity: str          # "principal", "nonprincipal" or "merged"
    labels: tuple
    steinberg_excluded: bool = True

    def __contains__(self, z) -> bool:
        return z in self.labels


def block_of(q: int, z: int) -> BlockSpec:
    if z == q - 1:
        raise ValueError("the Steinberg module is a block of defect zero")
    if not 0 <= z < q - 1:
        raise ValueError(f"label {z} out of range for q={q}")
    if q % 2 == 0:
        return BlockSpec(q, "merged", tuple(range(q - 1)))
    return block_by_name(q, "principal" if z % 2 == 0 else "nonprincipal")


def block_by_name(q: int, name: str) -> BlockSpec:
    if q % 2 == 0:
        if name not in ("merged", "principal"):
            raise ValueError(f"q={q} has a single full-defect block")
        return BlockSpec(q, "merged", tuple(range(q - 1)))
    if name == "principal":
        return BlockSpec(q, "principal", tuple(range(0, q - 1, 2)))
    if name == "nonprincipal":
        return BlockSpec(q, "nonprincipal", tuple(range(1, q - 1, 2)))
    raise ValueError(f"unknown block {name!r}")


def blocks(q: int) -> list[BlockSpec]:
    if q % 2 == 0:
        return [block_by_name(q, "merged")]
    return [block_by_name(q, "principal"), block_by_name(q, "nonprincipal")]


# --- Borel side ------------------------------------------------------------------


def borel_simple(q: int, b: int, sign: int | None = None) -> Representation:
    """One-dimensional T_b: u trivial, t by zeta^(sign*b)."""
    F = field_of_order(q)
    s = BOREL_SIGN if sign is None else sign
    val = F.power(F.primitive, s * b)
    one = np.ones((1, 1), dtype=np.int64)
    return Representation(F, 1, [one, one * val], f"T{b % (q - 1)}")


def borel_element(T: Representation, h: np.ndarray) -> np.ndarray:
    """Matrix of an arbitrary Borel element h on a Borel module."""
    F = T.field
    q = F.q
    a, b = int(h[0, 0]), int(h[0, 1])
    if int(h[1, 0]) != 0:
        raise ModuleError("element is not upper triangular")
    ru, rt = T.generators
    rt_inv = _inverse_cached(T, 1)
    la = int(F.log[a])
    c = int(F.mul(F.inv(a), b))
    out = matpow(F, rt, la)
    if c:
        ms, basis = unipotent_basis(q)
        coeff = coordinates(field_of_order(F.p), basis, F.digits(np.array(c)).reshape(1, -1))[0]
        for m, k in zip(ms, coeff):
            if k:
                xm = F.matmul(F.matmul(matpow(F, rt_inv, m), ru), matpow(F, rt, m))
                out = F.matmul(out, matpow(F, xm, int(k)))
    return out


def _inverse_cached(T: Representation, k: int) -> np.ndarray:
    from ..exactla import inverse

    key = ("ginv", k)
    if key not in T._cache:
        T._cache[key] = inverse(T.field, T.generators[k])
    return T._cache[key]


def induce_from_borel(T: Representation, tag: str | None = None) -> Representation:
    """Induced module with basis v (x) r_i over the coset representatives."""
    F = T.field
    q = F.q
    data = induction_data(q)
    d = T.dim
    n = (q + 1) * d
    gens = []
    for perm, coc in zip(data.perms, data.cocycles):
        g = np.zeros((n, n), dtype=np.int64)
        for i, (j, h) in enumerate(zip(perm, coc)):
            g[i * d:(i + 1) * d, j * d:(j + 1) * d] = borel_element(T, h)
        gens.append(g)
    return Representation(F, n, gens, tag or f"Ind({T.tag})")


def restrict_to_borel(M: Representation, tag: str | None = None) -> Representation:
    if M.ngens != 3:
        raise ModuleError("not an SL(2,q)-module")
    return Representation(M.field, M.dim, M.generators[:2], tag or f"Res({M.tag})")


def torus_induced(q: int, b: int, sign: int | None = None) -> Representation:
    """Q_b: the torus character b induced to the Borel subgroup, basis x(c) for c in GF(q)."""
    F = field_of_order(q)
    s = BOREL_SIGN if sign is None else sign
    chi = F.power(F.primitive, s * b)
    u = np.zeros((q, q), dtype=np.int64)
    t = np.zeros((q, q), dtype=np.int64)
    shrink = F.power(F.primitive, -2)
    for c in range(q):
        u[c, int(F.add(c, 1))] = 1
        t[c, int(F.mul(shrink, c))] = chi
    return Representation(F, q, [u, t], f"Q{b % (q - 1)}")


def cartan_borel(q: int, block: BlockSpec, sign: int | None = None) -> np.ndarray:
    Q = {b: torus_induced(q, b, sign) for b in block.labels}
    return np.array([[hom_space(Q[a], Q[b]).dim for b in block.labels] for a in block.labels],
                    dtype=np.int64)
