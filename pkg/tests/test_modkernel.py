from collections import Counter

import numpy as np
import pytest

from perverse_sl2.exactla import ShapeError, field_of_order
from perverse_sl2.modkernel import (
    ModuleError, Representation, UndecidedIsomorphism, composition_factors, direct_sum, dual,
    dump_representation, ext1_dim, find_isomorphism, fitting_split, hom_space, hom_space_kron,
    is_hom, is_indecomposable, is_isomorphic, load_representation, loewy_layers, multiplicity,
    projective_cover, quotient, rng_for, set_global_seed, socle_layers, stable_hom_dim,
    submodule, submodule_generated, syzygy, tensor,
)
from perverse_sl2.sl2data import simple_module

from conftest import SEEDS


def _random_module(ctx, seed):
    """A random submodule or quotient of a projective, with a seeded choice."""
    rng = np.random.default_rng(seed)
    z = int(rng.integers(0, ctx.q))
    P = ctx.projective(z)
    v = ctx.field.random(rng, (int(rng.integers(1, 3)), P.dim))
    U = submodule_generated(P, v)
    return U.module if rng.integers(0, 2) else quotient(P, U).module


def test_hom_space_matches_kronecker_oracle(ctx4):
    mods = [ctx4.simples[1], ctx4.projective(1), tensor(ctx4.simples[1], ctx4.simples[2])]
    for M in mods:
        for N in mods:
            a, b = hom_space(M, N), hom_space_kron(M, N)
            assert a.dim == b.dim
            assert np.array_equal(a.basis, b.basis)
            for X in a.basis:
                assert is_hom(M, N, X)


@pytest.mark.parametrize("seed", SEEDS)
def test_hom_multiplicity_pairing(ctx4, seed):
    M = _random_module(ctx4, seed)
    counts = composition_factors(M, ctx4.group)
    for z in range(4):
        assert multiplicity(M, z, ctx4.group) == counts[z]
    assert sum(counts[z] * ctx4.simples[z].dim for z in counts) == M.dim


def test_q4_loewy_series(ctx4):
    layers = {z: loewy_layers(ctx4.projective(z), ctx4.group).labels() for z in range(3)}
    assert layers[0] == [[0], [1, 2], [0, 0], [1, 2], [0]]
    assert layers[1] == [[1], [0], [2], [0], [1]]
    assert layers[2] == [[2], [0], [1], [0], [2]]
    assert socle_layers(ctx4.projective(1), ctx4.group).labels() == [[1], [0], [2], [0], [1]]


def test_q4_ext_and_syzygy(ctx4):
    k, V = ctx4.simples[0], ctx4.simples[1]
    assert ext1_dim(k, k, ctx4.group) == 0
    assert ext1_dim(k, V, ctx4.group) == 1
    assert syzygy(k, ctx4.group).dim == 11
    assert stable_hom_dim(ctx4.projective(0), k, ctx4.group) == 0


def test_projective_cover_is_minimal(ctx4):
    M = direct_sum([ctx4.simples[1], ctx4.simples[2], ctx4.simples[1]])
    pc = projective_cover(M, ctx4.group)
    assert sorted(pc.labels) == [1, 1, 2]
    assert pc.module.dim == 8 * 3


@pytest.mark.parametrize("seed", SEEDS)
def test_fitting_split_recovers_summands(ctx4, seed):
    set_global_seed(seed)
    parts = [ctx4.simples[1], ctx4.projective(2), ctx4.simples[0]]
    M = direct_sum(parts)
    pieces = fitting_split(M)
    assert sorted(s.module.dim for s in pieces) == [1, 2, 8]
    for s in pieces:
        assert is_indecomposable(s.module)
        assert any(is_isomorphic(s.module, P) for P in parts)


def test_isomorphism_witness(ctx4):
    S = ctx4.simples[1]
    rng = rng_for("iso-test")
    F = S.field
    while True:
        g = F.random(rng, (2, 2))
        if F.sub(F.mul(g[0, 0], g[1, 1]), F.mul(g[0, 1], g[1, 0])):
            break
    from perverse_sl2.exactla import inverse
    gi = inverse(F, g)
    T = Representation(F, 2, [F.matmul(F.matmul(gi, x), g) for x in S.generators])
    X = find_isomorphism(S, T)
    assert X is not None and is_hom(S, T, X)
    assert find_isomorphism(S, ctx4.simples[2]) is None


def test_tensor_dual_and_submodule_checks():
    S = simple_module(9, 1)
    assert tensor(S, S).dim == 4
    assert is_isomorphic(dual(S), S)
    with pytest.raises(ModuleError):
        submodule(S, np.array([[1, 0]]))


def test_representation_serialization_round_trip(ctx4):
    M = ctx4.projective(1)
    buf = dump_representation(M)
    N, end = load_representation(buf)
    assert end == len(buf)
    assert N.fingerprint() == M.fingerprint()
    assert dump_representation(N) == buf


def test_undecided_is_a_module_error():
    assert issubclass(UndecidedIsomorphism, ModuleError)
    F = field_of_order(3)
    with pytest.raises(ShapeError):
        Representation(F, 2, [np.eye(3)])
    with pytest.raises(ModuleError):
        Representation(F, 1, [np.eye(1)], kind="ring")
