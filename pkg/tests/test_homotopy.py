import numpy as np
import pytest

from perverse_sl2.homotopy import (
    block_category, cone, direct_shape_tilt, direct_sum, end_algebra, families_isomorphic,
    hom_k, hom_k_dim, identity_map, is_minimal, lower_at_complement, minimize, notation, shift,
    simply_alternating_tilt, stalk, stalk_family, verify_tilting,
)
from perverse_sl2.modkernel import rng_for, set_global_seed
from perverse_sl2.sl2data import block_by_name, cartan_borel, context

from conftest import SEEDS, pipeline_for

CASES = [(4, "merged"), (9, "principal"), (9, "nonprincipal")]


@pytest.mark.parametrize("q,name", CASES)
def test_block_category_is_associative(q, name):
    C = block_category(context(q), block_by_name(q, name))
    assert C.check_associative()


def test_q4_block_category_cartan(ctx4):
    C = block_category(ctx4, block_by_name(4, "merged"))
    # P_k has composition length 6 (k four times), P_V and P_W length 5
    assert C.cartan().tolist() == [[4, 2, 2], [2, 2, 1], [2, 1, 2]]


def test_cone_of_identity_is_contractible(pipe9n):
    _, res = pipe9n
    X = res.final[5]
    Z = cone(X, X, identity_map(X))
    assert minimize(Z).is_zero
    for Y in res.final.members.values():
        assert hom_k_dim(Z, Y) == 0


def test_shift_conventions(pipe9p):
    _, res = pipe9p
    X, Y = res.final[0], res.final[4]
    for s in (-2, -1, 1, 2):
        assert hom_k_dim(X, Y, s) == hom_k_dim(X, shift(Y, s))
        assert hom_k_dim(X, Y, s) == hom_k_dim(shift(X, -s), Y)


def _random_chain_map(H, seed):
    F = H.source.cat.field
    rng = rng_for("test-chain-map", seed)
    coeff = rng.integers(0, F.q, size=H.chains.shape[0])
    return H.to_map(F.matmul(coeff[None, :], H.chains)[0])


@pytest.mark.parametrize("seed", SEEDS)
def test_minimize_preserves_hom_dims(seed, pipe9p):
    set_global_seed(seed)
    _, res = pipe9p
    fam = res.steps[0].after
    C = fam.cat
    H = hom_k(fam[4], fam[0])
    f = _random_chain_map(H, seed)
    X = direct_sum([cone(fam[4], fam[0], f), cone(stalk(C, 2), stalk(C, 2), identity_map(stalk(C, 2)))])
    M = minimize(X)
    M.check()
    assert is_minimal(M)
    for Y in fam.members.values():
        for s in (-1, 0, 1):
            assert hom_k_dim(X, Y, s) == hom_k_dim(M, Y, s)


GOLDEN = {
    (9, "principal"): {
        0: ((-2, (2, 6)), (-1, (4, 4)), (0, (0,))),
        2: ((-2, (6,)), (-1, (4,))),
        4: ((-2, (2, 6)), (-1, (4,))),
        6: ((-2, (2,)), (-1, (4,))),
    },
    (9, "nonprincipal"): {
        1: ((-1, (5,)), (0, (1,))),
        3: ((-1, (7,)), (0, (3,))),
        5: ((-1, (5, 7)), (0, (3,))),
        7: ((-1, (5, 7)), (0, (1,))),
    },
    (4, "merged"): {
        0: ((-1, (1, 2)), (0, (0,))),
        1: ((-1, (1,)),),
        2: ((-1, (2,)),),
    },
}


@pytest.mark.parametrize("q,name", CASES)
def test_golden_final_families(q, name):
    _, res = pipeline_for(q, name)
    assert res.final.shapes() == GOLDEN[(q, name)]


def test_principal_intermediate_family(pipe9p):
    _, res = pipe9p
    assert res.steps[0].after.notation() == {
        0: "P2 (+) P6 -> P0 @ [-1,0]", 2: "P2 @ [-1]", 4: "P2 (+) P6 -> P4 @ [-1,0]", 6: "P6 @ [-1]",
    }


@pytest.mark.parametrize("q,name", CASES)
def test_every_family_is_tilting(q, name):
    _, res = pipeline_for(q, name)
    for sr in res.steps:
        rep = verify_tilting(sr.after)
        assert rep.ok and abs(rep.det) == 1 and not rep.nonzero


@pytest.mark.parametrize("q,name", CASES)
def test_direct_shapes_agree_with_tilt(q, name):
    _, res = pipeline_for(q, name)
    for sr in res.steps:
        D = direct_shape_tilt(sr.before, sr.step.I, sr.step.J)
        assert families_isomorphic(D, sr.after)


def test_plain_approximation_is_too_large(pipe9n):
    _, res = pipe9n
    sr = res.steps[0]
    D = direct_shape_tilt(sr.before, sr.step.I, sr.step.J, plain=True)
    assert not families_isomorphic(D, sr.after)
    assert D[3].shape() == ((-1, (7, 7)), (0, (3,)))


@pytest.mark.parametrize("q,name", CASES)
def test_local_step_matches_block(q, name):
    # over End(stalks) = A the local tilt must give the same shapes as the block tilt
    _, res = pipeline_for(q, name)
    sr = res.steps[0]
    assert sr.local.shapes() == sr.after.shapes()
    for later in res.steps[1:]:
        assert verify_tilting(later.local).ok


@pytest.mark.parametrize("q,name", CASES)
def test_end_algebra_matches_borel_cartan(q, name):
    block, res = pipeline_for(q, name)
    E = end_algebra(res.final)
    assert E.total_dim() == int(cartan_borel(q, block).sum())
    assert np.array_equal(E.cartan(), cartan_borel(q, block))


def test_a5_mutation_summands(ctx4):
    C = block_category(ctx4, block_by_name(4, "merged"))
    fam = lower_at_complement(stalk_family(C), {1, 2})
    assert fam.notation() == {0: "P0 @ [0]", 1: "P1 -> P0 @ [-1,0]", 2: "P2 -> P0 @ [-1,0]"}
    assert verify_tilting(fam).ok
    # a different tilting complex from the raise at {V, W}; its End is not the Borel algebra
    assert end_algebra(fam).cartan().tolist() == [[4, 2, 2], [2, 2, 1], [2, 1, 2]]


def test_empty_tilt_rejected(ctx4):
    C = block_category(ctx4, block_by_name(4, "merged"))
    with pytest.raises(ValueError):
        simply_alternating_tilt(stalk_family(C), set(), set())


def test_notation():
    _, res = pipeline_for(4, "merged")
    assert notation(res.final[0]) == "P1 (+) P2 -> P0 @ [-1,0]"
