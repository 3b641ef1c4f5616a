import numpy as np
import pytest

from perverse_sl2.modkernel import dual, is_isomorphic, socle_multiplicities, top_multiplicities
from perverse_sl2.sl2data import (
    block_by_name, block_of, blocks, borel_simple, cartan_borel, context, digits,
    induce_from_borel, pin_borel_convention, restrict_to_borel, simple_module, sl2_group,
)


def _enumerate(G):
    """Closure of the generators under multiplication (independent order oracle)."""
    F = G.field
    key = lambda A: tuple(int(x) for x in A.reshape(-1))
    seen = {key(np.eye(2, dtype=np.int64))}
    frontier = [np.eye(2, dtype=np.int64)]
    while frontier:
        nxt = []
        for A in frontier:
            for g in G.generators:
                B = F.matmul(A, g)
                if key(B) not in seen:
                    seen.add(key(B))
                    nxt.append(B)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_group_order(q):
    G = sl2_group(q)
    assert _enumerate(G) == G.order == q * (q * q - 1)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_simple_dimensions_follow_digits(q):
    for z in range(q):
        expect = int(np.prod([d + 1 for d in digits(q, z)]))
        assert simple_module(q, z).dim == expect


def test_q9_projective_dimensions(ctx9):
    dims = [ctx9.projective(z).dim for z in range(9)]
    assert dims == [27, 36, 18, 36, 36, 18, 18, 18, 9]


def test_blocks():
    assert [b.labels for b in blocks(9)] == [(0, 2, 4, 6), (1, 3, 5, 7)]
    assert block_of(8, 3).parity == "merged"
    with pytest.raises(ValueError):
        block_of(9, 8)
    with pytest.raises(ValueError):
        block_by_name(4, "nonprincipal")


def test_borel_convention_is_pinned_to_minus_one():
    assert pin_borel_convention(9) == -1


def test_green_correspondent_of_t7(ctx9):
    X = ctx9.green_of_borel_simple(7)
    assert X.dim == 10
    assert dict(top_multiplicities(X, ctx9.group)) == {7: 1}
    assert dict(socle_multiplicities(X, ctx9.group)) == {1: 1}


def test_opposite_sign_swaps_top_and_socle():
    X = context(9, 1).green_of_borel_simple(7)
    G = context(9, 1).group
    assert dict(top_multiplicities(X, G)) == {1: 1}
    assert dict(socle_multiplicities(X, G)) == {7: 1}


def test_borel_duals():
    assert is_isomorphic(dual(borel_simple(9, 1)), borel_simple(9, 7))
    assert is_isomorphic(borel_simple(9, 9), borel_simple(9, 1))


def test_restriction_of_induction_contains_the_simple(ctx9):
    T = borel_simple(9, 3)
    R = restrict_to_borel(induce_from_borel(T))
    assert R.dim == 10
    assert socle_multiplicities(R, ctx9.borel)[3] >= 1


@pytest.mark.parametrize("name", ["principal", "nonprincipal"])
def test_borel_cartan_q9(name):
    C = cartan_borel(9, block_by_name(9, name))
    assert np.array_equal(C, np.full((4, 4), 2) + np.eye(4, dtype=np.int64))


def test_borel_cartan_q4():
    C = cartan_borel(4, block_by_name(4, "merged"))
    assert C.tolist() == [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
