import pytest

from perverse_sl2.schedule import (
    frobenius, frobenius_orbit, plan, schedule, sign, signed_orbit,
)
from perverse_sl2.sl2data import block_by_name, blocks

# Hand-derived partitions: K as orbits, I_t the Frobenius orbit of max(K_t).
ORACLES = {
    4: {"K": {-1: {0}, 0: {1, 2}}, "I": {0: {1, 2}}, "J": {0: set()}},
    8: {"K": {-1: {0}, 0: {1, 2, 3, 4, 5, 6}}, "I": {0: {3, 5, 6}}, "J": {0: {1, 2, 4}}},
    9: {"K": {-1: {0}, 0: {1, 3, 5, 7}, 1: {2, 6}, 2: {4}},
        "I": {0: {5, 7}, 1: {2, 6}, 2: {4}}, "J": {0: {1, 3}, 1: set(), 2: set()}},
}


@pytest.mark.parametrize("q", sorted(ORACLES))
def test_partition_matches_oracle(q):
    s = schedule(q)
    want = ORACLES[q]
    assert {t: set(v) for t, v in s.K.items()} == want["K"]
    assert {t: set(v) for t, v in s.I.items()} == want["I"]
    assert {t: set(v) for t, v in s.J.items()} == want["J"]


def test_q9_refined_cells():
    cells = schedule(9).refined
    assert [(set(c.K), set(c.I), set(c.J)) for c in cells[0]] == [({1, 7}, {7}, {1}), ({3, 5}, {5}, {3})]
    assert [(set(c.I), set(c.J)) for c in cells[1]] == [({2, 6}, set())]
    assert [(set(c.I), set(c.J)) for c in cells[2]] == [({4}, set())]


def test_q8_refined_cells():
    cells = schedule(8).refined[0]
    assert [(set(c.I), set(c.J)) for c in cells] == [({6}, {1}), ({5}, {2}), ({3}, {4})]


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27, 32])
def test_schedule_invariants(q):
    s = schedule(q)
    labels = set(range(q - 1))
    seen = set()
    for t, K in s.K.items():
        assert not (K & seen)
        seen |= K
        for z in K:
            assert frobenius(q, z) in K and sign(q, z) in K
        if t >= 0:
            assert s.I[t] | s.J[t] == K and not (s.I[t] & s.J[t])
            assert max(K) in s.I[t]
            if q % 2:
                assert len({z % 2 for z in K}) == 1
            cover = set()
            for cell in s.refined[t]:
                assert len(cell.K) in (1, 2) and len(cell.J) <= 1
                cover |= cell.K
            assert cover == K
    assert seen == labels


def test_orbits():
    assert frobenius_orbit(9, 1) == {1, 3}
    assert signed_orbit(9, 1) == {1, 3, 5, 7}
    assert sign(9, 0) == 0 and sign(9, 4) == 4


def test_plans():
    P = plan(9, block_by_name(9, "principal"))
    assert [(s.t, s.c, set(s.I), set(s.J)) for s in P] == [(1, 0, {2, 6}, set()), (2, 0, {4}, set())]
    N = plan(9, block_by_name(9, "nonprincipal"))
    assert [(s.t, s.c, set(s.I), set(s.J)) for s in N] == [(0, 0, {7}, {1}), (0, 1, {5}, {3})]
    (step,) = plan(4, blocks(4)[0])
    assert set(step.I) == {1, 2} and not step.J
