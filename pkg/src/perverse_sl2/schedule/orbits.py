"""Orbit combinatorics on Z = {0, ..., q-2}.

sigma(z) = p z mod (q-1) is the Frobenius action, z~ = -z mod (q-1) the
sign.  The labels are cut into signed orbits K_t, each split into the
Frobenius orbit I_t of its largest member and the rest J_t, and each K_t is
refined further into cells {z, z~}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..exactla import field_of_order


def _check(q: int, z: int) -> None:
    if not 0 <= z <= q - 2:
        raise ValueError(f"label {z} outside 0..{q - 2}")


def frobenius(q: int, z: int) -> int:
    _check(q, z)
    p = field_of_order(q).p
    return (p * z) % (q - 1)


def sign(q: int, z: int) -> int:
    _check(q, z)
    return (-z) % (q - 1)


def frobenius_orbit(q: int, z: int) -> frozenset:
    out = {z}
    cur = frobenius(q, z)
    while cur not in out:
        out.add(cur)
        cur = frobenius(q, cur)
    return frozenset(out)


def signed_orbit(q: int, z: int) -> frozenset:
    out: set[int] = set()
    todo = [z]
    while todo:
        x = todo.pop()
        if x in out:
            continue
        out.add(x)
        todo += [frobenius(q, x), sign(q, x)]
    return frozenset(out)


@dataclass(frozen=True)
class Cell:
    K: frozenset
    I: frozenset
    J: frozenset


@dataclass
class OrbitSchedule:
    q: int
    K: dict                 # t -> frozenset, t = -1 .. r
    I: dict                 # t -> frozenset, t = 0 .. r
    J: dict
    refined: dict = field(default_factory=dict)   # t -> list[Cell]

    @property
    def r(self) -> int:
        return max(self.K)

    def parity(self, t: int) -> str:
        if self.q % 2 == 0:
            return "merged"
        return "principal" if min(self.K[t]) % 2 == 0 else "nonprincipal"


def build_partition(q: int) -> OrbitSchedule:
    K = {-1: frozenset({0})}
    I, J = {}, {}
    done = {0}
    t = 0
    while len(done) < q - 1:
        z = min(set(range(q - 1)) - done)
        Kt = signed_orbit(q, z)
        It = frobenius_orbit(q, max(Kt))
        K[t], I[t], J[t] = Kt, It, Kt - It
        done |= Kt
        t += 1
    return OrbitSchedule(q, K, I, J)


def refine(sch: OrbitSchedule) -> OrbitSchedule:
    q = sch.q
    refined = {}
    for t in sorted(sch.I):
        cells = []
        left = set(sch.I[t])
        while left:
            z = max(left)
            Kc = frozenset({z, sign(q, z)})
            Ic = Kc & sch.I[t]
            cells.append(Cell(Kc, frozenset(Ic), frozenset(Kc - Ic)))
            left -= Kc
        refined[t] = cells
    sch.refined = refined
    return sch


def schedule(q: int) -> OrbitSchedule:
    return refine(build_partition(q))


@dataclass(frozen=True)
class Step:
    t: int
    c: int
    I: frozenset
    J: frozenset
    labels: tuple

    @property
    def K(self) -> frozenset:
        return self.I | self.J


def plan(q: int, block) -> list[Step]:
    """Tilting steps for one block in (t, c) order; K_{-1} needs no step."""
    labels = tuple(block.labels) if hasattr(block, "labels") else tuple(block)
    sch = schedule(q)
    steps = []
    for t in sorted(sch.refined):
        if not sch.K[t] <= set(labels):
            continue
        for c, cell in enumerate(sch.refined[t]):
            steps.append(Step(t, c, cell.I, cell.J, labels))
    return steps
