"""The tilting string for one block, step by step, with verification."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .category import LinearCategory, category_from_projectives
from .tilt import Family, end_algebra, simply_alternating_tilt, stalk_family


def int_det(M) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    A = [[Fraction(int(x)) for x in row] for row in np.asarray(M)]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return int(det)


def grothendieck_matrix(fam: Family) -> np.ndarray:
    """Row z: sum over degrees of (-1)^k times the multiplicity of each P_x in summand z."""
    labels = list(fam.cat.labels)
    G = np.zeros((len(fam.labels), len(labels)), dtype=np.int64)
    for r, z in enumerate(fam.labels):
        X = fam[z]
        for k in X.degrees:
            for a in X.term(k):
                G[r, labels.index(a)] += (-1) ** (k % 2)
    return G


@dataclass
class TiltingReport:
    ok: bool
    amplitude: int
    nonzero: list                 # (x, y, shift, dim) violations
    grothendieck: np.ndarray
    det: int
    checked: int = 0

    def lines(self) -> list[str]:
        out = [f"amplitude: {self.amplitude}", f"hom checks: {self.checked}",
               f"nonzero shifted homs: {len(self.nonzero)}", f"grothendieck det: {self.det}"]
        return out


def family_amplitude(fam: Family) -> int:
    degs = [k for X in fam.members.values() for k in X.degrees]
    return 0 if not degs else max(degs) - min(degs)


def verify_tilting(fam: Family) -> TiltingReport:
    amp = family_amplitude(fam)
    bad = []
    n = 0
    for x in fam.labels:
        for y in fam.labels:
            for s in range(-amp, amp + 1):
                if s == 0:
                    continue
                n += 1
                d = fam.hom(x, y, s).dim
                if d:
                    bad.append((x, y, s, d))
    G = grothendieck_matrix(fam)
    det = int_det(G) if G.shape[0] == G.shape[1] else 0
    return TiltingReport(not bad and abs(det) == 1, amp, bad, G, det, n)


@dataclass
class StepResult:
    step: object                  # schedule Step
    before: Family
    after: Family
    report: TiltingReport
    local: Family | None = None   # the same step over End(before)
    algebra: LinearCategory | None = None


@dataclass
class PipelineResult:
    base: LinearCategory
    initial: Family
    steps: list = dc_field(default_factory=list)

    @property
    def final(self) -> Family:
        return self.steps[-1].after if self.steps else self.initial


class PipelineError(RuntimeError):
    def __init__(self, index: int, msg: str):
        super().__init__(f"step {index}: {msg}")
        self.index = index


def block_category(ctx, block) -> LinearCategory:
    key = ("basic", block.parity)
    C = ctx.__dict__.get(key) if hasattr(ctx, "__dict__") else None
    if C is None:
        C = category_from_projectives(ctx.block_projectives(block),
                                      {z: ctx.simples[z] for z in block.labels}, f"A[{block.parity}]")
        ctx.__dict__[key] = C
    return C


def run_pipeline(ctx, block, steps, local: bool = True) -> PipelineResult:
    """Apply the simply alternating tilts of ``steps`` in order, verifying each family."""
    C = block_category(ctx, block)
    fam = stalk_family(C)
    res = PipelineResult(C, fam)
    for idx, st in enumerate(steps):
        new = simply_alternating_tilt(fam, st.I, st.J)
        rep = verify_tilting(new)
        if not rep.ok:
            raise PipelineError(idx, f"family fails the tilting check: {rep.nonzero} det={rep.det}")
        alg = loc = None
        if local:
            alg = end_algebra(fam, f"A[{st.t},{st.c}]")
            loc = simply_alternating_tilt(stalk_family(alg), st.I, st.J)
        res.steps.append(StepResult(st, fam, new, rep, loc, alg))
        fam = new
    return res
