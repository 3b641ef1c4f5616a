"""Bounded complexes of indecomposable projectives over a linear category.

A term is a tuple of labels.  The differential d^k : X^k -> X^{k+1} is a
block matrix whose (i, j) entry lies in C(X^k[i], X^{k+1}[j]); with the
"then" convention d^k then d^{k+1} must vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .category import CategoryError, LinearCategory


@dataclass
class BlockMat:
    rows: tuple
    cols: tuple
    ent: dict = dc_field(default_factory=dict)   # (i, j) -> coefficient vector, nonzero only

    def get(self, C: LinearCategory, i: int, j: int) -> np.ndarray:
        v = self.ent.get((i, j))
        return C.zero(self.rows[i], self.cols[j]) if v is None else v

    def is_zero(self) -> bool:
        return not self.ent

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockMat):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.ent.keys() == other.ent.keys()
                and all(np.array_equal(v, other.ent[k]) for k, v in self.ent.items()))


def bm(rows, cols, ent=None) -> BlockMat:
    out = BlockMat(tuple(rows), tuple(cols), {})
    for k, v in (ent or {}).items():
        v = np.asarray(v, dtype=np.int64)
        if np.any(v):
            out.ent[k] = v
    return out


def bm_identity(C: LinearCategory, labels) -> BlockMat:
    return bm(labels, labels, {(i, i): C.identity(a) for i, a in enumerate(labels)})


def bm_add(C: LinearCategory, A: BlockMat, B: BlockMat) -> BlockMat:
    if A.rows != B.rows or A.cols != B.cols:
        raise CategoryError("block shapes differ")
    ent = dict(A.ent)
    for k, v in B.ent.items():
        ent[k] = C.field.add(ent[k], v) if k in ent else v
    return bm(A.rows, A.cols, ent)


def bm_scale(C: LinearCategory, A: BlockMat, c: int) -> BlockMat:
    return bm(A.rows, A.cols, {k: C.field.mul(v, int(c)) for k, v in A.ent.items()})


def bm_neg(C: LinearCategory, A: BlockMat) -> BlockMat:
    return bm(A.rows, A.cols, {k: C.field.neg(v) for k, v in A.ent.items()})


def bm_compose(C: LinearCategory, A: BlockMat, B: BlockMat) -> BlockMat:
    """A then B."""
    if A.cols != B.rows:
        raise CategoryError("block matrices do not compose")
    F = C.field
    by_row: dict[int, list] = {}
    for (j, l), v in B.ent.items():
        by_row.setdefault(j, []).append((l, v))
    ent: dict = {}
    for (i, j), x in A.ent.items():
        for l, y in by_row.get(j, ()):
            z = C.compose(A.rows[i], A.cols[j], B.cols[l], x, y)
            if np.any(z):
                ent[(i, l)] = F.add(ent[(i, l)], z) if (i, l) in ent else z
    return bm(A.rows, B.cols, ent)


def bm_select(A: BlockMat, rows=None, cols=None) -> BlockMat:
    ri = list(range(len(A.rows))) if rows is None else list(rows)
    ci = list(range(len(A.cols))) if cols is None else list(cols)
    rmap = {r: n for n, r in enumerate(ri)}
    cmap = {c: n for n, c in enumerate(ci)}
    ent = {(rmap[i], cmap[j]): v for (i, j), v in A.ent.items() if i in rmap and j in cmap}
    return bm([A.rows[i] for i in ri], [A.cols[j] for j in ci], ent)


def bm_block(blocks: list[list[BlockMat]]) -> BlockMat:
    """Assemble a block matrix of block matrices."""
    rows = sum((list(row[0].rows) for row in blocks), [])
    cols = sum((list(b.cols) for b in blocks[0]), [])
    ent = {}
    ro = 0
    for row in blocks:
        co = 0
        for b in row:
            for (i, j), v in b.ent.items():
                ent[(ro + i, co + j)] = v
            co += len(b.cols)
        ro += len(row[0].rows)
    return bm(rows, cols, ent)


def bm_vstack(mats: list[BlockMat], cols) -> BlockMat:
    if not mats:
        return bm((), cols)
    return bm_block([[m] for m in mats])


def bm_hstack(mats: list[BlockMat], rows) -> BlockMat:
    if not mats:
        return bm(rows, ())
    return bm_block([mats])


def bm_diag(mats: list[BlockMat]) -> BlockMat:
    rows = sum((list(m.rows) for m in mats), [])
    cols = sum((list(m.cols) for m in mats), [])
    ent = {}
    ro = co = 0
    for m in mats:
        for (i, j), v in m.ent.items():
            ent[(ro + i, co + j)] = v
        ro += len(m.rows)
        co += len(m.cols)
    return bm(rows, cols, ent)


# --- complexes ------------------------------------------------------------------


@dataclass
class ProjectiveComplex:
    cat: LinearCategory
    terms: dict            # degree -> tuple of labels (nonempty only)
    diffs: dict            # degree k -> BlockMat d^k (nonzero only)
    label: object = None

    def __post_init__(self):
        self.terms = {k: tuple(v) for k, v in self.terms.items() if len(v)}
        self.diffs = {k: d for k, d in self.diffs.items() if not d.is_zero()}
        for k, d in self.diffs.items():
            if d.rows != self.term(k) or d.cols != self.term(k + 1):
                raise CategoryError(f"differential d^{k} does not match its terms")

    def term(self, k: int) -> tuple:
        return self.terms.get(k, ())

    def diff(self, k: int) -> BlockMat:
        d = self.diffs.get(k)
        return d if d is not None else bm(self.term(k), self.term(k + 1))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def amplitude(self) -> int:
        return 0 if not self.terms else max(self.terms) - min(self.terms)

    def check(self) -> None:
        C = self.cat
        for k in self.degrees:
            if not bm_compose(C, self.diff(k), self.diff(k + 1)).is_zero():
                raise CategoryError(f"d^{k+1} d^{k} != 0")

    def multiplicity(self, k: int, a) -> int:
        return self.term(k).count(a)

    def shape(self) -> tuple:
        """Hashable summary: ((degree, sorted labels), ...)."""
        return tuple((k, tuple(sorted(self.term(k), key=repr))) for k in self.degrees)

    def relabel(self, label) -> "ProjectiveComplex":
        return ProjectiveComplex(self.cat, self.terms, self.diffs, label)


def stalk(C: LinearCategory, a, degree: int = 0, label=None) -> ProjectiveComplex:
    return ProjectiveComplex(C, {degree: (a,)}, {}, a if label is None else label)


def zero_complex(C: LinearCategory, label=None) -> ProjectiveComplex:
    return ProjectiveComplex(C, {}, {}, label)


def shift(X: ProjectiveComplex, s: int) -> ProjectiveComplex:
    """X[s]: terms X[s]^k = X^{k+s}, differential multiplied by (-1)^s."""
    C = X.cat
    terms = {k - s: v for k, v in X.terms.items()}
    diffs = {k - s: (bm_neg(C, d) if s % 2 else d) for k, d in X.diffs.items()}
    return ProjectiveComplex(C, terms, diffs, X.label)


def direct_sum(Xs: list[ProjectiveComplex], label=None) -> ProjectiveComplex:
    if not Xs:
        raise CategoryError("empty direct sum of complexes")
    C = Xs[0].cat
    degs = sorted(set().union(*[set(X.terms) for X in Xs]))
    terms = {k: sum((X.term(k) for X in Xs), ()) for k in degs}
    diffs = {k: bm_diag([X.diff(k) for X in Xs]) for k in degs}
    return ProjectiveComplex(C, terms, diffs, label)


ChainMap = dict   # degree -> BlockMat X^k -> Y^k


def check_chain_map(X: ProjectiveComplex, Y: ProjectiveComplex, f: ChainMap) -> bool:
    C = X.cat
    for k in set(X.terms) | set(Y.terms) | {k - 1 for k in X.terms}:
        lhs = bm_compose(C, X.diff(k), map_at(X, Y, f, k + 1))
        rhs = bm_compose(C, map_at(X, Y, f, k), Y.diff(k))
        if not bm_add(C, lhs, bm_neg(C, rhs)).is_zero():
            return False
    return True


def map_at(X: ProjectiveComplex, Y: ProjectiveComplex, f: ChainMap, k: int) -> BlockMat:
    m = f.get(k)
    return m if m is not None else bm(X.term(k), Y.term(k))


def compose_maps(C: LinearCategory, X, Y, Z, f: ChainMap, g: ChainMap) -> ChainMap:
    out = {}
    for k in X.terms:
        if k in Z.terms:
            h = bm_compose(C, map_at(X, Y, f, k), map_at(Y, Z, g, k))
            if not h.is_zero():
                out[k] = h
    return out


def identity_map(X: ProjectiveComplex) -> ChainMap:
    return {k: bm_identity(X.cat, X.term(k)) for k in X.terms}


def cone(X: ProjectiveComplex, Y: ProjectiveComplex, f: ChainMap, label=None, check: bool = True) -> ProjectiveComplex:
    """Cone^k = X^{k+1} (+) Y^k with differential [[-d_X, f], [0, d_Y]]."""
    C = X.cat
    if check and not check_chain_map(X, Y, f):
        raise CategoryError("cone of a map that is not a chain map")
    degs = sorted({k - 1 for k in X.terms} | set(Y.terms))
    terms = {k: X.term(k + 1) + Y.term(k) for k in degs}
    diffs = {}
    for k in degs:
        top = [bm_neg(C, X.diff(k + 1)), map_at(X, Y, f, k + 1)]
        bot = [bm(Y.term(k), X.term(k + 2)), Y.diff(k)]
        diffs[k] = bm_block([top, bot])
    return ProjectiveComplex(C, terms, diffs, label)


def minimize(X: ProjectiveComplex) -> ProjectiveComplex:
    """Cancel isomorphism entries of the differential (Gaussian elimination).

    Degrees are scanned in ascending order, entries lexicographically.
    """
    C = X.cat
    F = C.field
    terms = dict(X.terms)
    diffs = {k: X.diff(k) for k in X.terms}

    def get(k):
        d = diffs.get(k)
        return d if d is not None else bm(terms.get(k, ()), terms.get(k + 1, ()))

    changed = True
    while changed:
        changed = False
        for k in sorted(terms):
            d = get(k)
            hit = None
            for (i, j) in sorted(d.ent):
                a, b = d.rows[i], d.cols[j]
                if a == b and C.scalar(a, d.ent[(i, j)]) != 0:
                    hit = (i, j)
                    break
            if hit is None:
                continue
            i, j = hit
            a = d.rows[i]
            phi_inv = C.inverse_endo(a, d.ent[(i, j)])
            ri = [r for r in range(len(d.rows)) if r != i]
            cj = [c for c in range(len(d.cols)) if c != j]
            delta = bm_select(d, ri, cj)
            gamma = bm_select(d, ri, [j])
            beta = bm_select(d, [i], cj)
            pinv = bm([a], [a], {(0, 0): phi_inv})
            corr = bm_compose(C, bm_compose(C, gamma, pinv), beta)
            new_d = bm_add(C, delta, bm_neg(C, corr))
            prev = get(k - 1)
            nxt = get(k + 1)
            terms[k] = tuple(d.rows[r] for r in ri)
            terms[k + 1] = tuple(d.cols[c] for c in cj)
            diffs[k] = new_d
            diffs[k - 1] = bm_select(prev, None, ri)
            diffs[k + 1] = bm_select(nxt, cj, None)
            for kk in (k, k + 1):
                if not terms[kk]:
                    del terms[kk]
            changed = True
            break
    diffs = {k: v for k, v in diffs.items() if k in terms and (k + 1) in terms}
    out = ProjectiveComplex(C, terms, diffs, X.label)
    return out


def is_minimal(X: ProjectiveComplex) -> bool:
    C = X.cat
    for d in X.diffs.values():
        for (i, j), v in d.ent.items():
            if d.rows[i] == d.cols[j] and C.scalar(d.rows[i], v):
                return False
    return True


def _fmt_term(labels) -> str:
    return " (+) ".join(f"P{a}" for a in sorted(labels, key=lambda x: (str(type(x)), x)))


def notation(X: ProjectiveComplex) -> str:
    """Like ``P5 (+) P7 -> P1 @ [-1,0]``; degrees ascending, gaps shown as 0."""
    if X.is_zero:
        return "0"
    lo, hi = min(X.terms), max(X.terms)
    parts = [_fmt_term(X.term(k)) if X.term(k) else "0" for k in range(lo, hi + 1)]
    degs = f"[{lo}]" if lo == hi else f"[{lo},{hi}]"
    return " -> ".join(parts) + " @ " + degs
