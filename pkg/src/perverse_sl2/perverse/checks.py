"""Hypotheses of the tilting string, checked on concrete SL(2,q) data.

Step-0 checks work with group modules: T_k (x) M is the Green correspondent
of the Borel simple T_k, and Hom_A(M, S_k) is the restriction of S_k to the
Borel subgroup.  Later steps only have their algebra as a category of
complexes, so just the Hom-dimension items are evaluated there.
"""
from __future__ import annotations

from collections import Counter

import numpy as np

from ..exactla import rank
from ..homotopy.pipeline import block_category
from ..homotopy.tilt import Family
from ..modkernel import (composition_factors, hom_space, projective_cover,
                         socle_multiplicities, syzygy, top_multiplicities)
from ..report import FAIL, NOT_CHECKABLE, PASS, VACUOUS, Report
from ..schedule import schedule
from ..schedule import sign as sign_of
from ..sl2data import restrict_to_borel
from .data import _fmt_set


def tilde(q: int, z: int) -> int:
    return sign_of(q, z)


def _green(ctx, k):
    return ctx.green_of_borel_simple(k)


def compute_K(ctx, block, I) -> frozenset:
    """Labels z with a nonzero map S_z -> T_i (x) M or T_i (x) M -> S_z for some i in I."""
    K = set()
    for i in I:
        X = _green(ctx, i)
        K.update(socle_multiplicities(X, ctx.group))
        K.update(top_multiplicities(X, ctx.group))
    return frozenset(z for z in K if z in block.labels)


def _hom_dims_from_modules(ctx, block):
    C = block_category(ctx, block)
    return lambda a, b: C.dim(a, b)


def _hom_dims_from_family(fam: Family):
    return lambda a, b: fam.hom(a, b, 0).dim


def _tpc_projective_items(rep: Report, q: int, I, hom) -> None:
    for i in sorted(I):
        it = tilde(q, i)
        want = 3 if it == i else 2
        d = hom(i, i)
        rep.expect(f"(2a) dim End(P{i})", d == want, f"{d} (want {want}, ~{i}={it})", dim=d)
        for l in sorted(I):
            if l != i and l != it:
                d = hom(i, l)
                rep.expect(f"(2b) Hom(P{i},P{l})", d == 0, f"dim {d}", dim=d)
        if it != i:
            d = hom(i, it)
            rep.expect(f"(2c) dim Hom(P{i},P{it})", d == 1, f"{d}", dim=d)


def check_tpc(ctx, block, I, family: Family | None = None) -> Report:
    """Thin projective condition for (A, I), or items (2a-c) over a family's algebra."""
    q = ctx.q
    I = frozenset(I)
    rep = Report(f"thin projective condition, I={_fmt_set(I)}")
    if family is not None:
        for item in ("(1a)", "(1b)", "(3)"):
            rep.add(item, NOT_CHECKABLE, "needs concrete modules of the intermediate algebra")
        _tpc_projective_items(rep, q, I, _hom_dims_from_family(family))
        return rep
    K = compute_K(ctx, block, I)
    rep.add("K", PASS, _fmt_set(K), K=K)
    for k in sorted(K):
        kt = tilde(q, k)
        X = _green(ctx, k)
        simple = X.dim == ctx.simples[k].dim
        rep.expect(f"(1) T{k}(x)M not simple", not simple, f"dim {X.dim}")
        R = restrict_to_borel(ctx.simples[k])
        soc, top = socle_multiplicities(R, ctx.borel), top_multiplicities(R, ctx.borel)
        rep.expect(f"(1a) Hom_A(M,S{k})", soc == Counter([k]) and top == Counter([kt]),
                   f"soc {dict(soc)}, top {dict(top)}")
        soc, top = socle_multiplicities(X, ctx.group), top_multiplicities(X, ctx.group)
        rep.expect(f"(1b) T{k}(x)M", soc == Counter([kt]) and top == Counter([k]),
                   f"soc {dict(soc)}, top {dict(top)}")
    _tpc_projective_items(rep, q, I, _hom_dims_from_modules(ctx, block))
    outside = [z for z in block.labels if z not in K]
    if not I or not outside:
        rep.add("(3) Hom(P_i, T_z(x)M), z outside K", VACUOUS, "no pairs")
    for i in sorted(I):
        for z in outside:
            d = hom_space(ctx.projective(i), _green(ctx, z)).dim
            rep.expect(f"(3) Hom(P{i},T{z}(x)M)", d == 0, f"dim {d}", dim=d)
    return rep


def check_okuyama_conditions(ctx, block, I) -> Report:
    """Both conditions of the tilting criterion for the two-term complex at I.

    The j-range is every block label outside I; labels of other blocks give
    zero Homs and would only pad the report.
    """
    F = ctx.field
    I = frozenset(I)
    rep = Report(f"two-term tilting conditions, I={_fmt_set(I)}")
    js = [j for j in block.labels if j not in I]
    if not I or not js:
        rep.add("(1)", VACUOUS, "empty i- or j-range")
        rep.add("(2)", VACUOUS, "empty i- or j-range")
        return rep
    for i in sorted(I):
        Om = syzygy(_green(ctx, i), ctx.group).module
        for j in js:
            d = hom_space(_green(ctx, j), Om).dim
            rep.expect(f"(1) Hom(T{j}(x)M, Omega(T{i}(x)M))", d == 0, f"dim {d}", dim=d)
    for j in js:
        X = _green(ctx, j)
        pc = projective_cover(X, ctx.group)
        for i in sorted(I):
            P = ctx.projective(i)
            H = hom_space(P, X)
            if H.dim == 0:
                rep.add(f"(2) P{i} -> T{j}(x)M", VACUOUS, "no maps")
                continue
            G = hom_space(P, pc.module)
            got = 0 if G.dim == 0 else rank(F, F.matmul(G.basis, pc.cover).reshape(G.dim, -1))
            rep.expect(f"(2) P{i} -> T{j}(x)M", got == H.dim, f"{got} of {H.dim} factor")
    return rep


def check_simple_tracing(ctx, block, I, K=None) -> Report:
    """Hypotheses of the two simple-tracing propositions at step 0."""
    q = ctx.q
    I = frozenset(I)
    Kc = compute_K(ctx, block, I)
    rep = Report(f"simple tracing, I={_fmt_set(I)}")
    rep.expect("I <= K <= Z", I <= Kc <= frozenset(block.labels), f"K={_fmt_set(Kc)}", K=Kc)
    if K is not None:
        rep.expect("K matches the schedule", Kc == frozenset(K), f"{_fmt_set(Kc)} vs {_fmt_set(K)}")
    for z in sorted(set(block.labels) - Kc):
        S = ctx.simples[z]
        ok = all(hom_space(S, _green(ctx, i)).dim == 0 == hom_space(_green(ctx, i), S).dim for i in I)
        rep.expect(f"S{z} traced from A", ok)
    for i in sorted(I):
        Om = {i2: syzygy(_green(ctx, i2), ctx.group).module for i2 in I}
        for i2 in sorted(I):
            d = hom_space(Om[i], Om[i2]).dim
            rep.expect(f"dim Hom(Omega T{i}(x)M, Omega T{i2}(x)M)", d == int(i == i2), f"{d}")
    rest = sorted(Kc - I)
    if len(rest) > 1:
        rep.add("|K - I| = 1", FAIL, f"K - I = {_fmt_set(rest)}")
    elif rest:
        j = rest[0]
        X = _green(ctx, j)
        d = hom_space(X, X).dim
        rep.expect(f"dim End(T{j}(x)M)", d == 1, f"{d}", dim=d)
    else:
        rep.add("K - I", VACUOUS, "empty")
    return rep


def block_times(q: int, block) -> list[int]:
    sch = schedule(q)
    return [t for t in sorted(sch.I) if sch.K[t] and sch.K[t] <= set(block.labels)]


def check_composition_criteria(ctx, block) -> Report:
    """Factor test behind the intra-t and cross-t composition statements.

    Only the first time step of a block acts on A itself, so only there is
    Omega(T_z (x) M) available; later steps are reported as not checkable
    unless every relevant J is empty.
    """
    q = ctx.q
    sch = schedule(q)
    ts = block_times(q, block)
    rep = Report(f"composition criteria, block {block.parity}")
    factors = {}
    for t in ts:
        for t2 in [u for u in ts if u >= t]:
            J = sch.J[t2]
            name = f"t={t}, t'={t2}"
            if not J:
                rep.add(name, VACUOUS, "empty J")
                continue
            if t != ts[0]:
                rep.add(name, NOT_CHECKABLE, "intermediate algebra has no concrete modules")
                continue
            bad = {}
            for z in sorted(sch.I[t]):
                if z not in factors:
                    Om = syzygy(_green(ctx, z), ctx.group).module
                    c = composition_factors(Om, ctx.group)
                    c[z] -= 1
                    factors[z] = +c
                hit = sorted(y for y in J if factors[z][y])
                if hit:
                    bad[z] = hit
            detail = "; ".join(f"Omega(T{z}(x)M)/S{z} contains S{y}" for z, ys in bad.items() for y in ys)
            rep.add(name, FAIL if bad else PASS, detail, intra=(t == t2))
    if not ts:
        rep.add("block", VACUOUS, "no steps")
    return rep
