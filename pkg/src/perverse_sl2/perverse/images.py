"""Images of simple modules under a simply alternating step, and their checks.

Everything here lives over a basic algebra given as a LinearCategory C:
modules are category modules (block ``a`` holds M_a = M e_a), the simple
C-modules are one-dimensional and the projectives are the regular modules.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..exactla import coordinates, rank
from ..homotopy.category import (LinearCategory, category_ambient, generator_list,
                                 module_from_spaces, module_part, regular_module)
from ..homotopy.complexes import ProjectiveComplex
from ..homotopy.tilt import Family
from ..modkernel import (Ambient, ModuleError, Representation, composition_factors,
                         ext1_dim, hom_space, loewy_layers, quotient, socle,
                         submodule, submodule_generated)
from ..report import Report
from .data import HomologyProfile, _fmt_set, _sorted


@dataclass
class Image:
    """A module placed in a single cohomological degree."""
    label: object
    module: Representation
    degree: int

    @property
    def dim(self) -> int:
        return self.module.dim


# ------------------------------------------------------------ graded helpers

def _gen_index(C: LinearCategory) -> dict:
    idx = C.__dict__.get("_gen_index")
    if idx is None:
        idx = {g: n for n, g in enumerate(generator_list(C))}
        C.__dict__["_gen_index"] = idx
    return idx


def graded(N: Representation, C: LinearCategory) -> Representation:
    """Attach block offsets to a module whose basis is adapted to the idempotents."""
    idx = _gen_index(C)
    offs, parts, pos = {}, {}, 0
    for a in C.labels:
        E = N.generators[idx[(a, a, 0)]]
        on = [i for i in range(N.dim) if E[i, i] == 1]
        if np.count_nonzero(E) != len(on) or on != list(range(pos, pos + len(on))):
            raise ModuleError("basis is not adapted to the block decomposition")
        offs[a], parts[a] = pos, len(on)
        pos += len(on)
    if pos != N.dim:
        raise ModuleError("idempotents do not sum to the identity")
    N._cache["offsets"] = offs
    N._cache["parts"] = parts
    return N


def part_dims(M: Representation, C: LinearCategory) -> dict:
    return dict(M._cache["parts"])


def act_matrix(M: Representation, C: LinearCategory, a, b, x) -> np.ndarray:
    """Matrix of x in C(a, b) acting M_b -> M_a (rows index M_b)."""
    F = C.field
    idx = _gen_index(C)
    sa, sb = module_part(M, C, a), module_part(M, C, b)
    out = np.zeros((sb.stop - sb.start, sa.stop - sa.start), dtype=np.int64)
    for k, c in enumerate(np.asarray(x)):
        if c:
            out = F.add(out, F.mul(M.generators[idx[(a, b, k)]][sb, sa], int(c)))
    return out


def _parts_rows(M: Representation, C: LinearCategory, labels) -> np.ndarray:
    rows = []
    for a in labels:
        s = module_part(M, C, a)
        for i in range(s.start, s.stop):
            v = np.zeros(M.dim, dtype=np.int64)
            v[i] = 1
            rows.append(v)
    return np.array(rows, dtype=np.int64).reshape(-1, M.dim)


def basic_module(C: LinearCategory, projs: dict, M: Representation, tag: str | None = None) -> Representation:
    """The C-module (Hom(P_a, M))_a of a module over the realized algebra.

    Needs C built from the projectives ``projs`` (its realization holds the
    matrices of the Hom bases); this is the Morita equivalence to C.
    """
    if C.realization is None:
        raise ModuleError("category carries no realization")
    F = C.field
    V = {a: hom_space(projs[a], M).basis for a in C.labels}
    flat = {a: V[a].reshape(V[a].shape[0], projs[a].dim * M.dim) for a in C.labels}

    def act(a, b, k):
        X = C.realization[(a, b)][k]
        imgs = F.matmul(X[None], V[b]).reshape(V[b].shape[0], projs[a].dim * M.dim)
        return coordinates(F, flat[a], imgs)
    return module_from_spaces(C, {a: V[a].shape[0] for a in C.labels}, act, tag or M.tag)


# ------------------------------------------------------- constrained modules

def largest_submodule_with(M: Representation, amb: Ambient, allowed) -> np.ndarray:
    """Echelon rows of the largest submodule whose composition factors are allowed."""
    allowed = set(allowed)
    cur = np.zeros((0, M.dim), dtype=np.int64)
    while True:
        Q = quotient(M, cur)
        rows = [X for z, S in amb.simples.items() if z in allowed for X in hom_space(S, Q.module).basis]
        if not rows:
            return cur
        lifted = np.zeros((sum(r.shape[0] for r in rows), M.dim), dtype=np.int64)
        lifted[:, Q.columns] = np.concatenate(rows, axis=0)
        new = submodule(M, np.concatenate([cur, lifted], axis=0), check=False)
        if new.dim == cur.shape[0]:
            return cur
        cur = new.basis


def top_constrained_quotient(C: LinearCategory, z, allowed) -> Representation:
    """Largest quotient of P'_z with top S_z and all other factors allowed.

    The kernel is generated by the radical of P'_z at the disallowed labels:
    every map from P'_y with y disallowed lands in the radical, and these
    maps are exactly the vectors of (rad P'_z)_y.
    """
    P = regular_module(C, z)
    bad = [y for y in C.labels if y not in set(allowed)]
    rows = []
    for y in bad:
        s = module_part(P, C, y)
        start = s.start + (1 if y == z else 0)   # skip the identity of C(z, z)
        for i in range(start, s.stop):
            v = np.zeros(P.dim, dtype=np.int64)
            v[i] = 1
            rows.append(v)
    if not rows:
        return graded(P, C)
    Theta = submodule_generated(P, np.array(rows, dtype=np.int64))
    return graded(quotient(P, Theta, f"U{z}").module, C)


def socle_constrained_submodule(C: LinearCategory, z, allowed) -> Representation:
    """Largest submodule of P'_z with socle S_z and all other factors allowed."""
    amb = category_ambient(C)
    P = regular_module(C, z)
    soc = socle(P, amb)
    if socle_labels(P, amb) != Counter([z]):
        raise ModuleError(f"socle of P{z} is not S{z}")
    Q = quotient(P, soc)
    rows = largest_submodule_with(Q.module, amb, set(allowed))
    lifted = np.zeros((rows.shape[0], P.dim), dtype=np.int64)
    lifted[:, Q.columns] = rows
    U = submodule(P, np.concatenate([soc.basis, lifted], axis=0), f"U{z}", check=False)
    return graded(U.module, C)


def strip_socle(M: Representation, C: LinearCategory, remove) -> Representation:
    """Repeatedly factor out socle constituents with labels in ``remove``."""
    amb = category_ambient(C)
    remove = set(remove)
    while True:
        rows = [X for z, S in amb.simples.items() if z in remove for X in hom_space(S, M).basis]
        if not rows:
            return M
        M = graded(quotient(M, np.concatenate(rows, axis=0), M.tag).module, C)


def socle_labels(M: Representation, amb: Ambient) -> Counter:
    return Counter({z: hom_space(S, M).dim for z, S in amb.simples.items() if hom_space(S, M).dim})


def top_labels(M: Representation, amb: Ambient) -> Counter:
    return Counter({z: hom_space(M, S).dim for z, S in amb.simples.items() if hom_space(M, S).dim})


def build_simple_images(C: LinearCategory, S0, I, J) -> dict:
    """Images U_z of the new simples for the step (S0 < S0+I < all).

    z in S0: the simple S_z in degree 0.  z in I: the largest submodule of
    P'_z with socle S_z and other factors in S0, in degree -1.  z in J: the
    largest quotient of P'_z with top S_z and other factors in S0+I, with
    socle constituents from S0 factored out, in degree 0.
    """
    amb = category_ambient(C)
    S0, I, J = set(S0), set(I), set(J)
    if S0 | I | J != set(C.labels) or (S0 & I) or (S0 & J) or (I & J):
        raise ModuleError("S0, I, J must partition the labels")
    out = {}
    for z in _sorted(C.labels):
        if z in S0:
            out[z] = Image(z, graded(amb.simples[z], C), 0)
        elif z in I:
            out[z] = Image(z, socle_constrained_submodule(C, z, S0), -1)
        else:
            U = top_constrained_quotient(C, z, S0 | I)
            out[z] = Image(z, strip_socle(U, C, S0), 0)
    return out


def images_profile(images: dict, C: LinearCategory) -> HomologyProfile:
    amb = category_ambient(C)
    return HomologyProfile({z: {im.degree: composition_factors(im.module, amb)}
                            for z, im in images.items()})


def image_layers(image: Image, C: LinearCategory) -> list[list]:
    return loewy_layers(image.module, category_ambient(C)).labels()


# ------------------------------------------------------------------ checks

def hom_complex_dims(T: ProjectiveComplex, M: Representation, C: LinearCategory) -> dict:
    """n -> dim H^n Hom(T, M) for M a module in degree 0."""
    F = C.field
    dims = part_dims(M, C)
    ranks = {}
    size = {}
    for k in range(min(T.degrees, default=0) - 1, max(T.degrees, default=0) + 1):
        src, dst = T.term(k), T.term(k + 1)
        size[k] = sum(dims[a] for a in src)
        size[k + 1] = sum(dims[b] for b in dst)
        if not src or not dst or not size[k] or not size[k + 1]:
            ranks[k] = 0
            continue
        D = np.zeros((size[k + 1], size[k]), dtype=np.int64)
        ro = 0
        roffs = []
        for b in dst:
            roffs.append(ro)
            ro += dims[b]
        co = 0
        for i, a in enumerate(src):
            for j, b in enumerate(dst):
                x = T.diff(k).get(C, i, j)
                if np.any(x) and dims[a] and dims[b]:
                    D[roffs[j]:roffs[j] + dims[b], co:co + dims[a]] = act_matrix(M, C, a, b, x)
            co += dims[a]
        ranks[k] = rank(F, D)
    out = {}
    for k in T.degrees:
        # Hom^n with n = -k; its differential goes to Hom(T^{k-1}, M).
        n = -k
        out[n] = size.get(k, 0) - ranks.get(k - 1, 0) - ranks.get(k, 0)
    return {n: d for n, d in out.items() if d}


def check_duality(fam: Family, images: dict, C: LinearCategory | None = None) -> Report:
    """Hom(T_y, U_z[m]) is one-dimensional for y = z, m = 0 and zero otherwise."""
    C = C or fam.cat
    rep = Report("tilting complexes dual to the simple images")
    for y in _sorted(fam.members):
        for z in _sorted(images):
            im = images[z]
            H = hom_complex_dims(fam[y], im.module, C)
            got = {n + im.degree: d for n, d in H.items()}
            want = {0: 1} if y == z else {}
            rep.expect(f"Hom(T{y}, U{z}[*])", got == want, "" if got == want else f"dims {got}")
    return rep


def verify_smc(images: dict, amb: Ambient) -> Report:
    """Same-degree Homs are delta; from degree 0 to degree -1 no Hom and no Ext^1."""
    rep = Report("simple-minded collection")
    for x in _sorted(images):
        for y in _sorted(images):
            X, Y = images[x], images[y]
            if X.degree == Y.degree:
                d = hom_space(X.module, Y.module).dim
                want = int(x == y)
                rep.expect(f"Hom(U{x},U{y})", d == want, f"dim {d}")
            elif X.degree - Y.degree == 1:
                h = hom_space(X.module, Y.module).dim
                e = ext1_dim(X.module, Y.module, amb)
                rep.expect(f"Hom/Ext1(U{x},U{y})", h == 0 and e == 0, f"hom {h}, ext1 {e}")
            elif abs(X.degree - Y.degree) > 1:
                rep.add(f"U{x},U{y}", "not-checkable", "degree gap above one")
    return rep


def module_sandwich(M: Representation, amb: Ambient, lower, target, max_dim: int = 64):
    """Submodules L1 < L2 of M with L2/L1 = S_target and other factors lower.

    Returns the pair of echelon bases, or None when no such pair exists;
    modules above ``max_dim`` are not searched.
    """
    if M.dim > max_dim:
        return None
    L1 = largest_submodule_with(M, amb, set(lower))
    Q = quotient(M, L1)
    soc = socle(Q.module, amb)
    if socle_labels(Q.module, amb) != Counter([target]):
        return None
    lifted = np.zeros((soc.dim, M.dim), dtype=np.int64)
    lifted[:, Q.columns] = soc.basis
    L2 = submodule(M, np.concatenate([L1, lifted], axis=0), check=False)
    rest = composition_factors(quotient(M, L2).module, amb)
    if any(z not in set(lower) for z in rest):
        return None
    return L1, L2.basis


def sandwich_report(images: dict, C: LinearCategory, lower_of: dict, target_of: dict | None = None) -> Report:
    amb = category_ambient(C)
    rep = Report("explicit L1 < L2 filtrations")
    for z in _sorted(images):
        t = z if target_of is None else target_of[z]
        found = module_sandwich(images[z].module, amb, lower_of[z], t)
        if images[z].dim > 64:
            rep.add(f"U{z}", "not-checkable", "module above the search bound")
        else:
            rep.expect(f"U{z}", found is not None,
                       "" if found else f"no filtration with head {t} over {_fmt_set(lower_of[z])}")
    return rep
