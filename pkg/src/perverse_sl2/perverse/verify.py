"""Per-step and per-block verification built from the pieces above."""
from __future__ import annotations

from ..homotopy.category import category_ambient
from ..homotopy.pipeline import PipelineResult, StepResult, block_category, run_pipeline
from ..modkernel import is_isomorphic
from ..report import NOT_CHECKABLE, Report
from ..schedule import plan
from .checks import (check_composition_criteria, check_okuyama_conditions,
                     check_simple_tracing, check_tpc)
from .data import FilteredPerverseData, coarsest_poset, to_poset, validate_filtered
from .images import (basic_module, build_simple_images, check_duality, images_profile,
                     sandwich_report, verify_smc)

PI_CONVENTION = "raise"   # U_z for z in I sits in degree -1, so pi = (0, 1, 0)


def step_sets(step, labels) -> tuple:
    I, J = frozenset(step.I), frozenset(step.J)
    return frozenset(labels) - I - J, I, J


def step_filtration(step, labels) -> FilteredPerverseData:
    S0, I, J = step_sets(step, labels)
    chain, pi = [S0, S0 | I, frozenset(labels)], [0, 1, 0]
    if not J:
        chain, pi = chain[:2], pi[:2]
    if not S0:
        chain, pi = chain[1:], pi[1:]
    return FilteredPerverseData(frozenset(labels), chain, pi)


def step_images(sr: StepResult) -> dict:
    C = sr.algebra
    S0, I, J = step_sets(sr.step, C.labels)
    key = "_images"
    cache = C.__dict__.setdefault(key, {})
    k = (S0, I, J)
    if k not in cache:
        cache[k] = build_simple_images(C, S0, I, J)
    return cache[k]


def check_step_perversity(sr: StepResult) -> Report:
    """U-images of one step: duality with the tilting family, SMC, filtration data."""
    C = sr.algebra
    st = sr.step
    rep = Report(f"perversity of step ({st.t},{st.c})")
    if C is None or sr.local is None:
        rep.add("images", NOT_CHECKABLE, "pipeline ran without local algebras")
        return rep
    ims = step_images(sr)
    rep.extend(check_duality(sr.local, ims, C), "duality: ")
    rep.extend(verify_smc(ims, category_ambient(C)), "smc: ")
    data = step_filtration(st, C.labels)
    prof = images_profile(ims, C)
    rep.extend(validate_filtered(prof, data), "filtered: ")
    lower = {z: data.target_lower(data.index(z)) for z in C.labels}
    rep.extend(sandwich_report(ims, C, lower), "sandwich: ")
    poset = coarsest_poset(prof, {z: -ims[z].degree for z in ims})
    finer = to_poset(data).closure()
    rep.expect("coarsest order refined by the filtration", poset.closure() <= finer,
               "edges " + ", ".join(f"{a}<{b}" for a, b in sorted(poset.order)),
               edges=sorted(poset.order), pi_convention=PI_CONVENTION)
    return rep


def check_green_images(ctx, block, sr: StepResult) -> Report:
    """At the first step, U_z for z in J agrees with T_z (x) M under Morita transport."""
    rep = Report(f"U-images against Green correspondents, step ({sr.step.t},{sr.step.c})")
    J = sorted(sr.step.J)
    if not J:
        rep.add("J", "vacuous", "empty J")
        return rep
    base = block_category(ctx, block)
    ims = build_simple_images(base, *step_sets(sr.step, base.labels))
    projs = ctx.block_projectives(block)
    for z in J:
        G = basic_module(base, projs, ctx.green_of_borel_simple(z))
        rep.expect(f"U{z} = T{z}(x)M", is_isomorphic(G, ims[z].module), f"dims {G.dim}, {ims[z].dim}")
    return rep


def verify_block(ctx, block, result: PipelineResult | None = None) -> list[Report]:
    """Every report for one block: tilting, hypotheses, perversity, composition."""
    steps = plan(ctx.q, block)
    if result is None:
        result = run_pipeline(ctx, block, steps)
    out = []
    for sr in result.steps:
        r = Report(f"tilting complex after step ({sr.step.t},{sr.step.c})")
        r.expect("Hom vanishing and generation", sr.report.ok, "; ".join(sr.report.lines()))
        out.append(r)
    if not steps:
        return out
    first = steps[0]
    out.append(check_tpc(ctx, block, first.I))
    out.append(check_okuyama_conditions(ctx, block, first.I))
    out.append(check_simple_tracing(ctx, block, first.I, first.K))
    for sr in result.steps[1:]:
        r = check_tpc(ctx, block, sr.step.I, family=sr.before)
        r.title += f" at step ({sr.step.t},{sr.step.c})"
        out.append(r)
    for sr in result.steps:
        out.append(check_step_perversity(sr))
    out.append(check_green_images(ctx, block, result.steps[0]))
    out.append(check_composition_criteria(ctx, block))
    return out
