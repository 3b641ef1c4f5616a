"""Command line driver: ``perverse-sl2 <command> --p P --n N [options]``.

Exit codes: 0 ok, 1 a verification check failed, 2 usage error, 3 internal
error (for instance an undecided isomorphism test).
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .cache import Cache, cache_key
from .exactla import is_prime
from .report import FAIL, Report

DEFAULT_SEED = 20240611
MAX_Q = 2 ** 20
SMALL_NAMES = {4: {0: "k", 1: "V", 2: "W", 3: "St"}}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int
    n: int
    block: str | None
    seed: int
    cache_dir: str | None
    output: str

    @property
    def q(self) -> int:
        return self.p ** self.n


@dataclass
class RunReport:
    config: RunConfig
    lines: list = field(default_factory=list)       # text body
    data: dict = field(default_factory=dict)        # structured body
    sections: list = field(default_factory=list)    # Report objects
    warnings: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def failed(self) -> bool:
        return any(not r.ok for r in self.sections)


def label_name(q: int, z: int) -> str:
    return SMALL_NAMES.get(q, {}).get(z, str(z))


def _fmt(xs) -> str:
    return "{" + ",".join(str(x) for x in sorted(xs)) + "}"


# ---------------------------------------------------------------- config

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic (a prime)")
    common.add_argument("--n", type=int, default=1, help="q = p^n")
    common.add_argument("--block", choices=["principal", "nonprincipal", "merged"],
                        help="full-defect block (default: all)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="unsigned 64-bit seed")
    common.add_argument("--cache-dir", default=None, help="directory for cached pipeline runs")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    ap = argparse.ArgumentParser(prog="perverse-sl2", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in [("schedule", "orbit partition and refined cells"),
                       ("simples", "simple modules and their blocks"),
                       ("projectives", "Loewy series of the projective indecomposables"),
                       ("pipeline", "run the tilting string and print summand families"),
                       ("verify", "run the full check battery"),
                       ("selftest", "quick internal consistency checks")]:
        sub.add_parser(name, parents=[common], help=text)
    return ap


def make_config(ns: argparse.Namespace) -> RunConfig:
    if not is_prime(ns.p):
        raise UsageError("p must be prime")
    if ns.n < 1:
        raise UsageError("n must be positive")
    if ns.p ** ns.n > MAX_Q:
        raise UsageError(f"q = {ns.p}^{ns.n} exceeds {MAX_Q}")
    if not 0 <= ns.seed < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    if ns.block:
        if ns.p == 2 and ns.block == "nonprincipal":
            raise UsageError("for p = 2 there is a single full-defect block")
        if ns.p != 2 and ns.block == "merged":
            raise UsageError("the merged block only exists for p = 2")
    return RunConfig(ns.command, ns.p, ns.n, ns.block, ns.seed, ns.cache_dir, ns.format)


def selected_blocks(cfg: RunConfig) -> list:
    from .sl2data import block_by_name, blocks

    if cfg.block:
        return [block_by_name(cfg.q, cfg.block)]
    return blocks(cfg.q)


# --------------------------------------------------------------- commands

def cmd_schedule(cfg: RunConfig, out: RunReport) -> None:
    from .schedule import schedule

    sch = schedule(cfg.q)
    out.lines.append(f"K[-1]={_fmt(sch.K[-1])}")
    rows = {"K[-1]": sorted(sch.K[-1])}
    for t in sorted(sch.I):
        out.lines.append(f"K[{t}]={_fmt(sch.K[t])} I[{t}]={_fmt(sch.I[t])} J[{t}]={_fmt(sch.J[t])}")
        rows[f"t={t}"] = {"K": sorted(sch.K[t]), "I": sorted(sch.I[t]), "J": sorted(sch.J[t]),
                          "parity": sch.parity(t)}
    for t in sorted(sch.refined):
        for c, cell in enumerate(sch.refined[t]):
            out.lines.append(f"K[{t},{c}]={_fmt(cell.K)} I[{t},{c}]={_fmt(cell.I)} J[{t},{c}]={_fmt(cell.J)}")
            rows[f"cell {t},{c}"] = {"K": sorted(cell.K), "I": sorted(cell.I), "J": sorted(cell.J)}
    out.data["schedule"] = rows


def cmd_simples(cfg: RunConfig, out: RunReport) -> None:
    from .sl2data import digits, simple_module

    q = cfg.q
    rows = {}
    for z in range(q):
        S = simple_module(q, z)
        blk = "defect zero" if z == q - 1 else ("merged" if q % 2 == 0 else
                                                ("principal" if z % 2 == 0 else "nonprincipal"))
        if cfg.block and blk != cfg.block:
            continue
        dg = list(digits(q, z))
        out.lines.append(f"S{label_name(q, z)}: dim {S.dim}, digits {dg}, block {blk}")
        rows[label_name(q, z)] = {"dim": S.dim, "digits": dg, "block": blk}
    out.data["simples"] = rows


def cmd_projectives(cfg: RunConfig, out: RunReport) -> None:
    from .modkernel import loewy_layers
    from .sl2data import context

    q = cfg.q
    ctx = context(q)
    labels = [z for b in selected_blocks(cfg) for z in b.labels]
    if not cfg.block:
        labels.append(q - 1)
    rows = {}
    for z in labels:
        P = ctx.projective(z)
        layers = loewy_layers(P, ctx.group).layers
        names = [" ".join(label_name(q, x) for x in sorted(c.elements())) for c in layers]
        out.lines.append(f"P{label_name(q, z)} (dim {P.dim}): " + " | ".join(names))
        rows[label_name(q, z)] = {"dim": P.dim, "layers": names}
    out.data["projectives"] = rows


def _pipeline(cfg: RunConfig, out: RunReport, block, local: bool):
    from .homotopy import run_pipeline
    from .schedule import plan
    from .sl2data import context

    cache = Cache(cfg.cache_dir)
    key = cache_key(cfg.q, block.parity, cfg.seed, "pipeline")
    res = None if local else cache.get(key)
    out.warnings.extend(cache.warnings)
    hit = res is not None
    if res is None:
        res = run_pipeline(context(cfg.q), block, plan(cfg.q, block), local=local)
        cache.put(key, res, cfg.q, block.parity)
    return res, hit


def cmd_pipeline(cfg: RunConfig, out: RunReport) -> None:
    for block in selected_blocks(cfg):
        res, hit = _pipeline(cfg, out, block, local=False)
        out.lines.append(f"block {block.parity}" + (" (cached)" if hit else ""))
        bdata = {}
        for idx, sr in enumerate(res.steps):
            st = sr.step
            letter = "R" if idx == len(res.steps) - 1 else "Q"
            out.lines.append(f"step ({st.t},{st.c}) I={_fmt(st.I)} J={_fmt(st.J)}"
                             f" det={sr.report.det} amplitude={sr.report.amplitude}")
            fam = sr.after.notation()
            for z in sorted(fam):
                out.lines.append(f"{letter}{z}: {fam[z]}")
            bdata[f"step {st.t},{st.c}"] = {"I": sorted(st.I), "J": sorted(st.J), "det": sr.report.det,
                                            "tilting": sr.report.ok,
                                            "family": {f"{letter}{z}": fam[z] for z in sorted(fam)}}
            r = Report(f"tilting after step ({st.t},{st.c})")
            r.expect("Hom vanishing and generation", sr.report.ok, f"det {sr.report.det}")
            out.sections.append(r)
        out.data[block.parity] = bdata


def cmd_verify(cfg: RunConfig, out: RunReport) -> None:
    from .perverse import verify_block
    from .sl2data import context

    ctx = context(cfg.q)
    for block in selected_blocks(cfg):
        if len(block.labels) < 2:
            out.lines.append(f"block {block.parity}: nothing to verify")
            continue
        res, _ = _pipeline(cfg, out, block, local=True)
        for rep in verify_block(ctx, block, res):
            rep.title = f"[{block.parity}] {rep.title}"
            out.sections.append(rep)
            out.lines.extend(rep.lines())


def cmd_selftest(cfg: RunConfig, out: RunReport) -> None:
    import numpy as np

    from .exactla import field_of_order, linalg, rref
    from .modkernel import rng_for
    from .schedule import schedule

    rep = Report("selftest")
    F = field_of_order(cfg.q)
    rng = rng_for("selftest", cfg.seed)
    agree = True
    if linalg.compiled_available():
        for _ in range(20):
            M = rng.integers(0, F.q, size=(7, 9))
            linalg.set_backend("compiled")
            a = rref(F, M)
            linalg.set_backend("pure")
            b = rref(F, M)
            linalg.set_backend("compiled")
            agree &= np.array_equal(a.R, b.R) and a.pivots == b.pivots
        rep.expect("compiled and pure elimination agree", agree)
    else:
        rep.add("compiled and pure elimination agree", "not-checkable", "extension not built")
    sch = schedule(cfg.q)
    cover = set().union(*sch.K.values())
    rep.expect("schedule covers the block labels", cover == set(range(cfg.q - 1)), _fmt(cover))
    out.sections.append(rep)
    out.lines.extend(rep.lines())


COMMANDS = {"schedule": cmd_schedule, "simples": cmd_simples, "projectives": cmd_projectives,
            "pipeline": cmd_pipeline, "verify": cmd_verify, "selftest": cmd_selftest}


# ----------------------------------------------------------------- output

def _emit(obj, indent: int, lines: list) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, dict) for x in v))
            if nested and v:
                lines.append(f"{pad}{k}:")
                _emit(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                _emit(v, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def structured(out: RunReport) -> str:
    from .perverse import PI_CONVENTION
    from .sl2data.modules import BOREL_SIGN

    c = out.config
    doc = {
        "tool": f"perverse-sl2 {__version__}",
        "command": c.command,
        "config": {"p": c.p, "n": c.n, "q": c.q, "block": c.block or "all", "seed": c.seed},
        "conventions": {"borel_sign": BOREL_SIGN, "pi": PI_CONVENTION},
        "status": FAIL if out.failed else "ok",
        "warnings": list(out.warnings),
        "result": out.data,
        "checks": [r.as_dict() for r in out.sections],
    }
    lines: list[str] = []
    _emit(doc, 0, lines)
    return "\n".join(lines) + "\n"


def text(out: RunReport) -> str:
    lines = list(out.lines)
    lines.extend(f"warning: {w}" for w in out.warnings)
    if out.sections:
        lines.append("verification: " + ("FAIL" if out.failed else "ok"))
    lines.append(f"time: {out.timing:.2f} s")
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> RunReport:
    from .modkernel import set_global_seed

    set_global_seed(cfg.seed)
    out = RunReport(cfg)
    t0 = time.perf_counter()
    COMMANDS[cfg.command](cfg, out)
    out.timing = time.perf_counter() - t0
    return out


def main(argv=None) -> int:
    from .homotopy import CategoryError, PipelineError
    from .modkernel import ModuleError, SplitError, UndecidedIsomorphism

    ap = _parser()
    ns = ap.parse_args(argv)
    try:
        cfg = make_config(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out = run(cfg)
    except (UndecidedIsomorphism, SplitError, PipelineError, ModuleError, CategoryError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(structured(out) if cfg.output == "structured" else text(out))
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
