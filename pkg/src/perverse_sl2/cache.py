"""On-disk cache of pipeline results.

A ``PTWCPX1`` file is the magic, a u32 header length, a JSON header and a
run of ``PTWMAT1`` matrices.  The header describes the basic algebra and
every step family; matrices appear in the order the header refers to them.
Entries are content addressed by (version, q, block, seed, computation).
"""
from __future__ import annotations

import hashlib
import json
import os
import struct
from pathlib import Path

import numpy as np

from . import __version__
from .exactla import dump_matrix, load_matrix
from .exactla.serialize import FormatError
from .homotopy import Family, LinearCategory, PipelineResult, StepResult, TiltingReport, stalk_family
from .homotopy.complexes import ProjectiveComplex, bm
from .schedule import Step

MAGIC = b"PTWCPX1"


class CacheError(FormatError):
    pass


def cache_key(q: int, block: str, seed: int, what: str) -> str:
    raw = json.dumps([__version__, q, block, seed, what]).encode()
    return hashlib.sha256(raw).hexdigest()[:32]


class _Writer:
    def __init__(self, F):
        self.F = F
        self.mats: list[bytes] = []

    def add(self, M) -> int:
        self.mats.append(dump_matrix(self.F, np.asarray(M, dtype=np.int64)))
        return len(self.mats) - 1


def _dump_complex(w: _Writer, X: ProjectiveComplex) -> dict:
    diffs = {}
    for k, d in sorted(X.diffs.items()):
        diffs[str(k)] = [[i, j, w.add(np.asarray(v).reshape(1, -1))] for (i, j), v in sorted(d.ent.items())]
    return {"terms": {str(k): list(v) for k, v in sorted(X.terms.items())}, "diffs": diffs}


def dump_pipeline(res: PipelineResult, q: int, block: str) -> bytes:
    C = res.base
    w = _Writer(C.field)
    const = []
    for (a, b, c), T in sorted(C.const.items()):
        const.append([a, b, c, list(T.shape), w.add(T.reshape(T.shape[0] * T.shape[1], T.shape[2]))])
    steps = []
    for sr in res.steps:
        st, rp = sr.step, sr.report
        steps.append({
            "t": st.t, "c": st.c, "I": sorted(st.I), "J": sorted(st.J), "labels": list(st.labels),
            "report": {"ok": rp.ok, "amplitude": rp.amplitude, "det": rp.det, "checked": rp.checked,
                       "nonzero": [list(x) for x in rp.nonzero],
                       "grothendieck": rp.grothendieck.astype(int).tolist()},
            "family": {str(z): _dump_complex(w, X) for z, X in sr.after.members.items()},
        })
    header = {"version": __version__, "q": q, "block": block, "p": C.field.p, "n": C.field.n,
              "labels": list(C.labels), "name": C.name,
              "dims": [[a, b, d] for (a, b), d in sorted(C.dims.items())],
              "const": const, "steps": steps}
    head = json.dumps(header, sort_keys=True).encode()
    return MAGIC + struct.pack("<I", len(head)) + head + b"".join(w.mats)


def load_pipeline(buf: bytes) -> PipelineResult:
    if buf[:len(MAGIC)] != MAGIC:
        raise CacheError("bad cache magic")
    try:
        (n,) = struct.unpack_from("<I", buf, len(MAGIC))
        start = len(MAGIC) + 4
        header = json.loads(buf[start:start + n].decode())
    except (struct.error, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CacheError(f"unreadable cache header: {exc}") from exc
    if header.get("version") != __version__:
        raise CacheError("cache written by another version")
    mats, pos = [], start + n
    while pos < len(buf):
        _, M, pos = load_matrix(buf, pos)
        mats.append(M)
    from .exactla import make_field
    F = make_field(header["p"], header["n"])
    try:
        labels = tuple(header["labels"])
        dims = {(a, b): d for a, b, d in header["dims"]}
        const = {(a, b, c): mats[i].reshape(shape) for a, b, c, shape, i in header["const"]}
        C = LinearCategory(F, labels, dims, const, None, header["name"])
        res = PipelineResult(C, stalk_family(C))
        before = res.initial
        for s in header["steps"]:
            members = {}
            for z, d in s["family"].items():
                terms = {int(k): tuple(v) for k, v in d["terms"].items()}
                diffs = {}
                for k, ents in d["diffs"].items():
                    k = int(k)
                    diffs[k] = bm(terms.get(k, ()), terms.get(k + 1, ()),
                                  {(i, j): mats[m].reshape(-1) for i, j, m in ents})
                members[int(z)] = ProjectiveComplex(C, terms, diffs, int(z))
            after = Family(C, members)
            r = s["report"]
            rep = TiltingReport(r["ok"], r["amplitude"], [tuple(x) for x in r["nonzero"]],
                                np.array(r["grothendieck"], dtype=np.int64).reshape(len(labels), -1),
                                r["det"], r["checked"])
            st = Step(s["t"], s["c"], frozenset(s["I"]), frozenset(s["J"]), tuple(s["labels"]))
            res.steps.append(StepResult(st, before, after, rep))
            before = after
    except (KeyError, IndexError, ValueError, TypeError) as exc:
        raise CacheError(f"inconsistent cache entry: {exc}") from exc
    return res


class Cache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None
        self.warnings: list[str] = []

    def path(self, key: str) -> Path | None:
        return None if self.root is None else self.root / f"{key}.ptwcpx"

    def get(self, key: str):
        p = self.path(key)
        if p is None or not p.exists():
            return None
        try:
            return load_pipeline(p.read_bytes())
        except FormatError as exc:
            self.warnings.append(f"cache entry {p.name} ignored: {exc}")
            return None

    def put(self, key: str, res: PipelineResult, q: int, block: str) -> None:
        p = self.path(key)
        if p is None:
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_bytes(dump_pipeline(res, q, block))
        tmp.replace(p)
