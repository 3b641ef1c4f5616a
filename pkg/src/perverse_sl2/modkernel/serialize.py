"""``PTWREP1`` container: header, p, n, dim, generator count (u32 LE), the
generator matrices as ``PTWMAT1`` records, then the tag as a u32 length and
UTF-8 bytes."""
from __future__ import annotations

import struct

from ..exactla.serialize import FormatError, dump_matrix, load_matrix
from ..exactla import make_field
from .rep import Representation

MAGIC = b"PTWREP1"


def dump_representation(M: Representation) -> bytes:
    F = M.field
    parts = [MAGIC, struct.pack("<4I", F.p, F.n, M.dim, M.ngens)]
    parts += [dump_matrix(F, g) for g in M.generators]
    tag = (M.tag or "").encode("utf-8")
    parts.append(struct.pack("<I", len(tag)) + tag)
    return b"".join(parts)


def load_representation(buf: bytes, offset: int = 0, kind: str = "group") -> tuple[Representation, int]:
    if buf[offset:offset + len(MAGIC)] != MAGIC:
        raise FormatError("bad representation magic")
    pos = offset + len(MAGIC)
    try:
        p, n, dim, ngens = struct.unpack_from("<4I", buf, pos)
    except struct.error as exc:
        raise FormatError("truncated representation header") from exc
    pos += 16
    F = make_field(p, n)
    gens = []
    for _ in range(ngens):
        G, g, pos = load_matrix(buf, pos)
        if G is not F or g.shape != (dim, dim):
            raise FormatError("generator does not match header")
        gens.append(g)
    try:
        (ln,) = struct.unpack_from("<I", buf, pos)
    except struct.error as exc:
        raise FormatError("truncated tag") from exc
    pos += 4
    raw = buf[pos:pos + ln]
    if len(raw) != ln:
        raise FormatError("truncated tag")
    return Representation(F, dim, gens, raw.decode("utf-8") or None, kind), pos + ln
