"""Binary matrix container: ``PTWMAT1`` then p, n, rows, cols (u32 LE) and
row-major entries, each as n coefficient bytes."""
from __future__ import annotations

import struct

import numpy as np

from .field import GF, make_field

MAGIC = b"PTWMAT1"


class FormatError(ValueError):
    pass


def dump_matrix(F: GF, M: np.ndarray) -> bytes:
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    if F.p > 255:
        raise FormatError("coefficients do not fit in one byte")
    head = MAGIC + struct.pack("<4I", F.p, F.n, rows, cols)
    digits = F.digits(M.reshape(-1))  # (n, rows*cols)
    return head + np.ascontiguousarray(digits.T).astype(np.uint8).tobytes()


def load_matrix(buf: bytes, offset: int = 0) -> tuple[GF, np.ndarray, int]:
    """Parse one matrix at ``offset``; return (field, matrix, next offset)."""
    if buf[offset:offset + len(MAGIC)] != MAGIC:
        raise FormatError("bad matrix magic")
    pos = offset + len(MAGIC)
    try:
        p, n, rows, cols = struct.unpack_from("<4I", buf, pos)
    except struct.error as exc:
        raise FormatError("truncated matrix header") from exc
    pos += 16
    size = rows * cols * n
    raw = buf[pos:pos + size]
    if len(raw) != size:
        raise FormatError("truncated matrix body")
    F = make_field(p, n)
    digits = np.frombuffer(raw, dtype=np.uint8).astype(np.int64).reshape(rows * cols, n).T
    if np.any(digits >= p):
        raise FormatError("coefficient out of range")
    M = F.from_digits(digits).reshape(rows, cols)
    return F, M, pos + size
