"""Pure numpy Gauss-Jordan elimination; same contract as the compiled kernel."""
import numpy as np


def rref_inplace(F, M: np.ndarray) -> list[int]:
    rows, cols = M.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            M[[r, pr], c:] = M[[pr, r], c:]
        lead = int(M[r, c])
        if lead != 1:
            M[r, c:] = F.mul(M[r, c:], int(F.inv(lead)))
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            upd = F.mul(F.neg(col[hit])[:, None], M[r, c:][None, :])
            M[hit, c:] = F.add(M[hit, c:], upd)
        pivots.append(c)
        r += 1
    return pivots
