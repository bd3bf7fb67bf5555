"""Pure numpy versions of the compiled kernels, same signatures."""

import numpy as np


def rank_mod_p_dense(M, p):
    A = np.mod(np.asarray(M), p).astype(np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0
    n, m = A.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if len(below):
            f = A[below, c][:, None]
            A[np.ix_(below, np.arange(c, m))] = (A[below, c:] - f * A[r, c:][None, :]) % p
        r += 1
    return int(r)


def rank_mod_p_batch(M, p):
    """Vectorised elimination over a stack of matrices."""
    A = np.mod(np.asarray(M), p).astype(np.int64)
    nb, n, m = A.shape
    rank = np.zeros(nb, dtype=np.int64)
    if n == 0 or m == 0 or nb == 0:
        return rank
    rows = np.arange(n)
    bidx = np.arange(nb)
    for c in range(m):
        active = rank < n
        if not active.any():
            break
        col = A[:, :, c]
        cand = (col != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1) & active
        if not has.any():
            continue
        b = bidx[has]
        r = rank[has]
        piv = np.argmax(cand[has], axis=1)
        # swap pivot row into position r
        top = A[b, r, :].copy()
        A[b, r, :] = A[b, piv, :]
        A[b, piv, :] = top
        pv = A[b, r, c]
        inv = np.array([pow(int(x), p - 2, p) for x in pv], dtype=np.int64)
        A[b, r, :] = (A[b, r, :] * inv[:, None]) % p
        prow = A[b, r, :]
        f = A[b, :, c]
        mask = rows[None, :] > r[:, None]
        f = np.where(mask, f, 0)
        A[b] = (A[b] - (f[:, :, None] * prow[:, None, :]) % p) % p
        rank[has] += 1
    return rank
