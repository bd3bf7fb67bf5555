"""Rank of the regular representation of an abelian group via characters.

Over F_q with q = 1 mod exp(L) the group algebra F_q[L] splits into |L|
copies of F_q, one per character, so the rank of the |L|-fold blown-up
matrix is the sum of the ranks of the |L| character images of B.
"""

import math
from collections import deque

import numpy as np
from sympy import primefactors

from . import kernels


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def character_table(T):
    """Exponent matrix E (|L| x |L|) with chi_a(g_b) = zeta_M^E[a, b]."""
    moduli = T.q.moduli
    M = _lcm(moduli) if moduli else 1
    n = T.order
    if n == 1:
        return np.zeros((1, 1), dtype=np.int64), M
    scale = np.array([M // m for m in moduli], dtype=np.int64)
    H = np.array(T.hermite, dtype=np.int64).reshape(len(T.hermite), -1) * scale
    r = len(moduli)
    start = (0,) * r
    seen = {tuple([0] * len(H)): start}
    queue = deque([start])
    while queue and len(seen) < n:
        k = queue.popleft()
        for i in range(r):
            k2 = list(k)
            k2[i] = (k2[i] + 1) % moduli[i]
            k2 = tuple(k2)
            key = tuple(int(v) for v in (H @ np.array(k2, dtype=np.int64)) % M)
            if key not in seen:
                seen[key] = k2
                queue.append(k2)
    if len(seen) != n:
        raise RuntimeError("character enumeration found %d of %d characters" % (len(seen), n))
    K = np.array(sorted(seen.values()), dtype=np.int64)
    G = np.array(T.elements, dtype=np.int64).reshape(n, -1) * scale
    E = (K @ G.T) % M
    return E, M


def root_of_unity(M, q):
    """A primitive M-th root of unity modulo the prime q (q = 1 mod M)."""
    if M == 1:
        return 1
    if (q - 1) % M:
        raise ValueError("q - 1 is not divisible by %d" % M)
    fac = primefactors(M)
    a = 2
    while True:
        z = pow(a, (q - 1) // M, q)
        if all(pow(z, M // l, q) != 1 for l in fac):
            return z
        a += 1


def character_images(B, T, E, M, q):
    """Array (|L|, rows, cols) of the character images of B modulo q."""
    rows = len(B)
    cols = len(B[0]) if rows else 0
    n = T.order
    z = root_of_unity(M, q)
    zpow = np.array([pow(z, e, q) for e in range(M)], dtype=np.int64)
    out = np.zeros((E.shape[0], rows, cols), dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            e = B[r][c]
            if not e:
                continue
            idx = np.fromiter(e.keys(), dtype=np.int64, count=len(e))
            coef = np.array([int(v) % q for v in e.values()], dtype=np.int64)
            vals = zpow[E[:, idx]]
            out[:, r, c] = ((vals * coef[None, :]) % q).sum(axis=1) % q
    return out


def abelian_rank_mod_q(B, T, q, table=None):
    if not B or not B[0]:
        return 0
    E, M = table or character_table(T)
    imgs = character_images(B, T, E, M, q)
    return int(kernels.rank_mod_p_batch(imgs, q).sum())


def exponent(T):
    moduli = T.q.moduli
    return _lcm(moduli) if moduli else 1
