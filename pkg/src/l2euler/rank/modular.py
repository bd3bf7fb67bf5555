"""Integer matrix rank: modular probes, sparse elimination and Bareiss."""

import random
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime, nextprime

from . import kernels

DENSE_LIMIT = 500
PRIME_LOW = 2 ** 30
PRIME_HIGH = 2 ** 31


@dataclass(frozen=True)
class RankPolicy:
    k: int = 3
    exact: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one probe prime")


@dataclass(frozen=True)
class RankResult:
    rank: int
    certainty: str
    primes: tuple = field(default=())


def random_primes(k, seed=0, modulus=1):
    """k distinct primes in [2^30, 2^31), each congruent to 1 mod ``modulus``."""
    rng = random.Random(seed)
    out = []
    if modulus <= 1:
        while len(out) < k:
            q = nextprime(rng.randrange(PRIME_LOW, PRIME_HIGH - 10 ** 6))
            if q not in out:
                out.append(int(q))
        return out
    lo = (PRIME_LOW - 1) // modulus + 1
    hi = (PRIME_HIGH - 1) // modulus
    if hi <= lo:
        raise ValueError("modulus %d too large for word-size probe primes" % modulus)
    tries = 0
    while len(out) < k:
        t = rng.randrange(lo, hi)
        q = t * modulus + 1
        tries += 1
        if q not in out and isprime(q):
            out.append(q)
        if tries > 10 ** 6:
            raise RuntimeError("could not find probe primes")
    return out


def _as_array(M):
    if isinstance(M, np.ndarray):
        return M
    return np.array(M, dtype=object if _has_big(M) else np.int64)


def _has_big(M):
    for row in M:
        for x in row:
            if abs(int(x)) >= 2 ** 62:
                return True
    return False


def _reduce_mod(M, p):
    A = _as_array(M)
    if A.dtype == object:
        A = np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(A) if A.size else A.astype(np.int64)
    else:
        A = np.mod(A, p)
    return A.astype(np.int64)


def sparse_rank_mod_p(rows, ncols, p):
    """Rank of a sparse matrix given as a list of {col: value} dicts.

    Pivots are chosen Markowitz style: the shortest remaining row, and in it
    the column with the fewest entries.
    """
    rows = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    rows = [r for r in rows if r]
    colidx = {}
    for i, r in enumerate(rows):
        for c in r:
            colidx.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    rank = 0
    while alive:
        i = min(alive, key=lambda t: (len(rows[t]), t))
        r = rows[i]
        alive.discard(i)
        if not r:
            continue
        c = min(r, key=lambda t: (len(colidx[t]), t))
        inv = pow(r[c], p - 2, p)
        for j in list(colidx[c]):
            if j == i or j not in alive:
                continue
            s = rows[j]
            f = (s[c] * inv) % p
            for cc, v in r.items():
                nv = (s.get(cc, 0) - f * v) % p
                if nv:
                    if cc not in s:
                        colidx.setdefault(cc, set()).add(j)
                    s[cc] = nv
                elif cc in s:
                    del s[cc]
                    colidx[cc].discard(j)
            if not s:
                alive.discard(j)
        for cc in r:
            colidx[cc].discard(i)
        rank += 1
    return rank


def _to_sparse_rows(A):
    out = []
    for row in A:
        nz = np.nonzero(row)[0]
        out.append({int(c): int(row[c]) for c in nz})
    return out


def rank_mod_p(M, p):
    A = _reduce_mod(M, p)
    if A.ndim != 2 or A.size == 0:
        return 0
    n, m = A.shape
    if n > DENSE_LIMIT or m > DENSE_LIMIT:
        density = np.count_nonzero(A) / float(n * m)
        if density < 0.05:
            return sparse_rank_mod_p(_to_sparse_rows(A), m, p)
    return kernels.rank_mod_p_dense(A, p)


def rank_exact(M):
    """Fraction-free (Bareiss) elimination over the integers."""
    A = [[int(x) for x in row] for row in (M.tolist() if isinstance(M, np.ndarray) else M)]
    n = len(A)
    m = len(A[0]) if n else 0
    r = 0
    prev = 1
    for c in range(m):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        a = A[r][c]
        for i in range(r + 1, n):
            b = A[i][c]
            row_i = A[i]
            row_r = A[r]
            for j in range(c + 1, m):
                row_i[j] = (a * row_i[j] - b * row_r[j]) // prev
            row_i[c] = 0
        prev = a
        r += 1
    return r


def rank_rational(M, policy=None):
    policy = policy or RankPolicy()
    if policy.exact:
        return RankResult(rank_exact(M), "certified", ())
    primes = tuple(random_primes(policy.k, policy.seed))
    best = max(rank_mod_p(M, p) for p in primes)
    A = _as_array(M)
    if A.size and best == min(A.shape):
        # full rank modulo a prime is full rank over Q
        return RankResult(best, "certified", primes)
    return RankResult(best, "probabilistic", primes)


def dump_triplets(M, path):
    """Write ``row col value`` lines (0-based) for the nonzero entries."""
    A = _as_array(M)
    with open(path, "w") as fh:
        for i, j in zip(*np.nonzero(A)):
            fh.write("%d %d %d\n" % (i, j, int(A[i, j])))
