"""Pivot on unit entries (+-g) of a group-ring matrix before blowing it up."""

from ..ring import GroupRingElement


class _FreeOps:
    zero = GroupRingElement()

    @staticmethod
    def is_unit(x):
        return x.is_monomial()

    @staticmethod
    def unit_inverse(x):
        (w, c), = x.terms.items()
        return GroupRingElement.word(tuple((g, -e) for g, e in reversed(w)), c)

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def sub(x, y):
        return x - y

    @staticmethod
    def nonzero(x):
        return bool(x.terms)


class _TableOps:
    """Entries are dicts {element index: coefficient} over a SubgroupTable."""

    def __init__(self, T):
        self.T = T
        self.zero = {}
        self._inv = {}

    @staticmethod
    def is_unit(x):
        if len(x) != 1:
            return False
        (c,) = x.values()
        return c in (1, -1)

    def unit_inverse(self, x):
        (g, c), = x.items()
        inv = self._inv.get(g)
        if inv is None:
            T = self.T
            inv = T.index[T.q.inv(T.elements[g])]
            self._inv[g] = inv
        return {inv: c}

    def mul(self, x, y):
        T = self.T
        out = {}
        for g, a in x.items():
            for h, b in y.items():
                k = T.mul_index(g, h)
                s = out.get(k, 0) + a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    @staticmethod
    def sub(x, y):
        out = dict(x)
        for g, b in y.items():
            s = out.get(g, 0) - b
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return out

    @staticmethod
    def nonzero(x):
        return bool(x)


def unit_shrink(B, T=None):
    """Return (B', pivots) with rank(B) = pivots*|L| + rank(B').

    Only row operations are used: for a unit pivot u in column c, every other
    row gets row_i -= (B[i][c] u^-1) row_p, after which row p and column c
    split off as a unit block.
    """
    ops = _FreeOps() if T is None else _TableOps(T)
    M = [list(row) for row in B]
    rows = list(range(len(M)))
    cols = list(range(len(M[0]) if M else 0))
    pivots = 0
    while True:
        best = None
        for i in rows:
            ri = M[i]
            weight = sum(1 for j in cols if ops.nonzero(ri[j]))
            for j in cols:
                e = ri[j]
                if ops.nonzero(e) and ops.is_unit(e):
                    colw = sum(1 for t in rows if ops.nonzero(M[t][j]))
                    key = ((weight - 1) * (colw - 1), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, p, c = best
        uinv = ops.unit_inverse(M[p][c])
        prow = M[p]
        for i in rows:
            if i == p or not ops.nonzero(M[i][c]):
                continue
            lam = ops.mul(M[i][c], uinv)
            ri = M[i]
            for j in cols:
                if ops.nonzero(prow[j]):
                    ri[j] = ops.sub(ri[j], ops.mul(lam, prow[j]))
        rows.remove(p)
        cols.remove(c)
        pivots += 1
    return [[M[i][j] for j in cols] for i in rows], pivots
