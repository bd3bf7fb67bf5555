"""Finite quotients of a presented group and regular representations."""

import itertools
import math
import re
from collections import deque

import numpy as np

from .group import abelianize
from .snf import hermite_rows


class InvalidQuotient(ValueError):
    pass


class SizeLimitError(RuntimeError):
    pass


def _perm_mul(g, h):
    # apply g, then h
    return tuple(h[i] for i in g)


def _perm_inv(g):
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


class FiniteQuotient:
    """A homomorphism from a presented group onto a finite group.

    Abelian elements are coordinate tuples modulo ``moduli``; permutation
    elements are tuples ``g`` with ``g[i]`` the image of point ``i``, and
    products act on the right (``g*h`` applies g first).
    """

    def __init__(self, kind, presentation, gen_images, moduli=(), description=None):
        self.kind = kind
        self.presentation = presentation
        self.gen_images = tuple(gen_images)
        self.moduli = tuple(moduli)
        self.description = description or kind
        self._cache = {}
        if kind == "perm":
            self._inv_images = tuple(_perm_inv(g) for g in self.gen_images)
            self.degree = len(self.gen_images[0]) if self.gen_images else 0
        for r in presentation.relators:
            if self.eval(r) != self.identity:
                raise InvalidQuotient("relator does not map to the identity")

    def __repr__(self):
        return "FiniteQuotient(%s)" % self.description

    @property
    def identity(self):
        if self.kind == "abelian":
            return (0,) * len(self.moduli)
        if self.kind == "perm":
            return tuple(range(self.degree))
        return ()

    def mul(self, g, h):
        if self.kind == "abelian":
            return tuple((a + b) % m for a, b, m in zip(g, h, self.moduli))
        if self.kind == "perm":
            return _perm_mul(g, h)
        return ()

    def inv(self, g):
        if self.kind == "abelian":
            return tuple((-a) % m for a, m in zip(g, self.moduli))
        if self.kind == "perm":
            return _perm_inv(g)
        return ()

    def power(self, g, n):
        if self.kind == "abelian":
            return tuple((a * n) % m for a, m in zip(g, self.moduli))
        if n < 0:
            g, n = self.inv(g), -n
        out = self.identity
        base = g
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def eval(self, w):
        got = self._cache.get(w)
        if got is not None:
            return got
        if self.kind == "abelian":
            acc = [0] * len(self.moduli)
            for g, e in w:
                for k, a in enumerate(self.gen_images[g]):
                    acc[k] += e * a
            out = tuple(a % m for a, m in zip(acc, self.moduli))
        elif self.kind == "perm":
            out = self.identity
            for g, e in w:
                im = self.gen_images[g] if e > 0 else self._inv_images[g]
                for _ in range(abs(e)):
                    out = _perm_mul(out, im)
        else:
            out = ()
        if len(self._cache) < 200000:
            self._cache[w] = out
        return out

    def ring_image(self, x):
        """Push a group-ring element forward: dict element -> coefficient."""
        out = {}
        for w, c in x.terms.items():
            k = self.eval(w)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def order(self, limit=10 ** 6):
        if self.kind == "abelian":
            gens = [self.eval(((g, 1),)) for g in range(self.presentation.ngens)]
            return subgroup_closure_elements(self, gens).order
        if self.kind == "perm":
            return len(_bfs_closure(self, list(self.gen_images), limit))
        return 1


def trivial_quotient(p):
    return FiniteQuotient("trivial", p, [()] * p.ngens, description="trivial")


def abelian_quotient(p, prime_powers, ab=None):
    """G^ab tensor Z/p^c for each listed prime power, as one product."""
    ab = ab or abelianize(p)
    nt = len(ab.torsion)
    moduli = []
    columns = []  # (coordinate index in ab.images, modulus)
    for q in prime_powers:
        q = int(q)
        if q < 2:
            raise ValueError("prime power must be at least 2")
        for k, t in enumerate(ab.torsion):
            g = math.gcd(t, q)
            if g > 1:
                columns.append((k, g))
        for k in range(ab.free_rank):
            columns.append((nt + k, q))
    if not columns:
        return trivial_quotient(p)
    moduli = [m for _, m in columns]
    images = [tuple(img[k] % m for k, m in columns) for img in ab.images]
    desc = "abelian:" + ",".join(str(int(q)) for q in prime_powers)
    return FiniteQuotient("abelian", p, images, moduli, description=desc)


def exps_to_prime_powers(exps):
    """(0,2) -> [9]: exponent c_i for the i-th prime."""
    out = []
    primes = _first_primes(len(exps))
    for p, c in zip(primes, exps):
        if c:
            out.append(p ** c)
    return out


def _first_primes(n):
    out = []
    k = 2
    while len(out) < n:
        if all(k % p for p in out):
            out.append(k)
        k += 1
    return out


def parse_cycles(text, degree=None):
    """Parse cycle notation such as ``(1,2)(3,4,5)``; points are 1-based."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    pts = []
    parsed = []
    for c in cycles:
        items = [int(t) for t in re.split(r"[,\s]+", c.strip()) if t]
        parsed.append(items)
        pts.extend(items)
    n = degree or (max(pts) if pts else 1)
    perm = list(range(n))
    for items in parsed:
        for a, b in zip(items, items[1:] + items[:1]):
            if not (1 <= a <= n and 1 <= b <= n):
                raise InvalidQuotient("point outside 1..%d" % n)
            perm[a - 1] = b - 1
    if sorted(perm) != list(range(n)):
        raise InvalidQuotient("not a permutation: %r" % text)
    return tuple(perm)


def perm_quotient(p, images):
    images = [tuple(g) for g in images]
    if len(images) != p.ngens:
        raise InvalidQuotient("need one permutation per generator")
    n = max(len(g) for g in images) if images else 1
    padded = []
    for g in images:
        if sorted(g) != list(range(len(g))):
            raise InvalidQuotient("not a permutation")
        padded.append(tuple(g) + tuple(range(len(g), n)))
    if all(g == tuple(range(n)) for g in padded):
        return FiniteQuotient("perm", p, padded, description="perm:trivial")
    return FiniteQuotient("perm", p, padded, description="perm:deg%d" % n)


def _bfs_closure(q, gens, limit):
    ident = q.identity
    seen = {ident}
    queue = deque([ident])
    gens = [g for g in gens if g != ident]
    while queue:
        h = queue.popleft()
        for g in gens:
            k = q.mul(h, g)
            if k not in seen:
                seen.add(k)
                if len(seen) > limit:
                    raise SizeLimitError("subgroup larger than %d elements" % limit)
                queue.append(k)
    return seen


class SubgroupTable:
    """Indexed elements of a finite subgroup L with right multiplication."""

    def __init__(self, q, elements, gens, hermite=None):
        self.q = q
        self.elements = list(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.gens = list(gens)
        self.hermite = hermite
        self._right = {}
        self._keys = None

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity_index(self):
        return 0

    @property
    def is_abelian(self):
        if self.q.kind != "perm":
            return True
        gs = self.gens
        return all(self.q.mul(a, b) == self.q.mul(b, a) for a in gs for b in gs)

    def eval(self, w):
        g = self.q.eval(w)
        try:
            return self.index[g]
        except KeyError:
            raise KeyError("word evaluates outside the subgroup") from None

    def right_perm(self, g):
        """Array idx with idx[i] = index(elements[i] * g)."""
        got = self._right.get(g)
        if got is None:
            if g not in self.index:
                raise KeyError("element outside the subgroup")
            if self.q.kind == "abelian":
                if self._keys is None:
                    self._keys = np.array(self.elements, dtype=np.int64).reshape(self.order, -1)
                    mods = np.array(self.q.moduli, dtype=np.int64)
                    w = np.ones(len(mods), dtype=np.int64)
                    for k in range(len(mods) - 2, -1, -1):
                        w[k] = w[k + 1] * mods[k + 1]
                    self._weights = w
                    self._mods = mods
                    codes = self._keys @ w
                    self._code_order = np.argsort(codes)
                    self._codes_sorted = codes[self._code_order]
                prod = (self._keys + np.array(g, dtype=np.int64)) % self._mods
                codes = prod @ self._weights
                pos = np.searchsorted(self._codes_sorted, codes)
                got = self._code_order[pos]
            else:
                got = np.array([self.index[self.q.mul(h, g)] for h in self.elements], dtype=np.int64)
            self._right[g] = got
        return got

    @property
    def action(self):
        return [self.right_perm(g) for g in self.gens]

    def mul_index(self, i, j):
        return self.index[self.q.mul(self.elements[i], self.elements[j])]


def subgroup_closure_elements(q, gens, limit=10 ** 5):
    gens = [tuple(g) for g in gens]
    if q.kind == "abelian":
        if not q.moduli:
            return SubgroupTable(q, [()], [])
        basis = hermite_rows(gens, list(q.moduli))
        ranges = [range(q.moduli[k] // basis[k][k]) for k in range(len(basis))]
        size = 1
        for r in ranges:
            size *= len(r)
        if size > limit:
            raise SizeLimitError("subgroup of order %d exceeds limit %d" % (size, limit))
        B = np.array(basis, dtype=np.int64).reshape(len(basis), -1)
        mods = np.array(q.moduli, dtype=np.int64)
        if size == 1:
            elems = [q.identity]
        else:
            C = np.array(list(itertools.product(*ranges)), dtype=np.int64)
            E = (C @ B) % mods
            elems = sorted(set(map(tuple, E.tolist())))
        gens_nz = [g for g in gens if any(g)]
        herm = [tuple(int(x) % int(m) for x, m in zip(row, q.moduli)) for row in basis]
        herm = [h for h, r in zip(herm, ranges) if len(r) > 1]
        return SubgroupTable(q, elems, gens_nz, hermite=herm)
    if q.kind == "perm":
        elems = sorted(_bfs_closure(q, gens, limit))
        return SubgroupTable(q, elems, [g for g in gens if g != q.identity])
    return SubgroupTable(q, [()], [])


def subgroup_closure(q, words, limit=10 ** 5):
    return subgroup_closure_elements(q, [q.eval(w) for w in words], limit)


def regular_action_matrix(B, T, dtype=None):
    """Integer matrix of right multiplication by a matrix over Z[L].

    Entries of ``B`` may be group-ring elements (words are evaluated in the
    quotient) or dicts mapping subgroup elements to coefficients.
    """
    rows = len(B)
    cols = len(B[0]) if rows else 0
    n = T.order
    entries = []
    big = 0
    for r in range(rows):
        for c in range(cols):
            e = B[r][c]
            if hasattr(e, "terms"):
                d = {}
                for w, coef in e.terms.items():
                    g = T.q.eval(w)
                    if g not in T.index:
                        raise KeyError("support word outside the subgroup")
                    d[g] = d.get(g, 0) + coef
                e = d
            for g, coef in e.items():
                if coef:
                    entries.append((r, c, g, coef))
                    big = max(big, abs(coef))
    if dtype is None:
        dtype = np.int64 if big < 2 ** 40 else object
    M = np.zeros((rows * n, cols * n), dtype=dtype)
    ar = np.arange(n)
    for r, c, g, coef in entries:
        idx = T.right_perm(g)
        M[r * n + ar, c * n + idx] += coef
    return M


class SearchResult(list):
    complete = True


def _canonical_conj(tup, n):
    best = None
    for s in itertools.permutations(range(n)):
        si = _perm_inv(s)
        conj = tuple(_perm_mul(_perm_mul(si, g), s) for g in tup)
        if best is None or conj < best:
            best = conj
    return best


def _cycle_type_reps(n):
    reps = []

    def parts(k, maxp):
        if k == 0:
            yield []
            return
        for p in range(min(k, maxp), 0, -1):
            for rest in parts(k - p, p):
                yield [p] + rest

    for part in parts(n, n):
        perm = list(range(n))
        start = 0
        for p in part:
            for i in range(p):
                perm[start + i] = start + (i + 1) % p
            start += p
        reps.append(tuple(perm))
    return reps


def _transitive(gens, n):
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for g in gens:
            j = g[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def search_quotient(p, max_degree, budget=10 ** 5):
    """Homomorphisms to S_n, n <= max_degree, with transitive image.

    Tuples are enumerated with the first generator restricted to cycle-type
    representatives, deduplicated up to conjugation and sorted by image order
    (largest first).  The trivial quotient is always appended last.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    found = {}
    spent = 0
    complete = True
    k = p.ngens
    for n in range(2, max_degree + 1):
        if k == 0:
            break
        all_perms = list(itertools.permutations(range(n)))
        for first in _cycle_type_reps(n):
            for rest in itertools.product(all_perms, repeat=k - 1):
                spent += 1
                if spent > budget:
                    complete = False
                    break
                tup = (first,) + tuple(rest)
                if all(g == tuple(range(n)) for g in tup):
                    continue
                if not _transitive(tup, n):
                    continue
                try:
                    q = FiniteQuotient("perm", p, tup, description="perm:deg%d" % n)
                except InvalidQuotient:
                    continue
                key = _canonical_conj(tup, n)
                if key not in found:
                    found[key] = q
            if not complete:
                break
        if not complete:
            break
    out = SearchResult()
    ranked = []
    for key, q in found.items():
        ranked.append((-q.order(), key, q))
    ranked.sort(key=lambda t: (t[0], t[1]))
    for _, _, q in ranked:
        out.append(q)
    out.append(trivial_quotient(p))
    out.complete = complete
    return out


def parse_quotient_spec(p, spec):
    """``trivial``, ``abelian:7^2,2^1``, ``perm:FILE`` or ``search:deg=5,budget=10^7``."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_quotient(p)
    kind, _, rest = spec.partition(":")
    if kind == "abelian":
        pps = []
        for item in rest.split(","):
            item = item.strip()
            if not item:
                continue
            base, _, exp = item.partition("^")
            pps.append(int(base) ** int(exp or 1))
        return abelian_quotient(p, pps)
    if kind == "exps":
        exps = [int(t) for t in re.findall(r"-?\d+", rest)]
        return abelian_quotient(p, exps_to_prime_powers(exps))
    if kind == "perm":
        with open(rest) as fh:
            lines = [l.split("#", 1)[0].strip() for l in fh]
        lines = [l for l in lines if l]
        if len(lines) != p.ngens:
            raise InvalidQuotient("expected %d permutation lines" % p.ngens)
        deg = 0
        for l in lines:
            nums = [int(t) for t in re.findall(r"\d+", l)]
            deg = max([deg] + nums)
        return perm_quotient(p, [parse_cycles(l, max(deg, 1)) for l in lines])
    if kind == "search":
        opts = dict(item.split("=", 1) for item in rest.split(",") if "=" in item)
        deg = int(opts.get("deg", 4))
        budget = _parse_int(opts.get("budget", "10^5"))
        found = search_quotient(p, deg, budget)
        return found[0]
    raise InvalidQuotient("unknown quotient spec %r" % spec)


def _parse_int(text):
    if "^" in text:
        a, b = text.split("^", 1)
        return int(a) ** int(b)
    return int(float(text)) if "e" in text else int(text)

