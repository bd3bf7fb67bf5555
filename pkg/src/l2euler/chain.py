"""Chain complexes over the free group ring, Fox calculus and Laplacians."""

import re
from dataclasses import dataclass

from .group import Presentation, default_names
from .ring import (
    GroupRingElement, ONE, mat_add, mat_adjoint, mat_mul, zero_matrix,
)
from .words import IDENTITY, generator, reduce_word, word_concat, word_inverse


class ChainComplex:
    """Free chain complex C_k -> ... -> C_0 acting on row vectors.

    ``boundaries[i - 1]`` is the matrix of d_i, of shape n_i x n_{i-1}.
    """

    def __init__(self, dims, boundaries):
        dims = [int(n) for n in dims]
        if len(boundaries) != len(dims) - 1:
            raise ValueError("need one boundary matrix per consecutive pair of dims")
        for i, M in enumerate(boundaries, 1):
            if len(M) != dims[i] or any(len(row) != dims[i - 1] for row in M):
                raise ValueError("d%d must be %d x %d" % (i, dims[i], dims[i - 1]))
        self.dims = tuple(dims)
        self.boundaries = tuple(tuple(tuple(row) for row in M) for M in boundaries)

    @property
    def length(self):
        return len(self.dims) - 1

    def boundary(self, i):
        """d_i, or an empty matrix outside 1..k."""
        if 1 <= i <= self.length:
            return [list(row) for row in self.boundaries[i - 1]]
        rows = self.dims[i] if 0 <= i < len(self.dims) else 0
        cols = self.dims[i - 1] if 1 <= i <= len(self.dims) else 0
        return zero_matrix(rows, cols)

    def __eq__(self, other):
        return (isinstance(other, ChainComplex) and self.dims == other.dims
                and self.boundaries == other.boundaries)


def fox_derivative(r, j):
    terms = {}
    prefix = IDENTITY
    for g, e in r:
        if g == j:
            if e > 0:
                p = prefix
                for _ in range(e):
                    terms[p] = terms.get(p, 0) + 1
                    p = word_concat(p, ((g, 1),))
            else:
                p = prefix
                for _ in range(-e):
                    p = word_concat(p, ((g, -1),))
                    terms[p] = terms.get(p, 0) - 1
        prefix = word_concat(prefix, ((g, e),))
    return GroupRingElement(terms)


def fox_jacobian(p):
    return [[fox_derivative(r, j) for j in range(p.ngens)] for r in p.relators]


def presentation_complex(p):
    d1 = [[ONE - GroupRingElement.word(generator(j))] for j in range(p.ngens)]
    if p.relators:
        return ChainComplex((1, p.ngens, len(p.relators)), [d1, fox_jacobian(p)])
    return ChainComplex((1, p.ngens), [d1])


def laplacians(C):
    """Delta_i = d_i d_i^* + d_{i+1}^* d_{i+1} for i = 0..k."""
    out = []
    for i in range(len(C.dims)):
        n = C.dims[i]
        L = zero_matrix(n, n)
        if i >= 1:
            d = C.boundary(i)
            L = mat_add(L, mat_mul(d, mat_adjoint(d)))
        if i + 1 <= C.length:
            d = C.boundary(i + 1)
            L = mat_add(L, mat_mul(mat_adjoint(d, ncols=n), d))
        out.append(L)
    return out


def validate_boundary(C, q):
    """Check d_{i+1} d_i = 0 over the group ring of the finite quotient ``q``."""
    for i in range(1, C.length):
        A = [[q.ring_image(e) for e in row] for row in C.boundaries[i]]
        B = [[q.ring_image(e) for e in row] for row in C.boundaries[i - 1]]
        for row in A:
            for j in range(C.dims[i - 1]):
                acc = {}
                for t, a in enumerate(row):
                    b = B[t][j]
                    if not a or not b:
                        continue
                    for g, x in a.items():
                        for h, y in b.items():
                            k = q.mul(g, h)
                            acc[k] = acc.get(k, 0) + x * y
                if any(acc.values()):
                    return False
    return True


def _elementary_product(n, rng, ngens, moves):
    """A random product of elementary matrices I + x e_jk and its inverse."""
    G = [[ONE if r == c else GroupRingElement() for c in range(n)] for r in range(n)]
    Ginv = [row[:] for row in G]
    if n < 2:
        return G, Ginv
    for _ in range(moves):
        j, k = rng.sample(range(n), 2)
        x = GroupRingElement.word(generator(rng.randrange(ngens), rng.choice((1, -1))),
                                  rng.choice((1, -1)))
        E = [[ONE if r == c else GroupRingElement() for c in range(n)] for r in range(n)]
        Einv = [row[:] for row in E]
        E[j][k] = x
        Einv[j][k] = -x
        G = mat_mul(E, G)
        Ginv = mat_mul(Ginv, Einv)
    return G, Ginv


def planted_complex(dims, ranks, ngens=2, seed=0, moves=10):
    """A complex over Z[F_ngens] whose boundaries have the prescribed ranks.

    Each d_i is G_i E_i G_{i-1}^-1, where E_i pairs r_i basis vectors with
    units and the G_i are invertible.  Units keep full rank in every
    quotient, so the normalized ranks are exactly ``ranks`` for any q.
    """
    import random

    k = len(dims) - 1
    if len(ranks) != k:
        raise ValueError("need one rank per boundary")
    r = [0] + list(ranks) + [0]
    for i, n in enumerate(dims):
        if r[i] + r[i + 1] > n:
            raise ValueError("ranks %d + %d exceed dim %d in degree %d" % (r[i], r[i + 1], n, i))
    rng = random.Random(seed)
    bases = [_elementary_product(n, rng, ngens, moves) for n in dims]
    boundaries = []
    for i in range(1, k + 1):
        E = zero_matrix(dims[i], dims[i - 1])
        for t in range(r[i]):
            E[dims[i] - r[i] + t][t] = GroupRingElement.word(
                generator(rng.randrange(ngens), rng.choice((1, -1))))
        boundaries.append(mat_mul(mat_mul(bases[i][0], E), bases[i - 1][1]))
    return ChainComplex(dims, boundaries)


@dataclass(frozen=True)
class FreeAutomorphism:
    n: int
    images: tuple

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(generator(i) for i in range(n)))

    def apply(self, w):
        out = IDENTITY
        for g, e in w:
            im = self.images[g]
            if e < 0:
                im = word_inverse(im)
            for _ in range(abs(e)):
                out = word_concat(out, im)
        return out

    def then(self, other):
        """The automorphism applying ``self`` first and ``other`` second."""
        return FreeAutomorphism(self.n, tuple(other.apply(w) for w in self.images))

    def __eq__(self, other):
        return isinstance(other, FreeAutomorphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


def elementary(n, kind, i, j=None):
    """tau_i, sigma_{i,j} or eta_{i,j} on F_n, indices 1-based."""
    idx = [i] if kind == "tau" else [i, j]
    for k in idx:
        if k is None or not 1 <= k <= n:
            raise IndexError("generator index %r outside 1..%d" % (k, n))
    if kind != "tau" and i == j:
        raise IndexError("indices must differ")
    ims = [generator(k) for k in range(n)]
    a = i - 1
    if kind == "tau":
        ims[a] = generator(a, -1)
    elif kind == "sigma":
        b = j - 1
        ims[a], ims[b] = ims[b], ims[a]
    elif kind == "eta":
        b = j - 1
        ims[a] = reduce_word([(b, -1), (a, 1)])
        ims[b] = generator(b, -1)
    else:
        raise ValueError("unknown elementary automorphism %r" % kind)
    return FreeAutomorphism(n, tuple(ims))


_ELEM = re.compile(r"(tau|sigma|eta)_?\{?(\d)\s*,?\s*(\d)?\}?")


def parse_automorphism_string(text):
    """Parse e.g. ``eta21 sigma13`` or ``eta_{2,1}*sigma_{1,3}``."""
    out = []
    for m in _ELEM.finditer(text):
        kind = m.group(1)
        i = int(m.group(2))
        j = int(m.group(3)) if m.group(3) else None
        if kind == "tau" and j is not None:
            raise ValueError("tau takes one index")
        if kind != "tau" and j is None:
            raise ValueError("%s takes two indices" % kind)
        out.append((kind, i, j))
    if not out:
        raise ValueError("no elementary automorphisms found in %r" % text)
    return out


def compose_elementary(n, gens):
    """Apply the moves left to right to the tuple of images (Nielsen style).

    For eta21 sigma13 eta21 eta32 eta31 this yields x1 -> x3,
    x2 -> x2^-1 x1 x3, x3 -> x3 x2^-1 x1 x3 x1^-1.
    """
    phi = FreeAutomorphism.identity(n)
    for g in gens:
        phi = elementary(n, *g).then(phi)
    return phi


def free_by_cyclic(n, gens):
    """Presentation of F_n x_phi Z with relators t x_i t^-1 phi(x_i)^-1.

    The stable letter t is the last generator.
    """
    if n > 19:
        raise ValueError("rank above 19 is not supported by the single-letter names")
    phi = compose_elementary(n, gens)
    t = n
    rels = []
    for i in range(n):
        rels.append(reduce_word([(t, 1), (i, 1), (t, -1)] + list(word_inverse(phi.images[i]))))
    names = tuple(default_names(n)) + ("t",)
    return Presentation(n + 1, tuple(rels), names)

