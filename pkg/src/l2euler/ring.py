"""Integral group ring of a free group, and matrices over it.

Matrices are lists of rows of ``GroupRingElement`` and act on row vectors
from the right, so composition ``A then B`` is the product ``A * B``.
"""

from .words import IDENTITY, word_concat, word_inverse, word_key, word_to_str


class GroupRingElement:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if c:
                    s = clean.get(w, 0) + c
                    if s:
                        clean[w] = s
                    else:
                        del clean[w]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, w, c=1):
        return cls._raw({w: c} if c else {})

    @classmethod
    def scalar(cls, c):
        return cls.word(IDENTITY, c)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        """True for ±w, a unit of the group ring."""
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return c in (1, -1)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return GroupRingElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return GroupRingElement._raw({})
            return GroupRingElement._raw({w: c * other for w, c in self.terms.items()})
        return ring_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial element")
            (w, c), = self.terms.items()
            return GroupRingElement.word(word_inverse(w), c) ** (-n)
        out = GroupRingElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self):
        return adjoint(self)

    def augmentation(self):
        return sum(self.terms.values())

    def l1_norm(self):
        return sum(abs(c) for c in self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def to_str(self, names):
        if not self.terms:
            return "0"
        out = []
        for w, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not w:
                body = str(a)
            elif a == 1:
                body = word_to_str(w, names)
            else:
                body = "%d*%s" % (a, word_to_str(w, names))
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += " %s %s" % (sign, body)
        return s

    def __repr__(self):
        names = [chr(ord("a") + i) if i < 26 else "g%d" % i for i in range(64)]
        return "GroupRingElement(%s)" % self.to_str(names)


ZERO = GroupRingElement()
ONE = GroupRingElement.scalar(1)


def ring_add(x, y):
    return x + y


def ring_mul(x, y):
    out = {}
    get = out.get
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = word_concat(u, v)
            s = get(w, 0) + a * b
            if s:
                out[w] = s
            else:
                del out[w]
    return GroupRingElement._raw(out)


def adjoint(x):
    return GroupRingElement._raw({word_inverse(w): c for w, c in x.terms.items()})


def zero_matrix(r, c):
    return [[ZERO] * c for _ in range(r)]


def identity_matrix(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_shape(A, ncols=None):
    r = len(A)
    c = len(A[0]) if r else (ncols or 0)
    return r, c


def mat_mul(A, B, inner=None):
    r = len(A)
    k = len(B)
    c = len(B[0]) if k else 0
    out = zero_matrix(r, c)
    for i in range(r):
        for j in range(c):
            acc = {}
            for t in range(k):
                a = A[i][t]
                b = B[t][j]
                if a.terms and b.terms:
                    for w, v in ring_mul(a, b).terms.items():
                        s = acc.get(w, 0) + v
                        if s:
                            acc[w] = s
                        else:
                            del acc[w]
            out[i][j] = GroupRingElement._raw(acc)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_adjoint(A, nrows=None, ncols=None):
    """Transpose with entrywise adjoint."""
    r = len(A)
    c = len(A[0]) if r else (ncols or 0)
    return [[adjoint(A[i][j]) for i in range(r)] for j in range(c)]


def mat_equal(A, B):
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def is_self_adjoint(A):
    return mat_equal(A, mat_adjoint(A))
