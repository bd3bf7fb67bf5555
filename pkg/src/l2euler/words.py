"""Reduced words in a free group.

A word is a tuple of ``(generator, exponent)`` syllables with 0-based
generator indices, nonzero exponents and no two adjacent syllables on the
same generator.  The empty tuple is the identity.
"""

IDENTITY = ()


def reduce_word(syllables):
    out = []
    for g, e in syllables:
        if not e:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_concat(u, v):
    if not u:
        return v
    if not v:
        return u
    i = len(u) - 1
    j = 0
    nv = len(v)
    while i >= 0 and j < nv:
        g, e = u[i]
        h, f = v[j]
        if g != h:
            break
        s = e + f
        if s:
            return u[:i] + ((g, s),) + v[j + 1:]
        i -= 1
        j += 1
    return u[:i + 1] + v[j:]


def word_inverse(w):
    return tuple((g, -e) for g, e in reversed(w))


def word_power(w, n):
    if n < 0:
        w, n = word_inverse(w), -n
    out = IDENTITY
    for _ in range(n):
        out = word_concat(out, w)
    return out


def word_product(*words):
    out = IDENTITY
    for w in words:
        out = word_concat(out, w)
    return out


def generator(g, e=1):
    return ((g, e),) if e else IDENTITY


def conjugate(w, x, i):
    """x^i w x^-i."""
    if i == 0:
        return w
    xi = word_power(x, i)
    return word_concat(word_concat(xi, w), word_inverse(xi))


def cyclic_reduce(w):
    w = tuple(w)
    while len(w) > 1 and w[0][0] == w[-1][0]:
        g = w[0][0]
        s = w[0][1] + w[-1][1]
        w = ((g, s),) + w[1:-1] if s else w[1:-1]
        w = reduce_word(w)
    return w


def exponent_sums(w, ngens):
    out = [0] * ngens
    for g, e in w:
        out[g] += e
    return out


def word_length(w):
    return sum(abs(e) for _, e in w)


def word_key(w):
    """Deterministic total order: shorter words first."""
    return (word_length(w), w)


def word_to_str(w, names):
    if not w:
        return "1"
    parts = []
    for g, e in w:
        parts.append(names[g] if e == 1 else "%s^%d" % (names[g], e))
    return "*".join(parts)
