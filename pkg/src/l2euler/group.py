"""Presentations, abelianization, characters and lifts."""

import math
from dataclasses import dataclass, field

from .ring import GroupRingElement
from .snf import smith_normal_form
from .words import exponent_sums, reduce_word


class InvalidCharacter(ValueError):
    pass


def default_names(n):
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return ["x%d" % (i + 1) for i in range(n)]


@dataclass(frozen=True)
class Presentation:
    ngens: int
    relators: tuple = ()
    names: tuple = None

    def __post_init__(self):
        # relators are kept as written (freely reduced) so Fox derivatives match
        # the source; cyclic reduction would conjugate them
        rels = tuple(reduce_word(r) for r in self.relators)
        rels = tuple(r for r in rels if r)
        for r in rels:
            for g, _ in r:
                if not 0 <= g < self.ngens:
                    raise ValueError("relator uses generator %d outside rank %d" % (g, self.ngens))
        object.__setattr__(self, "relators", rels)
        if self.names is None:
            object.__setattr__(self, "names", tuple(default_names(self.ngens)))
        elif len(self.names) != self.ngens:
            raise ValueError("need one name per generator")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    def relator_matrix(self):
        return [exponent_sums(r, self.ngens) for r in self.relators]


@dataclass(frozen=True)
class AbelianStructure:
    free_rank: int
    torsion: tuple
    # per generator: (torsion coordinates..., free coordinates...)
    images: tuple
    S: tuple = field(repr=False)
    U: tuple = field(repr=False)
    V: tuple = field(repr=False)
    torsion_cols: tuple = field(repr=False, default=())
    free_cols: tuple = field(repr=False, default=())

    @property
    def moduli(self):
        """Moduli of the coordinates; 0 marks a free coordinate."""
        return tuple(self.torsion) + (0,) * self.free_rank


def abelianize(p):
    n = p.ngens
    R = p.relator_matrix()
    S, U, V = smith_normal_form(R, ncols=n)
    diag = [S[i][i] if i < len(S) and i < n else 0 for i in range(n)]
    torsion_cols = tuple(i for i in range(n) if diag[i] > 1)
    free_cols = tuple(i for i in range(n) if diag[i] == 0)
    torsion = tuple(diag[i] for i in torsion_cols)
    images = []
    for j in range(n):
        row = V[j]
        images.append(
            tuple(row[c] % diag[c] for c in torsion_cols) + tuple(row[c] for c in free_cols)
        )
    return AbelianStructure(
        free_rank=len(free_cols),
        torsion=torsion,
        images=tuple(images),
        S=tuple(map(tuple, S)),
        U=tuple(map(tuple, U)),
        V=tuple(map(tuple, V)),
        torsion_cols=torsion_cols,
        free_cols=free_cols,
    )


@dataclass(frozen=True)
class Character:
    images: tuple
    d: int = 1

    @property
    def is_zero(self):
        return not any(self.images)

    def weight(self, w):
        im = self.images
        return sum(e * im[g] for g, e in w)

    def full_images(self):
        return tuple(self.d * x for x in self.images)


def make_character(p, images=None, coords=None, ab=None):
    """Build a character from generator images or free-part coordinates.

    Coordinates refer to the free columns of the Smith basis computed by
    :func:`abelianize`.
    """
    if (images is None) == (coords is None):
        raise ValueError("give exactly one of images or coords")
    if coords is not None:
        ab = ab or abelianize(p)
        if ab.free_rank < 1:
            raise InvalidCharacter("group has finite abelianization")
        if len(coords) != ab.free_rank:
            raise InvalidCharacter("expected %d coordinates" % ab.free_rank)
        nt = len(ab.torsion)
        images = [sum(v * img[nt + k] for k, v in enumerate(coords)) for img in ab.images]
    images = [int(x) for x in images]
    if len(images) != p.ngens:
        raise InvalidCharacter("expected %d images" % p.ngens)
    for r in p.relators:
        if sum(e * images[g] for g, e in r):
            raise InvalidCharacter("character does not vanish on a relator")
    d = 0
    for x in images:
        d = math.gcd(d, x)
    if d == 0:
        return Character(tuple(images), 1)
    return Character(tuple(x // d for x in images), d)


def _ext_gcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def find_lift(p, phi):
    """A word x with phi(x) = 1."""
    im = phi.images
    for j, v in enumerate(im):
        if v in (1, -1):
            return ((j, v),)
    if phi.is_zero:
        raise InvalidCharacter("zero character has no lift")
    # combine generators by the extended Euclidean algorithm
    g, coeffs = 0, [0] * len(im)
    for j, v in enumerate(im):
        if not v:
            continue
        h, s, t = _ext_gcd(g, v)
        coeffs = [c * s for c in coeffs]
        coeffs[j] += t
        g = h
    if g < 0:
        coeffs = [-c for c in coeffs]
        g = -g
    if g != 1:
        raise InvalidCharacter("character is not primitive")
    return reduce_word([(j, c) for j, c in enumerate(coeffs) if c])


def phi_range(x, phi):
    if isinstance(x, GroupRingElement):
        if not x.terms:
            return (math.inf, -math.inf)
        ws = [phi.weight(w) for w in x.terms]
    else:
        ws = [phi.weight(x)]
    return (min(ws), max(ws))
