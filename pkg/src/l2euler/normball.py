"""Reconstruct and certify the unit ball of a polytopal seminorm from samples.

The candidate ball is the convex hull H of the points +-v/value.  Since the
true ball contains H, the gauge of H is an upper bound for the seminorm; a
facet is certified once a sample in the open cone over its relative interior
takes exactly the value predicted by H.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations


class SampleError(ValueError):
    pass


@dataclass
class SampleSet:
    dim: int
    samples: list = field(default_factory=list)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = [(tuple(int(x) for x in v), Fraction(val)) for v, val in pairs]
        if not pairs:
            raise SampleError("no samples")
        dim = len(pairs[0][0])
        S = cls(dim)
        for v, val in pairs:
            S.add(v, val)
        return S

    def add(self, v, value):
        v = tuple(int(x) for x in v)
        value = Fraction(value)
        if len(v) != self.dim:
            raise SampleError("sample %r has the wrong dimension" % (v,))
        if value < 0:
            raise SampleError("negative value at %r" % (v,))
        for w, val in self.samples:
            if w == v and val != value:
                raise SampleError("inconsistent values at %r: %s and %s" % (v, val, value))
        if (v, value) not in self.samples:
            self.samples.append((v, value))

    def symmetrized(self):
        out = {}
        for v, val in self.samples:
            for w in (v, tuple(-x for x in v)):
                if w in out and out[w] != val:
                    raise SampleError("values at %r and its negative differ" % (v,))
                out[w] = val
        return sorted(out.items())


def read_samples_csv(text):
    """Rows ``v1,v2[,v3],value``; blank lines, comments and a header are skipped."""
    pairs = []
    for row in csv.reader(io.StringIO(text)):
        row = [c.strip() for c in row if c.strip()]
        if not row or row[0].startswith("#"):
            continue
        try:
            v = [int(c) for c in row[:-1]]
            val = Fraction(row[-1])
        except ValueError:
            if not pairs:
                continue
            raise SampleError("bad sample row %r" % (row,))
        pairs.append((v, val))
    return SampleSet.from_pairs(pairs)


# small exact linear algebra on Fraction vectors

def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _scale(a, t):
    return tuple(x * t for x in a)


def _orth_basis(vectors):
    """Gram-Schmidt without normalization; drops dependent vectors."""
    basis = []
    for v in vectors:
        w = tuple(Fraction(x) for x in v)
        for b in basis:
            w = _sub(w, _scale(b, _dot(w, b) / _dot(b, b)))
        if any(w):
            basis.append(w)
    return basis


def _project_out(v, basis):
    w = tuple(Fraction(x) for x in v)
    for b in basis:
        w = _sub(w, _scale(b, _dot(w, b) / _dot(b, b)))
    return w


def _coords(v, basis):
    """Coordinates of v along an orthogonal basis, and the residual."""
    c = tuple(_dot(v, b) / _dot(b, b) for b in basis)
    res = tuple(v)
    for t, b in zip(c, basis):
        res = _sub(res, _scale(b, t))
    return c, res


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points):
    """Counter-clockwise hull, no collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass
class Facet:
    normal: tuple
    offset: Fraction
    vertices: list
    certified: bool = False
    witness: tuple = None

    def value(self, c):
        return _dot(self.normal, c) / self.offset


def _hull_1d(points):
    m = max(abs(p[0]) for p in points)
    return [(m,), (-m,)], [Facet((Fraction(1),), m, [(m,)]), Facet((Fraction(-1),), m, [(-m,)])]


def _hull_2d(points):
    hull = _monotone_chain(points)
    facets = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        n = (b[1] - a[1], a[0] - b[0])
        facets.append(Facet(n, _dot(n, a), [a, b]))
    return hull, facets


def _hull_3d(points):
    # scale to integers so orientation tests stay in exact integer arithmetic
    den = 1
    for p in points:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ipts = sorted(set(tuple(int(x * den) for x in p) for p in points))
    planes = {}
    for a, b, c in combinations(ipts, 3):
        u = _sub(b, a)
        w = _sub(c, a)
        n = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        if not any(n):
            continue
        off = _dot(n, a)
        if off < 0:
            n = tuple(-x for x in n)
            off = -off
        if off == 0:
            continue
        if all(_dot(n, p) <= off for p in ipts):
            g = math.gcd(math.gcd(*[abs(x) for x in n]), off)
            key = (tuple(x // g for x in n), off // g)
            planes.setdefault(key, set()).update((a, b, c))
    facets = []
    vertices = set()
    for (n, off), _ in sorted(planes.items()):
        on = [p for p in ipts if _dot(n, p) == off]
        # drop the coordinate where the normal is largest and take a 2D hull
        k = max(range(3), key=lambda i: abs(n[i]))
        keep = [i for i in range(3) if i != k]
        flat = {(p[keep[0]], p[keep[1]]): p for p in on}
        ring = [flat[q] for q in _monotone_chain(list(flat))]
        verts = [tuple(Fraction(x, den) for x in p) for p in ring]
        vertices.update(verts)
        facets.append(Facet(tuple(Fraction(x) for x in n), Fraction(off, den), verts))
    return sorted(vertices), facets


@dataclass
class BallCertificate:
    dim: int
    vertices: list
    facets: list
    certified: bool
    lineality: list = field(default_factory=list)
    span: list = field(default_factory=list)
    full_dimensional: bool = True
    reasons: list = field(default_factory=list)
    samples: list = field(default_factory=list)

    def to_coords(self, v):
        """Quotient coordinates of v, or None when v leaves the span."""
        w = _project_out(v, self.lineality)
        c, res = _coords(w, self.span)
        if any(res):
            return None
        return c

    def vertices_ambient(self):
        """Vertices mapped back to the original lattice coordinates."""
        out = []
        for c in self.vertices:
            v = [Fraction(0)] * self.dim
            for t, b in zip(c, self.span):
                v = [x + t * y for x, y in zip(v, b)]
            out.append(tuple(v))
        return out

    def as_dict(self):
        fr = lambda xs: [str(x) for x in xs]
        return {
            "dim": self.dim,
            "certified": self.certified,
            "full_dimensional": self.full_dimensional,
            "vertices": [fr(v) for v in self.vertices_ambient()],
            "facets": [
                {"normal": fr(f.normal), "offset": str(f.offset), "certified": f.certified,
                 "witness": list(f.witness) if f.witness else None}
                for f in self.facets
            ],
            "lineality": [fr(b) for b in self.lineality],
            "reasons": list(self.reasons),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)


def reconstruct_ball(S):
    if S.dim > 3:
        raise SampleError("only dimensions up to 3 are supported")
    sym = S.symmetrized()
    if not any(val > 0 for _, val in sym):
        raise SampleError("need at least one positive value")
    lineality = _orth_basis([v for v, val in sym if val == 0])
    pos = [(v, val) for v, val in sym if val > 0]
    projected = [(_project_out(v, lineality), val) for v, val in pos]
    span = _orth_basis([w for w, _ in projected])
    k = len(span)
    if k == S.dim:
        span = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]
    points = [_coords(_scale(w, 1 / val), span)[0] for w, val in projected]
    if k == 1:
        vertices, facets = _hull_1d(points)
    elif k == 2:
        vertices, facets = _hull_2d(points)
    else:
        vertices, facets = _hull_3d(points)
    cert = BallCertificate(S.dim, vertices, facets, False, lineality, span,
                           k + len(lineality) == S.dim, [], sym)
    # v/val lies in H, so gauge <= val; strictly less means no seminorm fits the samples
    for v, val in pos:
        if ball_norm_eval(cert, v) < val:
            raise SampleError("samples are not consistent with a seminorm at %r" % (v,))
    for f in facets:
        for v, val in pos:
            c = cert.to_coords(v)
            if c is None:
                continue
            here = f.value(c)
            if here != val:
                continue
            if all(g is f or g.value(c) < here for g in facets):
                f.certified = True
                f.witness = v
                break
    vpoints = set(points)
    reasons = []
    if not cert.full_dimensional:
        reasons.append("samples span only %d of %d dimensions" % (k + len(lineality), S.dim))
    missing = [f for f in facets if not f.certified]
    if missing:
        reasons.append("%d facet(s) lack an interior witness" % len(missing))
    if any(vtx not in vpoints for vtx in vertices):
        reasons.append("a hull vertex is not a scaled sample")
    cert.reasons = reasons
    cert.certified = not reasons
    return cert


def ball_norm_eval(B, v):
    """Gauge of the candidate ball at v; math.inf when v leaves its span."""
    if not any(v):
        return Fraction(0)
    c = B.to_coords(v)
    if c is None:
        return math.inf
    if not any(c):
        return Fraction(0)
    return max(f.value(c) for f in B.facets)


def svg_sketch(B, size=320):
    """A small SVG drawing of a two-dimensional ball and its samples."""
    if len(B.span) != 2 or B.lineality:
        raise ValueError("sketch only supports full two-dimensional balls")
    pts = B.vertices
    r = max(max(abs(float(x)) for x in p) for p in pts) * 1.2
    half = size / 2

    def xy(p):
        return half + float(p[0]) / r * half, half - float(p[1]) / r * half

    poly = " ".join("%.2f,%.2f" % xy(p) for p in pts)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">' % (size, size),
        '<line x1="0" y1="%g" x2="%d" y2="%g" stroke="#bbb"/>' % (half, size, half),
        '<line x1="%g" y1="0" x2="%g" y2="%d" stroke="#bbb"/>' % (half, half, size),
        '<polygon points="%s" fill="#cde" stroke="#246"/>' % poly,
    ]
    for v, val in B.samples:
        if val > 0:
            c = B.to_coords(v)
            x, y = xy(tuple(t / val for t in c))
            lines.append('<circle cx="%.2f" cy="%.2f" r="3" fill="#a22"/>' % (x, y))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


__all__ = [
    "SampleError", "SampleSet", "read_samples_csv", "Facet", "BallCertificate",
    "reconstruct_ball", "ball_norm_eval", "svg_sketch",
]
