"""Twisted L2-Euler characteristics, untwisted Betti numbers and bounds."""

import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .chain import fox_derivative, laplacians
from .expansion import (
    ExpansionJob, GroupRingRank, SingularMatrixError, _num, group_ring_rank, index_matrix,
    normalized_valuation,
)
from .group import find_lift, make_character
from .quotients import subgroup_closure_elements
from .rank import RankPolicy
from .ring import is_self_adjoint


class NotAcyclicError(ValueError):
    pass


@dataclass
class ChiReport:
    degrees: list
    chi: Fraction
    d: int
    quotient: str
    phi: tuple
    mu: list
    seed: int = 0
    zero_character: bool = False
    seconds: float = 0.0
    warnings: list = field(default_factory=list)

    @property
    def minus_chi(self):
        return -self.chi

    @property
    def deltas(self):
        return tuple(r.delta for r in self.degrees)

    @property
    def vs(self):
        return tuple(r.v for r in self.degrees)

    def nearest(self):
        """Nearest integer to -chi and the distance to it."""
        m = self.minus_chi
        k = math.floor(m + Fraction(1, 2))
        return k, abs(m - k)

    def as_dict(self, timing=True, rounding=False):
        out = {
            "degrees": [r.as_dict(timing) for r in self.degrees],
            "chi": _num(self.chi),
            "minus_chi": _num(self.minus_chi),
            "chi_exact": str(self.chi),
            "d": self.d,
            "quotient": self.quotient,
            "phi": list(self.phi),
            "mu": list(self.mu),
            "seed": self.seed,
        }
        if self.zero_character:
            out["warning"] = "zero character: chi = 0"
        if rounding:
            k, dist = self.nearest()
            out["minus_chi_rounded"] = k
            out["distance_to_integer"] = float(dist)
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def alternating_chi(deltas, d=1):
    """d * (-1/2) sum_n (-1)^n n delta_n."""
    s = sum(((-1) ** n) * n * Fraction(dl) for n, dl in enumerate(deltas))
    return d * (-s / 2)


def chi_twisted(C, p, phi, mu, q, shrink=False, policy=None, method="auto",
                check_self_adjoint=True, limit=10 ** 5, clamp=True, floor=False,
                workers=None):
    """Twisted L2-Euler characteristic of C along phi through the quotient q.

    ``phi`` is a Character or a list of generator images; ``mu`` is one value
    or one per degree.  With ``clamp`` each Laplacian uses min(mu, ell*n),
    since psi is already stable at the certified bound ell*n.  ``floor``
    rounds each valuation down before forming the degrees, since finite
    quotients tend to overestimate valuations.
    """
    t0 = time.perf_counter()
    policy = policy or RankPolicy()
    if not hasattr(phi, "images"):
        phi = make_character(p, images=phi)
    k = len(C.dims)
    mus = list(mu) if isinstance(mu, (list, tuple)) else [int(mu)] * k
    if len(mus) != k:
        raise ValueError("need one mu per degree (%d)" % k)
    if phi.is_zero:
        warnings.warn("zero character: chi is 0")
        return ChiReport([], Fraction(0), phi.d, q.description, phi.full_images(), mus,
                         policy.seed, True, time.perf_counter() - t0,
                         ["zero character"])
    x = find_lift(p, phi)
    jobs = []
    for n, D in enumerate(laplacians(C)):
        if check_self_adjoint and not is_self_adjoint(D):
            raise AssertionError("Laplacian %d is not formally self-adjoint" % n)
        try:
            job = ExpansionJob.build(D, phi, x, mus[n])
        except SingularMatrixError as exc:
            raise NotAcyclicError(str(exc)) from None
        if clamp and job.mu > job.certified_mu:
            job = job.with_mu(job.certified_mu)
        jobs.append(job)

    def run(job):
        return normalized_valuation(job, q, shrink, policy, method, limit)

    if workers is None:
        workers = int(os.environ.get("L2EULER_THREADS", "1") or 1)
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(run, jobs))
    else:
        raw = [run(job) for job in jobs]
    reports = []
    for n, rep in enumerate(raw):
        rep.degree = n
        reports.append(rep.floored() if floor else rep)
    chi = alternating_chi([r.delta for r in reports], phi.d)
    return ChiReport(reports, chi, phi.d, q.description, phi.full_images(), mus,
                     policy.seed, False, time.perf_counter() - t0)


def _rounded(report):
    return tuple(math.floor(v + Fraction(1, 2)) for v in report.vs)


def chi_stabilized(C, p, phi, q, max_mu=3, **kw):
    """Smallest mu <= max_mu whose rounded valuations agree with those at mu + 1.

    Finite quotients add an error to every valuation that tends to grow with
    mu, so the report at the smallest stable mu is the one kept.  Returns the
    report and that mu; without a stable pair the report at max_mu is returned
    with a warning attached.
    """
    prev = chi_twisted(C, p, phi, 1, q, **kw)
    for mu in range(1, max_mu + 1):
        nxt = chi_twisted(C, p, phi, mu + 1, q, **kw)
        if _rounded(prev) == _rounded(nxt):
            return prev, mu
        prev = nxt
    rep = chi_twisted(C, p, phi, max_mu, q, **kw)
    rep.warnings.append("valuations did not stabilize up to mu=%d" % max_mu)
    return rep, max_mu


@dataclass
class BettiReport:
    ranks: list
    betti: list
    L_order: int
    quotient: str
    details: list = field(default_factory=list)

    def as_dict(self):
        return {
            "ranks": [_num(r) for r in self.ranks],
            "betti": [_num(b) for b in self.betti],
            "ranks_exact": [str(r) for r in self.ranks],
            "betti_exact": [str(b) for b in self.betti],
            "L_order": self.L_order,
            "quotient": self.quotient,
        }


def matrix_rank_over(A, q, policy=None, shrink=False, method="auto", limit=10 ** 5, T=None):
    """Normalized rank of a group-ring matrix through the quotient q."""
    img = [[q.ring_image(e) for e in row] for row in A]
    if T is None:
        support = set()
        for row in img:
            for e in row:
                support.update(e)
        T = subgroup_closure_elements(q, sorted(support), limit)
    B = index_matrix(img, T)
    return group_ring_rank(B, T, policy, method, shrink)


def betti_untwisted(C, q, policy=None, shrink=False, method="auto", limit=10 ** 5):
    """b_i = n_i - rk(d_i) - rk(d_{i+1}), ranks normalized by |L|."""
    support = set()
    images = []
    for M in C.boundaries:
        img = [[q.ring_image(e) for e in row] for row in M]
        images.append(img)
        for row in img:
            for e in row:
                support.update(e)
    T = subgroup_closure_elements(q, sorted(support), limit)
    ranks = []
    details = []
    for img in images:
        gr = group_ring_rank(index_matrix(img, T), T, policy, method, shrink)
        ranks.append(gr.normalized)
        details.append(gr)
    return BettiReport(ranks, betti_from_ranks(C.dims, ranks), T.order, q.description, details)


def betti_from_ranks(dims, ranks):
    out = []
    for i, n in enumerate(dims):
        r_in = ranks[i - 1] if i >= 1 else 0
        r_out = ranks[i] if i < len(ranks) else 0
        out.append(Fraction(n) - r_in - r_out)
    return out


def luck_error_bound(n, k, d):
    """n [(1 - 1/(k d))^(k^2) + log d / log k]."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if d <= 1:
        raise ValueError("d must exceed 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n * ((1 - 1 / (k * d)) ** (k * k) + math.log(d) / math.log(k))


def operator_norm_bound(A):
    """sqrt(rows*cols) times the largest coefficient l1-norm of an entry."""
    r = len(A)
    c = len(A[0]) if r else 0
    if not r or not c:
        return 0.0
    top = max(e.l1_norm() for row in A for e in row)
    if top == 0:
        return 0.0
    return math.sqrt(r * c) * top


_A, _B = sympy.symbols("a b")


def _abelian_poly(x):
    """Laurent polynomial in a, b as (sympy Poly, exponent shift)."""
    terms = {}
    for w, c in x.terms.items():
        ea = sum(e for g, e in w if g == 0)
        eb = sum(e for g, e in w if g == 1)
        terms[(ea, eb)] = terms.get((ea, eb), 0) + c
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return None, (0, 0)
    sa = min(k[0] for k in terms)
    sb = min(k[1] for k in terms)
    poly = sympy.Poly.from_dict({(k[0] - sa, k[1] - sb): v for k, v in terms.items()}, _A, _B)
    return poly, (sa, sb)


def _normalize_laurent(poly):
    d = poly.as_dict()
    sa = min(k[0] for k in d)
    sb = min(k[1] for k in d)
    d = {(k[0] - sa, k[1] - sb): v for k, v in d.items()}
    lead = d[min(d)]
    if lead < 0:
        d = {k: -v for k, v in d.items()}
    return sympy.Poly.from_dict(d, _A, _B)


@dataclass
class AlexanderResult:
    polynomial: object
    exponents: dict

    def norm(self, phi_images):
        ws = [phi_images[0] * i + phi_images[1] * j for (i, j) in self.exponents]
        return max(ws) - min(ws)

    def __str__(self):
        return str(self.polynomial.as_expr())


def alexander_polynomial_2g(p):
    """Alexander polynomial of a two-generator presentation with b1 = 2."""
    if p.ngens != 2:
        raise ValueError("need exactly two generators")
    if not p.relators:
        raise ValueError("need at least one relator")
    one_minus = {0: sympy.Poly(_B - 1, _A, _B), 1: sympy.Poly(_A - 1, _A, _B)}
    parts = []
    for r in p.relators:
        for j in (0, 1):
            Dj, _ = _abelian_poly(fox_derivative(r, j))
            if Dj is None:
                continue
            quo, rem = sympy.div(Dj, one_minus[j])
            if not rem.is_zero:
                raise ArithmeticError("Fox derivative not divisible; internal inconsistency")
            parts.append(quo)
    if not parts:
        raise ValueError("zero Alexander polynomial")
    g = parts[0]
    for h in parts[1:]:
        g = sympy.gcd(g, h)
    if g.is_zero:
        raise ValueError("zero Alexander polynomial")
    g = _normalize_laurent(g)
    return AlexanderResult(g, g.as_dict())


def alexander_norm_2g1r(p, phi):
    """phi-thickness of the Newton polytope of the Alexander polynomial."""
    images = phi.full_images() if hasattr(phi, "images") else tuple(phi)
    res = alexander_polynomial_2g(p)
    return res.norm(images)


__all__ = [
    "ChiReport", "BettiReport", "NotAcyclicError", "GroupRingRank", "alternating_chi",
    "chi_twisted", "chi_stabilized", "betti_untwisted", "betti_from_ranks", "matrix_rank_over",
    "luck_error_bound", "operator_norm_bound", "alexander_polynomial_2g",
    "alexander_norm_2g1r", "AlexanderResult",
]
