"""Matrix expansion of a Laplacian along a character.

For a square matrix A over Z[G] whose entries have phi-order >= 0, write
A = sum_d A_d x^d with A_d over the kernel of phi.  The expansion Omega_mu is
the block upper triangular matrix with block (i, j) = x^i A_{j-i} x^-i, and
psi_mu = mu*n - rank(Omega_mu) is non-decreasing, concave and eventually
equal to the order of the determinant.
"""

import dataclasses
import math
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .group import phi_range
from .quotients import regular_action_matrix, subgroup_closure_elements
from .rank import RankPolicy, random_primes, rank_rational, unit_shrink
from .rank.characters import abelian_rank_mod_q, character_table, exponent
from .ring import GroupRingElement, zero_matrix
from .words import word_concat, word_inverse, word_key, word_power


class SingularMatrixError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def normalize_rows(D, phi, x):
    """Left-multiply row i by x^s_i so the minimal phi-order in each row is 0."""
    out = []
    shifts = []
    for i, row in enumerate(D):
        lo = min((phi_range(e, phi)[0] for e in row if e.terms), default=None)
        if lo is None:
            raise SingularMatrixError("row %d is zero; the complex is not L2-acyclic" % i)
        s = -lo
        xs = GroupRingElement.word(word_power(x, s))
        out.append([xs * e if e.terms else e for e in row])
        shifts.append(s)
    return out, tuple(shifts), sum(shifts)


@dataclass
class ExpansionJob:
    matrix: list
    phi: object
    x: tuple
    mu: int = 1
    shifts: tuple = ()
    N: int = 0
    ell: int = 0

    @classmethod
    def build(cls, D, phi, x, mu=1):
        if any(len(row) != len(D) for row in D):
            raise ValueError("expansion needs a square matrix")
        if mu < 1:
            raise ValueError("mu must be at least 1")
        if phi.weight(x) != 1:
            raise ValueError("lift must satisfy phi(x) = 1")
        Dn, shifts, N = normalize_rows(D, phi, x)
        ell = max((phi_range(e, phi)[1] for row in Dn for e in row if e.terms), default=0)
        return cls(Dn, phi, x, mu, shifts, N, ell)

    @property
    def n(self):
        return len(self.matrix)

    @property
    def certified_mu(self):
        return max(1, self.ell * self.n)

    def with_mu(self, mu):
        return ExpansionJob(self.matrix, self.phi, self.x, mu, self.shifts, self.N, self.ell)


def _split_degrees(Dn, phi, x, mu):
    """Coefficient matrices A_d, d < mu, as kernel-word elements."""
    n = len(Dn)
    xinv_pows = {}
    A = [[[{} for _ in range(n)] for _ in range(n)] for _ in range(mu)]
    for r in range(n):
        for c in range(n):
            for w, coef in Dn[r][c].terms.items():
                d = phi.weight(w)
                if d < 0:
                    raise ValueError("matrix is not normalized")
                if d >= mu:
                    continue
                xi = xinv_pows.get(d)
                if xi is None:
                    xi = xinv_pows[d] = word_power(x, -d)
                k = word_concat(w, xi)
                bucket = A[d][r][c]
                s = bucket.get(k, 0) + coef
                if s:
                    bucket[k] = s
                else:
                    del bucket[k]
    return A


def expand_matrix(Dn, phi, x, mu):
    """Omega_mu over the free group ring, and the sorted support word list."""
    n = len(Dn)
    A = _split_degrees(Dn, phi, x, mu)
    out = zero_matrix(mu * n, mu * n)
    support = set()
    cache = {}
    for i in range(mu):
        xi = word_power(x, i)
        xinv = word_inverse(xi)
        for j in range(i, mu):
            Ad = A[j - i]
            for r in range(n):
                for c in range(n):
                    terms = {}
                    for k, coef in Ad[r][c].items():
                        key = (k, i)
                        kc = cache.get(key)
                        if kc is None:
                            kc = cache[key] = word_concat(word_concat(xi, k), xinv)
                        terms[kc] = terms.get(kc, 0) + coef
                        support.add(kc)
                    out[i * n + r][j * n + c] = GroupRingElement(terms)
    return out, sorted(support, key=word_key)


def expand_in_quotient(Dn, phi, x, mu, q):
    """Omega_mu pushed into the finite quotient: entries are dicts element -> coef."""
    n = len(Dn)
    X = q.eval(x)
    A = _split_degrees(Dn, phi, x, mu)
    Aq = [[[q.ring_image(GroupRingElement._raw(A[d][r][c])) if A[d][r][c] else {}
            for c in range(n)] for r in range(n)] for d in range(mu)]
    abelian = q.kind != "perm"
    out = [[{} for _ in range(mu * n)] for _ in range(mu * n)]
    support = set()
    for i in range(mu):
        Xi = q.power(X, i)
        Xinv = q.inv(Xi)
        cache = {}
        for j in range(i, mu):
            for r in range(n):
                for c in range(n):
                    e = Aq[j - i][r][c]
                    if not e:
                        continue
                    if abelian or i == 0:
                        conj = dict(e)
                    else:
                        conj = {}
                        for k, coef in e.items():
                            kc = cache.get(k)
                            if kc is None:
                                kc = cache[k] = q.mul(q.mul(Xi, k), Xinv)
                            conj[kc] = conj.get(kc, 0) + coef
                    out[i * n + r][j * n + c] = conj
                    support.update(conj)
    return out, support


@dataclass
class GroupRingRank:
    """Rank of the regular representation of a matrix over Z[L]."""
    rank: int
    pivots: int
    L_order: int
    certainty: str
    primes: tuple
    method: str

    @property
    def total(self):
        return self.pivots * self.L_order + self.rank

    @property
    def normalized(self):
        return Fraction(self.total, self.L_order)


def index_matrix(B, T):
    out = []
    for row in B:
        new = []
        for e in row:
            d = {}
            for g, c in e.items():
                i = T.index.get(g)
                if i is None:
                    raise KeyError("support element outside the subgroup")
                d[i] = d.get(i, 0) + c
            new.append({i: c for i, c in d.items() if c})
        out.append(new)
    return out


def group_ring_rank(B, T, policy=None, method="auto", shrink=False):
    """Rank of B (entries dicts index -> coef over T) in the regular representation."""
    policy = policy or RankPolicy()
    pivots = 0
    if shrink and B and B[0]:
        B, pivots = unit_shrink(B, T)
    rows = len(B)
    cols = len(B[0]) if rows else 0
    n = T.order
    if method == "auto":
        method = "characters" if T.is_abelian and not policy.exact else "regular"
    if rows == 0 or cols == 0:
        return GroupRingRank(0, pivots, n, "certified", (), method)
    if method == "characters":
        if not T.is_abelian:
            raise ValueError("character route needs an abelian subgroup")
        table = character_table(T)
        M = exponent(T)
        primes = tuple(random_primes(policy.k, policy.seed, modulus=M))
        best = max(abelian_rank_mod_q(B, T, q, table) for q in primes)
        cert = "certified" if best == min(rows, cols) * n else "probabilistic"
        return GroupRingRank(best, pivots, n, cert, primes, method)
    if method == "regular":
        # regular_action_matrix expects element keys, not indices
        keyed = [[{T.elements[i]: c for i, c in e.items()} for e in row] for row in B]
        res = rank_rational(regular_action_matrix(keyed, T), policy)
        return GroupRingRank(res.rank, pivots, n, res.certainty, res.primes, method)
    raise ValueError("unknown rank method %r" % method)


@dataclass
class ValuationReport:
    v: Fraction
    N: int
    delta: Fraction
    mu: int
    L_order: int
    seconds: float = 0.0
    n: int = 0
    ell: int = 0
    rank: int = 0
    pivots: int = 0
    certainty: str = ""
    primes: tuple = ()
    method: str = ""
    degree: int = None
    v_raw: Fraction = None

    def floored(self):
        """Copy with v replaced by floor(v), keeping the raw value."""
        v = Fraction(math.floor(self.v))
        return dataclasses.replace(self, v=v, delta=-2 * (v - self.N), v_raw=self.v)

    def as_dict(self, timing=True):
        out = {
            "n": self.degree, "v": _num(self.v), "N": self.N, "delta": _num(self.delta),
            "L_order": self.L_order, "mu": self.mu, "size": self.n, "ell": self.ell,
            "rank": self.rank, "pivots": self.pivots, "certainty": self.certainty,
            "method": self.method, "v_exact": str(self.v), "delta_exact": str(self.delta),
        }
        if self.v_raw is not None:
            out["v_raw"] = _num(self.v_raw)
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _num(x):
    return int(x) if x.denominator == 1 else float(x)


def _subgroup_for(q, support, limit):
    return subgroup_closure_elements(q, sorted(support), limit)


def normalized_valuation(job, q, shrink=False, policy=None, method="auto", limit=10 ** 5):
    t0 = time.perf_counter()
    n = job.n
    Om, support = expand_in_quotient(job.matrix, job.phi, job.x, job.mu, q)
    T = _subgroup_for(q, support, limit)
    B = index_matrix(Om, T)
    gr = group_ring_rank(B, T, policy, method, shrink)
    v = job.mu * n - gr.normalized
    assert v >= 0
    delta = -2 * (v - job.N)
    return ValuationReport(
        v=v, N=job.N, delta=delta, mu=job.mu, L_order=T.order,
        seconds=time.perf_counter() - t0, n=n, ell=job.ell, rank=gr.total,
        pivots=gr.pivots, certainty=gr.certainty, primes=gr.primes, method=gr.method,
    )


@dataclass
class SweepResult:
    mus: list
    psi: list
    stabilized_at: int = None
    certified_mu: int = 0
    bound_reached: bool = False
    L_order: int = 1
    reports: list = field(default_factory=list)


def check_concave(mus, psi):
    """Raise unless psi is non-decreasing and concave along mus."""
    pts = list(zip(mus, psi))
    for (m0, a), (m1, b) in zip(pts, pts[1:]):
        if b < a:
            raise ConvergenceError("psi decreased from mu=%d to mu=%d" % (m0, m1))
    for (m0, a), (m1, b), (m2, c) in zip(pts, pts[1:], pts[2:]):
        if Fraction(c - b, m2 - m1) > Fraction(b - a, m1 - m0):
            raise ConvergenceError("psi is not concave at mu=%d" % m1)


def mu_sweep(job, mus, q, shrink=False, policy=None, method="auto", limit=10 ** 5):
    mus = sorted(set(int(m) for m in mus))
    if not mus or mus[0] < 1:
        raise ValueError("mu range must be nonempty and positive")
    top = mus[-1]
    n = job.n
    Om, support = expand_in_quotient(job.matrix, job.phi, job.x, top, q)
    T = _subgroup_for(q, support, limit)
    B = index_matrix(Om, T)
    psi = []
    reports = []
    for mu in mus:
        t0 = time.perf_counter()
        sub = [row[: mu * n] for row in B[: mu * n]]
        gr = group_ring_rank(sub, T, policy, method, shrink)
        v = mu * n - gr.normalized
        psi.append(v)
        reports.append(ValuationReport(
            v=v, N=job.N, delta=-2 * (v - job.N), mu=mu, L_order=T.order,
            seconds=time.perf_counter() - t0, n=n, ell=job.ell, rank=gr.total,
            pivots=gr.pivots, certainty=gr.certainty, primes=gr.primes, method=gr.method,
        ))
    check_concave(mus, psi)
    stab = None
    for (m0, a), (m1, b) in zip(zip(mus, psi), zip(mus[1:], psi[1:])):
        if a == b and m1 == m0 + 1:
            stab = m0
            break
    reached = top >= job.certified_mu
    if not reached:
        warnings.warn("mu=%d is below the certified bound %d" % (top, job.certified_mu))
    return SweepResult(mus, psi, stab, job.certified_mu, reached, T.order, reports)
