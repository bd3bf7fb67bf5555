"""Smith and Hermite normal forms of integer matrices."""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(R, ncols=None):
    """Return (S, U, V) with U*R*V = S diagonal, s_1 | s_2 | ..., s_i >= 0."""
    m = len(R)
    n = len(R[0]) if m else (ncols or 0)
    S = [list(map(int, row)) for row in R]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder to the pivot and retry
                best = (t, t)
                for i in range(t + 1, m):
                    if S[i][t] and abs(S[i][t]) < abs(S[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if S[t][j] and abs(S[t][j]) < abs(S[best[0]][best[1]]):
                        best = (t, j)
                if best[0] != t:
                    swap_rows(t, best[0])
                if best[1] != t:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % S[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return S, U, V


def hermite_rows(gens, moduli):
    """Echelon basis of the subgroup of prod Z/m_i generated by ``gens``.

    Returns a list of r rows b_k (upper triangular, diagonal d_k | m_k) such
    that every element of the subgroup is uniquely sum c_k b_k with
    0 <= c_k < m_k / d_k.
    """
    r = len(moduli)
    rows = [[int(x) % m for x, m in zip(g, moduli)] for g in gens]
    basis = []
    for k in range(r):
        # m_k e_k joins only now, so reducing later coordinates mod m_i is safe
        e = [0] * r
        e[k] = moduli[k]
        rows.append(e)
        piv = None
        rest = []
        for row in rows:
            if not row[k]:
                rest.append(row)
                continue
            if piv is None:
                piv = row
                continue
            # Euclid on the k-th entries of piv and row
            a, b = piv, row
            while b[k]:
                q = a[k] // b[k]
                a = [x - q * y for x, y in zip(a, b)]
                a, b = b, a
            piv = a
            if any(b):
                rest.append(b)
        if piv[k] < 0:
            piv = [-x for x in piv]
        # reduce the tail modulo the moduli to keep numbers small
        piv = [piv[i] if i <= k else piv[i] % moduli[i] for i in range(r)]
        basis.append(piv)
        # multiples of the pivot that vanish in coordinate k stay in the lattice
        m_k = piv[k]
        wrap = [(x * (moduli[k] // m_k)) for x in piv]
        wrap = [wrap[i] - (moduli[k] if i == k else 0) for i in range(r)]
        rows = [[x % moduli[i] if i > k else x for i, x in enumerate(row)] for row in rest]
        rows.append([x % moduli[i] if i > k else x for i, x in enumerate(wrap)])
    return basis
