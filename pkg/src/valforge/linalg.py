"""Exact rational linear algebra: Gaussian elimination, a small two-phase
simplex for feasibility questions, and Smith normal form for lattice work.

Everything is Fraction-based; problem sizes here are tiny, so clarity wins
over sparsity tricks.
"""

from __future__ import annotations

from fractions import Fraction


def _frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def solve_linear(A, b):
    """One solution of A x = b over Q, or None if inconsistent.

    Returns (x, nullspace_basis).
    """
    A = _frac_matrix(A)
    b = [Fraction(x) for x in b]
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [row[:] + [b[i]] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    free = [c for c in range(n) if c not in pivots]
    null = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -aug[i][fc]
        null.append(v)
    return x, null


def lp_feasible(A_eq, b_eq, n):
    """A point x >= 0 with A_eq x = b_eq, or None.  Phase-I simplex, Bland's rule."""
    m = len(A_eq)
    A = _frac_matrix(A_eq)
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau with artificial basis
    total = n + m
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
         for i in range(m)]
    basis = list(range(n, total))
    # objective: minimize sum of artificials -> row of reduced costs
    cost = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            cost[j] -= T[i][j]
    for j in range(n, total):
        cost[j] += 1

    def pivot(r, c):
        pv = T[r][c]
        T[r] = [x / pv for x in T[r]]
        for i in range(m):
            if i != r and T[i][c] != 0:
                f = T[i][c]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        if cost[c] != 0:
            f = cost[c]
            for j in range(total + 1):
                cost[j] -= f * T[r][j]
        basis[r] = c

    while True:
        col = next((j for j in range(total) if cost[j] < 0), None)
        if col is None:
            break
        rows = [(T[i][total] / T[i][col], basis[i], i)
                for i in range(m) if T[i][col] > 0]
        if not rows:
            break  # unbounded phase-I cannot happen, but stay safe
        _, _, r = min(rows)
        pivot(r, col)

    if -cost[total] != 0:
        return None
    # drive remaining artificials out of the basis if possible
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][total]
        elif T[i][total] != 0:
            return None
    return x


def lp_feasible_mixed(A_eq, b_eq, A_ub, b_ub, n):
    """x >= 0 with A_eq x = b_eq and A_ub x <= b_ub, or None."""
    m_ub = len(A_ub)
    A = [list(row) + [0] * m_ub for row in A_eq]
    b = list(b_eq)
    for i, row in enumerate(A_ub):
        slack = [0] * m_ub
        slack[i] = 1
        A.append(list(row) + slack)
        b.append(b_ub[i])
    sol = lp_feasible(A, b, n + m_ub)
    return None if sol is None else sol[:n]


# ---------------------------------------------------------------------------
# integer lattice utilities


def smith_normal_form(M):
    """U, S, V unimodular with U M V = S diagonal; M a list of int rows."""
    S = [list(map(int, row)) for row in M]
    m = len(S)
    n = len(S[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, k):  # row_i -= k * row_j
        S[i] = [a - k * b for a, b in zip(S[i], S[j])]
        U[i] = [a - k * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, k):  # col_i -= k * col_j
        for r in range(m):
            S[r][i] -= k * S[r][j]
        for r in range(n):
            V[r][i] -= k * V[r][j]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    k = S[i][t] // S[t][t]
                    row_op(i, t, k)
                    if S[i][t] != 0:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    k = S[t][j] // S[t][t]
                    col_op(j, t, k)
                    if S[t][j] != 0:
                        col_swap(t, j)
                        done = False
            if done:
                break
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


def kernel_lattice(M):
    """Basis of the saturated lattice {x in Z^n : M x = 0}."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    U, S, V = smith_normal_form(M)
    rank = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    return [[V[r][c] for r in range(n)] for c in range(rank, n)]


def quotient_projection(basis_vectors, n):
    """For a saturated lattice L = span_Z(basis_vectors) in Z^n, return
    (project, section, rank) where project: Z^n -> Z^(n-k) has kernel exactly L
    and section is a right inverse of project.
    """
    k = len(basis_vectors)
    if k == 0:
        def project(x):
            return tuple(x)

        def section(c):
            return tuple(c)

        return project, section, n
    # columns of B are the lattice basis
    B = [[basis_vectors[j][i] for j in range(k)] for i in range(n)]
    U, S, V = smith_normal_form(B)
    for i in range(k):
        if S[i][i] != 1:
            raise ValueError("lattice is not saturated in Z^n")
    # L = U^{-1}(Z^k x 0), so x mod L = last n-k coordinates of U x
    Urows = U

    def project(x):
        return tuple(sum(Urows[i][j] * x[j] for j in range(n)) for i in range(k, n))

    # section: solve U y = (0,...,0,c); i.e. y = U^{-1} (0, c)
    Uinv = _invert_unimodular(U)

    def section(c):
        full = [0] * k + list(c)
        return tuple(sum(Uinv[i][j] * full[j] for j in range(n)) for i in range(n))

    return project, section, n - k


def _invert_unimodular(U):
    n = len(U)
    aug = [[Fraction(U[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]
