"""Small exact integer/rational linear algebra: Smith-style solving of
integer linear systems and a two-phase rational simplex for the little LPs
used by domain enumeration and admissibility."""

from __future__ import annotations

from fractions import Fraction


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_solve(M, t):
    """All integer solutions of M x = t.

    Returns (x0, kernel_basis) or (None, kernel_basis) when unsolvable.
    M is a list of rows (lists of ints); t a list of ints.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [row[:] for row in M]
    # column transform accumulator: x = Q y
    Q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    b = list(t)
    row = 0
    col = 0
    pivots = []
    while row < m and col < n:
        # find a pivot with the smallest nonzero absolute value
        best = None
        for i in range(row, m):
            for j in range(col, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != row:
            A[row], A[bi] = A[bi], A[row]
            b[row], b[bi] = b[bi], b[row]
        if bj != col:
            for r in range(m):
                A[r][col], A[r][bj] = A[r][bj], A[r][col]
            for r in range(n):
                Q[r][col], Q[r][bj] = Q[r][bj], Q[r][col]
        # clear the column below/above with row ops, the row with column ops
        done = False
        while not done:
            done = True
            for i in range(m):
                if i != row and A[i][col] != 0:
                    q = A[i][col] // A[row][col]
                    if q:
                        for j in range(n):
                            A[i][j] -= q * A[row][j]
                        b[i] -= q * b[row]
                    if A[i][col] != 0:
                        A[row], A[i] = A[i], A[row]
                        b[row], b[i] = b[i], b[row]
                        done = False
            for j in range(n):
                if j != col and A[row][j] != 0:
                    q = A[row][j] // A[row][col]
                    if q:
                        for r in range(m):
                            A[r][j] -= q * A[r][col]
                        for r in range(n):
                            Q[r][j] -= q * Q[r][col]
                    if A[row][j] != 0:
                        for r in range(m):
                            A[r][col], A[r][j] = A[r][j], A[r][col]
                        for r in range(n):
                            Q[r][col], Q[r][j] = Q[r][j], Q[r][col]
                        done = False
        pivots.append((row, col))
        row += 1
        col += 1
    # solvability and particular solution in y-coordinates
    y = [0] * n
    for (r, c) in pivots:
        if b[r] % A[r][c] != 0:
            kern = [[Q[i][j] for i in range(n)] for j in range(len(pivots), n)]
            return None, kern
        y[c] = b[r] // A[r][c]
    for r in range(len(pivots), m):
        if b[r] != 0:
            kern = [[Q[i][j] for i in range(n)] for j in range(len(pivots), n)]
            return None, kern
    x0 = [sum(Q[i][j] * y[j] for j in range(n)) for i in range(n)]
    kern = [[Q[i][j] for i in range(n)] for j in range(len(pivots), n)]
    return x0, kern


def integer_kernel(M):
    m = len(M)
    n = len(M[0]) if m else 0
    _, kern = smith_solve(M, [0] * m)
    return kern


class LPResult:
    def __init__(self, status, value=None, point=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.value = value
        self.point = point


def lp_solve(c, A, b, maximize=False):
    """min (or max) c.x subject to A x <= b, x free.

    Exact two-phase simplex on the standard-form translation with split
    variables.  Sizes here are tiny, so no effort is made to be fast.
    """
    if maximize:
        res = lp_solve([-ci for ci in c], A, b, maximize=False)
        if res.status == "optimal":
            return LPResult("optimal", -res.value, res.point)
        return res
    n = len(c)
    m = len(A)
    # x = u - v with u, v >= 0; add slack s >= 0:  A(u - v) + s = b
    # tableau columns: u_0..u_{n-1}, v_0..v_{n-1}, s_0..s_{m-1}
    N = 2 * n + m
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(A[i][j]) for j in range(n)] + [Fraction(-A[i][j]) for j in range(n)]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        if b[i] < 0:
            row = [-x for x in row]
            rhs.append(Fraction(-b[i]))
        else:
            rhs.append(Fraction(b[i]))
        rows.append(row)
    # phase 1: add artificials where the slack got negated
    basis = []
    art_cols = []
    for i in range(m):
        scol = 2 * n + i
        if rows[i][scol] == 1:
            basis.append(scol)
        else:
            ac = N + len(art_cols)
            art_cols.append(ac)
            for r in range(m):
                rows[r].append(Fraction(1) if r == i else Fraction(0))
            basis.append(ac)
    total = N + len(art_cols)

    def pivot(rows, rhs, basis, obj, objv):
        while True:
            # Bland's rule
            enter = -1
            for j in range(total):
                if obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal", objv
            ratio = None
            leave = -1
            for i in range(m):
                if rows[i][enter] > 0:
                    r = rhs[i] / rows[i][enter]
                    if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leave]):
                        ratio = r
                        leave = i
            if leave < 0:
                return "unbounded", None
            piv = rows[leave][enter]
            rows[leave] = [x / piv for x in rows[leave]]
            rhs[leave] /= piv
            for i in range(m):
                if i != leave and rows[i][enter] != 0:
                    f = rows[i][enter]
                    rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[leave])]
                    rhs[i] -= f * rhs[leave]
            f = obj[enter]
            obj[:] = [a - f * bb for a, bb in zip(obj, rows[leave])]
            objv -= f * rhs[leave]
            basis[leave] = enter
            objv_ref[0] = objv

    objv_ref = [Fraction(0)]
    for i in range(m):
        if len(rows[i]) < total:
            rows[i] += [Fraction(0)] * (total - len(rows[i]))
    if art_cols:
        obj = [Fraction(0)] * N + [Fraction(1)] * len(art_cols)
        objv = Fraction(0)
        for i in range(m):
            if basis[i] >= N:
                obj = [a - x for a, x in zip(obj, rows[i])]
                objv -= rhs[i]
        objv_ref[0] = objv
        status, val = pivot(rows, rhs, basis, obj, objv)
        if status != "optimal" or objv_ref[0] != 0:
            return LPResult("infeasible")
        # drive artificials out of the basis if possible; zero rows are fine
        for i in range(m):
            if basis[i] >= N:
                for j in range(N):
                    if rows[i][j] != 0:
                        piv = rows[i][j]
                        rows[i] = [x / piv for x in rows[i]]
                        rhs[i] /= piv
                        for r in range(m):
                            if r != i and rows[r][j] != 0:
                                f = rows[r][j]
                                rows[r] = [a - f * bb for a, bb in zip(rows[r], rows[i])]
                                rhs[r] -= f * rhs[i]
                        basis[i] = j
                        break
    else:
        for i in range(m):
            rows[i] += [Fraction(0)] * (total - len(rows[i]))

    # phase 2
    obj = [Fraction(c[j]) for j in range(n)] + [Fraction(-c[j]) for j in range(n)]
    obj += [Fraction(0)] * (total - 2 * n)
    objv = Fraction(0)
    for j in art_cols:
        obj[j] = Fraction(10**12)  # forbid re-entering
    for i in range(m):
        j = basis[i]
        if obj[j] != 0:
            f = obj[j]
            obj = [a - f * bb for a, bb in zip(obj, rows[i])]
            objv -= f * rhs[i]
    objv_ref[0] = objv
    status, _ = pivot(rows, rhs, basis, obj, objv_ref[0])
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * N
    for i in range(m):
        if basis[i] < N:
            x[basis[i]] = rhs[i]
    point = [x[j] - x[n + j] for j in range(n)]
    value = sum(Fraction(c[j]) * point[j] for j in range(n))
    return LPResult("optimal", value, point)
