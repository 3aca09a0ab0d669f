"""Exact integer linear algebra on lists of Python ints.

Everything here works over Z (or Q via ``fractions.Fraction`` where a
rational solve is needed); nothing is ever converted to floating point.
Matrices are lists of rows.
"""

from fractions import Fraction


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def _egcd(a, b):
    """Return (g, x, y) with a*x + b*y == g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_reduce(A, ncols=None):
    """Column-style Hermite reduction.

    Returns ``(H, U, pivots)`` with ``A @ U == H``, ``U`` unimodular and ``H``
    in column echelon form: column ``t`` has its first nonzero entry in row
    ``pivots[t]`` (strictly increasing) and columns ``len(pivots):`` are zero.
    """
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    H = [list(r) for r in A]
    U = identity(n)
    pivots = []
    pc = 0
    for i in range(m):
        if pc == n:
            break
        for c in range(pc + 1, n):
            b = H[i][c]
            if b == 0:
                continue
            a = H[i][pc]
            g, x, y = _egcd(a, b)
            p, q = a // g, b // g
            # new pc = x*col_pc + y*col_c ; new c = -q*col_pc + p*col_c
            for R in (H, U):
                for row in R:
                    u, v = row[pc], row[c]
                    row[pc], row[c] = x * u + y * v, -q * u + p * v
        if H[i][pc] != 0:
            if H[i][pc] < 0:
                for R in (H, U):
                    for row in R:
                        row[pc] = -row[pc]
            pivots.append(i)
            pc += 1
    return H, U, pivots


def kernel_basis(A, ncols=None):
    """Z-basis of the integer kernel of A (a saturated sublattice)."""
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return [list(r) for r in identity(n)]
    _, U, pivots = column_reduce(A, n)
    r = len(pivots)
    return [[U[row][c] for row in range(n)] for c in range(r, n)]


def saturation_basis(vectors, n):
    """Z-basis of (Q-span of vectors) intersected with Z^n."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    perp = kernel_basis(vectors, n)
    if not perp:
        return [list(r) for r in identity(n)]
    return kernel_basis(perp, n)


def rank(vectors, n):
    if not vectors:
        return 0
    _, _, pivots = column_reduce([list(v) for v in vectors], n)
    return len(pivots)


def solve_rational(A, B):
    """Solve A X = B over Q for X; None if inconsistent.

    A is m x n, B is m x k.  Free variables are set to zero, so the result is
    deterministic but only unique when A has full column rank.
    """
    m = len(A)
    n = len(A[0]) if A else 0
    k = len(B[0]) if B else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(x) for x in B[i]] for i in range(m)]
    piv_cols = []
    row = 0
    for col in range(n):
        sel = next((r for r in range(row, m) if M[r][col] != 0), None)
        if sel is None:
            continue
        M[row], M[sel] = M[sel], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        piv_cols.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if any(M[r][n + j] != 0 for j in range(k)):
            return None
    X = [[Fraction(0)] * k for _ in range(n)]
    for r, col in enumerate(piv_cols):
        X[col] = M[r][n:]
    return X


def integral(X):
    """Convert a Fraction matrix to ints, or return None if any entry is not integral."""
    out = []
    for row in X:
        if any(x.denominator != 1 for x in row):
            return None
        out.append([int(x) for x in row])
    return out


def right_inverse(L):
    """Integer Z with L Z = I for an r x n matrix L whose rows are primitive.

    Raises ValueError when the rows do not span a saturated system (no
    integral right inverse exists).
    """
    r = len(L)
    n = len(L[0])
    H, U, pivots = column_reduce(L, n)
    if len(pivots) != r:
        raise ValueError("rows are linearly dependent")
    Hs = [row[:r] for row in H]
    if any(abs(Hs[i][i]) != 1 for i in range(r)):
        raise ValueError("rows do not extend to a unimodular matrix")
    # Hs is lower triangular with unit diagonal: invert by forward substitution.
    Hinv = zeros(r, r)
    for j in range(r):
        for i in range(r):
            s = (1 if i == j else 0) - sum(Hs[i][t] * Hinv[t][j] for t in range(i))
            Hinv[i][j] = s * Hs[i][i]
    Ur = [row[:r] for row in U]
    return matmul(Ur, Hinv)


def determinant(A):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sel = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if sel is None:
                return 0
            M[k], M[sel] = M[sel], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
