"""Exact linear algebra over the integers.

Matrices are lists of rows of Python ints, so every intermediate value is
arbitrary precision.  The workhorse is Smith normal form with recorded
unimodular transformations; kernels, integer linear solves and finitely
generated abelian group presentations are derived from it.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(mat: Matrix) -> tuple[int, int]:
    return (len(mat), len(mat[0]) if mat else 0)


def copy(mat: Matrix) -> Matrix:
    return [row[:] for row in mat]


def transpose(mat: Matrix) -> Matrix:
    m, n = shape(mat)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    out = zeros(m, n)
    for i in range(m):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            av = arow[t]
            if av:
                brow = b[t]
                for j in range(n):
                    orow[j] += av * brow[j]
    return out


def matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise ValueError("row count mismatch")
    return [ra + rb for ra, rb in zip(a, b)]


def is_zero(mat: Matrix) -> bool:
    return all(all(x == 0 for x in row) for row in mat)


def _pivot(mat: Matrix, start: int) -> tuple[int, int] | None:
    """Position of a least-magnitude nonzero entry in the trailing block."""
    m, n = shape(mat)
    best = None
    best_val = None
    for i in range(start, m):
        for j in range(start, n):
            v = abs(mat[i][j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (d, u, v) with u*mat*v = d diagonal and d[i][i] | d[i+1][i+1].

    u and v are unimodular.  Diagonal entries are nonnegative and the nonzero
    ones are positive and in divisibility order.  The factorization is
    verified before returning.
    """
    m, n = shape(mat)
    if m == 0 or n == 0:
        return copy(mat), identity(m), identity(n)
    a = copy(mat)
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        arow, urow = a[src], u[src]
        ad, ud = a[dst], u[dst]
        for j in range(n):
            ad[j] += c * arow[j]
        for j in range(m):
            ud[j] += c * urow[j]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    limit = min(m, n)
    while t < limit:
        pos = _pivot(a, t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        # clear row and column t; restart when a remainder creates a smaller pivot
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // piv
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
                        break
            if not dirty:
                break
        t += 1

    # positive diagonal
    for i in range(limit):
        if a[i][i] < 0:
            for j in range(n):
                a[i][j] = -a[i][j]
            for j in range(m):
                u[i][j] = -u[i][j]

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if y and (x == 0 or y % x):
                # fold entry i+1 into column i and rediagonalize the 2x2 block
                add_col(i + 1, i, 1)
                while a[i + 1][i]:
                    # euclidean steps between rows i and i+1 in column i
                    if abs(a[i][i]) >= abs(a[i + 1][i]):
                        q = a[i][i] // a[i + 1][i]
                        add_row(i + 1, i, -q)
                    swap_rows(i, i + 1)
                # clear the fill-in in row i / column i+1
                piv = a[i][i]
                if piv < 0:
                    for j in range(n):
                        a[i][j] = -a[i][j]
                    for j in range(m):
                        u[i][j] = -u[i][j]
                    piv = a[i][i]
                if a[i][i + 1]:
                    q = a[i][i + 1] // piv
                    add_col(i, i + 1, -q)
                if a[i + 1][i + 1] < 0:
                    for j in range(n):
                        a[i + 1][j] = -a[i + 1][j]
                    for j in range(m):
                        u[i + 1][j] = -u[i + 1][j]
                changed = True
    _check_snf(mat, a, u, v)
    return a, u, v


def _check_snf(mat: Matrix, d: Matrix, u: Matrix, v: Matrix) -> None:
    m, n = shape(mat)
    prod = matmul(matmul(u, mat), v)
    if prod != d:
        raise AssertionError("smith normal form reconstruction failed")
    for i in range(m):
        for j in range(n):
            if i != j and d[i][j]:
                raise AssertionError("smith normal form not diagonal")
    diag = [d[i][i] for i in range(min(m, n))]
    for x, y in zip(diag, diag[1:]):
        if y and (x == 0 or y % x):
            raise AssertionError("smith normal form divisibility violated")


def invariant_factors(mat: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in order."""
    if not mat or not mat[0]:
        return []
    d, _, _ = smith_normal_form(mat)
    out = []
    for i in range(min(shape(d))):
        if d[i][i]:
            out.append(d[i][i])
    return out


def rank(mat: Matrix) -> int:
    """Rank over the rationals, by exact fraction elimination."""
    m, n = shape(mat)
    if m == 0 or n == 0:
        return 0
    rows = [[Fraction(x) for x in row] for row in mat]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def kernel_basis(mat: Matrix) -> list[list[int]]:
    """Basis (as column vectors) of the saturated integer kernel."""
    m, n = shape(mat)
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    d, _, v = smith_normal_form(mat)
    r = sum(1 for i in range(min(m, n)) if d[i][i])
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def solve(mat: Matrix, rhs: Matrix) -> Matrix | None:
    """Integer matrix x with mat*x = rhs, or None when no such x exists."""
    m, n = shape(mat)
    mr, k = shape(rhs)
    if mr != m:
        raise ValueError("shape mismatch in solve")
    if n == 0:
        return None if not is_zero(rhs) else zeros(0, k)
    d, u, v = smith_normal_form(mat)
    b = matmul(u, rhs)
    y = zeros(n, k)
    for i in range(m):
        di = d[i][i] if i < min(m, n) else 0
        for j in range(k):
            if di:
                if b[i][j] % di:
                    return None
                y[i][j] = b[i][j] // di
            elif b[i][j]:
                return None
    return matmul(v, y)


def determinant(mat: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")
    a = copy(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def cokernel_invariants(mat: Matrix, ambient: int) -> tuple[int, list[int]]:
    """(free rank, torsion) of Z^ambient / column span of mat."""
    m, n = shape(mat)
    if m != ambient:
        raise ValueError("ambient rank mismatch")
    if n == 0 or m == 0:
        return ambient, []
    facs = invariant_factors(mat)
    torsion = [d for d in facs if d > 1]
    return ambient - len(facs), torsion
