"""Exact linear algebra over the integers and rationals.

Row-style Hermite reduction with a tracked unimodular transform is the
workhorse: it yields canonical lattice bases, integer kernels (automatically
saturated, because the transform is unimodular), and lattice membership
tests.  Systems that genuinely need division are solved with Fractions.

Matrices in this module are plain lists of lists; sizes run up to 9x9 (the
commutator systems of 3x3 matrices), where dense exact elimination is
trivially fast.
"""

from __future__ import annotations

from fractions import Fraction


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def identity_rows(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][l] * b[l][j] for l in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def transpose_rows(rows):
    return [list(col) for col in zip(*rows)]


def hnf_with_transform(rows):
    """Row Hermite normal form with its unimodular transform.

    Returns (h, u, rank) where u is unimodular, u @ rows == h, the first
    ``rank`` rows of h are the canonical echelon basis of the row lattice
    (positive pivots, entries above each pivot reduced into [0, pivot)), and
    the remaining rows of h are zero.
    """
    h = [list(map(int, r)) for r in rows]
    n = len(h)
    ncols = len(h[0]) if n else 0
    u = identity_rows(n)
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, n) if h[i][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            h[rank], h[piv] = h[piv], h[rank]
            u[rank], u[piv] = u[piv], u[rank]
        for i in range(rank + 1, n):
            if h[i][c] == 0:
                continue
            a, b = h[rank][c], h[i][c]
            g, s, t = xgcd(a, b)
            aa, bb = a // g, b // g
            # [[s, t], [-bb, aa]] has determinant (s*a + t*b)/g = 1
            h[rank], h[i] = (
                [s * h[rank][k] + t * h[i][k] for k in range(ncols)],
                [-bb * h[rank][k] + aa * h[i][k] for k in range(ncols)],
            )
            u[rank], u[i] = (
                [s * u[rank][k] + t * u[i][k] for k in range(n)],
                [-bb * u[rank][k] + aa * u[i][k] for k in range(n)],
            )
        if h[rank][c] < 0:
            h[rank] = [-x for x in h[rank]]
            u[rank] = [-x for x in u[rank]]
        p = h[rank][c]
        for i in range(rank):
            q = h[i][c] // p
            if q:
                h[i] = [h[i][k] - q * h[rank][k] for k in range(ncols)]
                u[i] = [u[i][k] - q * u[rank][k] for k in range(n)]
        rank += 1
    return h, u, rank


def hnf_basis(rows):
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    h, _, rank = hnf_with_transform(rows)
    return [h[i] for i in range(rank)]


def lattices_equal(rows_a, rows_b):
    return hnf_basis(rows_a) == hnf_basis(rows_b)


def left_kernel(rows):
    """Basis of {u integer : u @ rows == 0}; saturated by construction."""
    h, u, rank = hnf_with_transform(rows)
    return [u[i] for i in range(rank, len(rows))]


def right_kernel(rows):
    """Basis of {x integer : rows @ x == 0}."""
    return left_kernel(transpose_rows(rows))


def solve_unique(rows, rhs):
    """Exact solution of an overdetermined full-column-rank linear system.

    ``rows`` is an m x n coefficient matrix (m >= n, rank n expected) and
    ``rhs`` a length-m vector.  Returns the unique solution as a list of
    Fractions, or None when the system is inconsistent.  Raises ValueError
    when the columns are dependent (no unique solution exists).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    row_at = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(row_at, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[row_at], a[piv] = a[piv], a[row_at]
        inv = 1 / a[row_at][c]
        a[row_at] = [x * inv for x in a[row_at]]
        for i in range(m):
            if i != row_at and a[i][c] != 0:
                f = a[i][c]
                a[i] = [a[i][k] - f * a[row_at][k] for k in range(n + 1)]
        pivots.append(c)
        row_at += 1
    if len(pivots) < n:
        raise ValueError("columns are linearly dependent; no unique solution")
    if any(a[i][n] != 0 for i in range(row_at, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def det_exact(rows):
    """Determinant of a small square matrix of ints/Fractions, exactly."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [a[i][k] - f * a[c][k] for k in range(n)]
    return det


def inverse_unimodular(rows):
    """Exact inverse of a unimodular integer matrix, as integer rows."""
    n = len(rows)
    inv_cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        col = solve_unique(rows, e)
        inv_cols.append(col)
    inv = [[inv_cols[j][i] for j in range(n)] for i in range(n)]
    assert all(f.denominator == 1 for row in inv for f in row), "matrix is not unimodular"
    return [[int(f) for f in row] for row in inv]


def unimodular_with_first_row(v):
    """Some unimodular integer matrix whose first row is the primitive ``v``."""
    n = len(v)
    h, u, rank = hnf_with_transform([[x] for x in v])
    assert rank == 1 and h[0][0] == 1, "vector must be primitive"
    # u @ v_col = e1, so v is the first column of u^-1; transpose to a row
    uinv = inverse_unimodular(u)
    w = transpose_rows(uinv)
    assert w[0] == list(v)
    return w


def coords_in_basis(basis_rows, v):
    """Coordinates of ``v`` in ``basis_rows`` over Q, or None if outside the span."""
    cols = transpose_rows(basis_rows)
    try:
        return solve_unique(cols, v)
    except ValueError:
        raise ValueError("basis rows are linearly dependent")
