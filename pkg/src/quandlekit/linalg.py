"""Exact integer linear algebra built around Smith normal form.

Matrices are plain lists of lists of Python ints, so nothing here ever
rounds.  Zero-row and zero-column matrices come up constantly as boundary
maps in or out of an empty chain group; pass ``ncols`` explicitly whenever
a matrix has no rows to pin down its width.
"""

from __future__ import annotations

from dataclasses import dataclass

# When set, every smith_normal_form() call re-checks U*M*V == S and the
# divisibility chain before returning.  The test suite turns this on.
VERIFY_SNF = False


def shape_of(mat, ncols=None):
    m = len(mat)
    if m == 0:
        if ncols is None:
            raise ValueError("matrix with no rows needs an explicit ncols")
        return 0, ncols
    n = len(mat[0])
    if any(len(row) != n for row in mat):
        raise ValueError("ragged matrix")
    if ncols is not None and ncols != n:
        raise ValueError("ncols disagrees with row length")
    return m, n


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(mat, ncols=None):
    m, n = shape_of(mat, ncols)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def matmul(a, b, bcols=None):
    m = len(a)
    if m == 0:
        return []
    k = len(a[0])
    if k == 0:
        if bcols is None:
            raise ValueError("inner dimension 0 needs explicit bcols")
        return zeros(m, bcols)
    if len(b) != k:
        raise ValueError("dimension mismatch")
    n = len(b[0])
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(n):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def det_bareiss(mat):
    """Fraction-free determinant of a square integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """U * M * V == S with U, V unimodular and S in Smith normal form."""

    U: list
    S: list
    V: list
    rank: int

    def diagonal(self):
        m = len(self.S)
        n = len(self.S[0]) if m else len(self.V)
        return [self.S[i][i] for i in range(min(m, n))]


def _min_abs_entry(s, t, m, n):
    best = None
    best_val = 0
    for i in range(t, m):
        row = s[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best = (i, j)
                best_val = abs(v)
                if best_val == 1:
                    return best
    return best


def _row_add(s, u, i, k, c):
    # row i += c * row k, mirrored on U
    si, sk = s[i], s[k]
    for j in range(len(si)):
        si[j] += c * sk[j]
    ui, uk = u[i], u[k]
    for j in range(len(ui)):
        ui[j] += c * uk[j]


def _col_add(s, v, j, k, c):
    # col j += c * col k, mirrored on V
    for row in s:
        row[j] += c * row[k]
    for row in v:
        row[j] += c * row[k]


def _extended_gcd(a, b):
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def _bezout_pair(s, u, v, i, j):
    """Replace diag entries (a, b) by (gcd, lcm) via unimodular moves."""
    a, b = s[i][i], s[j][j]
    _row_add(s, u, i, j, 1)  # puts b at (i, j)
    g, x, y = _extended_gcd(a, b)
    p, q = -b // g, a // g
    # column pair transform with det x*q - p*y == 1
    for row in s:
        ci, cj = row[i], row[j]
        row[i] = x * ci + y * cj
        row[j] = p * ci + q * cj
    for row in v:
        ci, cj = row[i], row[j]
        row[i] = x * ci + y * cj
        row[j] = p * ci + q * cj
    _row_add(s, u, j, i, -(y * b) // g)


def smith_normal_form(mat, ncols=None):
    m, n = shape_of(mat, ncols)
    s = [[int(x) for x in row] for row in mat]
    u = identity(m)
    v = identity(n)

    t = 0
    while t < min(m, n):
        piv = _min_abs_entry(s, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in s:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        if s[t][t] < 0:
            for j in range(n):
                s[t][j] = -s[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        p = s[t][t]
        clean = True
        for i in range(m):
            if i != t and s[i][t]:
                _row_add(s, u, i, t, -(s[i][t] // p))
                if s[i][t]:
                    clean = False
        for j in range(n):
            if j != t and s[t][j]:
                _col_add(s, v, j, t, -(s[t][j] // p))
                if s[t][j]:
                    clean = False
        if clean:
            t += 1
        # else: leftover remainders are smaller than |p|; repick the pivot

    r = t
    for i in range(r):
        for j in range(i + 1, r):
            if s[j][j] % s[i][i]:
                _bezout_pair(s, u, v, i, j)

    result = SNFResult(U=u, S=s, V=v, rank=r)
    if VERIFY_SNF:
        _verify_snf(mat, result, m, n)
    return result


def _verify_snf(mat, res, m, n):
    prod = matmul(matmul(res.U, mat, bcols=n), res.V, bcols=n)
    if prod != res.S:
        raise AssertionError("SNF transform check failed: U*M*V != S")
    d = res.diagonal()
    for i, x in enumerate(d):
        if x < 0:
            raise AssertionError("SNF diagonal has a negative entry")
        if (x != 0) != (i < res.rank):
            raise AssertionError("SNF rank does not match its diagonal")
    for i in range(res.rank - 1):
        if d[i + 1] % d[i]:
            raise AssertionError("SNF divisibility chain broken")
    for i in range(m):
        for j in range(n):
            if i != j and res.S[i][j]:
                raise AssertionError("SNF result is not diagonal")


def rank(mat, ncols=None):
    """Rank over the rationals (equals the count of nonzero SNF entries)."""
    return smith_normal_form(mat, ncols).rank


def column_lattice_basis(mat, ncols=None):
    """Basis of the lattice spanned by the columns (integer column echelon).

    Only unimodular column operations are used, so the span is preserved
    exactly; the returned vectors are the nonzero echelon columns.
    """
    m, n = shape_of(mat, ncols)
    cols = [[mat[i][j] for i in range(m)] for j in range(n)]
    r = 0
    for row in range(m):
        pivot = next((j for j in range(r, n) if cols[j][row]), None)
        if pivot is None:
            continue
        cols[r], cols[pivot] = cols[pivot], cols[r]
        for j in range(r + 1, n):
            if not cols[j][row]:
                continue
            a, b = cols[r][row], cols[j][row]
            g, x, y = _extended_gcd(a, b)
            p, q = -b // g, a // g
            cr, cj = cols[r], cols[j]
            for i in range(m):
                vi, vj = cr[i], cj[i]
                cr[i] = x * vi + y * vj
                cj[i] = p * vi + q * vj
        if cols[r][row] < 0:
            cols[r] = [-v for v in cols[r]]
        r += 1
        if r == n:
            break
    return cols[:r]


def kernel_basis(mat, ncols=None):
    """Basis of the integer kernel lattice, as a list of column vectors.

    The columns of V past the rank span ker(M) exactly: M*V has the first
    ``rank`` columns equal to U^-1 * S columns and the rest zero.
    """
    m, n = shape_of(mat, ncols)
    res = smith_normal_form(mat, ncols)
    return [[res.V[i][j] for i in range(n)] for j in range(res.rank, n)]


def solve_matrix(a, b, ncols=None, snf=None):
    """Solve A*X == B over the integers; None when no exact solution exists.

    Pass a precomputed ``snf`` of A to amortize repeated solves.
    """
    m, n = shape_of(a, ncols)
    if len(b) != m:
        raise ValueError("right hand side has the wrong height")
    k = len(b[0]) if m and b else (len(b[0]) if b else 0)
    if m == 0:
        # every X works; pick zero, but width of B is unknowable from []
        raise ValueError("solve_matrix needs at least one row; height-0 systems are vacuous")
    res = snf or smith_normal_form(a, ncols)
    c = matmul(res.U, b, bcols=k)
    x = zeros(n, k)
    for col in range(k):
        y = [0] * n
        for i in range(m):
            ci = c[i][col]
            if i < res.rank:
                d = res.S[i][i]
                if ci % d:
                    return None
                if i < n:
                    y[i] = ci // d
            elif ci:
                return None
        xi = mat_vec(res.V, y)
        for row in range(n):
            x[row][col] = xi[row]
    return x


def solve(a, b, ncols=None, snf=None):
    """Vector form of :func:`solve_matrix`."""
    x = solve_matrix(a, [[v] for v in b], ncols=ncols, snf=snf)
    if x is None:
        return None
    return [row[0] for row in x]
