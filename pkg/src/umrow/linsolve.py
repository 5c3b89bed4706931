"""Linear system solving over Z/n via integer diagonalization.

Smith-style row/column reduction with full transform tracking; the
divisibility chain is not enforced because congruence solving only needs a
diagonal form.  The matrices here are tiny (degree-truncated polynomial
witness systems).
"""

from __future__ import annotations

from math import gcd


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    return _xgcd(a, b)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def diagonalize(mat):
    """Return (d, u, v) with u*mat*v = d and d diagonal, over Z."""
    a = [row[:] for row in mat]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_combine(i1, i2, x, y, z, w):
        # rows (i1, i2) <- (x*r1 + y*r2, z*r1 + w*r2); det(x*w - y*z) = 1
        for m in (a, u):
            r1, r2 = m[i1], m[i2]
            for k in range(len(r1)):
                r1[k], r2[k] = x * r1[k] + y * r2[k], z * r1[k] + w * r2[k]

    def col_combine(j1, j2, x, y, z, w):
        for m in (a, v):
            for row in m:
                row[j1], row[j2] = (
                    x * row[j1] + y * row[j2],
                    z * row[j1] + w * row[j2],
                )

    t = 0
    while t < min(nr, nc):
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (
                    pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            col_combine(t, pj, 0, 1, 1, 0)
        while True:
            # clear column t below the pivot; plain subtraction when the
            # pivot divides (an xgcd combine could loop on equal entries)
            for i in range(t + 1, nr):
                if a[i][t]:
                    p, q = a[t][t], a[i][t]
                    if q % p == 0:
                        row_combine(t, i, 1, 0, -(q // p), 1)
                    else:
                        g, x, y = _xgcd(p, q)
                        row_combine(t, i, x, y, -(q // g), p // g)
            for j in range(t + 1, nc):
                if a[t][j]:
                    p, q = a[t][t], a[t][j]
                    if q % p == 0:
                        col_combine(t, j, 1, 0, -(q // p), 1)
                    else:
                        g, x, y = _xgcd(p, q)
                        col_combine(t, j, x, y, -(q // g), p // g)
            if all(a[i][t] == 0 for i in range(t + 1, nr)) and all(
                a[t][j] == 0 for j in range(t + 1, nc)
            ):
                break
        if a[t][t] < 0:
            for k in range(nc):
                a[t][k] = -a[t][k]
            for k in range(nr):
                u[t][k] = -u[t][k]
        t += 1
    return a, u, v


def solve_mod(mat, rhs, n):
    """One solution x of mat*x = rhs over Z/n, or None.

    `mat` is a list of rows of ints, `rhs` a list of ints.
    """
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    if nr == 0:
        return [0] * nc
    d, u, v = diagonalize(mat)
    c = [sum(u[i][k] * rhs[k] for k in range(nr)) % n for i in range(nr)]
    y = [0] * nc
    for i in range(nr):
        di = d[i][i] % n if i < nc else 0
        if i >= nc or di == 0:
            if c[i] % n != 0:
                return None
            continue
        g = gcd(di, n)
        if c[i] % g != 0:
            return None
        n_g = n // g
        inv = pow((di // g) % n_g, -1, n_g) if n_g > 1 else 0
        y[i] = ((c[i] // g) * inv) % n if n_g > 1 else 0
    x = [sum(v[i][k] * y[k] for k in range(nc)) % n for i in range(nc)]
    for i in range(nr):
        assert sum(mat[i][k] * x[k] for k in range(nc)) % n == rhs[i] % n
    return x
