# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of the pure-Python Smith-normal-form kernel.

Same elimination strategy, pivot rule and operation order as
``_kernel_py``; the test suite cross-checks that the two backends return
byte-identical results.  Matrix entries stay Python ints, so nothing can
overflow; the speedup comes from C loop indices and from avoiding
closure and comprehension overhead in the inner loops.
"""

__all__ = ["smith_kernel", "xgcd"]


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == x*a + y*b."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


cdef list _identity(Py_ssize_t n):
    cdef Py_ssize_t i, j
    cdef list out = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        out.append(row)
    return out


cdef _row_swap(list d, list u, Py_ssize_t i, Py_ssize_t j):
    d[i], d[j] = d[j], d[i]
    u[i], u[j] = u[j], u[i]


cdef _col_swap(list d, list v, list vinv, Py_ssize_t i, Py_ssize_t j):
    cdef list r
    for r in d:
        r[i], r[j] = r[j], r[i]
    for r in v:
        r[i], r[j] = r[j], r[i]
    vinv[i], vinv[j] = vinv[j], vinv[i]


cdef _row_combine(list d, list u, Py_ssize_t i, Py_ssize_t j,
                       Py_ssize_t k):
    # Unimodular op on rows i, j canceling d[j][k] against pivot d[i][k].
    cdef list ri, rj
    cdef Py_ssize_t t, n
    a = (<list>d[i])[k]
    b = (<list>d[j])[k]
    if b == 0:
        return
    if a != 0 and b % a == 0:
        q = b // a
        ri = <list>d[i]
        rj = <list>d[j]
        n = len(rj)
        for t in range(n):
            rj[t] = rj[t] - q * ri[t]
        ri = <list>u[i]
        rj = <list>u[j]
        n = len(rj)
        for t in range(n):
            rj[t] = rj[t] - q * ri[t]
        return
    g, x, y = xgcd(a, b)
    ag = a // g
    bg = b // g
    ri = <list>d[i]
    rj = <list>d[j]
    n = len(ri)
    for t in range(n):
        p = ri[t]
        q = rj[t]
        ri[t] = x * p + y * q
        rj[t] = -bg * p + ag * q
    ri = <list>u[i]
    rj = <list>u[j]
    n = len(ri)
    for t in range(n):
        p = ri[t]
        q = rj[t]
        ri[t] = x * p + y * q
        rj[t] = -bg * p + ag * q


cdef _col_combine(list d, list v, list vinv, Py_ssize_t j,
                       Py_ssize_t l, Py_ssize_t k):
    # Unimodular op on columns j, l canceling d[k][l] against d[k][j].
    cdef list r, rj, rl
    cdef Py_ssize_t t, n
    a = (<list>d[k])[j]
    b = (<list>d[k])[l]
    if b == 0:
        return
    if a != 0 and b % a == 0:
        q = b // a
        for r in d:
            r[l] = r[l] - q * r[j]
        for r in v:
            r[l] = r[l] - q * r[j]
        # inverse op on vinv rows: row_j += q * row_l
        rj = <list>vinv[j]
        rl = <list>vinv[l]
        n = len(rj)
        for t in range(n):
            rj[t] = rj[t] + q * rl[t]
        return
    g, x, y = xgcd(a, b)
    ag = a // g
    bg = b // g
    for r in d:
        p = r[j]
        q = r[l]
        r[j] = x * p + y * q
        r[l] = -bg * p + ag * q
    for r in v:
        p = r[j]
        q = r[l]
        r[j] = x * p + y * q
        r[l] = -bg * p + ag * q
    rj = <list>vinv[j]
    rl = <list>vinv[l]
    n = len(rj)
    for t in range(n):
        p = rj[t]
        q = rl[t]
        rj[t] = ag * p + bg * q
        rl[t] = -y * p + x * q


cdef bint _select_pivot(list d, list u, list v, list vinv, Py_ssize_t k,
                        Py_ssize_t rows, Py_ssize_t cols):
    # Minimal |entry| nonzero pivot in the trailing submatrix.
    cdef Py_ssize_t i, j, bi = -1, bj = -1
    cdef list di
    best = 0
    for i in range(k, rows):
        di = <list>d[i]
        for j in range(k, cols):
            e = di[j]
            if e != 0:
                ae = -e if e < 0 else e
                if best == 0 or ae < best:
                    best = ae
                    bi = i
                    bj = j
    if bi < 0:
        return False
    if bi != k:
        _row_swap(d, u, k, bi)
    if bj != k:
        _col_swap(d, v, vinv, k, bj)
    return True


cdef Py_ssize_t _eliminate_from(list d, list u, list v, list vinv,
                                Py_ssize_t k0, Py_ssize_t rows,
                                Py_ssize_t cols):
    cdef Py_ssize_t k = k0, i, j
    cdef bint row_clean, col_clean
    cdef list rk
    while k < rows and k < cols:
        if not _select_pivot(d, u, v, vinv, k, rows, cols):
            break
        while True:
            for i in range(k + 1, rows):
                _row_combine(d, u, k, i, k)
            row_clean = True
            rk = <list>d[k]
            for j in range(k + 1, cols):
                if rk[j] != 0:
                    row_clean = False
                    break
            if row_clean:
                break
            for j in range(k + 1, cols):
                _col_combine(d, v, vinv, k, j, k)
            col_clean = True
            for i in range(k + 1, rows):
                if (<list>d[i])[k] != 0:
                    col_clean = False
                    break
            if col_clean:
                break
        k += 1
    return k


def smith_kernel(mat, rows, cols):
    """Diagonalize an integer matrix by unimodular row/column operations.

    ``mat`` is a list of row lists; it is not modified.  Returns
    ``(diag, u, v, vinv)`` where ``diag`` is a list of ``min(rows, cols)``
    nonnegative integers with each entry dividing the next.
    """
    cdef Py_ssize_t nr = rows, nc = cols
    cdef Py_ssize_t i, j, l, t, n, rank, bad
    cdef list d = [list(row) for row in mat]
    cdef list u = _identity(nr)
    cdef list v = _identity(nc)
    cdef list vinv = _identity(nc)
    cdef list r, ri, rj, rl

    rank = _eliminate_from(d, u, v, vinv, 0, nr, nc)

    # Enforce the divisibility chain d[i] | d[i+1].
    while True:
        bad = -1
        for i in range(rank - 1):
            if (<list>d[i + 1])[i + 1] % (<list>d[i])[i]:
                bad = i
                break
        if bad < 0:
            break
        # Pull column bad+1 into column bad, then re-eliminate the tail.
        j = bad + 1
        l = bad
        for r in d:
            r[l] = r[l] + r[j]
        for r in v:
            r[l] = r[l] + r[j]
        rj = <list>vinv[j]
        rl = <list>vinv[l]
        n = len(rj)
        for t in range(n):
            rj[t] = rj[t] - rl[t]
        _eliminate_from(d, u, v, vinv, bad, nr, nc)

    # Normalize signs on the diagonal.
    for i in range(rank):
        if (<list>d[i])[i] < 0:
            ri = <list>d[i]
            n = len(ri)
            for t in range(n):
                ri[t] = -ri[t]
            ri = <list>u[i]
            n = len(ri)
            for t in range(n):
                ri[t] = -ri[t]

    n = nr if nr < nc else nc
    diag = [(<list>d[i])[i] for i in range(n)]
    return diag, u, v, vinv
