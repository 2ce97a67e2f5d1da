"""Pure-Python elimination kernel for Smith normal form over the integers.

All coefficients are Python ints, so nothing can overflow.  The compiled
twin in ``_snfcore.pyx`` implements the identical routine with C loop
indices; the two backends are cross-checked in the test suite and must
produce byte-identical output.

The kernel returns the diagonal together with the unimodular transforms
``u`` (rows) and ``v`` (columns) satisfying ``u * m * v == diag`` and the
inverse ``vinv`` of ``v``, which homology computations need to express
vectors in the kernel basis.
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


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_kernel(mat, rows, cols):
    """Diagonalize an integer matrix by unimodular row/column operations.

    ``mat`` is a list of row lists; it is not modified.  Returns
    ``(diag, u, v, vinv)`` where ``diag`` is a list of ``min(rows, cols)``
    nonnegative integers with each entry dividing the next.
    """
    d = [list(row) for row in mat]
    u = _identity(rows)
    v = _identity(cols)
    vinv = _identity(cols)

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_combine(i, j, k):
        # Unimodular op on rows i, j canceling d[j][k] against pivot d[i][k].
        a, b = d[i][k], d[j][k]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            d[j] = [x - q * y for x, y in zip(d[j], d[i])]
            u[j] = [x - q * y for x, y in zip(u[j], u[i])]
            return
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        ri, rj = d[i], d[j]
        d[i] = [x * p + y * q for p, q in zip(ri, rj)]
        d[j] = [-bg * p + ag * q for p, q in zip(ri, rj)]
        ri, rj = u[i], u[j]
        u[i] = [x * p + y * q for p, q in zip(ri, rj)]
        u[j] = [-bg * p + ag * q for p, q in zip(ri, rj)]

    def col_combine(j, l, k):
        # Unimodular op on columns j, l canceling d[k][l] against d[k][j].
        a, b = d[k][j], d[k][l]
        if b == 0:
            return
        if a != 0 and b % a == 0:
            q = b // a
            for r in d:
                r[l] -= q * r[j]
            for r in v:
                r[l] -= q * r[j]
            # inverse op on vinv rows: row_j += q * row_l
            vinv[j] = [p + q * s for p, s in zip(vinv[j], vinv[l])]
            return
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        for r in d:
            p, q = r[j], r[l]
            r[j] = x * p + y * q
            r[l] = -bg * p + ag * q
        for r in v:
            p, q = r[j], r[l]
            r[j] = x * p + y * q
            r[l] = -bg * p + ag * q
        rj, rl = vinv[j], vinv[l]
        vinv[j] = [ag * p + bg * q for p, q in zip(rj, rl)]
        vinv[l] = [-y * p + x * q for p, q in zip(rj, rl)]

    def select_pivot(k):
        # Minimal |entry| nonzero pivot in the trailing submatrix.
        bi = bj = -1
        best = 0
        for i in range(k, rows):
            di = d[i]
            for j in range(k, cols):
                e = di[j]
                if e and (best == 0 or abs(e) < best):
                    best = abs(e)
                    bi, bj = i, j
        if bi < 0:
            return False
        if bi != k:
            row_swap(k, bi)
        if bj != k:
            col_swap(k, bj)
        return True

    def eliminate_from(k0):
        k = k0
        while k < rows and k < cols:
            if not select_pivot(k):
                break
            while True:
                for i in range(k + 1, rows):
                    row_combine(k, i, k)
                row_clean = True
                for j in range(k + 1, cols):
                    if d[k][j]:
                        row_clean = False
                        break
                if row_clean:
                    break
                for j in range(k + 1, cols):
                    col_combine(k, j, k)
                col_clean = True
                for i in range(k + 1, rows):
                    if d[i][k]:
                        col_clean = False
                        break
                if col_clean:
                    break
            k += 1
        return k

    rank = eliminate_from(0)

    # Enforce the divisibility chain d[i] | d[i+1].
    while True:
        bad = -1
        for i in range(rank - 1):
            if d[i + 1][i + 1] % d[i][i]:
                bad = i
                break
        if bad < 0:
            break
        # Pull column bad+1 into column bad, then re-eliminate the tail.
        j, l = bad + 1, bad
        for r in d:
            r[l] += r[j]
        for r in v:
            r[l] += r[j]
        vinv[j] = [p - q for p, q in zip(vinv[j], vinv[l])]
        eliminate_from(bad)

    # Normalize signs on the diagonal.
    for i in range(rank):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]

    diag = [d[i][i] for i in range(min(rows, cols))]
    return diag, u, v, vinv
