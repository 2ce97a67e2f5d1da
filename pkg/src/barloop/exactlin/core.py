"""Exact integer matrices, Smith normal form, and windowed homology.

A chain complex is only ever known on a degree window [lo, hi].  Homology
in the interior of the window is exact; at the window boundary the
missing differentials are treated as zero and the result is flagged as
partial unless the complex is declared closed below (chains of a
simplicial set are: nothing lives in negative degrees).
"""

from ..errors import MismatchAt, WindowTooSmall
from ._backend import BACKEND, smith_kernel

__all__ = [
    "IntMatrix",
    "SnfResult",
    "smith_normal_form",
    "kernel_basis",
    "ChainComplexWindow",
    "HomologyEntry",
    "HomologyTable",
    "homology_window",
    "mapping_cone",
    "backend_name",
]


def backend_name():
    """Name of the elimination kernel selected at import ("cython" or
    "python")."""
    return BACKEND


class IntMatrix:
    """Immutable dense integer matrix (row-major tuple of Python ints)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows, cols, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        entries = tuple(int(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self._e = entries

    @classmethod
    def from_rows(cls, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        flat = []
        for r in row_lists:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    def entry(self, i, j):
        return self._e[i * self.cols + j]

    def row(self, i):
        return self._e[i * self.cols : (i + 1) * self.cols]

    def column(self, j):
        return tuple(self._e[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        e = self._e
        c = self.cols
        return IntMatrix(
            c, self.rows,
            [e[i * c + j] for j in range(c) for i in range(self.rows)],
        )

    def is_zero(self):
        return all(x == 0 for x in self._e)

    def is_identity(self):
        if self.rows != self.cols:
            return False
        return all(
            self.entry(i, j) == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(self.rows, self.cols, [x * other for x in self._e])
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self._e, other._e
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            base = i * m
            for t in range(k):
                av = arow[t]
                if av:
                    brow = b[t * m : (t + 1) * m]
                    for j in range(m):
                        out[base + j] += av * brow[j]
        return IntMatrix(n, m, out)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix(
            self.rows, self.cols, [x + y for x, y in zip(self._e, other._e)]
        )

    def __sub__(self, other):
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def apply(self, vec):
        """Matrix times column vector (sequence of ints)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(self.entry(i, j) * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def det(self):
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self):
        return self.rows == self.cols and self.det() in (1, -1)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"

    def pretty(self):
        return "\n".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )

    def to_json_dict(self):
        # Integers are serialized as decimal strings: JSON numbers are
        # doubles and would silently corrupt large entries.
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for x in self._e],
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(int(d["rows"]), int(d["cols"]), [int(x) for x in d["entries"]])


class SnfResult:
    """Smith normal form u * m * v == diag(d), with u, v unimodular and
    the diagonal nonnegative with each entry dividing the next."""

    __slots__ = ("matrix", "d", "u", "v", "v_inv")

    def __init__(self, matrix, d, u, v, v_inv):
        self.matrix = matrix
        self.d = tuple(d)
        self.u = u
        self.v = v
        self.v_inv = v_inv

    @property
    def rank(self):
        return sum(1 for x in self.d if x)

    def verify(self):
        """Recheck the defining identities by direct multiplication."""
        m = self.matrix
        prod = self.u * m * self.v
        for i in range(m.rows):
            for j in range(m.cols):
                want = self.d[i] if i == j and i < len(self.d) else 0
                if prod.entry(i, j) != want:
                    raise MismatchAt(
                        f"u*m*v not diagonal at ({i},{j})", element=(i, j)
                    )
        if not (self.v * self.v_inv).is_identity():
            raise MismatchAt("v_inv is not the inverse of v")
        for i in range(len(self.d) - 1):
            if self.d[i + 1] and self.d[i] == 0:
                raise MismatchAt("zero before nonzero on the diagonal")
            if self.d[i] and self.d[i + 1] % self.d[i]:
                raise MismatchAt(f"divisibility fails at position {i}")
        if not self.u.is_unimodular() or not self.v.is_unimodular():
            raise MismatchAt("transform is not unimodular")
        return True


def smith_normal_form(m):
    """Compute the Smith normal form of an IntMatrix."""
    diag, u, v, vinv = smith_kernel(m.to_rows(), m.rows, m.cols)
    return SnfResult(
        m,
        diag,
        IntMatrix.from_rows(u) if m.rows else IntMatrix(0, 0, []),
        IntMatrix.from_rows(v) if m.cols else IntMatrix(0, 0, []),
        IntMatrix.from_rows(vinv) if m.cols else IntMatrix(0, 0, []),
    )


def kernel_basis(m):
    """Columns spanning ker(m) over the integers (a full-rank basis)."""
    s = smith_normal_form(m)
    r = s.rank
    cols = [s.v.column(j) for j in range(r, m.cols)]
    return cols


class ChainComplexWindow:
    """A chain complex known on degrees lo..hi.

    ``boundaries[n]`` is the differential from degree n to degree n-1 and
    must be present for lo < n <= hi.  ``labels`` optionally names the
    basis elements per degree.  ``closed_below`` asserts that the complex
    is zero in degrees < lo (true for chains of a simplicial set with
    lo = 0), making degree lo exact rather than partial.
    """

    __slots__ = ("lo", "hi", "ranks", "boundaries", "labels", "closed_below")

    def __init__(self, lo, hi, ranks, boundaries, labels=None, closed_below=False):
        if hi <= lo:
            raise WindowTooSmall(f"window [{lo}, {hi}] has no interior")
        self.lo = lo
        self.hi = hi
        self.ranks = dict(ranks)
        self.boundaries = dict(boundaries)
        self.labels = dict(labels) if labels else None
        self.closed_below = closed_below
        for n in range(lo, hi + 1):
            if n not in self.ranks:
                raise ValueError(f"missing rank in degree {n}")
        for n in range(lo + 1, hi + 1):
            b = self.boundaries.get(n)
            if b is None:
                raise ValueError(f"missing boundary in degree {n}")
            if b.rows != self.ranks[n - 1] or b.cols != self.ranks[n]:
                raise ValueError(f"boundary shape mismatch in degree {n}")

    def rank(self, n):
        return self.ranks.get(n, 0)

    def boundary(self, n):
        """d_n: degree n -> degree n-1; zero matrix outside the window."""
        if n in self.boundaries:
            return self.boundaries[n]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    def validate(self):
        """Check d∘d == 0 on all composable pairs in the window."""
        for n in range(self.lo + 2, self.hi + 1):
            prod = self.boundary(n - 1) * self.boundary(n)
            if not prod.is_zero():
                raise MismatchAt(f"d∘d != 0 from degree {n}", degree=n)
        return True

    def label(self, n, i):
        if self.labels and n in self.labels:
            return self.labels[n][i]
        return f"deg{n}#{i}"

    def to_json_dict(self):
        d = {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": {str(n): self.ranks[n] for n in range(self.lo, self.hi + 1)},
            "boundaries": {
                str(n): self.boundaries[n].to_json_dict()
                for n in range(self.lo + 1, self.hi + 1)
            },
            "closed_below": self.closed_below,
        }
        if self.labels:
            d["labels"] = {str(n): list(v) for n, v in self.labels.items()}
        return d

    @classmethod
    def from_json_dict(cls, d):
        labels = None
        if "labels" in d:
            labels = {int(n): list(v) for n, v in d["labels"].items()}
        return cls(
            int(d["lo"]),
            int(d["hi"]),
            {int(n): int(r) for n, r in d["ranks"].items()},
            {int(n): IntMatrix.from_json_dict(b) for n, b in d["boundaries"].items()},
            labels=labels,
            closed_below=bool(d.get("closed_below", False)),
        )


class HomologyEntry:
    """Isomorphism class of one homology group: Z^free + sum Z/t_i."""

    __slots__ = ("free_rank", "torsion", "exact")

    def __init__(self, free_rank, torsion, exact):
        self.free_rank = free_rank
        # Canonical form: divisors >= 2, sorted along the divisibility chain.
        self.torsion = tuple(t for t in torsion if t >= 2)
        self.exact = exact

    def iso(self, other):
        return (
            self.free_rank == other.free_rank and self.torsion == other.torsion
        )

    def group(self):
        """Isomorphism class as a (free rank, torsion divisors) pair."""
        return (self.free_rank, self.torsion)

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def __eq__(self, other):
        return isinstance(other, HomologyEntry) and self.iso(other) and (
            self.exact == other.exact
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion, self.exact))

    def describe(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        body = " + ".join(parts) if parts else "0"
        return body if self.exact else body + " (partial)"

    def __repr__(self):
        return f"HomologyEntry({self.describe()})"


class HomologyTable:
    """Homology groups per degree over a window."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = dict(entries)

    def __getitem__(self, n):
        return self.entries[n]

    def degrees(self):
        return sorted(self.entries)

    def iso(self, other, degrees=None):
        degs = degrees if degrees is not None else self.degrees()
        if degrees is None and sorted(other.entries) != self.degrees():
            return False
        return all(self.entries[n].iso(other.entries[n]) for n in degs)

    def describe(self):
        return ", ".join(
            f"H_{n} = {self.entries[n].describe()}" for n in self.degrees()
        )

    def to_json_dict(self):
        return {
            str(n): {
                "free_rank": e.free_rank,
                "torsion": [str(t) for t in e.torsion],
                "exact": e.exact,
            }
            for n, e in self.entries.items()
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(
            {
                int(n): HomologyEntry(
                    int(v["free_rank"]),
                    [int(t) for t in v["torsion"]],
                    bool(v["exact"]),
                )
                for n, v in d.items()
            }
        )


def homology_window(c):
    """Homology of a ChainComplexWindow in every window degree.

    Interior degrees (and degree lo when the complex is closed below) are
    exact; the remaining boundary degrees treat the out-of-window
    differentials as zero and are flagged partial.
    """
    entries = {}
    for n in range(c.lo, c.hi + 1):
        rank_n = c.rank(n)
        d_n = c.boundary(n) if n > c.lo else IntMatrix.zeros(0, rank_n)
        d_next = c.boundary(n + 1) if n < c.hi else IntMatrix.zeros(rank_n, 0)
        s = smith_normal_form(d_n)
        r = s.rank
        cycle_rank = rank_n - r
        if d_next.cols and rank_n:
            w = s.v_inv * d_next
            for i in range(r):
                for j in range(w.cols):
                    if w.entry(i, j):
                        raise MismatchAt(
                            f"image of d_{n + 1} not contained in cycles "
                            f"of degree {n}",
                            degree=n,
                        )
            lower = IntMatrix(
                cycle_rank,
                w.cols,
                [w.entry(i, j) for i in range(r, rank_n) for j in range(w.cols)],
            )
            t = smith_normal_form(lower)
            divisors = [x for x in t.d if x]
        else:
            divisors = []
        exact = (c.lo < n < c.hi) or (n == c.lo and c.closed_below and n < c.hi)
        if n == c.hi and n == c.lo:
            exact = False
        entries[n] = HomologyEntry(
            cycle_rank - len(divisors), sorted(x for x in divisors if x >= 2), exact
        )
    return HomologyTable(entries)


def mapping_cone(maps, src, dst):
    """Mapping cone of a chain map f: src -> dst given per-degree matrices.

    cone_n = src_{n-1} (+) dst_n with d(c, x) = (-d c, d x + f c).  The
    cone window matches the common window of src and dst; its homology in
    interior degrees certifies whether f is a quasi-isomorphism there.
    """
    if src.lo != dst.lo or src.hi != dst.hi:
        raise ValueError("cone needs matching windows")
    lo, hi = src.lo, src.hi
    ranks = {}
    bounds = {}
    for n in range(lo, hi + 1):
        ranks[n] = (src.rank(n - 1) if n - 1 >= lo else 0) + dst.rank(n)
    for n in range(lo + 1, hi + 1):
        sc = src.rank(n - 1) if n - 1 >= lo else 0
        sc_prev = src.rank(n - 2) if n - 2 >= lo else 0
        dc = dst.rank(n)
        dc_prev = dst.rank(n - 1)
        rows = sc_prev + dc_prev
        cols = sc + dc
        entries = [0] * (rows * cols)
        if sc and sc_prev and n - 1 > lo:
            dsrc = src.boundary(n - 1)
            for i in range(sc_prev):
                for j in range(sc):
                    entries[i * cols + j] = -dsrc.entry(i, j)
        if sc and dc_prev:
            f = maps.get(n - 1)
            if f is None:
                raise ValueError(f"missing map matrix in degree {n - 1}")
            for i in range(dc_prev):
                for j in range(sc):
                    entries[(sc_prev + i) * cols + j] = f.entry(i, j)
        if dc and dc_prev:
            ddst = dst.boundary(n)
            for i in range(dc_prev):
                for j in range(dc):
                    entries[(sc_prev + i) * cols + sc + j] = ddst.entry(i, j)
        bounds[n] = IntMatrix(rows, cols, entries)
    return ChainComplexWindow(
        lo,
        hi,
        ranks,
        bounds,
        closed_below=src.closed_below and dst.closed_below,
    )
