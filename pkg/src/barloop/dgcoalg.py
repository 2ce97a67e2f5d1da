"""Degreewise-finite dg coalgebra windows.

A window holds a chain complex on degrees 0..hi together with a
coproduct given per basis element as a list of (left degree, left index,
right index, coefficient) terms, a counit on degree 0, and an optional
coaugmentation.  Validation checks coassociativity, the counit laws, the
coderivation law with Koszul signs (d(x (x) y) = dx (x) y + (-1)^{|x|}
x (x) dy), and conilpotence by iterating the reduced coproduct.

chains() builds the normalized chain coalgebra of a simplicial set:
basis the nondegenerate simplices, differential the alternating face sum
with degenerate faces dropped, coproduct the front-face/back-face
(Alexander-Whitney) formula with degenerate factors dropped.
"""

from .errors import (
    FiltrationNotRespected,
    MismatchAt,
    NotCoaugmented,
    NotConilpotent,
)
from .exactlin import ChainComplexWindow, IntMatrix, homology_window, mapping_cone
from .monoids import ValidationReport

__all__ = [
    "DgCoalgebraWindow",
    "chains",
    "nerve_chains_map",
    "AdmissibleFiltration",
    "skeletal_filtration",
    "CoalgebraMap",
    "Verdict",
    "filtered_quasi_iso_window",
    "cone_quasi_iso_window",
]


class DgCoalgebraWindow:
    """Chain complex window plus coproduct, counit, coaugmentation.

    coproduct[n][j] lists (p, i1, i2, coeff): the term
    coeff * (basis_p[i1] (x) basis_{n-p}[i2]) of Delta applied to the
    j-th basis element of degree n.
    counit: list of integers over the degree-0 basis.
    coaugmentation: degree-0 basis index or None.
    """

    def __init__(self, complex_window, coproduct, counit, coaugmentation=None):
        self.complex = complex_window
        if self.complex.lo != 0:
            raise ValueError("coalgebra windows must start at degree 0")
        self.coproduct = {
            n: [list(map(tuple, terms)) for terms in per_degree]
            for n, per_degree in coproduct.items()
        }
        self.counit = list(map(int, counit))
        self.coaugmentation = coaugmentation
        if len(self.counit) != self.rank(0):
            raise ValueError("counit has wrong length")
        for n in range(0, self.complex.hi + 1):
            got = len(self.coproduct.get(n, ()))
            if got != self.rank(n):
                raise ValueError(f"coproduct missing columns in degree {n}")

    # -- basic access ---------------------------------------------------------

    @property
    def hi(self):
        return self.complex.hi

    def rank(self, n):
        return self.complex.ranks.get(n, 0)

    def label(self, n, i):
        return self.complex.label(n, i)

    def delta(self, n, j):
        return self.coproduct[n][j]

    def reduced_delta(self, n, j):
        """Coproduct terms with both factors in positive degree."""
        return [
            t for t in self.coproduct[n][j] if 0 < t[0] < n
        ]

    def boundary(self, n):
        return self.complex.boundary(n)

    # -- validation -------------------------------------------------------------

    def _d_of(self, n, j):
        """Differential of a basis element as {index: coeff} in deg n-1."""
        if n == 0 or n > self.hi:
            return {}
        col = {}
        m = self.complex.boundary(n)
        for i in range(m.rows):
            c = m.entry(i, j)
            if c:
                col[i] = c
        return col

    def validate(self):
        bad = []
        bad.extend(self._check_counit())
        bad.extend(self._check_coassoc())
        bad.extend(self._check_coderivation())
        bad.extend(self._check_conilpotence())
        if self.coaugmentation is not None:
            bad.extend(self._check_coaugmentation())
        return ValidationReport(bad)

    def _check_counit(self):
        bad = []
        for n in range(self.hi + 1):
            for j in range(self.rank(n)):
                left = {}
                right = {}
                for p, i1, i2, c in self.delta(n, j):
                    if p == 0:
                        left[i2] = left.get(i2, 0) + c * self.counit[i1]
                    if p == n:
                        right[i1] = right.get(i1, 0) + c * self.counit[i2]
                want = {j: 1}
                if {k: v for k, v in left.items() if v} != want:
                    bad.append(
                        f"(counit (x) 1) Delta != id on degree {n} "
                        f"element {self.label(n, j)}"
                    )
                if {k: v for k, v in right.items() if v} != want:
                    bad.append(
                        f"(1 (x) counit) Delta != id on degree {n} "
                        f"element {self.label(n, j)}"
                    )
        return bad

    def _check_coassoc(self):
        bad = []
        for n in range(self.hi + 1):
            for j in range(self.rank(n)):
                lhs = {}
                for p, i1, i2, c in self.delta(n, j):
                    for q, k1, k2, c2 in self.delta(p, i1):
                        key = (q, p - q, k1, k2, i2)
                        lhs[key] = lhs.get(key, 0) + c * c2
                rhs = {}
                for p, i1, i2, c in self.delta(n, j):
                    for q, k1, k2, c2 in self.delta(n - p, i2):
                        key = (p, q, i1, k1, k2)
                        rhs[key] = rhs.get(key, 0) + c * c2
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    bad.append(
                        f"coassociativity fails on degree {n} element "
                        f"{self.label(n, j)}"
                    )
        return bad

    def _check_coderivation(self):
        bad = []
        for n in range(1, self.hi + 1):
            for j in range(self.rank(n)):
                lhs = {}
                for i, c in self._d_of(n, j).items():
                    for p, i1, i2, c2 in self.delta(n - 1, i):
                        key = (p, i1, i2)
                        lhs[key] = lhs.get(key, 0) + c * c2
                rhs = {}
                for p, i1, i2, c in self.delta(n, j):
                    for i, c2 in self._d_of(p, i1).items():
                        key = (p - 1, i, i2)
                        rhs[key] = rhs.get(key, 0) + c * c2
                    sign = -1 if p % 2 else 1
                    for i, c2 in self._d_of(n - p, i2).items():
                        key = (p, i1, i)
                        rhs[key] = rhs.get(key, 0) + sign * c * c2
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    bad.append(
                        f"coderivation law fails on degree {n} element "
                        f"{self.label(n, j)}"
                    )
        return bad

    def _check_conilpotence(self):
        bad = []
        for n in range(1, self.hi + 1):
            for j in range(self.rank(n)):
                # iterate the reduced coproduct on the leftmost factor
                layer = {(n, j): 1}
                for _ in range(n + 1):
                    nxt = {}
                    for (m, i), c in layer.items():
                        for p, i1, i2, c2 in self.reduced_delta(m, i):
                            key = (p, i1)
                            nxt[key] = nxt.get(key, 0) + c * c2
                    layer = {k: v for k, v in nxt.items() if v}
                    if not layer:
                        break
                else:
                    bad.append(
                        f"reduced coproduct fails to vanish on degree {n} "
                        f"element {self.label(n, j)}"
                    )
        return bad

    def _check_coaugmentation(self):
        bad = []
        i0 = self.coaugmentation
        if not (0 <= i0 < self.rank(0)):
            raise NotCoaugmented("coaugmentation index out of range")
        if self.counit[i0] != 1:
            bad.append("counit of the coaugmentation is not 1")
        terms = {
            (p, i1, i2): c for p, i1, i2, c in self.delta(0, i0) if c
        }
        if terms != {(0, i0, i0): 1}:
            bad.append("coaugmentation is not group-like")
        return bad

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            raise MismatchAt("; ".join(report.violations[:3]))
        return self

    def require_conilpotent(self):
        bad = self._check_conilpotence()
        if bad:
            raise NotConilpotent(bad[0])
        return self

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self):
        return {
            "complex": self.complex.to_json_dict(),
            "coproduct": {
                str(n): [
                    [
                        {"left_degree": p, "left": i1, "right": i2,
                         "coeff": str(c)}
                        for p, i1, i2, c in terms
                    ]
                    for terms in per_degree
                ]
                for n, per_degree in sorted(self.coproduct.items())
            },
            "counit": [str(c) for c in self.counit],
            "coaugmentation": self.coaugmentation,
        }

    @classmethod
    def from_json_dict(cls, d):
        comp = ChainComplexWindow.from_json_dict(d["complex"])
        cop = {
            int(n): [
                [
                    (int(t["left_degree"]), int(t["left"]), int(t["right"]),
                     int(t["coeff"]))
                    for t in terms
                ]
                for terms in per_degree
            ]
            for n, per_degree in d["coproduct"].items()
        }
        return cls(
            comp, cop, [int(c) for c in d["counit"]], d.get("coaugmentation")
        )


def chains(k, hi):
    """Normalized chain coalgebra of a simplicial set on degrees 0..hi."""
    bases = {}
    index = {}
    for n in range(hi + 1):
        sids = k.n_simplices(n)
        bases[n] = sids
        index[n] = {sid: i for i, sid in enumerate(sids)}
    ranks = {n: len(bases[n]) for n in bases}
    labels = {n: [str(s) for s in bases[n]] for n in bases}

    boundaries = {}
    for n in range(1, hi + 1):
        rows, cols = ranks[n - 1], ranks[n]
        entries = [0] * (rows * cols)
        for j, sid in enumerate(bases[n]):
            for i in range(n + 1):
                f = k.face(sid, i)
                if f.word:
                    continue
                sign = -1 if i % 2 else 1
                entries[index[n - 1][f.base] * cols + j] += sign
        boundaries[n] = IntMatrix(rows, cols, entries)
    comp = ChainComplexWindow(
        0, hi, ranks, boundaries, labels=labels, closed_below=True
    )

    from .simplicial import FormalSimplex

    coproduct = {}
    for n in range(hi + 1):
        per_degree = []
        for sid in bases[n]:
            terms = []
            for p in range(n + 1):
                front = FormalSimplex(sid, ())
                for m in range(n, p, -1):
                    front = k.face_formal(front, m)
                back = FormalSimplex(sid, ())
                for _ in range(p):
                    back = k.face_formal(back, 0)
                if front.word or back.word:
                    continue
                terms.append(
                    (p, index[p][front.base], index[n - p][back.base], 1)
                )
            per_degree.append(terms)
        coproduct[n] = per_degree

    counit = [1] * ranks[0]
    coaug = None
    if ranks[0] == 1:
        coaug = 0
    return DgCoalgebraWindow(comp, coproduct, counit, coaug)


def nerve_chains_map(mmap, hi):
    """Chains-level coalgebra map induced by a monoid homomorphism.

    Sends a nerve tuple to its entrywise image, renormalized; tuples
    whose image is degenerate map to zero.  Naturality in this form is
    checked by CoalgebraMap.validate on the result.
    """
    from .simplicial import NerveSimplicialSet

    src_nerve = NerveSimplicialSet(mmap.src)
    dst_nerve = NerveSimplicialSet(mmap.dst)
    src_c = chains(src_nerve, hi)
    dst_c = chains(dst_nerve, hi)
    dst_index = {
        n: {sid: i for i, sid in enumerate(dst_nerve.n_simplices(n))}
        for n in range(hi + 1)
    }
    blocks = {}
    for n in range(hi + 1):
        src_basis = src_nerve.n_simplices(n)
        rows, cols = dst_c.rank(n), len(src_basis)
        entries = [0] * (rows * cols)
        for j, tup in enumerate(src_basis):
            img = dst_nerve.normalize_tuple(
                tuple(mmap.images[e] for e in tup)
            )
            if img.word:
                continue
            entries[dst_index[n][img.base] * cols + j] = 1
        blocks[n] = IntMatrix(rows, cols, entries)
    return CoalgebraMap(src_c, dst_c, blocks)


class AdmissibleFiltration:
    """Filtration level per basis element: level[(degree, index)] >= 0.

    Level 0 must be exactly the coaugmentation; levels must be compatible
    with the differential (non-increasing) and the coproduct
    (sub-additive across tensor factors).
    """

    def __init__(self, levels):
        self.levels = {k: int(v) for k, v in levels.items()}
        if any(v < 0 for v in self.levels.values()):
            raise ValueError("filtration levels must be >= 0")

    def level(self, n, i):
        return self.levels[(n, i)]

    def max_level(self):
        return max(self.levels.values(), default=0)

    def validate(self, c):
        bad = []
        for n in range(c.hi + 1):
            for j in range(c.rank(n)):
                if (n, j) not in self.levels:
                    bad.append(f"no level for degree {n} element {j}")
        if bad:
            return ValidationReport(bad)
        if c.coaugmentation is None:
            raise NotCoaugmented("admissible filtrations need a coaugmentation")
        for (n, j), l in self.levels.items():
            is_coaug = (n, j) == (0, c.coaugmentation)
            if (l == 0) != is_coaug:
                bad.append(
                    f"level 0 must be exactly the coaugmentation; "
                    f"degree {n} element {c.label(n, j)} has level {l}"
                )
        for n in range(1, c.hi + 1):
            for j in range(c.rank(n)):
                l = self.level(n, j)
                for i, coef in c._d_of(n, j).items():
                    if self.level(n - 1, i) > l:
                        bad.append(
                            f"differential raises the level on degree {n} "
                            f"element {c.label(n, j)}"
                        )
                for p, i1, i2, coef in c.delta(n, j):
                    if self.level(p, i1) + self.level(n - p, i2) > l:
                        bad.append(
                            f"coproduct is not sub-additive on degree {n} "
                            f"element {c.label(n, j)}"
                        )
        return ValidationReport(bad)


def skeletal_filtration(c):
    """Level = homological degree (0 on the coaugmentation)."""
    if c.coaugmentation is None:
        raise NotCoaugmented("skeletal filtration needs a coaugmentation")
    levels = {}
    for n in range(c.hi + 1):
        for j in range(c.rank(n)):
            levels[(n, j)] = n
    filt = AdmissibleFiltration(levels)
    report = filt.validate(c)
    if not report.ok:
        raise FiltrationNotRespected("; ".join(report.violations[:3]))
    return filt


class CoalgebraMap:
    """Degreewise matrices dst <- src forming a map of dg coalgebras."""

    def __init__(self, src, dst, blocks):
        self.src = src
        self.dst = dst
        self.blocks = dict(blocks)
        for n in range(src.hi + 1):
            b = self.block(n)
            if b.rows != dst.rank(n) or b.cols != src.rank(n):
                raise ValueError(f"block {n} has wrong shape")

    def block(self, n):
        b = self.blocks.get(n)
        if b is None:
            return IntMatrix.zeros(self.dst.rank(n), self.src.rank(n))
        return b

    def validate(self):
        bad = []
        hi = min(self.src.hi, self.dst.hi)
        for n in range(1, hi + 1):
            lhs = self.dst.boundary(n) * self.block(n)
            rhs = self.block(n - 1) * self.src.boundary(n)
            if lhs != rhs:
                bad.append(f"not a chain map in degree {n}")
        for j in range(self.src.rank(0)):
            total = 0
            for i in range(self.dst.rank(0)):
                total += self.dst.counit[i] * self.block(0).entry(i, j)
            if total != self.src.counit[j]:
                bad.append("counit is not preserved")
                break
        for n in range(hi + 1):
            for j in range(self.src.rank(n)):
                lhs = {}
                for p, i1, i2, c in self.src.delta(n, j):
                    bp, bq = self.block(p), self.block(n - p)
                    for a in range(bp.rows):
                        ca = bp.entry(a, i1)
                        if not ca:
                            continue
                        for b in range(bq.rows):
                            cb = bq.entry(b, i2)
                            if cb:
                                key = (p, a, b)
                                lhs[key] = lhs.get(key, 0) + c * ca * cb
                rhs = {}
                bn = self.block(n)
                for i in range(bn.rows):
                    c = bn.entry(i, j)
                    if not c:
                        continue
                    for p, i1, i2, c2 in self.dst.delta(n, i):
                        key = (p, i1, i2)
                        rhs[key] = rhs.get(key, 0) + c * c2
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    bad.append(
                        f"coproduct is not preserved on degree {n} element "
                        f"{self.src.label(n, j)}"
                    )
        if self.src.coaugmentation is not None:
            if self.dst.coaugmentation is None:
                bad.append("target has no coaugmentation")
            else:
                col = {
                    i: self.block(0).entry(i, self.src.coaugmentation)
                    for i in range(self.dst.rank(0))
                }
                col = {k: v for k, v in col.items() if v}
                if col != {self.dst.coaugmentation: 1}:
                    bad.append("coaugmentation is not preserved")
        return ValidationReport(bad)


class Verdict:
    """QuasiIso, or Fails(level, degree), or ConsistentUpToWindow."""

    def __init__(self, kind, level=None, degree=None, detail=None):
        self.kind = kind
        self.level = level
        self.degree = degree
        self.detail = detail

    @classmethod
    def quasi_iso(cls, detail=None):
        return cls("quasi-iso", detail=detail)

    @classmethod
    def fails(cls, level, degree, detail=None):
        return cls("fails", level=level, degree=degree, detail=detail)

    def __bool__(self):
        return self.kind == "quasi-iso"

    def __repr__(self):
        if self.kind == "quasi-iso":
            return "Verdict(quasi-iso)"
        return f"Verdict({self.kind}, level={self.level}, degree={self.degree})"

    def to_json_dict(self):
        out = {"kind": self.kind}
        if self.level is not None:
            out["level"] = self.level
        if self.degree is not None:
            out["degree"] = self.degree
        if self.detail:
            out["detail"] = self.detail
        return out


def cone_quasi_iso_window(blocks, src, dst):
    """Certify a chain map on a window by the acyclicity of its cone in
    the exact degrees.

    Returns (ok, degree): on failure the degree is where the homology
    comparison breaks (the cone has homology one degree above it, linking
    H_degree of source and target through the long exact sequence).
    """
    cone = mapping_cone(blocks, src, dst)
    table = homology_window(cone)
    for n in sorted(table.entries):
        e = table.entries[n]
        if e.exact and not e.is_zero():
            return False, max(n - 1, src.lo)
    return True, None


def filtered_quasi_iso_window(f, fc, fd, hi=None, require_valid=True):
    """Associated-graded quasi-isomorphism check for a filtered map.

    f: CoalgebraMap; fc, fd: AdmissibleFiltrations of f.src and f.dst.
    Per level, extracts the graded pieces of source, target and map and
    certifies the graded map by cone acyclicity in interior degrees.
    """
    src, dst = f.src, f.dst
    if require_valid:
        for filt, c in ((fc, src), (fd, dst)):
            report = filt.validate(c)
            if not report.ok:
                raise FiltrationNotRespected(report.violations[0])
    # the map must not raise filtration levels
    for n in range(src.hi + 1):
        b = f.block(n)
        for j in range(src.rank(n)):
            lj = fc.level(n, j)
            for i in range(dst.rank(n)):
                if b.entry(i, j) and fd.level(n, i) > lj:
                    raise FiltrationNotRespected(
                        f"map raises filtration level on degree {n} element "
                        f"{src.label(n, j)}"
                    )

    hi = min(src.hi, dst.hi) if hi is None else min(src.hi, dst.hi, hi)
    top = max(fc.max_level(), fd.max_level())
    for level in range(top + 1):
        src_idx = {
            n: [j for j in range(src.rank(n)) if fc.level(n, j) == level]
            for n in range(hi + 1)
        }
        dst_idx = {
            n: [i for i in range(dst.rank(n)) if fd.level(n, i) == level]
            for n in range(hi + 1)
        }

        def graded_complex(c, idx):
            ranks = {n: len(idx[n]) for n in range(hi + 1)}
            bounds = {}
            for n in range(1, hi + 1):
                m = c.boundary(n)
                entries = [
                    m.entry(i, j) for i in idx[n - 1] for j in idx[n]
                ]
                bounds[n] = IntMatrix(ranks[n - 1], ranks[n], entries)
            return ChainComplexWindow(
                0, hi, ranks, bounds, closed_below=True
            )

        gs = graded_complex(src, src_idx)
        gd = graded_complex(dst, dst_idx)
        gblocks = {}
        for n in range(hi + 1):
            b = f.block(n)
            entries = [
                b.entry(i, j) for i in dst_idx[n] for j in src_idx[n]
            ]
            gblocks[n] = IntMatrix(
                len(dst_idx[n]), len(src_idx[n]), entries
            )
        ok, degree = cone_quasi_iso_window(gblocks, gs, gd)
        if not ok:
            return Verdict.fails(level, degree)
    return Verdict.quasi_iso(
        detail={"levels_checked": top + 1, "window_hi": hi}
    )
