"""Bar and cobar constructions on windows.

bar(A) is the tensor coalgebra on the shifted augmentation ideal of an
augmented dg algebra, with differential

    D[x1|..|xn] = - sum_i (-1)^{e_{i-1}} [x1|..|d xi|..|xn]
                  + sum_i (-1)^{e_i}     [x1|..|xi xi+1|..|xn]

where e_i is the sum of the first i shifted degrees and the product is
taken in the augmentation ideal.  cobar(C) is the free algebra on the
deshifted positive-degree part of a reduced coaugmented window, with

    d(s^{-1}x) = -s^{-1}(dx) + sum (-1)^{|x'|} (s^{-1}x')(s^{-1}x'')

over the reduced coproduct.  counit_check and unit_check certify the
two adjunction maps on windows; extended_cobar additionally inverts the
degree-0 cycles 1 + s^{-1}x attached to the 1-simplices of a reduced
simplicial set.
"""

from .dgcoalg import (
    AdmissibleFiltration,
    CoalgebraMap,
    DgCoalgebraWindow,
    Verdict,
    chains,
    cone_quasi_iso_window,
    filtered_quasi_iso_window,
    skeletal_filtration,
)
from .errors import (
    BarloopError,
    CapExceeded,
    InfiniteRank,
    MismatchAt,
    NotCoaugmented,
    NotConnected,
    NotSimplyConnected,
)
from .exactlin import ChainComplexWindow, IntMatrix
from .rewrite import (
    IsoCertificate,
    PresentedDgAlgebra,
    adjoin_inverses,
    basis_in_degree,
    complete,
    poly_iadd_term,
    poly_mul,
)

__all__ = [
    "bar",
    "cobar",
    "extended_cobar",
    "nerve_bar_iso_check",
    "counit_check",
    "unit_check",
]


def _completed(algebra, budget):
    rsys = complete(algebra, budget)
    if not rsys.complete:
        raise BarloopError(
            "completion budget exhausted; no canonical monomial basis"
        )
    return rsys


class _IdealBasis:
    """Monomial bases and structure maps of an augmentation ideal.

    Degree-0 basis elements stand for w - eps(w); in positive degrees the
    augmentation vanishes and the underline is the word itself.  Products
    and differentials are returned as coordinates in this basis, which
    amounts to normalizing and dropping the empty word.
    """

    def __init__(self, algebra, rsys, top, cap):
        self.alg = algebra
        self.rsys = rsys
        if algebra.augmentation is None:
            raise BarloopError("bar needs an augmented algebra")
        for i, (lbl, deg) in enumerate(algebra.generators):
            if deg > 0 and algebra.augmentation.get(i, 0):
                raise BarloopError(
                    f"augmentation does not vanish on positive-degree "
                    f"generator {lbl}"
                )
            if deg == 1:
                dg = algebra.differential.get(i)
                if dg and algebra.augment(rsys.normal_form(dict(dg))):
                    raise BarloopError(
                        f"augmentation is not a chain map on d({lbl})"
                    )
        self.basis = {}
        for n in range(max(top, 0) + 1):
            try:
                words = basis_in_degree(rsys, n, cap)
            except CapExceeded as exc:
                raise InfiniteRank(
                    f"augmentation ideal is not degreewise finite: {exc}"
                ) from None
            self.basis[n] = [w for w in words if w] if n == 0 else words

    def _eps(self, word):
        v = 1
        for g in word:
            v *= self.alg.augmentation.get(g, 0)
        return v

    def _ideal_coords(self, p):
        nf = self.rsys.normal_form(p)
        return {w: c for w, c in nf.items() if w}

    def mult(self, w1, w2):
        """Coordinates of the ideal product of two basis elements."""
        e1, e2 = self._eps(w1), self._eps(w2)
        p = {}
        poly_iadd_term(p, w1 + w2, 1, self.alg.modulus)
        if e2:
            poly_iadd_term(p, w1, -e2, self.alg.modulus)
        if e1:
            poly_iadd_term(p, w2, -e1, self.alg.modulus)
        return self._ideal_coords(p)

    def diff(self, w):
        return self._ideal_coords(self.alg.differentiate({w: 1}))


def _bar_data(algebra, rsys, hi, cap):
    """Bar coalgebra window plus its basis tuples and index maps."""
    alg = algebra
    ib = _IdealBasis(alg, rsys, hi - 1, cap)
    sdeg = {}
    for n, words in ib.basis.items():
        for w in words:
            sdeg[w] = n + 1

    bar_basis = {0: [()]}
    for n in range(1, hi + 1):
        out = []
        for sd in range(1, n + 1):
            for w in ib.basis.get(sd - 1, ()):
                for rest in bar_basis[n - sd]:
                    out.append((w,) + rest)
                    if len(out) > cap:
                        raise InfiniteRank(
                            f"more than {cap} bar words in degree {n}"
                        )
        bar_basis[n] = out
    bar_index = {
        n: {t: i for i, t in enumerate(ts)} for n, ts in bar_basis.items()
    }

    ranks = {n: len(bar_basis[n]) for n in range(hi + 1)}
    labels = {
        n: [
            "[" + "|".join(
                "*".join(alg.gen_label(g) for g in w) for w in t
            ) + "]"
            for t in bar_basis[n]
        ]
        for n in range(hi + 1)
    }

    bounds = {}
    for n in range(1, hi + 1):
        rows, cols = ranks[n - 1], ranks[n]
        entries = [0] * (rows * cols)
        for j, tup in enumerate(bar_basis[n]):
            sdegs = [sdeg[w] for w in tup]
            col = {}
            prefix = 0
            for i, w in enumerate(tup):
                sign_before = -1 if prefix % 2 else 1
                for w2, c in ib.diff(w).items():
                    t2 = tup[:i] + (w2,) + tup[i + 1 :]
                    poly_iadd_term(col, t2, -sign_before * c, alg.modulus)
                prefix += sdegs[i]
                sign_through = -1 if prefix % 2 else 1
                if i + 1 < len(tup):
                    for w2, c in ib.mult(w, tup[i + 1]).items():
                        t2 = tup[:i] + (w2,) + tup[i + 2 :]
                        poly_iadd_term(
                            col, t2, sign_through * c, alg.modulus
                        )
            for t2, c in col.items():
                entries[bar_index[n - 1][t2] * cols + j] = c
        bounds[n] = IntMatrix(rows, cols, entries)

    comp = ChainComplexWindow(
        0, hi, ranks, bounds, labels=labels, closed_below=True
    )
    coproduct = {}
    for n in range(hi + 1):
        per_degree = []
        for tup in bar_basis[n]:
            sdegs = [sdeg[w] for w in tup]
            terms = []
            for k in range(len(tup) + 1):
                p = sum(sdegs[:k])
                terms.append(
                    (
                        p,
                        bar_index[p][tup[:k]],
                        bar_index[n - p][tup[k:]],
                        1,
                    )
                )
            per_degree.append(terms)
        coproduct[n] = per_degree
    window = DgCoalgebraWindow(comp, coproduct, [1], 0)
    return window, bar_basis, bar_index


def bar(algebra, hi, budget=100_000, cap=10_000):
    """Bar coalgebra window of an augmented presented dg algebra."""
    rsys = _completed(algebra, budget)
    window, _, _ = _bar_data(algebra, rsys, hi, cap)
    return window


def _cobar_with_gens(c):
    if c.coaugmentation is None or c.rank(0) != 1:
        raise NotCoaugmented(
            "cobar needs a reduced coaugmented coalgebra window"
        )
    c.require_conilpotent()
    gens = []
    gen_of = {}
    for n in range(1, c.hi + 1):
        for i in range(c.rank(n)):
            gen_of[(n, i)] = len(gens)
            gens.append((c.label(n, i), n - 1))
    labels = [lbl for lbl, _ in gens]
    if len(set(labels)) != len(labels):
        gens = [(f"{lbl}:{deg + 1}", deg) for lbl, deg in gens]

    differential = {}
    for (n, i), g in gen_of.items():
        d = {}
        for j, coeff in c._d_of(n, i).items():
            if n == 1:
                raise BarloopError(
                    "differential of a degree-1 element must vanish in a "
                    "reduced window"
                )
            poly_iadd_term(d, (gen_of[(n - 1, j)],), -coeff)
        for p, i1, i2, coeff in c.reduced_delta(n, i):
            sign = -1 if p % 2 else 1
            poly_iadd_term(
                d, (gen_of[(p, i1)], gen_of[(n - p, i2)]), sign * coeff
            )
        if d:
            differential[g] = d

    alg = PresentedDgAlgebra(
        gens,
        [],
        differential,
        {g: 0 for g in range(len(gens))},
        provenance={"cobar_ranks": {n: c.rank(n) for n in range(c.hi + 1)}},
    )
    return alg, gen_of


def cobar(c):
    """Cobar algebra of a reduced coaugmented coalgebra window: free on
    one generator of degree n-1 per degree-n basis element."""
    alg, _ = _cobar_with_gens(c)
    return alg


def extended_cobar(k, hi, inverse_labels=None):
    """Cobar of the chains of a reduced simplicial set, with the group-like
    cycles 1 + s^{-1}x inverted for every nondegenerate 1-simplex x."""
    c = chains(k, hi)
    alg, gen_of = _cobar_with_gens(c)
    ones = k.n_simplices(1)
    if not ones:
        return alg
    elements = []
    labels = []
    for i, _ in enumerate(ones):
        g = gen_of[(1, i)]
        elements.append({(): 1, (g,): 1})
        labels.append(f"{alg.gen_label(g)}_inv")
    if inverse_labels is not None:
        if len(inverse_labels) != len(elements):
            raise ValueError("one inverse label per 1-simplex required")
        labels = list(inverse_labels)
    return adjoin_inverses(alg, elements, labels)


def nerve_bar_iso_check(m, hi, budget=100_000, cap=10_000):
    """Certify that the chains of the nerve and the bar of the monoid
    algebra agree bit-exactly under (m1,..,mn) -> [m1-1 | .. | mn-1]."""
    from .monoids import monoid_algebra
    from .simplicial import nerve

    k = nerve(m)
    cn = chains(k, hi)
    alg = monoid_algebra(m)
    rsys = _completed(alg, budget)
    bw, bar_basis, bar_index = _bar_data(alg, rsys, hi, cap)

    perm = {}
    for n in range(hi + 1):
        nerve_basis = k.n_simplices(n)
        if len(nerve_basis) != bw.rank(n):
            raise MismatchAt(
                f"rank {len(nerve_basis)} != {bw.rank(n)} in degree {n}",
                degree=n,
            )
        pos = []
        for tup in nerve_basis:
            bt = tuple(
                (alg.gen_index(m.elements[e]),) for e in tup
            )
            jj = bar_index[n].get(bt)
            if jj is None:
                raise MismatchAt(
                    f"no bar word for nerve simplex {tup}",
                    degree=n,
                    element=str(tup),
                )
            pos.append(jj)
        perm[n] = pos

    for n in range(1, hi + 1):
        dn, db = cn.complex.boundary(n), bw.complex.boundary(n)
        for j in range(dn.cols):
            for i in range(dn.rows):
                if dn.entry(i, j) != db.entry(perm[n - 1][i], perm[n][j]):
                    raise MismatchAt(
                        "differentials disagree",
                        degree=n,
                        element=cn.label(n, j),
                    )
    for n in range(hi + 1):
        for j in range(cn.rank(n)):
            lhs = {}
            for p, i1, i2, coeff in cn.delta(n, j):
                key = (p, perm[p][i1], perm[n - p][i2])
                lhs[key] = lhs.get(key, 0) + coeff
            rhs = {}
            for p, i1, i2, coeff in bw.delta(n, perm[n][j]):
                rhs[(p, i1, i2)] = rhs.get((p, i1, i2), 0) + coeff
            if {k_: v for k_, v in lhs.items() if v} != {
                k_: v for k_, v in rhs.items() if v
            }:
                raise MismatchAt(
                    "coproducts disagree", degree=n, element=cn.label(n, j)
                )
    return IsoCertificate(
        True,
        "certified",
        {
            "hi": hi,
            "ranks": {str(n): cn.rank(n) for n in range(hi + 1)},
            "monoid_order": m.order(),
        },
    )


def _algebra_window(alg, rsys, hi, cap):
    """Chain complex window of an algebra plus its per-degree word bases."""
    bases = {n: basis_in_degree(rsys, n, cap) for n in range(hi + 1)}
    index = {n: {w: i for i, w in enumerate(bases[n])} for n in bases}
    ranks = {n: len(bases[n]) for n in bases}
    bounds = {}
    for n in range(1, hi + 1):
        rows, cols = ranks[n - 1], ranks[n]
        entries = [0] * (rows * cols)
        for j, w in enumerate(bases[n]):
            dp = rsys.normal_form(alg.differentiate({w: 1}))
            for w2, coeff in dp.items():
                entries[index[n - 1][w2] * cols + j] = coeff
        bounds[n] = IntMatrix(rows, cols, entries)
    labels = {
        n: [
            "*".join(alg.gen_label(g) for g in w) if w else "1"
            for w in bases[n]
        ]
        for n in bases
    }
    window = ChainComplexWindow(
        0, hi, ranks, bounds, labels=labels, closed_below=True
    )
    return window, bases, index


def counit_check(algebra, hi, budget=100_000, cap=10_000):
    """Certify the counit cobar(bar(A)) -> A on degrees 0..hi by cone
    acyclicity: bar words of length one map to the elements they suspend,
    longer words map to zero."""
    rsys_a = _completed(algebra, budget)
    if basis_in_degree(rsys_a, 0, cap) != [()]:
        raise NotConnected(
            "counit comparison needs a connected algebra: degree 0 must be "
            "spanned by the unit"
        )
    bw, bar_basis, _ = _bar_data(algebra, rsys_a, hi + 1, cap)
    om, gen_of = _cobar_with_gens(bw)
    rsys_om = _completed(om, budget)

    images = {}
    for (n, i), g in gen_of.items():
        tup = bar_basis[n][i]
        images[g] = {tup[0]: 1} if len(tup) == 1 else {}

    aw, abases, aindex = _algebra_window(algebra, rsys_a, hi, cap)
    ow, obases, _ = _algebra_window(om, rsys_om, hi, cap)
    blocks = {}
    for n in range(hi + 1):
        rows, cols = aw.rank(n), ow.rank(n)
        entries = [0] * (rows * cols)
        for j, word in enumerate(obases[n]):
            acc = {(): 1}
            for g in word:
                acc = poly_mul(acc, images[g], algebra.modulus)
                if not acc:
                    break
            for w2, coeff in rsys_a.normal_form(acc).items():
                entries[aindex[n][w2] * cols + j] = coeff
        blocks[n] = IntMatrix(rows, cols, entries)

    ok, degree = cone_quasi_iso_window(blocks, ow, aw)
    if ok:
        return Verdict.quasi_iso(detail={"window_hi": hi})
    return Verdict.fails(None, degree)


def unit_check(c, budget=100_000, cap=10_000):
    """Certify the unit C -> bar(cobar(C)) as a filtered quasi-isomorphism
    for a simply connected reduced window: skeletal filtration on C against
    the total-weight filtration on the bar side."""
    if c.coaugmentation is None or c.rank(0) != 1:
        raise NotCoaugmented("unit comparison needs a reduced window")
    if c.rank(1):
        raise NotSimplyConnected(
            "unit comparison needs a window with no degree-1 elements"
        )
    om, gen_of = _cobar_with_gens(c)
    rsys_om = _completed(om, budget)
    bw, bar_basis, bar_index = _bar_data(om, rsys_om, c.hi, cap)

    blocks = {0: IntMatrix.from_rows([[1]])}
    for n in range(1, c.hi + 1):
        rows, cols = bw.rank(n), c.rank(n)
        entries = [0] * (rows * cols)
        for i in range(c.rank(n)):
            # all iterated-coproduct terms enter with coefficient +1: the
            # cup sign of the cobar differential and the merge sign of the
            # bar differential cancel exactly under this convention
            img = {}
            terms = {((n, i),): 1}
            while terms:
                for parts, coeff in terms.items():
                    bt = tuple((gen_of[pt],) for pt in parts)
                    img[bt] = img.get(bt, 0) + coeff
                nxt = {}
                for parts, coeff in terms.items():
                    dlast, ilast = parts[-1]
                    for p, i1, i2, cc in c.reduced_delta(dlast, ilast):
                        key = parts[:-1] + ((p, i1), (dlast - p, i2))
                        nxt[key] = nxt.get(key, 0) + coeff * cc
                terms = {t: v for t, v in nxt.items() if v}
            for bt, coeff in img.items():
                if coeff:
                    entries[bar_index[n][bt] * cols + i] = coeff
        blocks[n] = IntMatrix(rows, cols, entries)

    f = CoalgebraMap(c, bw, blocks)
    report = f.validate()
    if not report.ok:
        raise MismatchAt(
            "unit map fails structure validation: " + report.violations[0]
        )

    fc = skeletal_filtration(c)
    weights = {}
    for n in range(c.hi + 1):
        for idx, tup in enumerate(bar_basis[n]):
            weights[(n, idx)] = sum(
                om.gen_degree(g) + 1 for w in tup for g in w
            )
    fd = AdmissibleFiltration(weights)
    return filtered_quasi_iso_window(f, fc, fd)
