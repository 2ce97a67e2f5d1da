"""Simplicial loop groups and fundamental-group bookkeeping.

The loop group of a reduced simplicial set is a simplicial free group:
level n is free on the (n+1)-simplices that are not 0th degeneracies.
Writing [x] for the generator of a simplex x (and [x] = e whenever x is
a 0th degeneracy), the structure maps are

    d_0 [x] = [d_1 x] [d_0 x]^{-1}
    d_i [x] = [d_{i+1} x]        (i >= 1)
    s_i [x] = [s_{i+1} x]

and the simplicial group identities are checked on the requested window
before anything is returned.

The fundamental group is presented off the 2-skeleton directly: one
generator per nondegenerate 1-simplex and one relation per nondegenerate
2-simplex saying its 1st face is its 2nd followed by its 0th.  The
degree-zero comparison h0_compare certifies the integer group ring of
that presentation against the degree-zero ring of the cobar construction
with the 1-simplex group-likes inverted, via the dictionary sending an
edge x to 1 + <x>.
"""

import itertools

from .barcobar import extended_cobar
from .errors import BarloopError, MismatchAt, NotReduced
from .exactlin import HomologyEntry, IntMatrix, smith_normal_form
from .monoids import MonoidPresentation
from .rewrite import IsoCertificate, PresentedDgAlgebra, h0_ring, ring_iso_certify
from .simplicial import FormalSimplex, LocalizedSimplicialSet

__all__ = [
    "LoopGroupLevel",
    "kan_loop_group",
    "free_reduce",
    "free_inverse",
    "pi1_presentation",
    "abelianization",
    "group_ring",
    "h0_compare",
]


# -- free group words ---------------------------------------------------------
# A word is a tuple of (generator label, +1/-1) pairs, fully reduced.


def free_reduce(pairs):
    """Cancel adjacent inverse pairs (stack pass handles nesting)."""
    out = []
    for g, e in pairs:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def free_inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def _free_apply(word, images):
    """Extend a map on generators (label -> word) to a word."""
    out = []
    for g, e in word:
        im = images[g]
        out.extend(im if e == 1 else free_inverse(im))
    return free_reduce(out)


# -- loop group levels --------------------------------------------------------


def _gen_label(fs):
    head = "".join(f"s{j}*" for j in fs.word)
    return head + str(fs.base)


def _free_level_simplices(k, d):
    """Formal d-simplices that are not 0th degeneracies, in EZ form.

    Every degenerate simplex has a unique strictly decreasing degeneracy
    word; 0th degeneracies are exactly the words containing 0, so the
    d-simplices avoiding them are a nondegenerate m-simplex with a
    decreasing word drawn from {1, .., d-1} for each m <= d.
    """
    out = []
    for m in range(d + 1):
        words = list(itertools.combinations(range(d - 1, 0, -1), d - m))
        if not words:
            continue
        for b in k.n_simplices(m):
            for w in words:
                out.append(FormalSimplex(b, w))
    return out


class LoopGroupLevel:
    """One level of the loop group: a free group with recorded structure
    maps.

    faces[g][i] and degeneracies[g][i] are reduced words in the labels of
    the neighbouring levels; the top level's degeneracy words refer to
    generators one level above the window.
    """

    def __init__(self, n, generators, labels, faces, degeneracies):
        self.n = n
        self.generators = list(generators)
        self.labels = list(labels)
        self.faces = faces
        self.degeneracies = degeneracies

    def rank(self):
        return len(self.generators)

    def to_json_dict(self):
        def enc(word):
            return [[g, e] for g, e in word]

        return {
            "level": self.n,
            "generators": list(self.labels),
            "faces": [[enc(w) for w in per_gen] for per_gen in self.faces],
            "degeneracies": [
                [enc(w) for w in per_gen] for per_gen in self.degeneracies
            ],
        }


def kan_loop_group(k, hi):
    """Levels 0..hi of the loop group of a reduced simplicial set.

    Raises NotReduced for a set with more than one vertex and MismatchAt
    if the structure maps fail a simplicial group identity that is
    decidable inside the window (they never should).
    """
    k.basepoint()
    simplices = {n: _free_level_simplices(k, n + 1) for n in range(hi + 2)}
    labels = {
        n: {fs: _gen_label(fs) for fs in simplices[n]} for n in simplices
    }

    def bracket(n, fs):
        if fs.word and fs.word[-1] == 0:
            return ()
        return ((labels[n][fs], 1),)

    def face_word(n, fs, i):
        # fs is a formal (n+1)-simplex giving a level-n generator
        if i == 0:
            return free_reduce(
                bracket(n - 1, k.face_formal(fs, 1))
                + free_inverse(bracket(n - 1, k.face_formal(fs, 0)))
            )
        return bracket(n - 1, k.face_formal(fs, i + 1))

    def degeneracy_word(n, fs, i):
        return bracket(n + 1, k.degenerate_formal(fs, i + 1))

    face_images = {}
    degen_images = {}
    for n in range(hi + 2):
        if n >= 1:
            face_images[n] = [
                {
                    labels[n][fs]: face_word(n, fs, i)
                    for fs in simplices[n]
                }
                for i in range(n + 1)
            ]
        if n + 1 <= hi + 1:
            degen_images[n] = [
                {
                    labels[n][fs]: degeneracy_word(n, fs, i)
                    for fs in simplices[n]
                }
                for i in range(n + 1)
            ]

    _validate_group_window(hi, simplices, labels, face_images, degen_images)

    levels = []
    for n in range(hi + 1):
        gens = simplices[n]
        lbls = [labels[n][fs] for fs in gens]
        faces = (
            [
                [face_images[n][i][labels[n][fs]] for i in range(n + 1)]
                for fs in gens
            ]
            if n >= 1
            else [[] for _ in gens]
        )
        degens = [
            [degen_images[n][i][labels[n][fs]] for i in range(n + 1)]
            for fs in gens
        ]
        levels.append(LoopGroupLevel(n, gens, lbls, faces, degens))
    return levels


def _validate_group_window(hi, simplices, labels, face_images, degen_images):
    def bad(name, n, lbl):
        raise MismatchAt(
            f"loop group violates {name} at level {n} on {lbl}", degree=n,
            element=lbl,
        )

    for n in range(hi + 2):
        for fs in simplices[n]:
            lbl = labels[n][fs]
            word = ((lbl, 1),)
            # d_i d_j = d_{j-1} d_i for i < j
            if 2 <= n <= hi + 1 and n - 1 >= 1:
                for j in range(1, n + 1):
                    for i in range(j):
                        left = _free_apply(
                            _free_apply(word, face_images[n][j]),
                            face_images[n - 1][i],
                        )
                        right = _free_apply(
                            _free_apply(word, face_images[n][i]),
                            face_images[n - 1][j - 1],
                        )
                        if left != right:
                            bad(f"d{i} d{j} = d{j - 1} d{i}", n, lbl)
            # s_i s_j = s_{j+1} s_i for i <= j
            if n + 2 <= hi + 1:
                for j in range(n + 1):
                    for i in range(j + 1):
                        left = _free_apply(
                            _free_apply(word, degen_images[n][j]),
                            degen_images[n + 1][i],
                        )
                        right = _free_apply(
                            _free_apply(word, degen_images[n][i]),
                            degen_images[n + 1][j + 1],
                        )
                        if left != right:
                            bad(f"s{i} s{j} = s{j + 1} s{i}", n, lbl)
            # d_i s_j: identity when i in {j, j+1}, else commute
            if n + 1 <= hi + 1:
                for j in range(n + 1):
                    up = _free_apply(word, degen_images[n][j])
                    for i in range(n + 2):
                        got = _free_apply(up, face_images[n + 1][i])
                        if i in (j, j + 1):
                            want = word
                        elif i < j:
                            if n < 1:
                                continue
                            want = _free_apply(
                                _free_apply(word, face_images[n][i]),
                                degen_images[n - 1][j - 1],
                            )
                        else:
                            if n < 1:
                                continue
                            want = _free_apply(
                                _free_apply(word, face_images[n][i - 1]),
                                degen_images[n - 1][j],
                            )
                        if got != want:
                            bad(f"d{i} s{j}", n, lbl)


# -- fundamental group --------------------------------------------------------


def _edge_word(f):
    return () if f.is_degenerate() else (str(f.base),)


def pi1_presentation(k):
    """Group presentation of the fundamental group off the 2-skeleton.

    One generator per nondegenerate 1-simplex; per nondegenerate
    2-simplex the relation that its 1st face is the 2nd followed by the
    0th (degenerate faces read as the identity).  A localized set gets
    the presentation of its base plus one generator per inverted edge,
    forced to be a two-sided inverse.
    """
    if isinstance(k, LocalizedSimplicialSet):
        base = pi1_presentation(k.base_set)
        gens = list(base.generators)
        rels = list(base.relations)
        taken = set(gens)
        for e in k.edges:
            lbl = f"{e}_inv"
            while lbl in taken:
                lbl += "'"
            taken.add(lbl)
            gens.append(lbl)
            rels.append(((str(e), lbl), ()))
            rels.append(((lbl, str(e)), ()))
        return MonoidPresentation(gens, rels)
    k.basepoint()
    gens = [str(s) for s in k.n_simplices(1)]
    if len(set(gens)) != len(gens):
        raise BarloopError("stringified 1-simplex ids collide")
    rels = []
    for t in k.n_simplices(2):
        f0, f1, f2 = (k.face(t, i) for i in range(3))
        rels.append((_edge_word(f1), _edge_word(f2) + _edge_word(f0)))
    return MonoidPresentation(gens, rels)


def abelianization(pres):
    """Invariant factors of the abelianized group of a presentation.

    Interprets the presentation as a group presentation (generators
    invertible) and returns the cokernel of the relation matrix as a
    HomologyEntry, so it compares directly against a homology group.
    """
    idx = {g: i for i, g in enumerate(pres.generators)}
    rows = []
    for u, v in pres.relations:
        row = [0] * len(idx)
        for g in u:
            row[idx[g]] += 1
        for g in v:
            row[idx[g]] -= 1
        rows.append(row)
    if rows:
        m = IntMatrix.from_rows(rows).transpose()
    else:
        m = IntMatrix.zeros(len(idx), 0)
    s = smith_normal_form(m)
    nonzero = [d for d in s.d if d]
    return HomologyEntry(len(idx) - len(nonzero), nonzero, exact=True)


# -- degree-zero ring comparison ----------------------------------------------


def group_ring(pres):
    """Integer group ring of a presented group, as a degree-0 algebra.

    Adjoins one formal inverse per generator.  Returns (algebra, inv)
    where inv maps each generator label to its inverse's label.
    """
    taken = set(pres.generators)
    gens = list(pres.generators)
    inv = {}
    for g in pres.generators:
        lbl = f"{g}_inv"
        while lbl in taken:
            lbl += "'"
        inv[g] = lbl
        taken.add(lbl)
        gens.append(lbl)
    alg = PresentedDgAlgebra(
        [(g, 0) for g in gens],
        augmentation={i: 1 for i in range(len(gens))},
    )
    rels = [
        ({alg.word(*u): 1}, {alg.word(*v): 1}) for u, v in pres.relations
    ]
    for g in pres.generators:
        rels.append(({alg.word(g, inv[g]): 1}, {(): 1}))
        rels.append(({alg.word(inv[g], g): 1}, {(): 1}))
    alg.relations = rels
    return alg, inv


def h0_compare(k, budget=100_000, cap=10_000):
    """Certify H_0 of the inverted cobar construction against the group
    ring of the fundamental group.

    The maps exchange a fundamental-group generator x with the
    group-like 1 + <x> on the cobar side and pair the formal inverses.
    Returns an IsoCertificate; status "inconclusive" when a rewriting
    system did not complete within budget and nothing was refuted.
    """
    pres = pi1_presentation(k)
    ga, inv = group_ring(pres)
    om = extended_cobar(k, 2)
    h0 = h0_ring(om)
    h0_labels = {lbl for lbl, _ in h0.generators}

    def cobar_label(x):
        for cand in (x, f"{x}:1"):
            if cand in h0_labels:
                return cand
        raise BarloopError(f"no degree-0 cobar generator for edge {x!r}")

    f_images = {}
    g_images = {}
    for s in k.n_simplices(1):
        x = str(s)
        cx = cobar_label(x)
        f_images[x] = {(): 1, h0.word(cx): 1}
        f_images[inv[x]] = {h0.word(f"{cx}_inv"): 1}
        g_images[cx] = {ga.word(x): 1, (): -1}
        g_images[f"{cx}_inv"] = {ga.word(inv[x]): 1}
    cert = ring_iso_certify(ga, h0, f_images, g_images, budget, strict=False)
    if cert.ok:
        return cert
    if not (
        cert.details.get("source_complete")
        and cert.details.get("target_complete")
    ):
        return IsoCertificate(False, "inconclusive", cert.details)
    return cert
