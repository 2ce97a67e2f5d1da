"""Simplicial sets stored by nondegenerate simplices.

Degenerate simplices are never stored: every face or degeneracy result
is a FormalSimplex, a nondegenerate base with a strictly decreasing
degeneracy word (the Eilenberg-Zilber normal form).  The face and
degeneracy operators act on formal simplices by pushing indices through
the word with the simplicial identities.

Constructors: nerves of finite monoids, minimal spheres, quotients by a
subcomplex, and the localization of a reduced simplicial set at a set of
1-simplices (a lazily enumerated pushout gluing in one copy of the nerve
of the integers per chosen edge).
"""

import itertools

from .errors import NotASubcomplex, NotReduced, UnboundedDegree
from .monoids import FiniteMonoid, ValidationReport

__all__ = [
    "FormalSimplex",
    "SimplicialSet",
    "ExplicitSimplicialSet",
    "NerveSimplicialSet",
    "QuotientSimplicialSet",
    "LocalizedSimplicialSet",
    "nerve",
    "minimal_sphere",
    "point",
    "boundary_delta3",
    "collapsed_boundary_delta3",
    "rp2_model",
    "quotient_by_subcomplex",
    "localized_nerve",
    "degeneracy_insert",
    "face_through_degeneracies",
]


def degeneracy_insert(word, i):
    """Normal form of s_i composed outside the strictly decreasing word."""
    out = [e + 1 for e in word if e >= i]
    out.append(i)
    out.extend(e for e in word if e < i)
    return tuple(out)


def compose_degeneracies(outer, inner):
    """Normal form of s_outer applied after s_inner."""
    w = tuple(inner)
    for j in reversed(tuple(outer)):
        w = degeneracy_insert(w, j)
    return w


def face_through_degeneracies(word, i):
    """Push the face operator with index i through a degeneracy word.

    Returns (new word, remaining face index) where the index is None when
    the face cancelled against one of the degeneracies.
    """
    out = []
    for pos, j in enumerate(word):
        if i < j:
            out.append(j - 1)
        elif i == j or i == j + 1:
            out.extend(word[pos + 1 :])
            return tuple(out), None
        else:
            out.append(j)
            i -= 1
    return tuple(out), i


class FormalSimplex:
    """Nondegenerate base plus EZ-normal degeneracy word."""

    __slots__ = ("base", "word")

    def __init__(self, base, word=()):
        self.base = base
        self.word = tuple(word)
        if any(
            self.word[k] <= self.word[k + 1] for k in range(len(self.word) - 1)
        ):
            raise ValueError(f"degeneracy word {self.word} is not decreasing")

    def is_degenerate(self):
        return bool(self.word)

    def __eq__(self, other):
        return (
            isinstance(other, FormalSimplex)
            and self.base == other.base
            and self.word == other.word
        )

    def __hash__(self):
        return hash((self.base, self.word))

    def __repr__(self):
        if not self.word:
            return f"FormalSimplex({self.base!r})"
        ops = " ".join(f"s{j}" for j in self.word)
        return f"FormalSimplex({ops} {self.base!r})"


class SimplicialSet:
    """Base interface: enumeration, dimensions, faces of nondegenerates."""

    def n_simplices(self, n):
        raise NotImplementedError

    def dim(self, sid):
        raise NotImplementedError

    def face(self, sid, i):
        raise NotImplementedError

    # -- derived operators on formal simplices ------------------------------

    def formal_dim(self, fs):
        return self.dim(fs.base) + len(fs.word)

    def face_formal(self, fs, i):
        word, rest = face_through_degeneracies(fs.word, i)
        if rest is None:
            return FormalSimplex(fs.base, word)
        inner = self.face(fs.base, rest)
        return FormalSimplex(
            inner.base, compose_degeneracies(word, inner.word)
        )

    def degenerate_formal(self, fs, i):
        return FormalSimplex(fs.base, degeneracy_insert(fs.word, i))

    def basepoint(self):
        verts = self.n_simplices(0)
        if len(verts) != 1:
            raise NotReduced(f"{len(verts)} zero-simplices")
        return verts[0]

    @property
    def reduced(self):
        try:
            return len(self.n_simplices(0)) == 1
        except UnboundedDegree:
            return False

    def degenerate_point(self, n):
        """The n-fold degenerate basepoint (dimension n)."""
        return FormalSimplex(self.basepoint(), tuple(range(n - 1, -1, -1)))

    # -- validation -----------------------------------------------------------

    def validate(self, up_to):
        """Check the simplicial identities on all nondegenerate simplices
        of dimension <= up_to."""
        bad = []
        for n in range(up_to + 1):
            for sid in self.n_simplices(n):
                if self.dim(sid) != n:
                    bad.append(f"simplex {sid!r} listed in wrong dimension")
                    continue
                faces = []
                for i in range(n + 1):
                    if n == 0:
                        break
                    f = self.face(sid, i)
                    if self.formal_dim(f) != n - 1:
                        bad.append(
                            f"face {i} of {sid!r} has dimension "
                            f"{self.formal_dim(f)}, expected {n - 1}"
                        )
                    faces.append(f)
                if n < 2:
                    continue
                for j in range(1, n + 1):
                    for i in range(j):
                        left = self.face_formal(faces[j], i)
                        right = self.face_formal(faces[i], j - 1)
                        if left != right:
                            bad.append(
                                f"face identity fails on {sid!r}: "
                                f"d{i} d{j} != d{j - 1} d{i}"
                            )
        return ValidationReport(bad)

    # -- serialization -----------------------------------------------------------

    def materialize(self, up_to):
        """Explicit copy of the data up to the given dimension."""
        simplices = []
        for n in range(up_to + 1):
            for sid in self.n_simplices(n):
                faces = [self.face(sid, i) for i in range(n + 1)] if n else []
                simplices.append((str(sid), n, [
                    (str(f.base), f.word) for f in faces
                ]))
        ids = {s[0] for s in simplices}
        if len(ids) != len(simplices):
            raise ValueError("stringified simplex ids collide")
        return ExplicitSimplicialSet(
            [(sid, n) for sid, n, _ in simplices],
            {
                (sid, i): FormalSimplex(base, word)
                for sid, n, faces in simplices
                for i, (base, word) in enumerate(faces)
            },
        )

    def to_json_dict(self, up_to):
        mat = self.materialize(up_to)
        return {
            "simplices": [
                {
                    "id": sid,
                    "dim": mat.dim(sid),
                    "faces": [
                        {
                            "base": mat.face(sid, i).base,
                            "degens": list(mat.face(sid, i).word),
                        }
                        for i in range(mat.dim(sid) + 1)
                    ] if mat.dim(sid) else [],
                }
                for n in range(up_to + 1)
                for sid in mat.n_simplices(n)
            ],
            "reduced": mat.reduced,
        }


class ExplicitSimplicialSet(SimplicialSet):
    """Finite list of nondegenerate simplices with explicit face maps."""

    def __init__(self, simplices, faces):
        # simplices: iterable of (id, dim); faces: (id, i) -> FormalSimplex
        self._dim = {}
        self._by_dim = {}
        for sid, n in simplices:
            if sid in self._dim:
                raise ValueError(f"duplicate simplex id {sid!r}")
            self._dim[sid] = n
            self._by_dim.setdefault(n, []).append(sid)
        self._faces = dict(faces)
        self.max_dim = max(self._dim.values(), default=0)
        for sid, n in self._dim.items():
            for i in range(n + 1):
                if n == 0:
                    break
                f = self._faces.get((sid, i))
                if f is None:
                    raise ValueError(f"missing face {i} of {sid!r}")
                if f.base not in self._dim:
                    raise ValueError(
                        f"face of {sid!r} uses unknown base {f.base!r}"
                    )
                if self._dim[f.base] + len(f.word) != n - 1:
                    raise ValueError(f"face {i} of {sid!r} has wrong dimension")

    def n_simplices(self, n):
        return list(self._by_dim.get(n, ()))

    def dim(self, sid):
        return self._dim[sid]

    def face(self, sid, i):
        return self._faces[(sid, i)]

    @classmethod
    def from_json_dict(cls, d):
        simplices = [(s["id"], int(s["dim"])) for s in d["simplices"]]
        faces = {}
        for s in d["simplices"]:
            for i, f in enumerate(s.get("faces", ())):
                faces[(s["id"], i)] = FormalSimplex(
                    f["base"], tuple(f.get("degens", ()))
                )
        return cls(simplices, faces)


class NerveSimplicialSet(SimplicialSet):
    """Nerve of a finite monoid: nondegenerate n-simplices are n-tuples
    of non-identity element indices; inner faces multiply adjacent
    entries, normalizing away the identity when a product hits it."""

    def __init__(self, monoid):
        report = monoid.validate()
        if not report.ok:
            raise ValueError("; ".join(report.violations))
        self.monoid = monoid
        self._nontrivial = [
            i for i in range(monoid.order()) if i != monoid.identity
        ]

    def n_simplices(self, n):
        return [
            tup for tup in itertools.product(self._nontrivial, repeat=n)
        ]

    def dim(self, sid):
        return len(sid)

    def normalize_tuple(self, tup):
        """Formal simplex for a tuple that may contain identity entries."""
        e = self.monoid.identity
        for j, x in enumerate(tup):
            if x == e:
                inner = self.normalize_tuple(tup[:j] + tup[j + 1 :])
                return FormalSimplex(
                    inner.base, degeneracy_insert(inner.word, j)
                )
        return FormalSimplex(tup, ())

    def face(self, sid, i):
        n = len(sid)
        if i == 0:
            return FormalSimplex(sid[1:], ())
        if i == n:
            return FormalSimplex(sid[:-1], ())
        p = self.monoid.table[sid[i - 1]][sid[i]]
        return self.normalize_tuple(sid[: i - 1] + (p,) + sid[i + 1 :])

    def element_label(self, idx):
        return self.monoid.elements[idx]


def nerve(m):
    return NerveSimplicialSet(m)


def point():
    return ExplicitSimplicialSet([("*", 0)], {})


def minimal_sphere(n, top_label=None):
    """One vertex, one nondegenerate n-simplex, all faces degenerate."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    top = top_label if top_label is not None else ("t" if n == 1 else "e")
    faces = {}
    for i in range(n + 1):
        faces[(top, i)] = FormalSimplex("*", tuple(range(n - 2, -1, -1)))
    return ExplicitSimplicialSet([("*", 0), (top, n)], faces)


def rp2_model():
    """One vertex, one edge e, one 2-simplex with faces (e, s0 *, e).

    The edge's square bounds: the fundamental group is the 2-element
    group and the chain boundary of the 2-simplex is 2e.
    """
    faces = {
        ("e", 0): FormalSimplex("*", ()),
        ("e", 1): FormalSimplex("*", ()),
        ("sigma", 0): FormalSimplex("e", ()),
        ("sigma", 1): FormalSimplex("*", (0,)),
        ("sigma", 2): FormalSimplex("e", ()),
    }
    return ExplicitSimplicialSet([("*", 0), ("e", 1), ("sigma", 2)], faces)


def boundary_delta3():
    """The boundary of the 3-simplex on vertices 0,1,2,3."""
    verts = "0123"
    simplices = [(v, 0) for v in verts]
    faces = {}
    edges = ["".join(p) for p in itertools.combinations(verts, 2)]
    tris = ["".join(p) for p in itertools.combinations(verts, 3)]
    simplices += [(e, 1) for e in edges] + [(t, 2) for t in tris]
    for e in edges:
        faces[(e, 0)] = FormalSimplex(e[1], ())
        faces[(e, 1)] = FormalSimplex(e[0], ())
    for t in tris:
        for i in range(3):
            faces[(t, i)] = FormalSimplex(t[:i] + t[i + 1 :], ())
    return ExplicitSimplicialSet(simplices, faces)


class QuotientSimplicialSet(SimplicialSet):
    """Collapse a face-closed set of simplices to a single basepoint."""

    def __init__(self, base, sub, basepoint="*"):
        self.base_set = base
        self.sub = frozenset(sub)
        if not self.sub:
            raise ValueError("subcomplex must contain at least one simplex")
        for sid in self.sub:
            try:
                d = base.dim(sid)
            except KeyError:
                raise NotASubcomplex(f"unknown simplex {sid!r}") from None
            if sid not in base.n_simplices(d):
                raise NotASubcomplex(f"unknown simplex {sid!r}")
            for i in range(d + 1):
                if d == 0:
                    break
                f = base.face(sid, i)
                if f.base not in self.sub:
                    raise NotASubcomplex(
                        f"face {i} of {sid!r} leaves the subcomplex"
                    )
        self.star = basepoint
        while any(
            self.star in base.n_simplices(n)
            for n in range(getattr(base, "max_dim", 0) + 1)
        ):
            self.star += "*"

    def n_simplices(self, n):
        out = [self.star] if n == 0 else []
        out.extend(
            sid for sid in self.base_set.n_simplices(n) if sid not in self.sub
        )
        return out

    def dim(self, sid):
        if sid == self.star:
            return 0
        return self.base_set.dim(sid)

    def face(self, sid, i):
        f = self.base_set.face(sid, i)
        if f.base in self.sub:
            # everything beneath the subcomplex lands on the basepoint
            m = self.dim(sid) - 1
            return FormalSimplex(self.star, tuple(range(m - 1, -1, -1)))
        return f


def quotient_by_subcomplex(k, sub):
    return QuotientSimplicialSet(k, sub)


def collapsed_boundary_delta3():
    """Boundary of the 3-simplex with the edges out of vertex 0 collapsed:
    a reduced model of the 2-sphere with 3 edges and 4 triangles."""
    k = boundary_delta3()
    return quotient_by_subcomplex(
        k, {"0", "1", "2", "3", "01", "02", "03"}
    )


class LocalizedSimplicialSet(SimplicialSet):
    """Pushout gluing one copy of the nerve of the integers onto a
    reduced simplicial set per inverted edge.

    When the base is the nerve of a monoid, the whole nerve of the
    naturals maps in by powers of the inverted element and the gluing
    happens along all of it.  For a general reduced base only the circle
    subcomplex generated by the edge maps in canonically; the gluing then
    identifies just that circle (the inclusion of the circle into the
    nerve of the naturals is a weak equivalence, so both gluings model the
    same localization).

    Degrees >= 1 are not finitely enumerable: tuples of nonzero integers
    are unbounded, so enumeration raises UnboundedDegree and callers must
    use the entry-bounded enumerator instead.
    """

    def __init__(self, base, edges):
        if not base.reduced:
            raise NotReduced("can only localize a reduced simplicial set")
        self.base_set = base
        self.edges = list(edges)
        ones = set(base.n_simplices(1))
        for e in self.edges:
            if e not in ones:
                raise ValueError(f"{e!r} is not a nondegenerate 1-simplex")
        self.style = (
            "monoid-powers" if isinstance(base, NerveSimplicialSet)
            else "edge-circle"
        )

    # -- enumeration ------------------------------------------------------------

    def n_simplices(self, n):
        if n == 0:
            return [("k", self.base_set.basepoint())]
        if not self.edges:
            return [("k", s) for s in self.base_set.n_simplices(n)]
        raise UnboundedDegree(
            f"degree {n} of the localized set has unboundedly many "
            "nondegenerate simplices"
        )

    def n_simplices_bounded(self, n, entry_bound):
        """K-side simplices plus glued-nerve tuples with entries of
        absolute value <= entry_bound."""
        if n == 0:
            return [("k", self.base_set.basepoint())]
        out = [("k", s) for s in self.base_set.n_simplices(n)]
        rng = [a for a in range(-entry_bound, entry_bound + 1) if a != 0]
        for c in range(len(self.edges)):
            for tup in itertools.product(rng, repeat=n):
                if not self._glued(tup):
                    out.append(("j", c, tup))
        return out

    def _glued(self, tup):
        if self.style == "monoid-powers":
            return all(a > 0 for a in tup)
        return tup == (1,)

    def dim(self, sid):
        if sid[0] == "k":
            return self.base_set.dim(sid[1])
        return len(sid[2])

    # -- faces --------------------------------------------------------------------

    def _reinterpret(self, c, tup):
        """Class of a glued-nerve tuple (entries nonzero) in the pushout."""
        if self._glued(tup):
            if self.style == "edge-circle":
                return FormalSimplex(("k", self.edges[c]), ())
            m = self.base_set.monoid
            x = self.edges[c][0]
            powers = tuple(m.power(x, a) for a in tup)
            inner = self.base_set.normalize_tuple(powers)
            return FormalSimplex(("k", inner.base), inner.word)
        return FormalSimplex(("j", c, tup), ())

    def _znormalize(self, c, tup):
        """Formal simplex in the pushout for an integer tuple that may
        contain zero entries."""
        for j, a in enumerate(tup):
            if a == 0:
                inner = self._znormalize(c, tup[:j] + tup[j + 1 :])
                return FormalSimplex(
                    inner.base, degeneracy_insert(inner.word, j)
                )
        if not tup:
            return FormalSimplex(("k", self.base_set.basepoint()), ())
        inner = self._reinterpret(c, tup)
        return inner

    def face(self, sid, i):
        if sid[0] == "k":
            f = self.base_set.face(sid[1], i)
            return FormalSimplex(("k", f.base), f.word)
        _, c, tup = sid
        n = len(tup)
        if i == 0:
            return self._znormalize(c, tup[1:])
        if i == n:
            return self._znormalize(c, tup[:-1])
        merged = tup[: i - 1] + (tup[i - 1] + tup[i],) + tup[i + 1 :]
        return self._znormalize(c, merged)

    # -- validation on a sample ----------------------------------------------------

    def validate(self, up_to, entry_bound=2):
        bad = []
        for n in range(1, up_to + 1):
            for sid in self.n_simplices_bounded(n, entry_bound):
                faces = [self.face(sid, i) for i in range(n + 1)]
                for f in faces:
                    if self.formal_dim(f) != n - 1:
                        bad.append(
                            f"face of {sid!r} has wrong dimension"
                        )
                if n < 2:
                    continue
                for j in range(1, n + 1):
                    for i in range(j):
                        left = self.face_formal(faces[j], i)
                        right = self.face_formal(faces[i], j - 1)
                        if left != right:
                            bad.append(
                                f"face identity fails on {sid!r}: "
                                f"d{i} d{j} != d{j - 1} d{i}"
                            )
        return ValidationReport(bad)


def localized_nerve(k, edges):
    """Localize a reduced simplicial set at a set of 1-simplices.
    Localizing at nothing returns the input unchanged."""
    edges = list(edges)
    if not edges:
        return k
    return LocalizedSimplicialSet(k, edges)
