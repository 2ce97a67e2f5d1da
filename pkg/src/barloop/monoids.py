"""Finite monoids, presentations, monoid algebras, group completion.

Multiplication tables are validated exhaustively (identity and
associativity laws).  Group completion adjoins a formal inverse per
generator and runs rewriting completion plus, as an independent
finiteness prover, coset enumeration over the trivial subgroup; both are
budgeted and report honestly when the budget runs out.
"""

import random

from .errors import MalformedTable, NotAHomomorphism
from .rewrite import PresentedDgAlgebra, basis_in_degree, complete
from .errors import CapExceeded

__all__ = [
    "ValidationReport",
    "FiniteMonoid",
    "MonoidMap",
    "MonoidPresentation",
    "GroupCompletion",
    "Exhausted",
    "monoid_algebra",
    "group_completion",
    "random_monoid",
]


class ValidationReport:
    """List of law violations; empty means valid."""

    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"ValidationReport(ok={self.ok}, violations={self.violations!r})"


class FiniteMonoid:
    """Multiplication table on labelled elements.

    elements: ordered labels; identity: index; table[i][j] = index of
    element i * element j.
    """

    def __init__(self, elements, identity, table):
        self.elements = [str(e) for e in elements]
        self.identity = int(identity)
        self.table = [list(map(int, row)) for row in table]
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise MalformedTable("duplicate element labels")
        if not 0 <= self.identity < n:
            raise MalformedTable(f"identity index {self.identity} out of range")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise MalformedTable(f"table is not {n}x{n}")
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise MalformedTable(
                        f"product of {self.elements[i]} and {self.elements[j]} "
                        f"has undefined index {v}"
                    )
        self._index = {e: i for i, e in enumerate(self.elements)}

    # -- laws -----------------------------------------------------------------

    def validate(self):
        bad = []
        e = self.identity
        for i, lbl in enumerate(self.elements):
            if self.table[e][i] != i:
                bad.append(f"identity law fails on the left of {lbl}")
            if self.table[i][e] != i:
                bad.append(f"identity law fails on the right of {lbl}")
        n = len(self.elements)
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        bad.append(
                            "associativity fails on "
                            f"({self.elements[i]}, {self.elements[j]}, "
                            f"{self.elements[k]})"
                        )
        return ValidationReport(bad)

    def is_group(self):
        e = self.identity
        n = len(self.elements)
        for i in range(n):
            if not any(
                self.table[i][j] == e and self.table[j][i] == e
                for j in range(n)
            ):
                return False
        return True

    def is_commutative(self):
        n = len(self.elements)
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(n) for j in range(n)
        )

    # -- arithmetic -------------------------------------------------------------

    def mult(self, i, j):
        return self.table[i][j]

    def mult_word(self, word):
        acc = self.identity
        for i in word:
            acc = self.table[acc][i]
        return acc

    def power(self, i, k):
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][i]
        return acc

    def index(self, label):
        return self._index[label]

    def order(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteMonoid)
            and self.elements == other.elements
            and self.identity == other.identity
            and self.table == other.table
        )

    def __repr__(self):
        return f"FiniteMonoid({self.elements!r})"

    def isomorphic_as_tables(self, other):
        """Brute-force table isomorphism (orders <= 8 or so)."""
        import itertools

        if self.order() != other.order():
            return False
        n = self.order()
        rest = [i for i in range(n) if i != self.identity]
        others = [i for i in range(n) if i != other.identity]
        for perm in itertools.permutations(others):
            f = {self.identity: other.identity}
            f.update(dict(zip(rest, perm)))
            if all(
                f[self.table[i][j]] == other.table[f[i]][f[j]]
                for i in range(n) for j in range(n)
            ):
                return True
        return False

    # -- constructors -------------------------------------------------------------

    @classmethod
    def trivial(cls):
        return cls(["1"], 0, [[0]])

    @classmethod
    def cyclic(cls, n, generator="g"):
        """Cyclic group of order n: labels 1, g, g2, ..."""
        labels = ["1"] + [
            generator if k == 1 else f"{generator}{k}" for k in range(1, n)
        ]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(labels, 0, table)

    @classmethod
    def idempotent_pair(cls):
        """Two elements 1 and b with b*b = b."""
        return cls(["1", "b"], 0, [[0, 1], [1, 1]])

    @classmethod
    def left_zero_with_unit(cls, k=2):
        """Unit adjoined to a left-zero semigroup: x*y = x off the unit."""
        labels = ["1"] + [f"a{i}" for i in range(k)]
        n = k + 1
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            table[0][i] = i
            table[i][0] = i
        for i in range(1, n):
            for j in range(1, n):
                table[i][j] = i
        return cls(labels, 0, table)

    @classmethod
    def chain_of_idempotents(cls, k):
        """Totally ordered idempotents under max, bottom = identity."""
        labels = ["1"] + [f"c{i}" for i in range(1, k)]
        table = [[max(i, j) for j in range(k)] for i in range(k)]
        return cls(labels, 0, table)

    # -- serialization --------------------------------------------------------------

    def to_json_dict(self):
        return {
            "elements": list(self.elements),
            "identity": self.elements[self.identity],
            "table": [list(row) for row in self.table],
        }

    @classmethod
    def from_json_dict(cls, d):
        elements = list(d["elements"])
        try:
            identity = elements.index(d["identity"])
        except ValueError:
            raise MalformedTable(
                f"identity label {d['identity']!r} not among elements"
            ) from None
        return cls(elements, identity, d["table"])


class MonoidMap:
    """Map of monoids given by an image index per source element."""

    def __init__(self, src, dst, images):
        self.src = src
        self.dst = dst
        self.images = list(map(int, images))
        if len(self.images) != src.order():
            raise NotAHomomorphism("image list has wrong length")

    def validate(self):
        f = self.images
        if f[self.src.identity] != self.dst.identity:
            raise NotAHomomorphism("identity is not preserved")
        n = self.src.order()
        for i in range(n):
            for j in range(n):
                if f[self.src.table[i][j]] != self.dst.table[f[i]][f[j]]:
                    raise NotAHomomorphism(
                        f"f({self.src.elements[i]} * {self.src.elements[j]}) "
                        "does not match the product of images"
                    )
        return self

    def __call__(self, i):
        return self.images[i]

    @classmethod
    def identity(cls, m):
        return cls(m, m, range(m.order())).validate()

    @classmethod
    def collapse(cls, src):
        """The unique map to the trivial monoid."""
        dst = FiniteMonoid.trivial()
        return cls(src, dst, [0] * src.order()).validate()


def monoid_algebra(m, modulus=None):
    """Integer monoid algebra as a degree-0 presentation: one generator
    per non-identity element, multiplication table as relations, the
    identity element as the empty word.  Augmentation sends every
    generator to 1."""
    report = m.validate()
    if not report.ok:
        raise MalformedTable("; ".join(report.violations))
    nontriv = [i for i in range(m.order()) if i != m.identity]
    remap = {mi: gi for gi, mi in enumerate(nontriv)}
    gens = [(m.elements[mi], 0) for mi in nontriv]
    rels = []
    for a in nontriv:
        for b in nontriv:
            c = m.table[a][b]
            lhs = {(remap[a], remap[b]): 1}
            rhs = {(() if c == m.identity else (remap[c],)): 1}
            rels.append((lhs, rhs))
    aug = {remap[a]: 1 for a in nontriv}
    return PresentedDgAlgebra(
        gens, rels, {}, aug, modulus=modulus,
        provenance={"monoid": m.to_json_dict()},
    )


class MonoidPresentation:
    """Generators and relations; words are tuples of generator labels."""

    def __init__(self, generators, relations):
        self.generators = [str(g) for g in generators]
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator labels")
        gset = set(self.generators)
        self.relations = []
        for u, v in relations:
            u, v = tuple(map(str, u)), tuple(map(str, v))
            for w in u + v:
                if w not in gset:
                    raise ValueError(f"relation uses undeclared generator {w!r}")
            self.relations.append((u, v))

    @classmethod
    def from_monoid(cls, m):
        report = m.validate()
        if not report.ok:
            raise MalformedTable("; ".join(report.violations))
        nontriv = [i for i in range(m.order()) if i != m.identity]
        gens = [m.elements[i] for i in nontriv]
        rels = []
        for a in nontriv:
            for b in nontriv:
                c = m.table[a][b]
                lhs = (m.elements[a], m.elements[b])
                rhs = () if c == m.identity else (m.elements[c],)
                rels.append((lhs, rhs))
        return cls(gens, rels)

    @classmethod
    def free(cls, labels):
        return cls(labels, [])

    def to_algebra(self):
        """Degree-0 presented algebra over the integers."""
        alg = PresentedDgAlgebra(
            [(g, 0) for g in self.generators],
            augmentation={i: 1 for i in range(len(self.generators))},
        )
        alg.relations = [
            ({alg.word(*u): 1}, {alg.word(*v): 1}) for u, v in self.relations
        ]
        return alg

    # words serialize as plain strings when every generator is one character
    def _single_char(self):
        return all(len(g) == 1 for g in self.generators)

    def to_json_dict(self):
        if self._single_char():
            rels = [["".join(u), "".join(v)] for u, v in self.relations]
        else:
            rels = [[list(u), list(v)] for u, v in self.relations]
        return {"gens": list(self.generators), "rels": rels}

    @classmethod
    def from_json_dict(cls, d):
        def parse(w):
            if isinstance(w, str):
                return tuple(w)
            return tuple(w)

        return cls(d["gens"], [(parse(u), parse(v)) for u, v in d["rels"]])

    def __repr__(self):
        rels = ", ".join(
            f"{'.'.join(u) or '1'} = {'.'.join(v) or '1'}"
            for u, v in self.relations
        )
        return f"<{', '.join(self.generators)} | {rels}>"


class GroupCompletion(MonoidPresentation):
    """Group presentation produced by completion, with optional finite
    materialization when coset or basis enumeration closed."""

    def __init__(self, generators, relations, order=None, monoid=None,
                 rules=None, steps_used=0):
        super().__init__(generators, relations)
        self.order = order
        self.monoid = monoid
        self.rules = rules
        self.steps_used = steps_used


class Exhausted:
    """Budget ran out before anything could be certified."""

    def __init__(self, reason, partial=None):
        self.reason = reason
        self.partial = partial

    def __repr__(self):
        return f"Exhausted({self.reason!r})"


def _inverse_label(g, taken):
    cand = g + "'"
    while cand in taken:
        cand += "'"
    return cand


def group_completion(p, budget=100_000, cap=10_000):
    """Universal group of a presented monoid.

    Adjoins a formal inverse per generator, completes the resulting
    string rewriting system, Tietze-eliminates generators that rewrite to
    words, and tries to reconstruct a finite multiplication table (via
    irreducible-word enumeration, falling back to coset enumeration).
    Returns a GroupCompletion, or Exhausted when the budget ran out
    before completion and before coset enumeration closed.
    """
    if isinstance(p, FiniteMonoid):
        p = MonoidPresentation.from_monoid(p)
    taken = set(p.generators)
    inv = {}
    for g in p.generators:
        lbl = _inverse_label(g, taken)
        inv[g] = lbl
        taken.add(lbl)
    gens = list(p.generators) + [inv[g] for g in p.generators]
    alg = PresentedDgAlgebra([(g, 0) for g in gens])
    rels = [({alg.word(*u): 1}, {alg.word(*v): 1}) for u, v in p.relations]
    for g in p.generators:
        rels.append(({alg.word(g, inv[g]): 1}, {(): 1}))
        rels.append(({alg.word(inv[g], g): 1}, {(): 1}))
    alg.relations = rels
    rsys = complete(alg, budget)

    monoid = None
    order = None
    if rsys.complete:
        try:
            words = basis_in_degree(rsys, 0, cap=cap)
        except CapExceeded:
            words = None
        if words is not None:
            labels = ["*".join(alg.gen_label(g) for g in w) if w else "1"
                      for w in words]
            idx = {w: i for i, w in enumerate(words)}
            table = []
            for u in words:
                row = []
                for v in words:
                    nf = rsys.normal_form({u + v: 1})
                    (w2,) = nf.keys()
                    row.append(idx[w2])
                table.append(row)
            monoid = FiniteMonoid(labels, idx[()], table)
            order = len(words)
        relations = []
        for r in rsys.rules:
            lhs_word = tuple(alg.gen_label(g) for g in r.lhs)
            if r.coeff != 1 or len(r.rhs) > 1:
                # cannot happen for string systems, guard anyway
                return Exhausted("completion produced non-monomial rules")
            if r.rhs:
                (w2, c2), = r.rhs.items()
                if c2 != 1:
                    return Exhausted("completion produced non-monomial rules")
                rhs_word = tuple(alg.gen_label(g) for g in w2)
            else:
                return Exhausted("completion produced a zero rule")
            relations.append((lhs_word, rhs_word))
        gens2, relations = _tietze_simplify(gens, relations)
        return GroupCompletion(
            gens2, relations, order=order, monoid=monoid, rules=rsys,
            steps_used=rsys.steps_used,
        )

    # completion budget hit: fall back to coset enumeration for finiteness
    tc = _coset_enumeration(p, inv, budget)
    if tc is not None:
        labels, identity, table = tc
        monoid = FiniteMonoid(labels, identity, table)
        pres = MonoidPresentation.from_monoid(monoid)
        return GroupCompletion(
            pres.generators, pres.relations, order=monoid.order(),
            monoid=monoid, rules=None, steps_used=budget,
        )
    return Exhausted("completion and coset enumeration budgets exhausted",
                     partial=rsys)


def _tietze_simplify(gens, relations):
    """Drop trivial relations and eliminate generators that are defined
    by a relation g = w with g not occurring in w."""
    gens = list(gens)
    relations = [tuple(map(tuple, r)) for r in relations]
    changed = True
    while changed:
        changed = False
        for u, v in relations:
            if len(u) == 1 and u[0] not in v:
                g = u[0]
                sub = tuple(v)

                def repl(word):
                    out = []
                    for x in word:
                        out.extend(sub if x == g else (x,))
                    return tuple(out)

                relations = [
                    (repl(a), repl(b)) for a, b in relations
                    if (a, b) != (u, v)
                ]
                gens.remove(g)
                changed = True
                break
        relations = [r for r in relations if r[0] != r[1]]
        seen = set()
        out = []
        for r in relations:
            key = frozenset((r[0], r[1])) if r[0] != r[1] else r[0]
            if (r[0], r[1]) not in seen and (r[1], r[0]) not in seen:
                seen.add((r[0], r[1]))
                out.append(r)
        relations = out
    return gens, relations


def _coset_enumeration(p, inv, budget):
    """Enumerate cosets of the trivial subgroup (HLT with coincidences).

    Returns (labels, identity index, table) when the enumeration closes
    within budget, else None.  Closing proves the group finite and the
    coset action on its own underlying set is the multiplication table.
    """
    letters = []
    for g in p.generators:
        letters.append(g)
        letters.append(inv[g])
    lidx = {g: i for i, g in enumerate(letters)}
    pair = {}
    for g in p.generators:
        pair[lidx[g]] = lidx[inv[g]]
        pair[lidx[inv[g]]] = lidx[g]
    relators = []
    for u, v in p.relations:
        # u v^{-1} as letter indices
        relators.append(
            tuple(lidx[g] for g in u)
            + tuple(pair[lidx[g]] for g in reversed(v))
        )
    for g in p.generators:
        relators.append((lidx[g], lidx[inv[g]]))

    nl = len(letters)
    table = [[None] * nl]  # table[coset][letter]
    rep = [0]              # union-find over cosets

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    pending = []

    def merge(a, b):
        a, b = find(a), find(b)
        if a != b:
            if a > b:
                a, b = b, a
            rep[b] = a
            pending.append(b)

    def deduce(c, l, d):
        c, d = find(c), find(d)
        cur = table[c][l]
        if cur is not None and find(cur) != d:
            merge(cur, d)
        table[c][l] = d
        cur2 = table[d][pair[l]]
        if cur2 is not None and find(cur2) != c:
            merge(cur2, c)
        table[d][pair[l]] = c

    defined = 1
    steps = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        c = queue[qi]
        qi += 1
        if find(c) != c:
            continue
        for rel in relators:
            # scan the relator cycle from coset c, defining as needed
            cur = find(c)
            for pos, l in enumerate(rel):
                steps += 1
                if steps > budget:
                    return None
                nxt = table[cur][l]
                if nxt is None:
                    if pos == len(rel) - 1:
                        deduce(cur, l, find(c))
                        nxt = find(c)
                    else:
                        table.append([None] * nl)
                        rep.append(len(rep))
                        nxt = len(rep) - 1
                        defined += 1
                        if defined > budget:
                            return None
                        deduce(cur, l, nxt)
                        queue.append(nxt)
                else:
                    nxt = find(nxt)
                    if pos == len(rel) - 1 and nxt != find(c):
                        merge(nxt, find(c))
                        nxt = find(c)
                cur = nxt
            # process coincidences eagerly
            while pending:
                dead = pending.pop()
                row = table[dead]
                for l, d in enumerate(row):
                    if d is not None:
                        a = find(dead)
                        deduce(a, l, find(d))
        # all relators traced from c without budget blowup

    # compact the live cosets
    live = sorted({find(c) for c in range(len(rep))})
    # every entry must be filled for the enumeration to have closed
    comp = {c: i for i, c in enumerate(live)}
    out = []
    for c in live:
        row = table[c]
        new_row = []
        for l in range(nl):
            if row[l] is None:
                return None
            new_row.append(comp[find(row[l])])
        out.append(new_row)

    # coset-by-letter action -> full multiplication table: represent
    # each coset by a shortest word reaching it from the trivial coset
    words = {comp[find(0)]: ()}
    frontier = [comp[find(0)]]
    while frontier:
        nxt_frontier = []
        for c in frontier:
            for l in range(nl):
                d = out[c][l]
                if d not in words:
                    words[d] = words[c] + (l,)
                    nxt_frontier.append(d)
        frontier = nxt_frontier
    n = len(live)
    if len(words) != n:
        return None

    def act(c, word):
        for l in word:
            c = out[c][l]
        return c

    table2 = [[act(i, words[j]) for j in range(n)] for i in range(n)]
    labels = []
    for i in range(n):
        w = words[i]
        labels.append("*".join(letters[l] for l in w) if w else "1")
    return labels, comp[find(0)], table2


def random_monoid(seed, max_order=4):
    """Deterministic small valid monoid for property tests."""
    rng = random.Random(seed)
    builders = [
        FiniteMonoid.trivial,
        lambda: FiniteMonoid.cyclic(rng.randint(2, max_order)),
        lambda: FiniteMonoid.idempotent_pair(),
        lambda: FiniteMonoid.chain_of_idempotents(
            rng.randint(2, max_order)
        ),
        lambda: FiniteMonoid.left_zero_with_unit(
            rng.randint(2, max_order - 1)
        ),
    ]
    m = rng.choice(builders)()
    report = m.validate()
    assert report.ok
    return m
