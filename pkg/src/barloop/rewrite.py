"""Noncommutative rewriting over the integers (optionally mod m).

Presented graded rings with integer coefficients: generators carry
nonnegative degrees, relations are degree-homogeneous polynomial pairs.
Completion orients relations into rewrite rules under a
degree-then-length-then-lex order and saturates critical pairs within a
step budget.  Rules with non-unit leading coefficients are legal but
flagged: such a system still certifies equalities (reduce to zero) but
does not promise a canonical monomial basis.

Monomials are tuples of generator indices; polynomials are dicts mapping
monomials to nonzero coefficients.  Later generators rank higher in the
order, so inverse generators adjoined by localization outrank the
elements they invert and unit relations orient the useful way.
"""

from .errors import (
    BarloopError,
    CapExceeded,
    NotACycle,
    NotAHomomorphism,
    NotInverse,
    Unorientable,
)
from .exactlin import ChainComplexWindow, IntMatrix
from .exactlin._backend import xgcd

__all__ = [
    "PresentedDgAlgebra",
    "RewriteSystem",
    "complete",
    "basis_in_degree",
    "h0_ring",
    "adjoin_inverses",
    "ring_iso_certify",
    "IsoCertificate",
    "complex_window",
]


# ---------------------------------------------------------------------------
# polynomial helpers (plain dicts: monomial tuple -> nonzero int)


def poly_iadd_term(p, word, coeff, modulus=None):
    if modulus:
        coeff %= modulus
    if not coeff:
        return
    c = p.get(word, 0) + coeff
    if modulus:
        c %= modulus
    if c:
        p[word] = c
    else:
        p.pop(word, None)


def poly_add(p, q, modulus=None):
    out = dict(p)
    for w, c in q.items():
        poly_iadd_term(out, w, c, modulus)
    return out


def poly_scale(p, c, modulus=None):
    out = {}
    for w, x in p.items():
        poly_iadd_term(out, w, x * c, modulus)
    return out


def poly_sub(p, q, modulus=None):
    return poly_add(p, poly_scale(q, -1, modulus), modulus)


def poly_mul(p, q, modulus=None):
    out = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            poly_iadd_term(out, w1 + w2, c1 * c2, modulus)
    return out


class PresentedDgAlgebra:
    """Graded ring presentation with differential and augmentation.

    generators: list of (label, degree) with degree >= 0.
    relations: list of (lhs poly, rhs poly) pairs, degree-homogeneous.
    differential: dict generator index -> poly (degree one lower).
    augmentation: dict generator index -> int, or None when unavailable.
    modulus: None for integer coefficients, else a modulus >= 2.
    """

    def __init__(self, generators, relations=None, differential=None,
                 augmentation=None, modulus=None, provenance=None):
        self.generators = [(str(lbl), int(deg)) for lbl, deg in generators]
        if len({lbl for lbl, _ in self.generators}) != len(self.generators):
            raise ValueError("duplicate generator labels")
        for lbl, deg in self.generators:
            if deg < 0:
                raise ValueError(f"generator {lbl} has negative degree")
        self._index = {lbl: i for i, (lbl, _) in enumerate(self.generators)}
        self.relations = [(dict(l), dict(r)) for l, r in (relations or [])]
        self.differential = {int(g): dict(p) for g, p in (differential or {}).items()}
        self.augmentation = (
            None if augmentation is None
            else {int(g): int(v) for g, v in augmentation.items()}
        )
        self.modulus = modulus
        self.provenance = dict(provenance or {})
        for l, r in self.relations:
            self._check_homogeneous(poly_sub(l, r, self.modulus))

    # -- basic queries ------------------------------------------------------

    def gen_index(self, label):
        return self._index[label]

    def gen_label(self, i):
        return self.generators[i][0]

    def gen_degree(self, i):
        return self.generators[i][1]

    def word_degree(self, word):
        return sum(self.generators[g][1] for g in word)

    def order_key(self, word):
        return (self.word_degree(word), len(word), word)

    def _check_homogeneous(self, p):
        degs = {self.word_degree(w) for w in p}
        if len(degs) > 1:
            raise Unorientable(
                f"relation mixes degrees {sorted(degs)}: {self.poly_str(p)}"
            )

    # -- construction helpers ------------------------------------------------

    def word(self, *labels):
        return tuple(self._index[lbl] for lbl in labels)

    def poly(self, terms):
        """Build a polynomial from {word-of-labels: coeff}."""
        out = {}
        for w, c in terms.items():
            word = tuple(self._index[lbl] for lbl in w)
            poly_iadd_term(out, word, c, self.modulus)
        return out

    def poly_str(self, p):
        if not p:
            return "0"
        bits = []
        for w in sorted(p, key=self.order_key, reverse=True):
            c = p[w]
            mono = "*".join(self.gen_label(g) for g in w) if w else "1"
            if c == 1 and w:
                bits.append(mono)
            elif c == -1 and w:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}" if w else str(c))
        return " + ".join(bits).replace("+ -", "- ")

    # -- differential --------------------------------------------------------

    def differentiate(self, p):
        """Extend the generator differential as a graded derivation."""
        out = {}
        for word, coeff in p.items():
            sign_deg = 0
            for i, g in enumerate(word):
                dg = self.differential.get(g)
                if dg:
                    sign = -1 if sign_deg % 2 else 1
                    for w2, c2 in dg.items():
                        poly_iadd_term(
                            out,
                            word[:i] + w2 + word[i + 1 :],
                            sign * coeff * c2,
                            self.modulus,
                        )
                sign_deg += self.generators[g][1]
        return out

    def augment(self, p):
        """Apply the augmentation to a degree-0 polynomial."""
        if self.augmentation is None:
            raise BarloopError("algebra has no augmentation")
        total = 0
        for word, coeff in p.items():
            v = coeff
            for g in word:
                v *= self.augmentation.get(g, 0)
            total += v
        if self.modulus:
            total %= self.modulus
        return total

    # -- serialization --------------------------------------------------------

    def _poly_json(self, p):
        return [
            {"coeff": str(c), "word": [self.gen_label(g) for g in w]}
            for w, c in sorted(p.items(), key=lambda kv: self.order_key(kv[0]))
        ]

    def to_json_dict(self):
        d = {
            "generators": [
                {"label": lbl, "degree": deg} for lbl, deg in self.generators
            ],
            "relations": [
                [self._poly_json(l), self._poly_json(r)] for l, r in self.relations
            ],
            "differential": {
                self.gen_label(g): self._poly_json(p)
                for g, p in self.differential.items()
            },
        }
        if self.augmentation is not None:
            d["augmentation"] = {
                self.gen_label(g): v for g, v in self.augmentation.items()
            }
        if self.modulus:
            d["modulus"] = self.modulus
        if self.provenance:
            d["provenance"] = self.provenance
        return d

    @classmethod
    def from_json_dict(cls, d):
        gens = [(g["label"], int(g["degree"])) for g in d["generators"]]
        alg = cls(gens, modulus=d.get("modulus"))

        def parse(poly_json):
            out = {}
            for t in poly_json:
                word = tuple(alg._index[lbl] for lbl in t["word"])
                poly_iadd_term(out, word, int(t["coeff"]), alg.modulus)
            return out

        alg.relations = [(parse(l), parse(r)) for l, r in d.get("relations", [])]
        alg.differential = {
            alg._index[lbl]: parse(p) for lbl, p in d.get("differential", {}).items()
        }
        if "augmentation" in d:
            alg.augmentation = {
                alg._index[lbl]: int(v) for lbl, v in d["augmentation"].items()
            }
        alg.provenance = dict(d.get("provenance", {}))
        for l, r in alg.relations:
            alg._check_homogeneous(poly_sub(l, r, alg.modulus))
        return alg


# ---------------------------------------------------------------------------
# rewriting


class _Rule:
    __slots__ = ("coeff", "lhs", "rhs")

    def __init__(self, coeff, lhs, rhs):
        self.coeff = coeff  # positive leading coefficient
        self.lhs = lhs      # monomial
        self.rhs = rhs      # poly with all monomials < lhs


class RewriteSystem:
    """Oriented rules plus reduction.  ``complete`` means the critical
    pair saturation finished inside its budget; otherwise equality checks
    are sound but may be inconclusive."""

    def __init__(self, algebra, rules, complete, steps_used):
        self.algebra = algebra
        self.rules = rules
        self.complete = complete
        self.steps_used = steps_used

    @property
    def has_nonunit_leads(self):
        return any(r.coeff != 1 for r in self.rules)

    def _find_reduction(self, word, coeff):
        for ri, rule in enumerate(self.rules):
            l = rule.lhs
            n = len(l)
            if n > len(word):
                continue
            q = self._quotient(coeff, rule.coeff)
            if q is None or q == 0:
                continue
            if n == 0:
                return ri, 0, q
            pos = self._find_sub(word, l)
            if pos >= 0:
                return ri, pos, q
        return None

    def _quotient(self, coeff, lead):
        m = self.algebra.modulus
        if lead == 1:
            return coeff
        if m:
            g, inv, _ = xgcd(lead, m)
            if g != 1:
                return None  # lead not invertible: leave the term alone
            return (coeff * inv) % m
        return coeff // lead

    @staticmethod
    def _find_sub(word, sub):
        n = len(sub)
        first = sub[0]
        for i in range(len(word) - n + 1):
            if word[i] == first and word[i : i + n] == sub:
                return i
        return -1

    def normal_form(self, p, trace=None):
        """Reduce a polynomial to its normal form (deterministically:
        largest reducible monomial first, first matching rule, leftmost
        occurrence)."""
        p = dict(p)
        alg = self.algebra
        while True:
            target = None
            for w in sorted(p, key=alg.order_key, reverse=True):
                hit = self._find_reduction(w, p[w])
                if hit:
                    target = (w, hit)
                    break
            if target is None:
                return p
            w, (ri, pos, q) = target
            rule = self.rules[ri]
            if trace is not None:
                trace.append((ri, pos, w))
            poly_iadd_term(p, w, -q * rule.coeff, alg.modulus)
            pre, post = w[:pos], w[pos + len(rule.lhs) :]
            for w2, c2 in rule.rhs.items():
                poly_iadd_term(p, pre + w2 + post, q * c2, alg.modulus)

    def equal(self, p, q):
        """Sound equality check: True means p == q in the presented ring.
        False is only conclusive when the system is complete with unit
        leading coefficients."""
        return not self.normal_form(poly_sub(p, q, self.algebra.modulus))

    def rules_as_relations(self):
        out = []
        for r in self.rules:
            lhs = {r.lhs: r.coeff}
            out.append((lhs, dict(r.rhs)))
        return out

    def describe(self):
        alg = self.algebra
        lines = []
        for r in self.rules:
            lines.append(
                f"{alg.poly_str({r.lhs: r.coeff})} -> {alg.poly_str(r.rhs)}"
            )
        return lines


def _orient(alg, p):
    """Turn a nonzero homogeneous polynomial into a rule."""
    alg._check_homogeneous(p)
    lead = max(p, key=alg.order_key)
    c = p[lead]
    if c < 0:
        p = poly_scale(p, -1, alg.modulus)
        c = -c
    if alg.modulus:
        g, inv, _ = xgcd(c, alg.modulus)
        if g == 1:
            p = poly_scale(p, inv, alg.modulus)
            c = 1
    rhs = {w: -x for w, x in p.items() if w != lead}
    return _Rule(c, lead, rhs)


def _superpositions(l1, l2):
    """Minimal words in which l1 (at position p1) and l2 (at p2) both
    occur: suffix/prefix overlaps and containments."""
    out = []
    n1, n2 = len(l1), len(l2)
    if n1 == 0 or n2 == 0:
        # empty lhs overlaps everything trivially; pair it with the other
        # word itself so coefficient combinations still surface
        out.append((l1 if n1 else l2, 0, 0))
        return out
    for k in range(1, min(n1, n2) + 1):
        if l1[n1 - k :] == l2[:k]:
            out.append((l1 + l2[k:], 0, n1 - k))
    for p in range(0, n1 - n2):
        if l1[p : p + n2] == l2:
            out.append((l1, 0, p))
    return out


def complete(algebra, budget=100_000):
    """Knuth-Bendix / Buchberger style completion within a step budget."""
    alg = algebra
    pending = []
    for l, r in alg.relations:
        p = poly_sub(l, r, alg.modulus)
        if p:
            pending.append(p)
    rules = []
    steps = 0

    def nf(p):
        return RewriteSystem(alg, rules, False, 0).normal_form(p)

    while pending and steps < budget:
        pending.sort(key=lambda p: alg.order_key(max(p, key=alg.order_key)))
        p = nf(pending.pop(0))
        steps += 1
        if not p:
            continue
        new = _orient(alg, p)
        # retire any existing rule whose lhs the new rule can touch
        sys_one = RewriteSystem(alg, [new], False, 0)
        keep = []
        for r in rules:
            if sys_one._find_reduction(r.lhs, r.coeff):
                pending.append(poly_add({r.lhs: r.coeff},
                                        poly_scale(r.rhs, -1, alg.modulus),
                                        alg.modulus))
            else:
                keep.append(r)
        rules = keep
        rules.append(new)
        rules.sort(key=lambda r: alg.order_key(r.lhs))
        # critical pairs of the new rule against everything (incl. itself)
        for other in list(rules):
            for a, b in ((new, other), (other, new)):
                for word, pa, pb in _superpositions(a.lhs, b.lhs):
                    if a is b and pa == pb:
                        continue
                    ca, cb = a.coeff, b.coeff
                    g, _, _ = xgcd(ca, cb)
                    lcm = ca // g * cb
                    ta = {}
                    pre, post = word[:pa], word[pa + len(a.lhs) :]
                    for w2, c2 in a.rhs.items():
                        poly_iadd_term(ta, pre + w2 + post,
                                       (lcm // ca) * c2, alg.modulus)
                    tb = {}
                    pre, post = word[:pb], word[pb + len(b.lhs) :]
                    for w2, c2 in b.rhs.items():
                        poly_iadd_term(tb, pre + w2 + post,
                                       (lcm // cb) * c2, alg.modulus)
                    s = poly_sub(ta, tb, alg.modulus)
                    if s:
                        s = nf(s)
                        steps += 1
                        if s:
                            pending.append(s)
            if steps >= budget:
                break

    finished = not pending and steps < budget
    if finished:
        # normalize right-hand sides against the final system
        stable = False
        while not stable and steps < budget:
            stable = True
            final = RewriteSystem(alg, rules, False, 0)
            for r in rules:
                red = final.normal_form(dict(r.rhs))
                steps += 1
                if red != r.rhs:
                    r.rhs = red
                    stable = False
        finished = steps < budget
    return RewriteSystem(alg, rules, finished, steps)


def basis_in_degree(rsys, degree, cap=10_000):
    """All irreducible monomials of the given degree, sorted by the
    monomial order.  Requires a complete system with unit leading
    coefficients (otherwise the irreducible monomials are not a basis)."""
    if not rsys.complete:
        raise BarloopError("rewrite system is not complete; no canonical basis")
    if rsys.has_nonunit_leads:
        raise BarloopError(
            "non-unit leading coefficients: irreducible monomials are not "
            "a canonical basis"
        )
    alg = rsys.algebra
    lhss = [r.lhs for r in rsys.rules]

    def reducible(word):
        for l in lhss:
            if not l or RewriteSystem._find_sub(word, l) >= 0:
                return True
        return False

    found = []
    frontier = [()]
    explored = 0
    explored_cap = max(100 * cap, 100_000)
    if degree == 0 and not reducible(()):
        found.append(())
    while frontier:
        nxt = []
        for word in frontier:
            wdeg = alg.word_degree(word)
            for g in range(len(alg.generators)):
                d2 = wdeg + alg.gen_degree(g)
                if d2 > degree:
                    continue
                w2 = word + (g,)
                # irreducibility is subword-closed: only the new tail
                # needs checking, but a full check is cheap and safe
                if reducible(w2):
                    continue
                explored += 1
                if explored > explored_cap:
                    raise CapExceeded(
                        f"basis enumeration explored more than {explored_cap} words"
                    )
                if d2 == degree:
                    found.append(w2)
                    if len(found) > cap:
                        raise CapExceeded(
                            f"more than {cap} irreducible monomials in degree "
                            f"{degree}"
                        )
                nxt.append(w2)
        frontier = nxt
    return sorted(found, key=alg.order_key)


def h0_ring(algebra):
    """Degree-0 ring of a presented dg algebra: degree-0 generators and
    relations, plus one relation d(g) = 0 per degree-1 generator."""
    alg = algebra
    keep = [i for i, (_, d) in enumerate(alg.generators) if d == 0]
    remap = {old: new for new, old in enumerate(keep)}

    def project(p):
        out = {}
        for w, c in p.items():
            if all(g in remap for g in w):
                out[tuple(remap[g] for g in w)] = c
            else:
                raise BarloopError("degree-0 polynomial uses positive gens")
        return out

    gens = [alg.generators[i] for i in keep]
    rels = []
    for l, r in alg.relations:
        diff = poly_sub(l, r, alg.modulus)
        if diff and alg.word_degree(max(diff, key=alg.order_key)) == 0:
            rels.append((project(l), project(r)))
    for i, (_, d) in enumerate(alg.generators):
        if d == 1:
            dg = alg.differential.get(i, {})
            rels.append((project(dg), {}))
    aug = None
    if alg.augmentation is not None:
        aug = {remap[g]: v for g, v in alg.augmentation.items() if g in remap}
    return PresentedDgAlgebra(
        gens, rels, {}, aug, modulus=alg.modulus,
        provenance={"degree_zero_of": alg.provenance},
    )


def adjoin_inverses(algebra, elements, labels=None, require_cycles=True):
    """Adjoin a two-sided inverse v for each listed degree-0 element.

    Each element must be a degree-0 cycle; v gets the differential
    -v (d element) v, which is zero here but kept in the general form.
    Inverse generators are appended after all existing ones, so they rank
    higher in the monomial order.
    """
    alg = algebra
    elements = list(elements)
    if labels is None:
        labels = [f"inv{i}" for i in range(len(elements))]
    gens = list(alg.generators)
    base = len(gens)
    for lbl in labels:
        gens.append((lbl, 0))
    new_rel = []
    new_diff = {g: dict(p) for g, p in alg.differential.items()}
    new_aug = None if alg.augmentation is None else dict(alg.augmentation)
    for k, p in enumerate(elements):
        for w in p:
            if alg.word_degree(w) != 0:
                raise BarloopError("can only invert degree-0 elements")
        dp = alg.differentiate(p)
        if require_cycles and dp:
            raise NotACycle(
                f"element {alg.poly_str(p)} has differential {alg.poly_str(dp)}"
            )
        v = base + k
        vp = {(v,) + w: c for w, c in p.items()}
        pv = {w + (v,): c for w, c in p.items()}
        new_rel.append((vp, {(): 1}))
        new_rel.append((pv, {(): 1}))
        # general formula dv = -v (d element) v; zero when the element is
        # a cycle, which the constructor requires
        dv = {}
        for w1, c1 in {(v,): 1}.items():
            for w2, c2 in dp.items():
                for w3, c3 in {(v,): 1}.items():
                    poly_iadd_term(dv, w1 + w2 + w3, -c1 * c2 * c3, alg.modulus)
        if dv:
            new_diff[v] = dv
        if new_aug is not None:
            eps = 0
            for w, c in p.items():
                val = c
                for g in w:
                    val *= alg.augmentation.get(g, 0)
                eps += val
            if eps in (1, -1):
                new_aug[v] = eps
            else:
                new_aug = None
    out = PresentedDgAlgebra(
        gens,
        [(dict(l), dict(r)) for l, r in alg.relations] + new_rel,
        new_diff,
        new_aug,
        modulus=alg.modulus,
        provenance={
            "localized_at": [alg.poly_str(p) for p in elements],
            "inverse_labels": list(labels),
            "freeness_of_inverted_set_assumed": True,
        },
    )
    return out


class IsoCertificate:
    """Outcome of a two-sided ring isomorphism check."""

    def __init__(self, ok, status, details):
        self.ok = ok
        self.status = status
        self.details = details

    def to_json_dict(self):
        return {"ok": self.ok, "status": self.status, "details": self.details}


def _apply_hom(src, dst, images, p):
    out = {}
    for w, c in p.items():
        acc = {(): c}
        for g in w:
            img = images[src.gen_label(g)]
            acc = poly_mul(acc, img, dst.modulus)
        for w2, c2 in acc.items():
            poly_iadd_term(out, w2, c2, dst.modulus)
    return out


def ring_iso_certify(a, b, f_images, g_images, budget=100_000, strict=True):
    """Certify that f: a -> b and g: b -> a are mutually inverse ring maps.

    f_images / g_images map generator labels to polynomials (dicts over
    monomials) in the other presentation.  Each relation of a must reduce
    to zero after applying f (and symmetrically for b), and both
    composites must fix every generator.  Returns an IsoCertificate;
    raises NotAHomomorphism / NotInverse when strict.
    """
    ra = complete(a, budget)
    rb = complete(b, budget)
    details = {
        "source_complete": ra.complete,
        "target_complete": rb.complete,
        "source_nonunit_leads": ra.has_nonunit_leads,
        "target_nonunit_leads": rb.has_nonunit_leads,
        "checks": [],
    }

    def run_check(kind, poly, rsys, alg):
        trace = []
        red = rsys.normal_form(poly, trace=trace)
        details["checks"].append(
            {
                "kind": kind,
                "input": alg.poly_str(poly),
                "normal_form": alg.poly_str(red),
                "steps": [
                    {"rule": ri, "position": pos,
                     "monomial": alg.poly_str({w: 1})}
                    for ri, pos, w in trace[:200]
                ],
            }
        )
        return not red

    ok = True
    for l, r in a.relations:
        p = poly_sub(_apply_hom(a, b, f_images, l),
                     _apply_hom(a, b, f_images, r), b.modulus)
        if not run_check("f(relation of source) = 0", p, rb, b):
            if strict:
                raise NotAHomomorphism(
                    f"f does not kill source relation "
                    f"{a.poly_str(l)} = {a.poly_str(r)}"
                )
            ok = False
    for l, r in b.relations:
        p = poly_sub(_apply_hom(b, a, g_images, l),
                     _apply_hom(b, a, g_images, r), a.modulus)
        if not run_check("g(relation of target) = 0", p, ra, a):
            if strict:
                raise NotAHomomorphism(
                    f"g does not kill target relation "
                    f"{b.poly_str(l)} = {b.poly_str(r)}"
                )
            ok = False
    for i, (lbl, _) in enumerate(a.generators):
        p = poly_sub(_apply_hom(b, a, g_images, f_images[lbl]),
                     {(i,): 1}, a.modulus)
        if not run_check(f"g(f({lbl})) = {lbl}", p, ra, a):
            if strict:
                raise NotInverse(f"g∘f does not fix generator {lbl}")
            ok = False
    for i, (lbl, _) in enumerate(b.generators):
        p = poly_sub(_apply_hom(a, b, f_images, g_images[lbl]),
                     {(i,): 1}, b.modulus)
        if not run_check(f"f(g({lbl})) = {lbl}", p, rb, b):
            if strict:
                raise NotInverse(f"f∘g does not fix generator {lbl}")
            ok = False

    if ok and not (ra.complete and rb.complete):
        return IsoCertificate(True, "certified-with-incomplete-systems", details)
    return IsoCertificate(ok, "certified" if ok else "failed", details)


def complex_window(algebra, hi, budget=100_000, cap=10_000, lo=0):
    """Materialize the underlying chain complex of a presented dg algebra
    on degrees lo..hi, using the completed monomial basis per degree."""
    rsys = complete(algebra, budget)
    if not rsys.complete:
        raise BarloopError("completion budget exhausted; no canonical basis")
    alg = algebra
    bases = {n: basis_in_degree(rsys, n, cap) for n in range(lo, hi + 1)}
    index = {n: {w: i for i, w in enumerate(bases[n])} for n in bases}
    ranks = {n: len(bases[n]) for n in bases}
    bounds = {}
    for n in range(lo + 1, hi + 1):
        rows, cols = ranks[n - 1], ranks[n]
        entries = [0] * (rows * cols)
        for j, w in enumerate(bases[n]):
            dp = rsys.normal_form(alg.differentiate({w: 1}))
            for w2, c in dp.items():
                entries[index[n - 1][w2] * cols + j] = c
        bounds[n] = IntMatrix(rows, cols, entries)
    labels = {
        n: [
            "*".join(alg.gen_label(g) for g in w) if w else "1"
            for w in bases[n]
        ]
        for n in bases
    }
    return ChainComplexWindow(
        lo, hi, ranks, bounds, labels=labels, closed_below=(lo == 0)
    )
