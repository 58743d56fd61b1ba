"""Relational models: multiset relations and ideal relations over preorders.

A multiset relation A -|-> B is a finite set of pairs (m, b) where m is a
multiset of inputs needed to produce b.  Composition threads one derivation
per occurrence.  The least fixpoint of an endo-relation is the least set of
elements derivable from nothing, computed either as a closure iteration
(`mrel_star`) or in explicit derivation-tree stages (`tree_star`).

Ideal relations refine this over preorders: a pair (u, b) stands for its
whole downward closure (any input set dominating u produces anything below
b), and relations are kept in normal form with subsumed pairs dropped.
Composition then has to cover-match premises instead of matching them
literally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Tuple

from .errors import TypeMismatch, ValidationError


def _skey(x):
    # total sort key over mixed element types
    return (x.__class__.__name__, repr(x))


# ---------------------------------------------------------------------------
# Multisets as sorted ((elem, count), ...) tuples.

def mset(items) -> Tuple:
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    return tuple(sorted(counts.items(), key=lambda ec: _skey(ec[0])))


EMPTY_MSET = mset([])


def mset_union(*msets) -> Tuple:
    counts = {}
    for m in msets:
        for (x, k) in m:
            counts[x] = counts.get(x, 0) + k
    return tuple(sorted(counts.items(), key=lambda ec: _skey(ec[0])))


def mset_support(m) -> frozenset:
    return frozenset(x for (x, _) in m)


def mset_size(m) -> int:
    return sum(k for (_, k) in m)


def mset_map(fn, m) -> Tuple:
    return mset([fn(x) for (x, k) in m for _ in range(k)])


class MultisetRel:
    """A finite multiset relation between finite carriers."""

    def __init__(self, source, target, pairs, name="r", _validate=True):
        self.source = tuple(source)
        self.target = tuple(target)
        self.pairs = frozenset(pairs)
        self.name = name
        if _validate:
            problems = self.validate()
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def validate(self):
        problems = []
        src, tgt = set(self.source), set(self.target)
        for (m, b) in self.pairs:
            if b not in tgt:
                problems.append(f"output {b!r} outside target")
            if mset(x for (x, k) in m for _ in range(k)) != m:
                problems.append(f"premise {m!r} not in canonical form")
            if not mset_support(m) <= src:
                problems.append(f"premise {m!r} outside source")
        return problems

    def __eq__(self, other):
        if not isinstance(other, MultisetRel):
            return NotImplemented
        return (set(self.source) == set(other.source)
                and set(self.target) == set(other.target)
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((frozenset(self.source), frozenset(self.target), self.pairs))

    def __repr__(self):
        return f"MultisetRel({self.name}: {len(self.pairs)} pairs)"


def mrel_identity(carrier) -> MultisetRel:
    return MultisetRel(carrier, carrier, {(mset([a]), a) for a in carrier},
                       name="id", _validate=False)


def mrel_from_function(source, target, fn, name="J") -> MultisetRel:
    """A function as a relation: one singleton premise per input."""
    return MultisetRel(source, target, {(mset([a]), fn(a)) for a in source},
                       name=name)


def mrel_compose(g: MultisetRel, f: MultisetRel) -> MultisetRel:
    """g after f: one f-derivation per occurrence in each g-premise."""
    if set(f.target) != set(g.source):
        raise TypeMismatch("relation boundaries do not match")
    by_target = {}
    for (m, b) in f.pairs:
        by_target.setdefault(b, []).append(m)
    out = set()
    for (n, c) in g.pairs:
        slots = []
        feasible = True
        for (b, k) in n:
            cands = by_target.get(b, [])
            if not cands:
                feasible = False
                break
            slots.append(list(itertools.combinations_with_replacement(cands, k)))
        if not feasible:
            continue
        for choice in itertools.product(*slots):
            ms = [m for group in choice for m in group]
            out.add((mset_union(*ms), c))
    return MultisetRel(f.source, g.target, out, name=f"{g.name}.{f.name}",
                       _validate=False)


EMPTY_CARRIER = ()


def mrel_star(f: MultisetRel) -> MultisetRel:
    """Least fixpoint of an endo-relation, as a relation out of the empty carrier.

    Iterates the one-step derivability operator from the empty set; the
    result is the least S with S = {b : some (m, b) in f has support inside S}.
    """
    if set(f.source) != set(f.target):
        raise TypeMismatch("mrel_star needs an endo-relation")
    s = frozenset()
    for _ in range(len(f.target) + 1):
        nxt = frozenset(b for (m, b) in f.pairs if mset_support(m) <= s)
        if nxt == s:
            break
        s = nxt
    return MultisetRel(EMPTY_CARRIER, f.target, {(EMPTY_MSET, b) for b in s},
                       name=f"{f.name}*", _validate=False)


@dataclass
class TreeStar:
    """Derivation-tree stages: stages[d] holds the roots of trees of height <= d+1."""

    stages: list
    stabilized: bool

    @property
    def final(self) -> frozenset:
        return self.stages[-1]


def tree_star(f: MultisetRel, depth: int) -> TreeStar:
    """Stage d+1 derives b when some pair (m, b) has all its support at stage d."""
    if set(f.source) != set(f.target):
        raise TypeMismatch("tree_star needs an endo-relation")
    stages = [frozenset(b for (m, b) in f.pairs if m == EMPTY_MSET)]
    for _ in range(depth + 1):
        prev = stages[-1]
        stages.append(frozenset(b for (m, b) in f.pairs if mset_support(m) <= prev))
    return TreeStar(stages, stabilized=stages[-1] == stages[-2])


# Disjoint unions play the role of products: a derivation into a tagged
# union is exactly a pair of derivations, one per tag.

def tag_left(x):
    return ("inl", x)


def tag_right(x):
    return ("inr", x)


def disjoint_union(a_carrier, b_carrier):
    return tuple(tag_left(a) for a in a_carrier) + tuple(tag_right(b) for b in b_carrier)


def mrel_proj1(a_carrier, b_carrier) -> MultisetRel:
    u = disjoint_union(a_carrier, b_carrier)
    return MultisetRel(u, a_carrier, {(mset([tag_left(a)]), a) for a in a_carrier},
                       name="pi1", _validate=False)


def mrel_proj2(a_carrier, b_carrier) -> MultisetRel:
    u = disjoint_union(a_carrier, b_carrier)
    return MultisetRel(u, b_carrier, {(mset([tag_right(b)]), b) for b in b_carrier},
                       name="pi2", _validate=False)


def mrel_pairing(f: MultisetRel, g: MultisetRel) -> MultisetRel:
    if set(f.source) != set(g.source):
        raise TypeMismatch("pairing needs a common source")
    pairs = {(m, tag_left(a)) for (m, a) in f.pairs} | \
            {(m, tag_right(b)) for (m, b) in g.pairs}
    return MultisetRel(f.source, disjoint_union(f.target, g.target), pairs,
                       name=f"<{f.name},{g.name}>", _validate=False)


def mrel_cross(f: MultisetRel, g: MultisetRel) -> MultisetRel:
    """f x g on tagged unions, as the pairing of the two composites with
    the projections."""
    p1 = mrel_proj1(f.source, g.source)
    p2 = mrel_proj2(f.source, g.source)
    return mrel_pairing(mrel_compose(f, p1), mrel_compose(g, p2))


def mrel_swap(a_carrier, b_carrier) -> MultisetRel:
    p1 = mrel_proj1(a_carrier, b_carrier)
    p2 = mrel_proj2(a_carrier, b_carrier)
    return mrel_pairing(p2, p1)


def mrel_terminal_map(carrier) -> MultisetRel:
    """The unique relation into the empty carrier."""
    return MultisetRel(carrier, EMPTY_CARRIER, set(), name="!", _validate=False)


# ---------------------------------------------------------------------------
# Preorders and ideal relations.

class Preorder:
    """A finite preorder: reflexive and transitive, no antisymmetry required."""

    def __init__(self, elements, leq, name="P", _validate=True):
        self.name = name
        self.elements = tuple(elements)
        self.leq_pairs = frozenset(leq)
        if _validate:
            problems = self.validate()
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def validate(self):
        problems = []
        elems = set(self.elements)
        for (x, y) in self.leq_pairs:
            if x not in elems or y not in elems:
                problems.append(f"pair ({x!r},{y!r}) outside carrier")
        for x in elems:
            if (x, x) not in self.leq_pairs:
                problems.append(f"not reflexive at {x!r}")
        for (x, y) in self.leq_pairs:
            for (y2, z) in self.leq_pairs:
                if y2 == y and (x, z) not in self.leq_pairs:
                    problems.append(f"transitivity fails on {x!r},{y!r},{z!r}")
        return problems

    def leq(self, x, y) -> bool:
        return (x, y) in self.leq_pairs

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return (set(self.elements) == set(other.elements)
                and self.leq_pairs == other.leq_pairs)

    def __repr__(self):
        return f"Preorder({self.name}: {len(self.elements)} elements)"


def discrete_preorder(elements, name="disc") -> Preorder:
    return Preorder(elements, {(x, x) for x in elements}, name=name,
                    _validate=False)


EMPTY_PREORDER = Preorder((), set(), name="0", _validate=False)


def uset(items) -> Tuple:
    """Canonical form for a finite input set: sorted, deduplicated tuple."""
    return tuple(sorted(set(items), key=_skey))


def hoare_leq(pre: Preorder, u, v) -> bool:
    """u below v when every element of u is dominated by one of v."""
    return all(any(pre.leq(x, y) for y in v) for x in u)


def _subsumes(src: Preorder, tgt: Preorder, p, q) -> bool:
    """p subsumes q: p needs less input and promises more output."""
    (u0, b0), (u, b) = p, q
    return hoare_leq(src, u0, u) and tgt.leq(b, b0)


def _class_rep(pre: Preorder, x):
    """Least-keyed member of x's equivalence class, or x itself if foreign."""
    cls = [y for y in pre.elements if pre.leq(x, y) and pre.leq(y, x)]
    return min(cls, key=_skey) if cls else x


def canon_uset(pre: Preorder, u) -> Tuple:
    """Canonical representative of u's Hoare-equivalence class.

    Dominated elements add nothing to the requirement, so only the maximal
    ones survive, each replaced by its class representative.  Two input
    sets are Hoare-equivalent exactly when they canonicalize identically.
    """
    u0 = uset(u)
    kept = []
    for x in u0:
        dominated = False
        for y in u0:
            if y == x:
                continue
            if pre.leq(x, y) and (not pre.leq(y, x) or _skey(y) < _skey(x)):
                dominated = True
                break
        if not dominated:
            kept.append(x)
    return uset(_class_rep(pre, x) for x in kept)


def normalize_pairs(src: Preorder, tgt: Preorder, pairs) -> frozenset:
    """Drop subsumed pairs; mutually subsuming classes keep their least
    representative under the canonical sort key."""
    keep = []
    for p in sorted(pairs, key=_skey):
        dominated = False
        for q in pairs:
            if q == p:
                continue
            if _subsumes(src, tgt, q, p):
                if _subsumes(src, tgt, p, q):
                    # mutual: keep only the least-keyed member of the class
                    if _skey(q) < _skey(p):
                        dominated = True
                        break
                else:
                    dominated = True
                    break
        if not dominated:
            keep.append(p)
    return frozenset(keep)


class IdealRel:
    """A normalized relation between preorders.

    Pairs (u, b) with u a canonical input set and b an output; each pair
    stands for every (u', b') with u below-dominating u' and b' below b.
    Construction normalizes, so structural equality is semantic equality.
    """

    def __init__(self, source: Preorder, target: Preorder, pairs, name="r",
                 _validate=True):
        self.source = source
        self.target = target
        canon = {(canon_uset(source, u), _class_rep(target, b))
                 for (u, b) in pairs}
        self.pairs = normalize_pairs(source, target, canon)
        self.name = name
        if _validate:
            problems = self.validate()
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def validate(self):
        problems = []
        src, tgt = set(self.source.elements), set(self.target.elements)
        for (u, b) in self.pairs:
            if b not in tgt:
                problems.append(f"output {b!r} outside target")
            if not set(u) <= src:
                problems.append(f"input set {u!r} outside source")
        return problems

    def holds(self, u, b) -> bool:
        """Membership in the denoted (downward closed) relation."""
        u = uset(u)
        return any(_subsumes(self.source, self.target, p, (u, b))
                   for p in self.pairs)

    def __eq__(self, other):
        if not isinstance(other, IdealRel):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((frozenset(self.source.elements),
                     frozenset(self.target.elements), self.pairs))

    def __repr__(self):
        return f"IdealRel({self.name}: {len(self.pairs)} pairs)"


def scott_identity(pre: Preorder) -> IdealRel:
    return IdealRel(pre, pre, {((a,), a) for a in pre.elements}, name="id",
                    _validate=False)


def scott_from_function(source: Preorder, target: Preorder, fn, name="J") -> IdealRel:
    rel = IdealRel(source, target, {((a,), fn(a)) for a in source.elements},
                   name=name)
    for (x, y) in source.leq_pairs:
        if not target.leq(fn(x), fn(y)):
            raise ValidationError(f"{name}: function not monotone on {x!r} <= {y!r}")
    return rel


def scott_compose(g: IdealRel, f: IdealRel) -> IdealRel:
    """g after f on normal forms.

    Premises of g are cover-matched: an occurrence b can be served by any
    f-pair promising at least b.  Literal matching would be wrong here
    because normalization may have dropped the exactly-matching pair.
    """
    if f.target != g.source:
        raise TypeMismatch("relation boundaries do not match")
    mid = f.target
    out = set()
    for (v, c) in g.pairs:
        slots = []
        feasible = True
        for b in v:
            cands = [u0 for (u0, b0) in f.pairs if mid.leq(b, b0)]
            if not cands:
                feasible = False
                break
            slots.append(cands)
        if not feasible:
            continue
        for choice in itertools.product(*slots):
            out.add((uset(x for u0 in choice for x in u0), c))
    return IdealRel(f.source, g.target, out, name=f"{g.name}.{f.name}",
                    _validate=False)


def scott_star_set(f: IdealRel) -> frozenset:
    """The least downward closed X with X = everything producible from X.

    Down-closure is built into the step, so the premise test u subset-of X
    is equivalent to cover-matching against X.
    """
    if f.source != f.target:
        raise TypeMismatch("scott_star needs an endo-relation")
    pre = f.source
    x = frozenset()
    for _ in range(len(pre.elements) + 1):
        nxt = frozenset(b for b in pre.elements
                        for (u, b0) in f.pairs
                        if set(u) <= x and pre.leq(b, b0))
        if nxt == x:
            break
        x = nxt
    return x


def scott_star(f: IdealRel) -> IdealRel:
    return IdealRel(EMPTY_PREORDER, f.target,
                    {((), b) for b in scott_star_set(f)},
                    name=f"{f.name}*", _validate=False)


def preorder_disjoint_union(a: Preorder, b: Preorder) -> Preorder:
    elems = tuple(tag_left(x) for x in a.elements) + \
        tuple(tag_right(y) for y in b.elements)
    leq = {(tag_left(x), tag_left(y)) for (x, y) in a.leq_pairs} | \
          {(tag_right(x), tag_right(y)) for (x, y) in b.leq_pairs}
    return Preorder(elems, leq, name=f"{a.name}+{b.name}", _validate=False)


def scott_proj1(a: Preorder, b: Preorder) -> IdealRel:
    u = preorder_disjoint_union(a, b)
    return IdealRel(u, a, {((tag_left(x),), x) for x in a.elements},
                    name="pi1", _validate=False)


def scott_proj2(a: Preorder, b: Preorder) -> IdealRel:
    u = preorder_disjoint_union(a, b)
    return IdealRel(u, b, {((tag_right(y),), y) for y in b.elements},
                    name="pi2", _validate=False)


def scott_pairing(f: IdealRel, g: IdealRel) -> IdealRel:
    if f.source != g.source:
        raise TypeMismatch("pairing needs a common source")
    pairs = {(u, tag_left(a)) for (u, a) in f.pairs} | \
            {(u, tag_right(b)) for (u, b) in g.pairs}
    return IdealRel(f.source, preorder_disjoint_union(f.target, g.target),
                    pairs, name=f"<{f.name},{g.name}>", _validate=False)


def scott_cross(f: IdealRel, g: IdealRel) -> IdealRel:
    p1 = scott_proj1(f.source, g.source)
    p2 = scott_proj2(f.source, g.source)
    return scott_pairing(scott_compose(f, p1), scott_compose(g, p2))


def scott_swap(a: Preorder, b: Preorder) -> IdealRel:
    return scott_pairing(scott_proj2(a, b), scott_proj1(a, b))


def scott_terminal_map(pre: Preorder) -> IdealRel:
    return IdealRel(pre, EMPTY_PREORDER, set(), name="!", _validate=False)
