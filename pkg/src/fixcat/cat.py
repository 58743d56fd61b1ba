"""Finite categories presented by explicit composition tables.

Objects and arrows are opaque string ids.  A category carries its full
composition table, so every law check here is a finite table lookup;
functors and natural transformations are likewise explicit dictionaries.
2-cell calculus (vertical/horizontal composition, whiskering) is evaluated
componentwise, and a small expression tree lets callers compare pastings
built in syntactically different ways.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BoundaryMismatch, NotInvertible, SizeCap, TypeMismatch, ValidationError


@dataclass(frozen=True)
class SearchBound:
    """Caps for the brute-force enumeration ops."""

    max_objects: int = 5
    max_arrows: int = 12


DEFAULT_BOUND = SearchBound()


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


class FinCategory:
    """A finite category: objects, arrows, identities, composition table.

    The table maps (g_id, f_id) to the id of g after f and is defined on
    exactly the composable pairs.  Construction validates everything and
    raises ValidationError; use `validate_category` to collect violations
    as data instead.
    """

    def __init__(self, objects, arrows, identity, table, name="C", _validate=True):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = {a.id: a for a in arrows}
        self.identity = dict(identity)
        self.table = dict(table)
        if _validate:
            problems = validate_category(self)
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def arrow(self, aid: str) -> Arrow:
        return self.arrows[aid]

    def src(self, aid: str) -> str:
        return self.arrows[aid].src

    def dst(self, aid: str) -> str:
        return self.arrows[aid].dst

    def id_of(self, obj: str) -> str:
        return self.identity[obj]

    def compose(self, g: str, f: str) -> str:
        """Composite of f followed by g."""
        if self.arrows[f].dst != self.arrows[g].src:
            raise TypeMismatch(f"cannot compose {g} after {f}")
        return self.table[(g, f)]

    def hom(self, x: str, y: str):
        return [a.id for a in self.arrows.values() if a.src == x and a.dst == y]

    def is_identity_arrow(self, aid: str) -> bool:
        a = self.arrows[aid]
        return a.src == a.dst and self.identity[a.src] == aid

    def inverse(self, aid: str):
        """Two-sided inverse of an arrow, or None."""
        a = self.arrows[aid]
        for b in self.hom(a.dst, a.src):
            if (self.table.get((b, aid)) == self.identity[a.src]
                    and self.table.get((aid, b)) == self.identity[a.dst]):
                return b
        return None

    def is_iso(self, aid: str) -> bool:
        return self.inverse(aid) is not None

    def initial_objects(self):
        """Objects with exactly one arrow to every object."""
        out = []
        for x in self.objects:
            if all(len(self.hom(x, y)) == 1 for y in self.objects):
                out.append(x)
        return out

    def sorted_arrow_ids(self):
        return sorted(self.arrows)

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (set(self.objects) == set(other.objects)
                and self.arrows == other.arrows
                and self.identity == other.identity
                and self.table == other.table)

    def __repr__(self):
        return f"FinCategory({self.name}: {len(self.objects)} objects, {len(self.arrows)} arrows)"


def validate_category(c: FinCategory):
    """Collect category-law violations as human-readable strings."""
    problems = []
    for aid, a in c.arrows.items():
        if aid != a.id:
            problems.append(f"arrow key {aid} disagrees with id {a.id}")
        if a.src not in c.objects or a.dst not in c.objects:
            problems.append(f"arrow {aid} has boundary outside the object set")
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c.arrows:
            problems.append(f"object {x} has no identity arrow")
            continue
        a = c.arrows[i]
        if a.src != x or a.dst != x:
            problems.append(f"identity of {x} has boundary {a.src}->{a.dst}")
    # table defined exactly on composable pairs
    for f in c.arrows.values():
        for g in c.arrows.values():
            key = (g.id, f.id)
            if f.dst == g.src:
                h = c.table.get(key)
                if h is None:
                    problems.append(f"composite {g.id} after {f.id} missing from table")
                elif h not in c.arrows:
                    problems.append(f"composite {g.id} after {f.id} is unknown arrow {h}")
                else:
                    b = c.arrows[h]
                    if b.src != f.src or b.dst != g.dst:
                        problems.append(f"composite {g.id} after {f.id} has wrong boundary")
            elif key in c.table:
                problems.append(f"table defined on non-composable pair {key}")
    if problems:
        return problems  # identity/associativity laws need a well-formed table
    for f in c.arrows.values():
        if c.table[(c.identity[f.dst], f.id)] != f.id:
            problems.append(f"left identity law fails at {f.id}")
        if c.table[(f.id, c.identity[f.src])] != f.id:
            problems.append(f"right identity law fails at {f.id}")
    for f in c.arrows.values():
        for g in c.arrows.values():
            if f.dst != g.src:
                continue
            for h in c.arrows.values():
                if g.dst != h.src:
                    continue
                left = c.table[(h.id, c.table[(g.id, f.id)])]
                right = c.table[(c.table[(h.id, g.id)], f.id)]
                if left != right:
                    problems.append(
                        f"associativity fails at {h.id} after {g.id} after {f.id}")
    return problems


def category_from_generators(name, objects, gen_arrows, relations=None, max_arrows=64):
    """Close a generating graph under composition.

    gen_arrows: list of (id, src, dst).  relations: optional map from a
    composite-word tuple (g, f) to an existing arrow id, used to identify
    composites with named arrows.  New composites get ids "g.f".  Intended
    for hand-building small categories; raises if closure exceeds max_arrows.
    """
    relations = dict(relations or {})
    arrows = {}
    identity = {}
    for x in objects:
        i = f"id_{x}"
        arrows[i] = Arrow(i, x, x)
        identity[x] = i
    for aid, s, d in gen_arrows:
        arrows[aid] = Arrow(aid, s, d)
    table = {}

    def set_comp(g, f, h):
        table[(g, f)] = h

    changed = True
    while changed:
        changed = False
        pairs = [(g, f) for f in list(arrows) for g in list(arrows)
                 if arrows[f].dst == arrows[g].src and (g, f) not in table]
        for g, f in pairs:
            if arrows[f].src == arrows[f].dst and identity[arrows[f].src] == f:
                set_comp(g, f, g)
                changed = True
                continue
            if arrows[g].src == arrows[g].dst and identity[arrows[g].src] == g:
                set_comp(g, f, f)
                changed = True
                continue
            if (g, f) in relations:
                set_comp(g, f, relations[(g, f)])
                changed = True
                continue
            h = f"{g}.{f}"
            if h not in arrows:
                arrows[h] = Arrow(h, arrows[f].src, arrows[g].dst)
                if len(arrows) > max_arrows:
                    raise SizeCap(f"{name}: composite closure exceeded {max_arrows} arrows")
            set_comp(g, f, h)
            changed = True
    return FinCategory(objects, arrows.values(), identity, table, name=name)


def discrete_category(name, objects) -> FinCategory:
    arrows = [Arrow(f"id_{x}", x, x) for x in objects]
    identity = {x: f"id_{x}" for x in objects}
    table = {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects}
    return FinCategory(objects, arrows, identity, table, name=name)


def preorder_category(name, elements, leq_pairs) -> FinCategory:
    """The thin category of a preorder: one arrow x->y per related pair."""
    rel = set(leq_pairs) | {(x, x) for x in elements}
    arrows = [Arrow(f"{x}<{y}" if x != y else f"id_{x}", x, y) for (x, y) in rel]
    identity = {x: f"id_{x}" for x in elements}
    byname = {a.id: a for a in arrows}
    table = {}
    for f in byname.values():
        for g in byname.values():
            if f.dst == g.src:
                x, y = f.src, g.dst
                if (x, y) not in rel:
                    raise ValidationError(f"{name}: relation not transitive at {x},{y}")
                table[(g.id, f.id)] = f"{x}<{y}" if x != y else f"id_{x}"
    return FinCategory(elements, arrows, identity, table, name=name)


TERMINAL_CATEGORY = FinCategory(
    ["*"], [Arrow("id_*", "*", "*")], {"*": "id_*"}, {("id_*", "id_*"): "id_*"},
    name="1")


class FunctorData:
    """A functor between finite categories, as explicit object/arrow maps."""

    def __init__(self, source: FinCategory, target: FinCategory, omap, amap,
                 name="F", _validate=True):
        self.source = source
        self.target = target
        self.omap = dict(omap)
        self.amap = dict(amap)
        self.name = name
        if _validate:
            problems = validate_functor(self)
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def on_obj(self, x):
        return self.omap[x]

    def on_arrow(self, aid):
        return self.amap[aid]

    def key(self):
        """Canonical hashable form, for caches and deterministic ordering."""
        return (tuple(sorted(self.omap.items())), tuple(sorted(self.amap.items())))

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.omap == other.omap and self.amap == other.amap)

    def __repr__(self):
        return f"FunctorData({self.name}: {self.source.name}->{self.target.name})"


def validate_functor(f: FunctorData):
    problems = []
    c, d = f.source, f.target
    for x in c.objects:
        if f.omap.get(x) not in d.objects:
            problems.append(f"object {x} not mapped into the target")
    for aid, a in c.arrows.items():
        img = f.amap.get(aid)
        if img is None or img not in d.arrows:
            problems.append(f"arrow {aid} not mapped")
            continue
        b = d.arrows[img]
        if b.src != f.omap.get(a.src) or b.dst != f.omap.get(a.dst):
            problems.append(f"arrow {aid} image has wrong boundary")
    if problems:
        return problems
    for x in c.objects:
        if f.amap[c.identity[x]] != d.identity[f.omap[x]]:
            problems.append(f"identity at {x} not preserved")
    for (g, h), comp in c.table.items():
        if d.table[(f.amap[g], f.amap[h])] != f.amap[comp]:
            problems.append(f"composition {g} after {h} not preserved")
    return problems


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, {x: x for x in c.objects},
                       {a: a for a in c.arrows}, name=f"1_{c.name}")


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g after f."""
    if f.target != g.source:
        raise TypeMismatch("functor boundaries do not match")
    return FunctorData(
        f.source, g.target,
        {x: g.omap[f.omap[x]] for x in f.source.objects},
        {a: g.amap[f.amap[a]] for a in f.source.arrows},
        name=f"{g.name}.{f.name}")


def constant_functor(c: FinCategory, d: FinCategory, obj) -> FunctorData:
    return FunctorData(c, d, {x: obj for x in c.objects},
                       {a: d.identity[obj] for a in c.arrows},
                       name=f"const_{obj}")


def point_functor(d: FinCategory, obj) -> FunctorData:
    """The functor from the terminal category picking out obj."""
    return constant_functor(TERMINAL_CATEGORY, d, obj)


class NatTransfData:
    """A natural transformation, as a component arrow per source object."""

    def __init__(self, source: FunctorData, target: FunctorData, components,
                 name="alpha", _validate=True):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name
        if _validate:
            problems = validate_nat_transf(self)
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def at(self, x):
        return self.components[x]

    def __eq__(self, other):
        if not isinstance(other, NatTransfData):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __repr__(self):
        return f"NatTransfData({self.name}: {self.source.name}=>{self.target.name})"


def validate_nat_transf(t: NatTransfData):
    problems = []
    f, g = t.source, t.target
    if f.source != g.source or f.target != g.target:
        return ["source and target functors are not parallel"]
    c, d = f.source, f.target
    for x in c.objects:
        comp = t.components.get(x)
        if comp is None or comp not in d.arrows:
            problems.append(f"missing component at {x}")
            continue
        a = d.arrows[comp]
        if a.src != f.omap[x] or a.dst != g.omap[x]:
            problems.append(f"component at {x} has wrong boundary")
    if problems:
        return problems
    for aid, a in c.arrows.items():
        left = d.table[(t.components[a.dst], f.amap[aid])]
        right = d.table[(g.amap[aid], t.components[a.src])]
        if left != right:
            problems.append(f"naturality fails at arrow {aid}")
    return problems


def identity_transf(f: FunctorData) -> NatTransfData:
    return NatTransfData(f, f, {x: f.target.identity[f.omap[x]] for x in f.source.objects},
                         name=f"id_{f.name}")


def is_invertible_transf(t: NatTransfData) -> bool:
    return all(t.source.target.is_iso(a) for a in t.components.values())


def inverse_transf(t: NatTransfData) -> NatTransfData:
    d = t.source.target
    comps = {}
    for x, a in t.components.items():
        inv = d.inverse(a)
        if inv is None:
            raise NotInvertible(f"component at {x} has no inverse")
        comps[x] = inv
    return NatTransfData(t.target, t.source, comps, name=f"{t.name}^-1")


def vcomp(after: NatTransfData, before: NatTransfData) -> NatTransfData:
    """Vertical composite: before first, then after."""
    if before.target != after.source:
        raise BoundaryMismatch("vertical composite of non-adjacent cells")
    d = before.source.target
    comps = {x: d.table[(after.components[x], before.components[x])]
             for x in before.source.source.objects}
    return NatTransfData(before.source, after.target, comps,
                         name=f"{after.name}.{before.name}")


def whisker_left(h: FunctorData, t: NatTransfData) -> NatTransfData:
    """h applied after both boundary functors: components h(t_x)."""
    if t.source.target != h.source:
        raise BoundaryMismatch("left whisker boundary mismatch")
    return NatTransfData(
        compose_functors(h, t.source), compose_functors(h, t.target),
        {x: h.amap[t.components[x]] for x in t.source.source.objects},
        name=f"{h.name}*{t.name}")


def whisker_right(t: NatTransfData, h: FunctorData) -> NatTransfData:
    """Both boundary functors precomposed with h: components t_{h(x)}."""
    if h.target != t.source.source:
        raise BoundaryMismatch("right whisker boundary mismatch")
    return NatTransfData(
        compose_functors(t.source, h), compose_functors(t.target, h),
        {x: t.components[h.omap[x]] for x in h.source.objects},
        name=f"{t.name}*{h.name}")


def hcomp(first: NatTransfData, second: NatTransfData) -> NatTransfData:
    """Horizontal composite; `first` is the transformation applied first.

    For first: f => f' between functors A->B and second: g => g' between
    functors B->C, the result runs g.f => g'.f' with components
    g'(first_x) . second_{f(x)}.
    """
    if first.source.target != second.source.source:
        raise BoundaryMismatch("horizontal composite boundary mismatch")
    return vcomp(whisker_left(second.target, first),
                 whisker_right(second, first.source))


# ---------------------------------------------------------------------------
# 2-cell expression trees, compared by evaluation only.

@dataclass(frozen=True)
class Id2:
    on: FunctorData


@dataclass(frozen=True)
class Atom:
    cell: NatTransfData


@dataclass(frozen=True)
class VComp:
    after: object
    before: object


@dataclass(frozen=True)
class WhiskerL:
    functor: FunctorData
    expr: object


@dataclass(frozen=True)
class WhiskerR:
    expr: object
    functor: FunctorData


def eval_2cell(expr) -> NatTransfData:
    """Evaluate an expression tree to componentwise NatTransfData."""
    if isinstance(expr, Id2):
        return identity_transf(expr.on)
    if isinstance(expr, Atom):
        return expr.cell
    if isinstance(expr, VComp):
        return vcomp(eval_2cell(expr.after), eval_2cell(expr.before))
    if isinstance(expr, WhiskerL):
        return whisker_left(expr.functor, eval_2cell(expr.expr))
    if isinstance(expr, WhiskerR):
        return whisker_right(eval_2cell(expr.expr), expr.functor)
    raise BoundaryMismatch(f"not a 2-cell expression: {expr!r}")


# ---------------------------------------------------------------------------
# Enumeration.

def _check_bound(c: FinCategory, d: FinCategory, bound: SearchBound):
    if len(c.objects) * len(d.objects) > bound.max_objects * bound.max_objects:
        raise SizeCap(
            f"object count product {len(c.objects)}x{len(d.objects)} over bound")
    if len(c.arrows) > bound.max_arrows or len(d.arrows) > bound.max_arrows:
        raise SizeCap("arrow count over bound")


def enumerate_functors(c: FinCategory, d: FinCategory, bound: SearchBound = DEFAULT_BOUND):
    """All functors c -> d, in lexicographic object-map then arrow-map order."""
    _check_bound(c, d, bound)
    results = []
    objs = sorted(c.objects)
    non_id = [a for a in c.sorted_arrow_ids() if not c.is_identity_arrow(a)]
    for images in itertools.product(sorted(d.objects), repeat=len(objs)):
        omap = dict(zip(objs, images))
        candidates = []
        dead = False
        for aid in non_id:
            a = c.arrows[aid]
            h = sorted(d.hom(omap[a.src], omap[a.dst]))
            if not h:
                dead = True
                break
            candidates.append(h)
        if dead:
            continue
        for choice in itertools.product(*candidates):
            amap = {c.identity[x]: d.identity[omap[x]] for x in objs}
            amap.update(dict(zip(non_id, choice)))
            ok = True
            for (g, f), comp in c.table.items():
                if d.table[(amap[g], amap[f])] != amap[comp]:
                    ok = False
                    break
            if ok:
                results.append(FunctorData(c, d, omap, amap, _validate=False))
    return results


def enumerate_nat_transfs(f: FunctorData, g: FunctorData,
                          bound: SearchBound = DEFAULT_BOUND):
    """All natural transformations f => g, ordered by component choice."""
    if f.source != g.source or f.target != g.target:
        raise TypeMismatch("functors are not parallel")
    _check_bound(f.source, f.target, bound)
    c, d = f.source, f.target
    objs = sorted(c.objects)
    candidates = []
    for x in objs:
        h = sorted(d.hom(f.omap[x], g.omap[x]))
        if not h:
            return []
        candidates.append(h)
    results = []
    for choice in itertools.product(*candidates):
        comps = dict(zip(objs, choice))
        ok = True
        for aid, a in c.arrows.items():
            if d.table[(comps[a.dst], f.amap[aid])] != d.table[(g.amap[aid], comps[a.src])]:
                ok = False
                break
        if ok:
            results.append(NatTransfData(f, g, comps, _validate=False))
    return results
