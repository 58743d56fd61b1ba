"""Polynomial functors on finite sets.

A polynomial I <- E -> B -> J induces a functor sending an I-indexed family
to the J-indexed family of tagged tuples (constructor, slot assignment).
For endo-polynomials over a single index this file builds initial algebras
as stabilizing chains of finite tree sets (wtype_enumerate), presents
points of the final coalgebra as finite-state systems with bisimilarity
decided exactly by partition refinement, and checks two transport laws:
cartesian morphisms carry chain stages into chain stages and bisimilarity
into bisimilarity (span_uniformity_check), and the initial algebra of a
composite g.f rolls along f to the initial algebra of f.g
(freyd_dinat_check).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotCartesian, TypeMismatch, ValidationError


def _skey(x):
    return (x.__class__.__name__, repr(x))


POINT = "*"


class Polynomial:
    """A diagram I <- E -> B -> J of finite sets, maps total with the stated
    boundaries: s: E -> I picks each slot's input sort, p: E -> B groups the
    slots under their constructor, t: B -> J sorts the constructors."""

    def __init__(self, I, E, B, J, s, p, t, name="P", _validate=True):
        self.I = tuple(I)
        self.E = tuple(E)
        self.B = tuple(B)
        self.J = tuple(J)
        self.s = dict(s)
        self.p = dict(p)
        self.t = dict(t)
        self.name = name
        if _validate:
            self.validate()

    def validate(self):
        for (m, dom, cod, label) in [(self.s, self.E, self.I, "s"),
                                     (self.p, self.E, self.B, "p"),
                                     (self.t, self.B, self.J, "t")]:
            if set(m) != set(dom):
                raise ValidationError(f"{self.name}: {label} is not total")
            if not set(m.values()) <= set(cod):
                raise ValidationError(f"{self.name}: {label} leaves its codomain")

    def fiber(self, b):
        """Slots of constructor b, in canonical order."""
        return tuple(sorted((e for e in self.E if self.p[e] == b), key=_skey))

    def constructors_at(self, j):
        return tuple(sorted((b for b in self.B if self.t[b] == j), key=_skey))

    def is_endo(self):
        return len(self.I) == 1 and self.I == self.J

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (set(self.I), set(self.E), set(self.B), set(self.J),
                self.s, self.p, self.t) == \
               (set(other.I), set(other.E), set(other.B), set(other.J),
                other.s, other.p, other.t)

    def __repr__(self):
        return f"Polynomial({self.name}: |E|={len(self.E)} |B|={len(self.B)})"


def endo_poly(fibers, name="P") -> Polynomial:
    """Endo-polynomial over a point from constructor -> slot count."""
    B = tuple(sorted(fibers, key=_skey))
    E = tuple((b, k) for b in B for k in range(fibers[b]))
    return Polynomial((POINT,), E, B, (POINT,),
                      {e: POINT for e in E}, {e: e[0] for e in E},
                      {b: POINT for b in B}, name=name)


def constant_poly(labels, name="const") -> Polynomial:
    return endo_poly({b: 0 for b in labels}, name=name)


def stream_poly(labels, name="stream") -> Polynomial:
    return endo_poly({b: 1 for b in labels}, name=name)


def binary_tree_poly() -> Polynomial:
    return endo_poly({"leaf": 0, "node": 2}, name="bintree")


def identity_poly() -> Polynomial:
    return stream_poly([POINT], name="ident")


def is_span(P: Polynomial) -> bool:
    """p: E -> B a bijection: exactly one slot per constructor."""
    return len(P.E) == len(P.B) and set(P.p.values()) == set(P.B)


def is_monomial(P: Polynomial) -> bool:
    return len(P.B) == 1


def apply_polynomial(P: Polynomial, family: dict) -> dict:
    """The induced action on an I-indexed family of finite sets.

    Returns the J-indexed family of tagged tuples (b, ((slot, value), ...)),
    one value per slot of b drawn from the family at the slot's input sort.
    """
    if set(family) != set(P.I):
        raise ValidationError(f"family must be indexed exactly by {P.I}")
    out = {}
    for j in P.J:
        elems = []
        for b in P.constructors_at(j):
            slots = P.fiber(b)
            pools = [sorted(family[P.s[e]], key=_skey) for e in slots]
            for choice in itertools.product(*pools):
                elems.append((b, tuple(zip(slots, choice))))
        out[j] = tuple(sorted(elems, key=_skey))
    return out


# --- W-types: chain stages of tree sets -------------------------------------------

@dataclass(frozen=True)
class WTree:
    root: object
    children: tuple = ()

    def height(self):
        return 1 + max((t.height() for _, t in self.children), default=-1)

    def size(self):
        return 1 + sum(t.size() for _, t in self.children)


def _require_endo(P: Polynomial):
    if not P.is_endo():
        raise TypeMismatch(f"{P.name}: need an endo-polynomial over one index")


def _apply_trees(P: Polynomial, trees) -> frozenset:
    out = set()
    pool = sorted(trees, key=_skey)
    for b in P.B:
        slots = P.fiber(b)
        for choice in itertools.product(pool, repeat=len(slots)):
            out.add(WTree(b, tuple(zip(slots, choice))))
    return frozenset(out)


def wtype_stages(P: Polynomial, depth: int) -> list:
    """Stages 0..depth of the chain from the empty set; each stage contains
    the previous one."""
    _require_endo(P)
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    stages = [frozenset()]
    for _ in range(depth):
        stages.append(_apply_trees(P, stages[-1]))
    return stages


def wtype_enumerate(P: Polynomial, depth: int):
    """All trees of height < depth, plus whether the chain has stabilized
    there (stage depth equal to stage depth+1), making the stage the full
    initial algebra."""
    stage = wtype_stages(P, depth)[-1]
    stabilized = _apply_trees(P, stage) == stage
    return sorted(stage, key=_skey), stabilized


# --- M-types: finite-state coalgebra systems --------------------------------------

class CoalgebraSystem:
    """A finite structure map X -> P(X): per state a constructor and one
    successor state per slot of that constructor."""

    def __init__(self, poly: Polynomial, states, step, name="S", _validate=True):
        _require_endo(poly)
        self.poly = poly
        self.states = tuple(states)
        self.step = {x: (b, dict(nxt)) for x, (b, nxt) in dict(step).items()}
        self.name = name
        if _validate:
            self.validate()

    def validate(self):
        if set(self.step) != set(self.states):
            raise ValidationError(f"{self.name}: structure map is not total")
        for x, (b, nxt) in self.step.items():
            if b not in self.poly.B:
                raise ValidationError(f"{self.name}: unknown constructor at {x}")
            if set(nxt) != set(self.poly.fiber(b)):
                raise ValidationError(f"{self.name}: slots at {x} do not match "
                                      f"the fiber of {b}")
            if not set(nxt.values()) <= set(self.states):
                raise ValidationError(f"{self.name}: successor out of range at {x}")

    def __repr__(self):
        return f"CoalgebraSystem({self.name}: {len(self.states)} states)"


def bisimilar(c1: CoalgebraSystem, c2: CoalgebraSystem, x1, x2) -> bool:
    """Exact bisimilarity across two systems, by partition refinement on the
    disjoint union of their state sets."""
    if c1.poly != c2.poly:
        raise TypeMismatch("systems live over different polynomials")
    if x1 not in c1.states or x2 not in c2.states:
        raise ValidationError("state not in its system")
    tagged = [(0, x) for x in c1.states] + [(1, x) for x in c2.states]
    systems = (c1, c2)

    def observe(st):
        tag, x = st
        b, nxt = systems[tag].step[x]
        return b, {e: (tag, v) for e, v in nxt.items()}

    block = {st: observe(st)[0] for st in tagged}
    for _ in range(len(tagged)):
        fresh = {}
        nxt_block = {}
        for st in tagged:
            b, succ = observe(st)
            sig = (b, tuple((e, block[succ[e]])
                            for e in sorted(succ, key=_skey)))
            nxt_block[st] = fresh.setdefault(sig, len(fresh))
        block = nxt_block
    return block[(0, x1)] == block[(1, x2)]


def mtype_unfold(c: CoalgebraSystem, x, depth: int):
    """Depth-bounded unfolding of a state: at depth 0 just the constructor,
    below that a tagged tuple of unfolded successors."""
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    b, nxt = c.step[x]
    if depth == 0:
        return b
    return (b, tuple((e, mtype_unfold(c, nxt[e], depth - 1))
                     for e in sorted(nxt, key=_skey)))


# --- cartesian morphisms -----------------------------------------------------------

class PolyMorphism:
    """A cartesian morphism between endo-polynomials: a constructor map
    forward and, per source constructor, a bijection from the target
    constructor's slots back onto the source constructor's slots.  The
    boundary conditions are validated, never inferred."""

    def __init__(self, source: Polynomial, target: Polynomial,
                 shape_map, slot_map, name="m", _validate=True):
        _require_endo(source)
        _require_endo(target)
        self.source = source
        self.target = target
        self.shape_map = dict(shape_map)
        self.slot_map = dict(slot_map)
        self.name = name
        if _validate:
            self.validate()

    def validate(self):
        if set(self.shape_map) != set(self.source.B):
            raise NotCartesian(f"{self.name}: constructor map is not total")
        if not set(self.shape_map.values()) <= set(self.target.B):
            raise NotCartesian(f"{self.name}: constructor image out of range")
        expected = {(b, e) for b in self.source.B
                    for e in self.target.fiber(self.shape_map[b])}
        if set(self.slot_map) != expected:
            raise NotCartesian(f"{self.name}: slot map domain mismatch")
        for b in self.source.B:
            image = [self.slot_map[(b, e)] for e in self.target.fiber(self.shape_map[b])]
            if any(self.source.p.get(e) != b for e in image):
                raise NotCartesian(f"{self.name}: slot square at {b} does not commute")
            if len(set(image)) != len(image) or set(image) != set(self.source.fiber(b)):
                raise NotCartesian(f"{self.name}: slot map at {b} is not a bijection")

    def on_tree(self, tree: WTree) -> WTree:
        kids = dict(tree.children)
        b2 = self.shape_map[tree.root]
        return WTree(b2, tuple((e, self.on_tree(kids[self.slot_map[(tree.root, e)]]))
                               for e in self.target.fiber(b2)))

    def on_system(self, c: CoalgebraSystem) -> CoalgebraSystem:
        if c.poly != self.source:
            raise TypeMismatch("system does not live over the morphism source")
        step = {}
        for x, (b, nxt) in c.step.items():
            b2 = self.shape_map[b]
            step[x] = (b2, {e: nxt[self.slot_map[(b, e)]]
                            for e in self.target.fiber(b2)})
        return CoalgebraSystem(self.target, c.states, step, name=f"{self.name}({c.name})")


def identity_poly_morphism(P: Polynomial) -> PolyMorphism:
    return PolyMorphism(P, P, {b: b for b in P.B},
                        {(b, e): e for b in P.B for e in P.fiber(b)},
                        name=f"1_{P.name}")


def _small_systems(P: Polynomial, max_states=2, cap=64):
    out = []
    for n in range(1, max_states + 1):
        states = tuple(range(n))
        per_state = []
        for b in P.B:
            slots = P.fiber(b)
            for succ in itertools.product(states, repeat=len(slots)):
                per_state.append((b, dict(zip(slots, succ))))
        for combo in itertools.product(per_state, repeat=n):
            out.append(CoalgebraSystem(P, states, dict(zip(states, combo)),
                                       name=f"gen{len(out)}", _validate=False))
            if len(out) >= cap:
                return out
    return out


def span_uniformity_check(morphism, f: Polynomial, g: Polynomial,
                          depth: int = 4, systems=None) -> dict:
    """Transport along a cartesian morphism: every stage of f's chain lands
    inside the same stage of g's chain, and bisimilar states stay bisimilar
    after relabeling a system along the morphism."""
    if not isinstance(morphism, PolyMorphism):
        shape_map, slot_map = morphism
        morphism = PolyMorphism(f, g, shape_map, slot_map)
    if morphism.source != f or morphism.target != g:
        raise TypeMismatch("morphism boundary does not match the polynomials")
    report = {"depth": depth, "w_ok": True, "w_counterexample": None,
              "m_ok": True, "m_counterexample": None}
    source_stages = wtype_stages(f, depth)
    target_stages = wtype_stages(g, depth)
    for d in range(depth + 1):
        for tree in source_stages[d]:
            if morphism.on_tree(tree) not in target_stages[d]:
                report["w_ok"] = False
                report["w_counterexample"] = (d, tree)
                break
        if not report["w_ok"]:
            break
    if systems is None:
        systems = _small_systems(f)
    report["systems_checked"] = len(systems)
    for c in systems:
        image = morphism.on_system(c)
        for x1, x2 in itertools.combinations(c.states, 2):
            if bisimilar(c, c, x1, x2) and not bisimilar(image, image, x1, x2):
                report["m_ok"] = False
                report["m_counterexample"] = (c.name, x1, x2)
                break
        if not report["m_ok"]:
            break
    report["holds"] = report["w_ok"] and report["m_ok"]
    return report


# --- rolling the composite ----------------------------------------------------------

def freyd_dinat_check(f: Polynomial, g: Polynomial, depth: int = 4) -> dict:
    """Stagewise transport of the g.f chain to the f.g chain.

    Writing T for the chain of X -> g(f(X)) and V for the chain of
    X -> f(g(X)), checks the interleaving V_d <= f(T_d) <= V_{d+1} at every
    stage, and once T stabilizes at carrier A that f(A) is a fixed point of
    f.g equal to V's stabilized value.  Without stabilization within the
    depth budget the interleaving alone is reported as a partial check.
    """
    _require_endo(f)
    _require_endo(g)
    t = [frozenset()]
    for _ in range(depth):
        t.append(_apply_trees(g, _apply_trees(f, t[-1])))
    v = [frozenset()]
    for _ in range(depth + 1):
        v.append(_apply_trees(f, _apply_trees(g, v[-1])))
    report = {"depth": depth, "sandwich_ok": True, "sandwich_counterexample": None,
              "stage_counts": {"composite_gf": tuple(len(s) for s in t[:depth + 1]),
                               "composite_fg": tuple(len(s) for s in v[:depth + 1])}}
    for d in range(depth + 1):
        image = _apply_trees(f, t[d])
        if not (v[d] <= image and image <= v[d + 1]):
            report["sandwich_ok"] = False
            report["sandwich_counterexample"] = d
            break
    stabilized_at = None
    for d in range(depth):
        if t[d] == t[d + 1]:
            stabilized_at = d
            break
    report["stabilized_at"] = stabilized_at
    if stabilized_at is None:
        report["partial"] = True
        report["holds"] = report["sandwich_ok"]
        return report
    report["partial"] = False
    carrier_image = _apply_trees(f, t[stabilized_at])
    report["fixed_point_ok"] = \
        _apply_trees(f, _apply_trees(g, carrier_image)) == carrier_image
    report["chains_agree"] = v[stabilized_at + 1] == carrier_image
    report["holds"] = (report["sandwich_ok"] and report["fixed_point_ok"]
                       and report["chains_agree"])
    return report
