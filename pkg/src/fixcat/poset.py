"""Finite pointed posets, monotone maps, and least-fixpoint machinery.

Endomaps get their least fixpoint two ways: direct iteration from bottom
(`kleene_star`) and evaluation of the canonical map out of the successor
chain-with-top at its top point (`bifree_star` via `mediating_map`).  The
chain-with-top itself stays symbolic: elements are ("fin", n) and ("top",),
and only the mediating map ever consumes them.

The lifting comonad (freshly added bottom) is spelled out far enough to
cross-check that composition of maps between the underlying posets agrees
with the explicit composite through lifted carriers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TypeMismatch, ValidationError


class PointedPoset:
    """A finite poset with a designated least element.

    Elements are arbitrary hashable values (strings in documents, tuples
    for internally built carriers).  `leq` is stored as a set of pairs and
    must be reflexive, antisymmetric, transitive, with bottom below all.
    """

    def __init__(self, elements, leq, bottom, name="P", _validate=True):
        self.name = name
        self.elements = tuple(elements)
        self.leq_pairs = frozenset(leq)
        self.bottom = bottom
        if _validate:
            problems = self.validate()
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def validate(self):
        problems = []
        elems = set(self.elements)
        if len(self.elements) != len(elems):
            problems.append("duplicate elements")
        if self.bottom not in elems:
            problems.append("bottom not an element")
        for (x, y) in self.leq_pairs:
            if x not in elems or y not in elems:
                problems.append(f"relation pair ({x!r},{y!r}) outside carrier")
        for x in elems:
            if (x, x) not in self.leq_pairs:
                problems.append(f"not reflexive at {x!r}")
            if (self.bottom, x) not in self.leq_pairs:
                problems.append(f"bottom not below {x!r}")
        for (x, y) in self.leq_pairs:
            if x != y and (y, x) in self.leq_pairs:
                problems.append(f"antisymmetry fails on {x!r},{y!r}")
            for (y2, z) in self.leq_pairs:
                if y2 == y and (x, z) not in self.leq_pairs:
                    problems.append(f"transitivity fails on {x!r},{y!r},{z!r}")
        return problems

    def leq(self, x, y) -> bool:
        return (x, y) in self.leq_pairs

    def __eq__(self, other):
        if not isinstance(other, PointedPoset):
            return NotImplemented
        return (set(self.elements) == set(other.elements)
                and self.leq_pairs == other.leq_pairs
                and self.bottom == other.bottom)

    def __repr__(self):
        return f"PointedPoset({self.name}: {len(self.elements)} elements)"


class MonotoneMap:
    """A monotone map between pointed posets.

    `strict` is a declared flag: construction rejects a strict-flagged map
    that fails to send bottom to bottom.  Equality compares boundaries and
    the assignment only; strictness of an assignment can always be re-tested
    with `is_bottom_preserving`.
    """

    def __init__(self, source: PointedPoset, target: PointedPoset, assignment,
                 strict=False, name="f", _validate=True):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.strict = strict
        self.name = name
        if _validate:
            problems = self.validate()
            if problems:
                raise ValidationError(f"{name}: " + "; ".join(problems))

    def validate(self):
        problems = []
        for x in self.source.elements:
            if x not in self.assignment:
                problems.append(f"no image for {x!r}")
            elif self.assignment[x] not in set(self.target.elements):
                problems.append(f"image of {x!r} outside target")
        if problems:
            return problems
        for (x, y) in self.source.leq_pairs:
            if not self.target.leq(self.assignment[x], self.assignment[y]):
                problems.append(f"not monotone on {x!r} <= {y!r}")
        if self.strict and self.assignment[self.source.bottom] != self.target.bottom:
            problems.append("declared strict but bottom not preserved")
        return problems

    def __call__(self, x):
        return self.assignment[x]

    def is_bottom_preserving(self) -> bool:
        return self.assignment[self.source.bottom] == self.target.bottom

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assignment == other.assignment)

    def __repr__(self):
        return f"MonotoneMap({self.name}: {self.source.name}->{self.target.name})"


def identity_map(p: PointedPoset) -> MonotoneMap:
    return MonotoneMap(p, p, {x: x for x in p.elements}, strict=True,
                       name=f"id_{p.name}")


def compose_maps(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f; strict only when both factors are declared strict."""
    if f.target != g.source:
        raise TypeMismatch("map boundaries do not match")
    return MonotoneMap(f.source, g.target,
                       {x: g.assignment[f.assignment[x]] for x in f.source.elements},
                       strict=f.strict and g.strict,
                       name=f"{g.name}.{f.name}", _validate=False)


ONE_POINT = PointedPoset(["*"], [("*", "*")], "*", name="1")


def unique_map_to_one(p: PointedPoset) -> MonotoneMap:
    return MonotoneMap(p, ONE_POINT, {x: "*" for x in p.elements}, strict=True,
                       name=f"!{p.name}")


def point_map(p: PointedPoset, x) -> MonotoneMap:
    """The map from the one-point poset picking out x."""
    return MonotoneMap(ONE_POINT, p, {"*": x}, name=f"pt_{x!r}")


# ---------------------------------------------------------------------------
# Lifting comonad.

def _fresh_bottom(p: PointedPoset):
    k = 0
    elems = set(p.elements)
    while ("bot", k) in elems:
        k += 1
    return ("bot", k)


def lift(p: PointedPoset) -> PointedPoset:
    """Add one fresh element below everything; it becomes the new bottom."""
    fresh = _fresh_bottom(p)
    elems = (fresh,) + p.elements
    leq = set(p.leq_pairs) | {(fresh, x) for x in elems}
    return PointedPoset(elems, leq, fresh, name=f"lift({p.name})", _validate=False)


def lift_map(f: MonotoneMap) -> MonotoneMap:
    """Lifted maps send the fresh bottom to the fresh bottom."""
    ls, lt = lift(f.source), lift(f.target)
    assignment = {ls.bottom: lt.bottom}
    assignment.update(f.assignment)
    return MonotoneMap(ls, lt, assignment, strict=True,
                       name=f"lift({f.name})", _validate=False)


def counit(p: PointedPoset) -> MonotoneMap:
    """lift(p) -> p: collapse the fresh bottom onto p's own bottom."""
    lp = lift(p)
    assignment = {x: x for x in p.elements}
    assignment[lp.bottom] = p.bottom
    return MonotoneMap(lp, p, assignment, strict=True, name=f"eps_{p.name}")


def comult(p: PointedPoset) -> MonotoneMap:
    """lift(p) -> lift(lift(p)): fresh bottom to the doubly fresh bottom."""
    lp, llp = lift(p), lift(lift(p))
    assignment = {x: x for x in p.elements}
    assignment[lp.bottom] = llp.bottom
    return MonotoneMap(lp, llp, assignment, strict=True, name=f"delta_{p.name}")


@dataclass(frozen=True)
class ComonadStructure:
    """The lifting comonad, bundled: carrier/map action plus counit and comult."""

    on_objects = staticmethod(lift)
    on_maps = staticmethod(lift_map)
    counit = staticmethod(counit)
    comult = staticmethod(comult)


def strictify(f: MonotoneMap) -> MonotoneMap:
    """The strict extension lift(source) -> target sending fresh bottom to bottom."""
    ls = lift(f.source)
    assignment = {ls.bottom: f.target.bottom}
    assignment.update(f.assignment)
    return MonotoneMap(ls, f.target, assignment, strict=True,
                       name=f"strict({f.name})", _validate=False)


def cokleisli_compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """Composition in the co-Kleisli presentation.

    Under the isomorphism with plain monotone maps this is ordinary
    composition; tests cross-check it against the explicit composite
    strictify(g) . lift(strictify(f)) . comult restricted back to the carrier.
    """
    return compose_maps(g, f)


def cokleisli_compose_explicit(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """The same composite spelled out through the lifted carriers."""
    if f.target != g.source:
        raise TypeMismatch("map boundaries do not match")
    sf, sg = strictify(f), strictify(g)
    through = compose_maps(sg, compose_maps(lift_map(sf), comult(f.source)))
    assignment = {x: through.assignment[x] for x in f.source.elements}
    return MonotoneMap(f.source, g.target, assignment, name=f"{g.name}(.){f.name}")


# ---------------------------------------------------------------------------
# Fixpoints.

def kleene_star(f: MonotoneMap):
    """Least fixpoint of an endomap by iteration from bottom."""
    if f.source != f.target:
        raise TypeMismatch("kleene_star needs an endomap")
    x = f.source.bottom
    for _ in range(len(f.source.elements) + 1):
        nxt = f.assignment[x]
        if nxt == x:
            return x
        x = nxt
    raise ValidationError("iteration failed to stabilize; map is not monotone?")


def iterates(f: MonotoneMap):
    """The orbit bottom, f(bottom), ... up to and including stabilization."""
    x = f.source.bottom
    orbit = [x]
    for _ in range(len(f.source.elements) + 1):
        nxt = f.assignment[x]
        if nxt == x:
            return orbit
        orbit.append(nxt)
        x = nxt
    raise ValidationError("iteration failed to stabilize; map is not monotone?")


# Symbolic carrier: the successor chain with a top point.
def fin(n: int):
    return ("fin", n)


TOP = ("top",)


def omega_bar_leq(u, v) -> bool:
    if u == v:
        return True
    if v == TOP:
        return True
    if u == TOP:
        return False
    return u[1] <= v[1]


def omega_bar_successor(u):
    """The structure map on the symbolic chain: shift by one, fix top."""
    if u == TOP:
        return TOP
    return fin(u[1] + 1)


@dataclass
class MediatingMap:
    """The canonical map from the successor chain-with-top into an endomap's carrier.

    at_fin(n) is the n-th iterate of the endomap from bottom; at_top is the
    stabilized iterate.  Stored as the orbit, so every probe is exact.
    """

    endo: MonotoneMap
    orbit: list

    def at_fin(self, n: int):
        return self.orbit[min(n, len(self.orbit) - 1)]

    @property
    def at_top(self):
        return self.orbit[-1]

    def at(self, u):
        return self.at_top if u == TOP else self.at_fin(u[1])


def mediating_map(f: MonotoneMap) -> MediatingMap:
    """Build the mediating map and verify its defining square on probes.

    Probes cover ("fin", 0..|carrier|+1) and ("top",): monotonicity along the
    chain order and the square u(successor(x)) = f(u(x)); the fresh-bottom
    case of the structure map lands on the 0-th iterate, which is bottom.
    """
    if f.source != f.target:
        raise TypeMismatch("mediating_map needs an endomap")
    u = MediatingMap(f, iterates(f))
    p = f.source
    probes = [fin(n) for n in range(len(p.elements) + 2)] + [TOP]
    for a in probes:
        for b in probes:
            if omega_bar_leq(a, b) and not p.leq(u.at(a), u.at(b)):
                raise ValidationError(f"mediating map not monotone on {a} <= {b}")
    for a in probes:
        if u.at(omega_bar_successor(a)) != f.assignment[u.at(a)]:
            raise ValidationError(f"mediating square fails at probe {a}")
    if u.at(fin(0)) != p.bottom:
        raise ValidationError("mediating map must send the first stage to bottom")
    return u


def bifree_star(f: MonotoneMap):
    """Least fixpoint via the mediating map evaluated at the top point."""
    return mediating_map(f).at_top


def all_fixpoints(f: MonotoneMap):
    return [x for x in f.source.elements if f.assignment[x] == x]


# ---------------------------------------------------------------------------
# Binary products.

@dataclass
class PosetProduct:
    poset: PointedPoset
    left: PointedPoset
    right: PointedPoset
    proj1: MonotoneMap
    proj2: MonotoneMap

    def pair(self, f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
        """The unique map with proj1 . pair = f and proj2 . pair = g."""
        if f.source != g.source:
            raise TypeMismatch("pairing needs a common source")
        if f.target != self.left or g.target != self.right:
            raise TypeMismatch("pairing legs must land in the factors")
        return MonotoneMap(
            f.source, self.poset,
            {x: (f.assignment[x], g.assignment[x]) for x in f.source.elements},
            strict=f.strict and g.strict, name=f"<{f.name},{g.name}>",
            _validate=False)


def product(p: PointedPoset, q: PointedPoset) -> PosetProduct:
    """Componentwise-ordered pairs; projections are strict."""
    elems = [(a, b) for a in p.elements for b in q.elements]
    leq = {((a, b), (c, d)) for (a, b) in elems for (c, d) in elems
           if p.leq(a, c) and q.leq(b, d)}
    poset = PointedPoset(elems, leq, (p.bottom, q.bottom),
                         name=f"{p.name}x{q.name}", _validate=False)
    pi1 = MonotoneMap(poset, p, {(a, b): a for (a, b) in elems}, strict=True,
                      name="pi1", _validate=False)
    pi2 = MonotoneMap(poset, q, {(a, b): b for (a, b) in elems}, strict=True,
                      name="pi2", _validate=False)
    return PosetProduct(poset, p, q, pi1, pi2)


def swap(p: PointedPoset, q: PointedPoset) -> MonotoneMap:
    """The symmetry p x q -> q x p, i.e. the pairing of the two projections
    in swapped order."""
    pq, qp = product(p, q), product(q, p)
    return qp.pair(pq.proj2, pq.proj1)
