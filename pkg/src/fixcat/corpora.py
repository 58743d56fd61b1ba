"""Instance corpora feeding the law engine.

Exhaustive layers enumerate every 1-cell of a finitely enumerable fragment
at small size; seeded random layers add a fixed number of draws at the next
sizes up.  Relation carriers admit infinitely many multiset relations, so
their "exhaustive" layers are fragments: premises of size at most one,
plus an axiom-set/partial-graph fragment where the full space is too big.
Category instances are a fixed gallery of finite categories whose
endofunctor chains stabilize.

Corpus builders take (draws, seed); draws is the exact number of random
instances added on top of the exhaustive layer, split between the endo,
dinat-pair, and uniformity-square channels.
"""

import itertools
import random

from . import cat, poset, rel
from .laws import Corpus, ThinCell

TRIPLE_CAP = 900        # dinat one-naturality triples per model
STACK_CAP = 400         # stacked uniformity squares per model
DERIVED_CAP = 200       # theta / transport / dinat-square channels per model


def _stride_sample(items, cap):
    """Deterministic spread sample: every k-th item, at most cap of them."""
    items = list(items)
    if len(items) <= cap:
        return items
    step = len(items) // cap + (1 if len(items) % cap else 0)
    return items[::step][:cap]


# ---------------------------------------------------------------------------
# Pointed posets.

def strict_orders_upto_iso(k):
    """One representative per isomorphism class of strict orders on range(k)."""
    if k == 0:
        return [frozenset()]
    idx = list(range(k))
    offdiag = [(i, j) for i in idx for j in idx if i != j]
    seen, reps = set(), []
    for bits in itertools.product((0, 1), repeat=len(offdiag)):
        sel = frozenset(p for p, keep in zip(offdiag, bits) if keep)
        if any((j, i) in sel for (i, j) in sel):
            continue
        transitive = True
        for (i, j) in sel:
            for (j2, l) in sel:
                if j2 == j and (i, l) not in sel:
                    transitive = False
                    break
            if not transitive:
                break
        if not transitive:
            continue
        canon = min(tuple(sorted((p[i], p[j]) for (i, j) in sel))
                    for p in itertools.permutations(idx))
        if canon in seen:
            continue
        seen.add(canon)
        reps.append(sel)
    return reps


def pointed_posets(max_size=4):
    """Pointed posets with at most max_size elements, one per iso class.

    A pointed poset is a fresh bottom under an arbitrary poset, so the
    classes are exactly the strict-order classes one size down.
    """
    out = []
    for k in range(max_size):
        for idx, sel in enumerate(strict_orders_upto_iso(k)):
            elements = ["b"] + [f"e{i}" for i in range(k)]
            leq = {(x, x) for x in elements} | {("b", x) for x in elements} | \
                  {(f"e{i}", f"e{j}") for (i, j) in sel}
            out.append(poset.PointedPoset(elements, leq, "b",
                                          name=f"P{k + 1}_{idx}",
                                          _validate=False))
    return out


def monotone_maps(p, q):
    elems = p.elements
    pairs = [(x, y) for (x, y) in p.leq_pairs if x != y]
    out = []
    for images in itertools.product(q.elements, repeat=len(elems)):
        assignment = dict(zip(elems, images))
        if all(q.leq(assignment[x], assignment[y]) for (x, y) in pairs):
            out.append(poset.MonotoneMap(p, q, assignment, _validate=False))
    return out


def monotone_endomaps(p):
    return monotone_maps(p, p)


def strict_monotone_maps(p, q):
    return [m for m in monotone_maps(p, q) if m.is_bottom_preserving()]


def random_pointed_poset(rng, size, name):
    k = size - 1
    up = set()
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.4:
                up.add((i, j))
    changed = True
    while changed:
        changed = False
        for (i, j) in list(up):
            for (j2, l) in list(up):
                if j2 == j and (i, l) not in up:
                    up.add((i, l))
                    changed = True
    elements = ["b"] + [f"e{i}" for i in range(k)]
    leq = {(x, x) for x in elements} | {("b", x) for x in elements} | \
          {(f"e{i}", f"e{j}") for (i, j) in up}
    return poset.PointedPoset(elements, leq, "b", name=name, _validate=False)


def random_monotone_map(rng, p, q, tries=300):
    pairs = [(x, y) for (x, y) in p.leq_pairs if x != y]
    for _ in range(tries):
        assignment = {x: rng.choice(q.elements) for x in p.elements}
        if all(q.leq(assignment[x], assignment[y]) for (x, y) in pairs):
            return poset.MonotoneMap(p, q, assignment, _validate=False)
    return poset.MonotoneMap(p, q, {x: q.bottom for x in p.elements},
                             _validate=False)


def random_monotone_endomap(rng, p, tries=300):
    return random_monotone_map(rng, p, p, tries=tries)


def relabeled_poset_iso(p, tag):
    """A renamed copy of p with the renaming iso and its inverse."""
    mapping = {x: f"{tag}{i}" for i, x in enumerate(p.elements)}
    q = poset.PointedPoset(
        [mapping[x] for x in p.elements],
        {(mapping[x], mapping[y]) for (x, y) in p.leq_pairs},
        mapping[p.bottom], name=f"{p.name}~{tag}", _validate=False)
    fwd = poset.MonotoneMap(p, q, mapping, _validate=False)
    back = poset.MonotoneMap(q, p, {v: k for k, v in mapping.items()},
                             _validate=False)
    return q, fwd, back


def poset_conjugation_square(f, tag):
    """s f s^-1 on a renamed copy; the renaming iso is strict."""
    _, s, s_inv = relabeled_poset_iso(f.source, tag)
    g = poset.compose_maps(poset.compose_maps(s, f), s_inv)
    gamma = ThinCell(poset.compose_maps(s, f), poset.compose_maps(g, s))
    return (s, f, g, gamma)


def poset_closure_square(g):
    """Restrict g to the orbit of bottom; the inclusion intertwines them."""
    b = g.source
    orbit = {b.bottom}
    x = b.bottom
    while g(x) not in orbit:
        x = g(x)
        orbit.add(x)
    elems = [e for e in b.elements if e in orbit]
    sub = poset.PointedPoset(
        elems, {(u, v) for (u, v) in b.leq_pairs if u in orbit and v in orbit},
        b.bottom, name=f"{b.name}|orb", _validate=False)
    f = poset.MonotoneMap(sub, sub, {e: g(e) for e in elems}, _validate=False)
    s = poset.MonotoneMap(sub, b, {e: e for e in elems}, _validate=False)
    gamma = ThinCell(poset.compose_maps(s, f), poset.compose_maps(g, s))
    return (s, f, g, gamma)


def _poset_square_search(posets, maps_of):
    """All (s, f, g) with s strict and s.f == g.s over the given posets."""
    squares = []
    for a in posets:
        endos_a = maps_of(a, a)
        for b in posets:
            endos_b = maps_of(b, b)
            for s in maps_of(a, b):
                if not s.is_bottom_preserving():
                    continue
                left = {}
                for g in endos_b:
                    key = tuple(sorted(
                        poset.compose_maps(g, s).assignment.items()))
                    left.setdefault(key, []).append(g)
                for f in endos_a:
                    sf = poset.compose_maps(s, f)
                    key = tuple(sorted(sf.assignment.items()))
                    for g in left.get(key, ()):
                        gamma = ThinCell(sf, poset.compose_maps(g, s))
                        squares.append((s, f, g, gamma))
    return squares


def poset_corpus(draws=1000, seed=0):
    posets = pointed_posets(3)
    maps_cache = {}

    def maps_of(p, q):
        key = (id(p), id(q))
        if key not in maps_cache:
            maps_cache[key] = monotone_maps(p, q)
        return maps_cache[key]

    c = Corpus()
    for p in posets:
        c.endos.extend(maps_of(p, p))
    c.endo_cells = [ThinCell(f, f) for f in c.endos]
    for a in posets:
        for b in posets:
            for f in maps_of(a, b):
                for g in maps_of(b, a):
                    c.dinat_pairs.append((f, g))
    triples = []
    for a in posets:
        for b in posets:
            for cc in posets:
                triples.extend(itertools.product(
                    maps_of(a, b), maps_of(b, cc), maps_of(cc, a)))
    c.dinat_triples = _stride_sample(triples, TRIPLE_CAP)
    c.dinat_cells = [(ThinCell(f, f), g)
                     for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP)]
    c.unif_squares = _poset_square_search(posets, maps_of)

    by_middle = {}
    for sq in c.unif_squares:
        s, f, g, gamma = sq
        key = (id(s.target), tuple(sorted(g.assignment.items())))
        by_middle.setdefault(key, []).append(sq)
    stacks = []
    for sq2 in c.unif_squares:
        r, g2, h, rho = sq2
        key = (id(r.source), tuple(sorted(g2.assignment.items())))
        stacks.extend((sq1, sq2) for sq1 in by_middle.get(key, ()))
    c.unif_stacks = _stride_sample(stacks, STACK_CAP)

    sample_squares = _stride_sample(c.unif_squares, DERIVED_CAP)
    c.unif_thetas = [(ThinCell(s, s), f, g, gamma, gamma)
                     for (s, f, g, gamma) in sample_squares]
    c.unif_transports = [(s, ThinCell(f, f), ThinCell(g, g), gamma, gamma)
                         for (s, f, g, gamma) in sample_squares]
    for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP):
        ida = poset.identity_map(f.source)
        idb = poset.identity_map(f.target)
        c.unif_dinat.append(
            (ida, idb, f, g, f, g,
             ThinCell(poset.compose_maps(idb, f), poset.compose_maps(f, ida)),
             ThinCell(poset.compose_maps(ida, g), poset.compose_maps(g, idb))))

    rng = random.Random(seed)
    n_endo = (draws + 2) // 3
    n_pair = (draws + 1) // 3
    n_square = draws // 3
    for i in range(n_endo):
        p = random_pointed_poset(rng, 4 + i % 2, f"R{i}")
        c.endos.append(random_monotone_endomap(rng, p))
    for i in range(n_pair):
        a = random_pointed_poset(rng, 4 + i % 2, f"Ra{i}")
        b = random_pointed_poset(rng, 5 - i % 2, f"Rb{i}")
        c.dinat_pairs.append((random_monotone_map(rng, a, b),
                              random_monotone_map(rng, b, a)))
    for i in range(n_square):
        p = random_pointed_poset(rng, 4 + i % 2, f"Rs{i}")
        g = random_monotone_endomap(rng, p)
        if i % 2 == 0:
            c.unif_squares.append(poset_conjugation_square(g, f"c{i}_"))
        else:
            c.unif_squares.append(poset_closure_square(g))
    return c


# ---------------------------------------------------------------------------
# Multiset relations.

def rel_carrier(n, prefix="r"):
    return tuple(f"{prefix}{i}" for i in range(n))


def rel_fragment_endos(carrier):
    """Every endo-relation whose premises have size at most one."""
    prems = [rel.EMPTY_MSET] + [rel.mset([a]) for a in carrier]
    slots = [(m, b) for m in prems for b in carrier]
    out = []
    for bits in itertools.product((0, 1), repeat=len(slots)):
        pairs = {s for s, keep in zip(slots, bits) if keep}
        out.append(rel.MultisetRel(carrier, carrier, pairs, _validate=False))
    return out


def rel_partial_graphs(a, b):
    """At most one pair per output, premise empty or a singleton."""
    opts = [None, rel.EMPTY_MSET] + [rel.mset([x]) for x in a]
    out = []
    for combo in itertools.product(opts, repeat=len(b)):
        pairs = {(m, y) for m, y in zip(combo, b) if m is not None}
        out.append(rel.MultisetRel(a, b, pairs, _validate=False))
    return out


def rel_function_rels(a, b):
    out = []
    for images in itertools.product(b, repeat=len(a)):
        table = dict(zip(a, images))
        out.append(rel.mrel_from_function(a, b, lambda x, t=table: t[x]))
    return out


def random_mrel(rng, a, b):
    pairs = set()
    for y in b:
        for _ in range(rng.choice((0, 1, 1, 2))):
            size = rng.choice((0, 1, 1, 2))
            pairs.add((rel.mset(rng.choice(a) for _ in range(size)), y))
    return rel.MultisetRel(a, b, pairs, _validate=False)


def rel_conjugation_square(rng, f, prefix):
    a = f.source
    b = rel_carrier(len(a), prefix)
    perm = list(b)
    rng.shuffle(perm)
    table = dict(zip(a, perm))
    s = rel.mrel_from_function(a, b, lambda x: table[x])
    back = {v: k for k, v in table.items()}
    s_inv = rel.mrel_from_function(b, a, lambda y: back[y])
    g = rel.mrel_compose(rel.mrel_compose(s, f), s_inv)
    gamma = ThinCell(rel.mrel_compose(s, f), rel.mrel_compose(g, s))
    return (s, f, g, gamma)


def rel_closure_square(g):
    """Restrict g to its derivation-closed set of derivable elements."""
    closed = frozenset()
    for _ in range(len(g.source) + 1):
        closed = frozenset(b for (m, b) in g.pairs
                           if rel.mset_support(m) <= closed) | closed
    a = tuple(x for x in g.source if x in closed)
    f = rel.MultisetRel(a, a, {(m, b) for (m, b) in g.pairs
                               if rel.mset_support(m) <= closed and b in closed},
                        _validate=False)
    s = rel.MultisetRel(a, g.source, {(rel.mset([x]), x) for x in a},
                        _validate=False)
    gamma = ThinCell(rel.mrel_compose(s, f), rel.mrel_compose(g, s))
    return (s, f, g, gamma)


def _rel_square_search(carriers, endo_frag):
    squares = []
    for a in carriers:
        fs = endo_frag(a)
        for b in carriers:
            gs = endo_frag(b)
            for s in rel_function_rels(a, b):
                left = {}
                for g in gs:
                    left.setdefault(rel.mrel_compose(g, s).pairs, []).append(g)
                for f in fs:
                    sf = rel.mrel_compose(s, f)
                    for g in left.get(sf.pairs, ()):
                        squares.append((s, f, g,
                                        ThinCell(sf, rel.mrel_compose(g, s))))
    return squares


def rel_corpus(draws=1000, seed=0):
    carriers = [rel_carrier(n) for n in (1, 2, 3)]
    c = Corpus()
    for a in carriers:
        c.endos.extend(rel_fragment_endos(a))
    c.endo_cells = [ThinCell(f, f) for f in c.endos]
    for a in carriers:
        for b in carriers:
            for f in rel_partial_graphs(a, b):
                for g in rel_partial_graphs(b, a):
                    c.dinat_pairs.append((f, g))
    triples = []
    for a in carriers:
        graphs = rel_partial_graphs(a, a)
        triples.extend(itertools.product(graphs, graphs, graphs))
    c.dinat_triples = _stride_sample(triples, TRIPLE_CAP)
    c.dinat_cells = [(ThinCell(f, f), g)
                     for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP)]
    c.unif_squares = _rel_square_search(
        carriers, lambda a: rel_partial_graphs(a, a))

    by_middle = {}
    for sq in c.unif_squares:
        s, f, g, gamma = sq
        by_middle.setdefault((frozenset(s.target), g.pairs), []).append(sq)
    stacks = []
    for sq2 in c.unif_squares:
        r, g2, h, rho = sq2
        stacks.extend((sq1, sq2)
                      for sq1 in by_middle.get((frozenset(r.source), g2.pairs), ()))
    c.unif_stacks = _stride_sample(stacks, STACK_CAP)

    sample_squares = _stride_sample(c.unif_squares, DERIVED_CAP)
    c.unif_thetas = [(ThinCell(s, s), f, g, gamma, gamma)
                     for (s, f, g, gamma) in sample_squares]
    c.unif_transports = [(s, ThinCell(f, f), ThinCell(g, g), gamma, gamma)
                         for (s, f, g, gamma) in sample_squares]
    for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP):
        ida = rel.mrel_identity(f.source)
        idb = rel.mrel_identity(f.target)
        c.unif_dinat.append(
            (ida, idb, f, g, f, g,
             ThinCell(rel.mrel_compose(idb, f), rel.mrel_compose(f, ida)),
             ThinCell(rel.mrel_compose(ida, g), rel.mrel_compose(g, idb))))

    rng = random.Random(seed)
    big = {4: rel_carrier(4), 5: rel_carrier(5)}
    n_endo = (draws + 2) // 3
    n_pair = (draws + 1) // 3
    n_square = draws // 3
    for i in range(n_endo):
        a = big[4 + i % 2]
        c.endos.append(random_mrel(rng, a, a))
    for i in range(n_pair):
        a, b = big[4 + i % 2], big[5 - i % 2]
        c.dinat_pairs.append((random_mrel(rng, a, b), random_mrel(rng, b, a)))
    for i in range(n_square):
        a = big[4 + i % 2]
        g = random_mrel(rng, a, a)
        if i % 2 == 0:
            c.unif_squares.append(rel_conjugation_square(rng, g, f"q{i}_"))
        else:
            c.unif_squares.append(rel_closure_square(g))
    return c


# ---------------------------------------------------------------------------
# Ideal relations over preorders.

def preorders_upto_iso(max_size=3):
    out = []
    for k in range(1, max_size + 1):
        idx = list(range(k))
        offdiag = [(i, j) for i in idx for j in idx if i != j]
        seen = set()
        count = 0
        for bits in itertools.product((0, 1), repeat=len(offdiag)):
            sel = {p for p, keep in zip(offdiag, bits) if keep}
            full = sel | {(i, i) for i in idx}
            ok = all((i, l) in full
                     for (i, j) in full for (j2, l) in full if j2 == j)
            if not ok:
                continue
            canon = min(tuple(sorted((p[i], p[j]) for (i, j) in sel))
                        for p in itertools.permutations(idx))
            if canon in seen:
                continue
            seen.add(canon)
            elements = [f"s{i}" for i in idx]
            leq = {(f"s{i}", f"s{j}") for (i, j) in full}
            out.append(rel.Preorder(elements, leq, name=f"Q{k}_{count}",
                                    _validate=False))
            count += 1
    return out


def scott_fragment_endos(pre):
    """Premise-size <= 1 endos: the full space at size <= 2, the axiom-set
    by partial-graph fragment at size 3 (the full space is out of reach)."""
    elems = pre.elements
    seen, out = set(), []

    def push(pairs):
        r = rel.IdealRel(pre, pre, pairs, _validate=False)
        if r.pairs not in seen:
            seen.add(r.pairs)
            out.append(r)

    if len(elems) <= 2:
        slots = [(u, b) for u in [()] + [(x,) for x in elems] for b in elems]
        for bits in itertools.product((0, 1), repeat=len(slots)):
            push({s for s, keep in zip(slots, bits) if keep})
    else:
        opts = [None, ()] + [(x,) for x in elems]
        axiom_sets = itertools.chain.from_iterable(
            itertools.combinations(elems, r) for r in range(len(elems) + 1))
        for axioms in axiom_sets:
            ax = {((), b) for b in axioms}
            for combo in itertools.product(opts, repeat=len(elems)):
                push(ax | {(u, b) for u, b in zip(combo, elems)
                           if u is not None})
    return out


def scott_partial_graphs(a, b):
    opts = [None, ()] + [(x,) for x in a.elements]
    seen, out = set(), []
    for combo in itertools.product(opts, repeat=len(b.elements)):
        pairs = {(u, y) for u, y in zip(combo, b.elements) if u is not None}
        r = rel.IdealRel(a, b, pairs, _validate=False)
        if r.pairs not in seen:
            seen.add(r.pairs)
            out.append(r)
    return out


def random_preorder(rng, size, name):
    elems = [f"s{i}" for i in range(size)]
    leq = {(x, x) for x in elems}
    for x in elems:
        for y in elems:
            if x != y and rng.random() < 0.3:
                leq.add((x, y))
    changed = True
    while changed:
        changed = False
        for (x, y) in list(leq):
            for (y2, z) in list(leq):
                if y2 == y and (x, z) not in leq:
                    leq.add((x, z))
                    changed = True
    return rel.Preorder(elems, leq, name=name, _validate=False)


def random_ideal_rel(rng, a, b):
    pairs = set()
    for y in b.elements:
        for _ in range(rng.choice((0, 1, 1, 2))):
            size = rng.choice((0, 1, 1, 2))
            pairs.add((rel.uset(rng.choice(a.elements) for _ in range(size)), y))
    return rel.IdealRel(a, b, pairs, _validate=False)


def scott_relabel_iso(pre, tag):
    mapping = {x: f"{tag}{i}" for i, x in enumerate(pre.elements)}
    q = rel.Preorder([mapping[x] for x in pre.elements],
                     {(mapping[x], mapping[y]) for (x, y) in pre.leq_pairs},
                     name=f"{pre.name}~{tag}", _validate=False)
    fwd = rel.scott_from_function(pre, q, lambda x: mapping[x])
    back_map = {v: k for k, v in mapping.items()}
    back = rel.scott_from_function(q, pre, lambda y: back_map[y])
    return q, fwd, back


def scott_conjugation_square(f, tag):
    _, s, s_inv = scott_relabel_iso(f.source, tag)
    g = rel.scott_compose(rel.scott_compose(s, f), s_inv)
    gamma = ThinCell(rel.scott_compose(s, f), rel.scott_compose(g, s))
    return (s, f, g, gamma)


def scott_closure_square(g):
    """Restrict g to its star set; that set is derivation and down closed."""
    pre = g.source
    closed = rel.scott_star_set(g)
    elems = tuple(x for x in pre.elements if x in closed)
    sub = rel.Preorder(elems, {(u, v) for (u, v) in pre.leq_pairs
                               if u in closed and v in closed},
                       name=f"{pre.name}|cl", _validate=False)
    f = rel.IdealRel(sub, sub, {(u, b) for (u, b) in g.pairs
                                if set(u) <= closed and b in closed},
                     _validate=False)
    s = rel.IdealRel(sub, pre, {((x,), x) for x in elems}, _validate=False)
    gamma = ThinCell(rel.scott_compose(s, f), rel.scott_compose(g, s))
    return (s, f, g, gamma)


def _scott_function_rels(pre):
    """Arbitrary self-maps as singleton-premise relations (not nec. monotone)."""
    elems = pre.elements
    seen, out = set(), []
    for images in itertools.product(elems, repeat=len(elems)):
        pairs = {((x,), y) for x, y in zip(elems, images)}
        r = rel.IdealRel(pre, pre, pairs, _validate=False)
        if r.pairs not in seen:
            seen.add(r.pairs)
            out.append(r)
    return out


def scott_corpus(draws=1000, seed=0):
    pres = preorders_upto_iso(3)
    small = [p for p in pres if len(p.elements) <= 2]
    big3 = [p for p in pres if len(p.elements) == 3]
    c = Corpus()
    for p in pres:
        c.endos.extend(scott_fragment_endos(p))
    c.endo_cells = [ThinCell(f, f)
                    for f in _stride_sample(c.endos, 4 * DERIVED_CAP)]
    for a in small:
        for b in small:
            for f in scott_partial_graphs(a, b):
                for g in scott_partial_graphs(b, a):
                    c.dinat_pairs.append((f, g))
    for p in big3:
        fns = _scott_function_rels(p)
        c.dinat_pairs.extend(itertools.product(fns, fns))
    triples = []
    for p in small:
        graphs = scott_partial_graphs(p, p)
        triples.extend(itertools.product(graphs, graphs, graphs))
    c.dinat_triples = _stride_sample(triples, TRIPLE_CAP)
    c.dinat_cells = [(ThinCell(f, f), g)
                     for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP)]

    squares = []
    for a in small:
        frag_a = scott_fragment_endos(a)
        for b in small:
            frag_b = scott_fragment_endos(b)
            for s in scott_partial_graphs(a, b):
                if not all(len(u) == 1 for (u, _) in s.pairs):
                    continue
                left = {}
                for g in frag_b:
                    left.setdefault(rel.scott_compose(g, s).pairs,
                                    []).append(g)
                for f in frag_a:
                    sf = rel.scott_compose(s, f)
                    for g in left.get(sf.pairs, ()):
                        squares.append((s, f, g,
                                        ThinCell(sf, rel.scott_compose(g, s))))
    for p in big3:
        for f in _stride_sample(_scott_function_rels(p), 40):
            squares.append(scott_conjugation_square(f, f"t{len(squares)}_"))
    c.unif_squares = squares

    by_middle = {}
    for sq in squares:
        s, f, g, gamma = sq
        key = (frozenset(s.target.elements), s.target.leq_pairs, g.pairs)
        by_middle.setdefault(key, []).append(sq)
    stacks = []
    for sq2 in squares:
        r, g2, h, rho = sq2
        key = (frozenset(r.source.elements), r.source.leq_pairs, g2.pairs)
        stacks.extend((sq1, sq2) for sq1 in by_middle.get(key, ()))
    c.unif_stacks = _stride_sample(stacks, STACK_CAP)

    sample_squares = _stride_sample(squares, DERIVED_CAP)
    c.unif_thetas = [(ThinCell(s, s), f, g, gamma, gamma)
                     for (s, f, g, gamma) in sample_squares]
    c.unif_transports = [(s, ThinCell(f, f), ThinCell(g, g), gamma, gamma)
                         for (s, f, g, gamma) in sample_squares]
    for (f, g) in _stride_sample(c.dinat_pairs, DERIVED_CAP):
        ida = rel.scott_identity(f.source)
        idb = rel.scott_identity(f.target)
        c.unif_dinat.append(
            (ida, idb, f, g, f, g,
             ThinCell(rel.scott_compose(idb, f), rel.scott_compose(f, ida)),
             ThinCell(rel.scott_compose(ida, g), rel.scott_compose(g, idb))))

    rng = random.Random(seed)
    n_endo = (draws + 2) // 3
    n_pair = (draws + 1) // 3
    n_square = draws // 3
    for i in range(n_endo):
        p = random_preorder(rng, 4 + i % 2, f"R{i}")
        c.endos.append(random_ideal_rel(rng, p, p))
    for i in range(n_pair):
        a = random_preorder(rng, 4 + i % 2, f"Ra{i}")
        b = random_preorder(rng, 5 - i % 2, f"Rb{i}")
        c.dinat_pairs.append((random_ideal_rel(rng, a, b),
                              random_ideal_rel(rng, b, a)))
    for i in range(n_square):
        p = random_preorder(rng, 4 + i % 2, f"Rs{i}")
        g = random_ideal_rel(rng, p, p)
        if i % 2 == 0:
            c.unif_squares.append(scott_conjugation_square(g, f"c{i}_"))
        else:
            c.unif_squares.append(scott_closure_square(g))
    return c


# ---------------------------------------------------------------------------
# Finite categories.

def thin_cat(name, elements, strict_pairs):
    # strict_pairs must already be transitively closed
    order = set(strict_pairs) | {(x, x) for x in elements}
    arrows, identity = [], {}
    for x in elements:
        for y in elements:
            if (x, y) in order:
                aid = f"id_{x}" if x == y else f"{x}to{y}"
                arrows.append(cat.Arrow(aid, x, y))
                if x == y:
                    identity[x] = aid

    def arrow_id(x, y):
        return identity[x] if x == y else f"{x}to{y}"

    table = {}
    for a in arrows:
        for b in arrows:
            if a.dst == b.src:
                table[(b.id, a.id)] = arrow_id(a.src, b.dst)
    return cat.FinCategory(elements, arrows, identity, table, name=name)


def thin_functor(c, d, omap, name="F"):
    amap = {}
    for aid, a in c.arrows.items():
        x, y = omap[a.src], omap[a.dst]
        amap[aid] = d.identity[x] if x == y else f"{x}to{y}"
    return cat.FunctorData(c, d, dict(omap), amap, name=name)


TWO = thin_cat("two", ["0", "1"], {("0", "1")})
THREE = thin_cat("three", ["0", "1", "2"],
                 {("0", "1"), ("1", "2"), ("0", "2")})
JOIN_ONE = thin_functor(TWO, TWO, {"0": "1", "1": "1"}, name="join1")
SUCC3 = thin_functor(THREE, THREE, {"0": "1", "1": "2", "2": "2"}, name="succ")

WALK = cat.FinCategory(
    ["0", "x", "y"],
    [cat.Arrow("id_0", "0", "0"), cat.Arrow("id_x", "x", "x"),
     cat.Arrow("id_y", "y", "y"),
     cat.Arrow("0x", "0", "x"), cat.Arrow("0y", "0", "y"),
     cat.Arrow("i", "x", "y"), cat.Arrow("j", "y", "x")],
    {"0": "id_0", "x": "id_x", "y": "id_y"},
    {("id_0", "id_0"): "id_0", ("0x", "id_0"): "0x", ("0y", "id_0"): "0y",
     ("id_x", "0x"): "0x", ("i", "0x"): "0y",
     ("id_y", "0y"): "0y", ("j", "0y"): "0x",
     ("id_x", "id_x"): "id_x", ("i", "id_x"): "i",
     ("id_y", "id_y"): "id_y", ("j", "id_y"): "j",
     ("id_y", "i"): "i", ("j", "i"): "id_x",
     ("id_x", "j"): "j", ("i", "j"): "id_y"},
    name="walk")

F_WALK = cat.FunctorData(
    WALK, WALK, {"0": "x", "x": "y", "y": "x"},
    {"id_0": "id_x", "id_x": "id_y", "id_y": "id_x",
     "0x": "i", "0y": "id_x", "i": "j", "j": "i"},
    name="cycle")

WALK_SWAP = cat.FunctorData(
    WALK, WALK, {"0": "0", "x": "y", "y": "x"},
    {"id_0": "id_0", "id_x": "id_y", "id_y": "id_x",
     "0x": "0y", "0y": "0x", "i": "j", "j": "i"},
    name="swapxy")

AUT = cat.FinCategory(
    ["0", "z"],
    [cat.Arrow("id_0", "0", "0"), cat.Arrow("u", "0", "z"),
     cat.Arrow("e", "z", "z"), cat.Arrow("id_z", "z", "z")],
    {"0": "id_0", "z": "id_z"},
    {("id_0", "id_0"): "id_0", ("u", "id_0"): "u",
     ("e", "u"): "u", ("id_z", "u"): "u",
     ("e", "e"): "id_z", ("id_z", "e"): "e", ("e", "id_z"): "e",
     ("id_z", "id_z"): "id_z"},
    name="aut")

F_AUT = cat.FunctorData(AUT, AUT, {"0": "z", "z": "z"},
                        {"id_0": "id_z", "u": "e", "e": "id_z",
                         "id_z": "id_z"},
                        name="twist")

E_CELL = cat.NatTransfData(F_AUT, F_AUT, {"0": "e", "z": "e"}, name="twist_e")

IDEM = cat.FinCategory(
    ["0", "w"],
    [cat.Arrow("id_0", "0", "0"), cat.Arrow("u", "0", "w"),
     cat.Arrow("p", "w", "w"), cat.Arrow("id_w", "w", "w")],
    {"0": "id_0", "w": "id_w"},
    {("id_0", "id_0"): "id_0", ("u", "id_0"): "u",
     ("p", "u"): "u", ("id_w", "u"): "u",
     ("p", "p"): "p", ("id_w", "p"): "p", ("p", "id_w"): "p",
     ("id_w", "id_w"): "id_w"},
    name="idem")

F_IDEM = cat.FunctorData(IDEM, IDEM, {"0": "w", "w": "w"},
                         {"id_0": "id_w", "u": "p", "p": "id_w",
                          "id_w": "id_w"},
                         name="collapse")

U23 = thin_functor(TWO, THREE, {"0": "0", "1": "2"}, name="skip1")
V32 = thin_functor(THREE, TWO, {"0": "0", "1": "1", "2": "1"}, name="clamp")
CONST2 = thin_functor(THREE, THREE, {"0": "2", "1": "2", "2": "2"},
                      name="const2")

S_X = cat.FunctorData(TWO, WALK, {"0": "0", "1": "x"},
                      {"id_0": "id_0", "id_1": "id_x", "0to1": "0x"},
                      name="pick_x")
S_Y = cat.FunctorData(TWO, WALK, {"0": "0", "1": "y"},
                      {"id_0": "id_0", "id_1": "id_y", "0to1": "0y"},
                      name="pick_y")
THETA_XY = cat.NatTransfData(S_X, S_Y, {"0": "id_0", "1": "i"}, name="steer")
COLLAPSE_X = cat.FunctorData(
    WALK, WALK, {"0": "x", "x": "x", "y": "x"},
    {"id_0": "id_x", "id_x": "id_x", "id_y": "id_x",
     "0x": "id_x", "0y": "id_x", "i": "id_x", "j": "id_x"},
    name="crush_x")


def cat_instances():
    """The fixed gallery: (label, category, endofunctor)."""
    return [("two/join1", TWO, JOIN_ONE),
            ("three/succ", THREE, SUCC3),
            ("walk/cycle", WALK, F_WALK),
            ("aut/twist", AUT, F_AUT),
            ("idem/collapse", IDEM, F_IDEM)]


def _ident_cell(f, g, name="sq"):
    # identity-component 2-cell between structurally equal composites
    comps = {x: f.target.identity[f.omap[x]] for x in f.source.objects}
    return cat.NatTransfData(f, g, comps, name=name)


def _id_square(ambient, f):
    s = cat.identity_functor(ambient)
    gamma = _ident_cell(cat.compose_functors(s, f),
                        cat.compose_functors(f, s))
    return (s, f, f, gamma)


def cat_corpus():
    c = Corpus()
    pools = []
    for label, ambient, end in cat_instances():
        pool = [cat.identity_functor(ambient), end]
        pools.append((ambient, pool))
        c.endos.extend(pool)
        c.endo_cells.extend(cat.identity_transf(f) for f in pool)
        c.dinat_pairs.extend(itertools.product(pool, pool))
        c.dinat_triples.extend(itertools.product(pool, pool, pool))
        c.dinat_cells.extend((cat.identity_transf(f), g)
                             for f in pool for g in pool)
        for f in pool:
            c.unif_squares.append(_id_square(ambient, f))
    c.endo_cells.append(E_CELL)
    c.dinat_cells.append((E_CELL, cat.identity_functor(AUT)))
    c.dinat_cells.append((E_CELL, F_AUT))
    c.dinat_pairs.append((U23, V32))
    c.dinat_pairs.append((V32, U23))
    c.dinat_triples.append((U23, V32, cat.identity_functor(TWO)))

    # conjugation of the walking-iso cycle by the x/y swap automorphism
    g1 = cat.compose_functors(cat.compose_functors(WALK_SWAP, F_WALK),
                              WALK_SWAP)
    c.unif_squares.append(
        (WALK_SWAP, F_WALK, g1,
         _ident_cell(cat.compose_functors(WALK_SWAP, F_WALK),
                     cat.compose_functors(g1, WALK_SWAP))))
    # strict inclusion of the 2-chain into the 3-chain
    c.unif_squares.append(
        (U23, JOIN_ONE, CONST2,
         _ident_cell(cat.compose_functors(U23, JOIN_ONE),
                     cat.compose_functors(CONST2, U23))))
    # non-identity square cell on the involution category
    id_aut = cat.identity_functor(AUT)
    e_square = cat.NatTransfData(cat.compose_functors(id_aut, F_AUT),
                                 cat.compose_functors(F_AUT, id_aut),
                                 {"0": "e", "z": "e"}, name="twist_sq")
    c.unif_squares.append((id_aut, F_AUT, F_AUT, e_square))

    for ambient, pool in pools:
        for f in pool:
            sq = _id_square(ambient, f)
            c.unif_stacks.append((sq, _id_square(ambient, f)))
    c.unif_stacks.append((
        (WALK_SWAP, F_WALK, g1,
         _ident_cell(cat.compose_functors(WALK_SWAP, F_WALK),
                     cat.compose_functors(g1, WALK_SWAP))),
        (WALK_SWAP, g1, F_WALK,
         _ident_cell(cat.compose_functors(WALK_SWAP, g1),
                     cat.compose_functors(F_WALK, WALK_SWAP)))))
    aut_sq = (id_aut, F_AUT, F_AUT,
              cat.NatTransfData(cat.compose_functors(id_aut, F_AUT),
                                cat.compose_functors(F_AUT, id_aut),
                                {"0": "e", "z": "e"}, name="twist_sq"))
    c.unif_stacks.append((aut_sq, aut_sq))

    for ambient, pool in pools:
        s = cat.identity_functor(ambient)
        theta = cat.identity_transf(s)
        for f in pool:
            gamma = _ident_cell(cat.compose_functors(s, f),
                                cat.compose_functors(f, s))
            c.unif_thetas.append((theta, f, f, gamma, gamma))
    gamma_x = _ident_cell(cat.compose_functors(S_X, JOIN_ONE),
                          cat.compose_functors(COLLAPSE_X, S_X))
    rho_y = cat.NatTransfData(cat.compose_functors(S_Y, JOIN_ONE),
                              cat.compose_functors(COLLAPSE_X, S_Y),
                              {"0": "j", "1": "j"}, name="steer_sq")
    c.unif_thetas.append((THETA_XY, JOIN_ONE, COLLAPSE_X, gamma_x, rho_y))

    for ambient, pool in pools:
        s = cat.identity_functor(ambient)
        for f in pool:
            gamma = _ident_cell(cat.compose_functors(s, f),
                                cat.compose_functors(f, s))
            rho = _ident_cell(cat.compose_functors(s, f),
                              cat.compose_functors(f, s))
            c.unif_transports.append(
                (s, cat.identity_transf(f), cat.identity_transf(f),
                 gamma, rho))
    gamma_e = _ident_cell(cat.compose_functors(id_aut, F_AUT),
                          cat.compose_functors(F_AUT, id_aut))
    rho_e = _ident_cell(cat.compose_functors(id_aut, F_AUT),
                        cat.compose_functors(F_AUT, id_aut))
    c.unif_transports.append((id_aut, E_CELL, E_CELL, gamma_e, rho_e))

    for ambient, pool in pools:
        s = cat.identity_functor(ambient)
        for f, g in itertools.product(pool, pool):
            c.unif_dinat.append(
                (s, s, f, g, f, g,
                 _ident_cell(cat.compose_functors(s, f),
                             cat.compose_functors(f, s)),
                 _ident_cell(cat.compose_functors(s, g),
                             cat.compose_functors(g, s))))
    id_walk = cat.identity_functor(WALK)
    for f, g in ((F_WALK, id_walk), (F_WALK, F_WALK)):
        h = cat.compose_functors(cat.compose_functors(WALK_SWAP, f), WALK_SWAP)
        k = cat.compose_functors(cat.compose_functors(WALK_SWAP, g), WALK_SWAP)
        c.unif_dinat.append(
            (WALK_SWAP, WALK_SWAP, f, g, h, k,
             _ident_cell(cat.compose_functors(WALK_SWAP, f),
                         cat.compose_functors(h, WALK_SWAP)),
             _ident_cell(cat.compose_functors(WALK_SWAP, g),
                         cat.compose_functors(k, WALK_SWAP))))
    c.unif_dinat.append(
        (U23, U23, JOIN_ONE, cat.identity_functor(TWO),
         CONST2, cat.identity_functor(THREE),
         _ident_cell(cat.compose_functors(U23, JOIN_ONE),
                     cat.compose_functors(CONST2, U23)),
         _ident_cell(cat.compose_functors(U23, cat.identity_functor(TWO)),
                     cat.compose_functors(cat.identity_functor(THREE), U23))))
    return c
