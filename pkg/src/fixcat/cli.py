"""Command line front end.

Commands: star, laws, lambek, wtype, mtype, bisim, dinat-product, compare.
Exit codes: 0 success (laws pass), 1 law violation or counterexample,
2 input/config error.  All randomness comes from --seed (default 0),
echoed in the output of the commands that use it.  FIXCAT_SEARCH_CAP
overrides the enumeration bounds used for 2-cell searches.
"""

import argparse
import os
import sys

from . import algebra, cat, corpora, laws, models, poly, poset, rel, serialize
from .errors import (FixcatError, NoProducts, NotContractible, SchemaError,
                     TypeMismatch, ValidationError)

LIST_THRESHOLD = 24


def _search_bound():
    raw = os.environ.get("FIXCAT_SEARCH_CAP")
    if raw is None:
        return cat.DEFAULT_BOUND
    try:
        cap = int(raw)
    except ValueError:
        raise SchemaError(f"FIXCAT_SEARCH_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise SchemaError("FIXCAT_SEARCH_CAP must be positive")
    return cat.SearchBound(max_objects=cap, max_arrows=cap)


def _make_model(spec, max_steps=16):
    if spec in ("poset", "poset:kleene"):
        return models.PosetModel("kleene")
    if spec == "poset:bifree":
        return models.PosetModel("bifree")
    if spec == "poset:broken":
        return models.BrokenPosetModel()
    if spec in ("rel", "rel:closure"):
        return models.RelModel("closure")
    if spec == "rel:tree":
        return models.RelModel("tree")
    if spec == "scott":
        return models.ScottModel()
    if spec == "cat":
        return models.CatModel(max_steps=max_steps, bound=_search_bound())
    raise SchemaError(f"unknown model {spec!r}")


def _corpus_for(spec, draws, seed):
    if spec.startswith("poset"):
        return corpora.poset_corpus(draws=draws, seed=seed)
    if spec.startswith("rel"):
        return corpora.rel_corpus(draws=draws, seed=seed)
    if spec == "scott":
        return corpora.scott_corpus(draws=draws, seed=seed)
    return corpora.cat_corpus()


def _expect(obj, types, what):
    if not isinstance(obj, types):
        raise SchemaError(f"expected a {what} document")
    return obj


STAR_KINDS = {
    "poset": (poset.MonotoneMap, "monotone-map"),
    "rel": (rel.MultisetRel, "multiset-relation"),
    "scott": (rel.IdealRel, "ideal-relation"),
    "cat": (cat.FunctorData, "functor"),
}


def cmd_star(args):
    want, kind_name = STAR_KINDS[args.model]
    f = _expect(serialize.load_document(args.input), want, kind_name)
    if args.model == "cat":
        chain = algebra.lambek_chain(f, max_steps=args.max_steps)
        if args.trace:
            print("trace: " + " -> ".join(str(x) for x in chain.objects))
        if not chain.stabilized:
            print(f"did not stabilize within {args.max_steps} steps")
            return 2
        print(f"fix: carrier {chain.carrier}, structure {chain.structure} "
              f"(stabilized at index {chain.index})")
        return 0
    m = _make_model(args.model)
    star = m.star(f)
    if args.model == "poset":
        if args.trace:
            print("trace: " + " -> ".join(str(x) for x in poset.iterates(f)))
        print(f"fix: {star.assignment['*']}")
    elif args.model == "rel":
        if args.trace:
            ts = rel.tree_star(f, len(f.target) + 1)
            sizes = ", ".join(str(len(s)) for s in ts.stages)
            print(f"trace: stage sizes {sizes}")
        derivable = sorted(b for (_, b) in star.pairs)
        print("star: {" + ", ".join(str(b) for b in derivable) + "}")
    else:
        if args.trace:
            full = sorted(rel.scott_star_set(f))
            print("trace: closure " + "{" + ", ".join(map(str, full)) + "}")
        derivable = sorted(b for (_, b) in star.pairs)
        print("star: {" + ", ".join(str(b) for b in derivable) + "}")
    return 0


def cmd_laws(args):
    cfg = _expect(serialize.load_document(args.config), serialize.SuiteConfig,
                  "suite-config")
    if not cfg.models:
        raise SchemaError("suite-config: empty model list, nothing to check")
    seed = cfg.seed if args.seed is None else args.seed
    print(f"seed: {seed}")

    base = os.path.dirname(os.path.abspath(args.config))
    broken_tables = 0
    for ref in cfg.categories:
        path = ref if os.path.isabs(ref) else os.path.join(base, ref)
        c = _expect(serialize.load_document(path, validate=False),
                    cat.FinCategory, "category")
        problems = cat.validate_category(c)
        for p in problems:
            print(f"category {c.name}: {p}")
        if problems:
            broken_tables += 1
        else:
            print(f"category {c.name}: table valid")

    jobs = []
    for spec in cfg.models:
        jobs.append((_make_model(spec, max_steps=args.max_steps),
                     _corpus_for(spec, cfg.draws, seed)))
    reports = laws.run_suite(jobs, seed=seed)
    for r in reports:
        print(r.line())
    failures = [r for r in reports if r.failed]
    if failures:
        first = failures[0]
        print(f"first counterexample: {first.law_id}: {first.counterexample}")
        return 1
    if broken_tables:
        print(f"{broken_tables} corrupted category table(s)")
        return 1
    return 0


def cmd_lambek(args):
    f = _expect(serialize.load_document(args.input), cat.FunctorData,
                "functor")
    chain = algebra.lambek_chain(f, max_steps=args.max_steps)
    for k, obj in enumerate(chain.objects):
        arrow = (f" --{chain.connectors[k]}-->"
                 if k < len(chain.connectors) else "")
        print(f"stage {k}: {obj}{arrow}")
    if chain.stabilized:
        print(f"stabilized at index {chain.index}; carrier {chain.carrier}; "
              f"structure {chain.structure}")
    else:
        print(f"did not stabilize within {args.max_steps} steps")
    return 0


def cmd_wtype(args):
    p = _expect(serialize.load_document(args.input), poly.Polynomial,
                "polynomial")
    stages = poly.wtype_stages(p, args.depth)
    print("counts: " + ", ".join(str(len(s)) for s in stages))
    stable_at = None
    for k in range(len(stages) - 1):
        if stages[k] == stages[k + 1]:
            stable_at = k
            break
    if stable_at is not None:
        print(f"stabilized at depth {stable_at}; {len(stages[stable_at])} "
              f"elements")
    else:
        print(f"not stabilized at depth {args.depth}")
    trees = sorted(stages[-1], key=lambda t: repr(t))
    if len(trees) <= LIST_THRESHOLD or args.list:
        for t in trees:
            print(f"  {t}")
    else:
        print(f"  ({len(trees)} elements; use --list to print them)")
    return 0


def cmd_mtype(args):
    c = _expect(serialize.load_document(args.input), poly.CoalgebraSystem,
                "coalgebra-system")
    for x in sorted(c.states, key=str):
        print(f"{x}: {poly.mtype_unfold(c, x, args.depth)}")
    return 0


def cmd_bisim(args):
    c1 = _expect(serialize.load_document(args.first), poly.CoalgebraSystem,
                 "coalgebra-system")
    c2 = _expect(serialize.load_document(args.second), poly.CoalgebraSystem,
                 "coalgebra-system")
    all_pairs = True
    for x1 in sorted(c1.states, key=str):
        for x2 in sorted(c2.states, key=str):
            ok = poly.bisimilar(c1, c2, x1, x2)
            all_pairs = all_pairs and ok
            print(f"{x1} {'~' if ok else '!~'} {x2}")
    print("bisimilar" if all_pairs else "not bisimilar")
    return 0


DINAT_KINDS = {
    "poset": (poset.MonotoneMap, "monotone-map"),
    "rel": (rel.MultisetRel, "multiset-relation"),
    "scott": (rel.IdealRel, "ideal-relation"),
}


def cmd_dinat_product(args):
    if args.model not in DINAT_KINDS:
        raise NoProducts(f"model {args.model} does not support products")
    want, kind_name = DINAT_KINDS[args.model]
    f = _expect(serialize.load_document(args.f), want, kind_name)
    g = _expect(serialize.load_document(args.g), want, kind_name)
    m = _make_model(args.model)
    a, b = m.src(f), m.dst(f)
    if not (m.eq_obj(a, m.dst(g)) and m.eq_obj(b, m.src(g))):
        raise TypeMismatch("need f: A -> B and g: B -> A")
    p1 = m.proj1(a, b)
    p2 = m.proj2(a, b)
    h = m.compose(m.swap_cell(b, a),
                  m.pair(m.compose(f, p1), m.compose(g, p2)))
    sh = m.star(h)
    left = m.compose(p1, sh)
    right = m.compose(p2, sh)
    gf_star = m.star(m.compose(g, f))
    fg_star = m.star(m.compose(f, g))
    print(f"(gf)*:    {m.describe1(gf_star)}")
    print(f"pi1(h*):  {m.describe1(left)}")
    print(f"(fg)*:    {m.describe1(fg_star)}")
    print(f"pi2(h*):  {m.describe1(right)}")
    agree = m.eq1(left, gf_star) and m.eq1(right, fg_star)
    print(f"agreement: {'yes' if agree else 'NO'}")
    return 0 if agree else 1


def cmd_compare(args):
    print(f"seed: {args.seed}")
    if args.model == "poset":
        m1, m2 = models.PosetModel("kleene"), models.PosetModel("bifree")
        corpus = corpora.poset_corpus(draws=args.draws, seed=args.seed)
    elif args.model == "rel":
        m1, m2 = models.RelModel("closure"), models.RelModel("tree")
        corpus = corpora.rel_corpus(draws=args.draws, seed=args.seed)
    else:
        raise SchemaError(f"no second operator shipped for model "
                          f"{args.model!r}")
    report = laws.compare_operators(m1, m2, corpus.endos,
                                    cells=corpus.endo_cells,
                                    pairs=corpus.dinat_pairs)
    print(f"operators: {report.base}")
    print(f"instances: {report.instances}")
    print(f"identity: {'yes' if report.identity else 'NO'}")
    print(f"certificate: {report.certificate}")
    return 0 if report.identity else 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="fixcat",
        description="Fixpoint operators in finite models, with checked laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star", help="iterate an endo-1-cell to its fixpoint")
    p.add_argument("input")
    p.add_argument("--model", required=True, choices=list(STAR_KINDS))
    p.add_argument("--trace", action="store_true")
    p.add_argument("--max-steps", type=int, default=16)
    p.set_defaults(fn=cmd_star)

    p = sub.add_parser("laws", help="run the law suite from a config file")
    p.add_argument("config")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=16)
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("lambek", help="print the initial-algebra chain")
    p.add_argument("input")
    p.add_argument("--max-steps", type=int, default=16)
    p.set_defaults(fn=cmd_lambek)

    p = sub.add_parser("wtype", help="enumerate tree stages of a polynomial")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_wtype)

    p = sub.add_parser("mtype", help="unfold a coalgebra system")
    p.add_argument("input")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(fn=cmd_mtype)

    p = sub.add_parser("bisim", help="decide bisimilarity between systems")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_bisim)

    p = sub.add_parser("dinat-product",
                       help="check the product-route dinaturality identity")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--model", required=True,
                   choices=["poset", "rel", "scott", "cat"])
    p.set_defaults(fn=cmd_dinat_product)

    p = sub.add_parser("compare", help="compare two fixpoint operators")
    p.add_argument("--model", required=True,
                   choices=["poset", "rel", "scott", "cat"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=40)
    p.set_defaults(fn=cmd_compare)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NotContractible as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FixcatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
