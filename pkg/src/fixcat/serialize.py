"""JSON document formats for the command line.

Every document is a JSON object with a "kind" discriminator.  Printing is
canonical: keys sorted, two-space indent, every list field in a fixed
sort order, trailing newline.  parse followed by print is the identity on
canonically printed documents, which keeps goldens byte-stable.

Multisets are serialized as sorted (element, multiplicity) pairs, input
sets of ideal relations as sorted element lists, finite relations and maps
as sorted pair lists.
"""

import json
from dataclasses import dataclass, field

from . import cat, poly, poset, rel
from .errors import SchemaError

KINDS = ("poset", "monotone-map", "finite-set", "multiset-relation",
         "preorder", "ideal-relation", "category", "functor", "nat-transf",
         "polynomial", "coalgebra-system", "suite-config")

MODEL_NAMES = ("poset", "poset:kleene", "poset:bifree", "poset:broken",
               "rel", "rel:closure", "rel:tree", "scott", "cat")


def _skey(x):
    return (x.__class__.__name__, repr(x))


def _need(doc, key, types, kind):
    if key not in doc:
        raise SchemaError(f"{kind}: missing field {key!r}")
    v = doc[key]
    if not isinstance(v, types):
        raise SchemaError(f"{kind}: field {key!r} has the wrong shape")
    return v


def _pairs(doc, key, kind, width=2):
    raw = _need(doc, key, list, kind)
    out = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != width:
            raise SchemaError(f"{kind}: {key!r} entries must be "
                              f"{width}-element lists")
        out.append(tuple(entry))
    return out


@dataclass
class SuiteConfig:
    models: list
    draws: int = 60
    seed: int = 0
    categories: list = field(default_factory=list)


# --- parsing ---------------------------------------------------------------------

def parse_document(text, validate=True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    builder = _PARSERS[kind]
    return builder(doc, validate)


def load_document(path, validate=True):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SchemaError(f"{path}: {e}") from e
    try:
        return parse_document(text, validate)
    except SchemaError as e:
        raise SchemaError(f"{path}: {e}") from e


def _parse_poset(doc, validate):
    elements = _need(doc, "elements", list, "poset")
    leq = _pairs(doc, "leq", "poset")
    bottom = _need(doc, "bottom", (str, int), "poset")
    return poset.PointedPoset(elements, leq, bottom,
                              name=doc.get("name", "P"), _validate=validate)


def _parse_monotone_map(doc, validate):
    src = _parse_poset(_need(doc, "source", dict, "monotone-map"), validate)
    tgt = _parse_poset(_need(doc, "target", dict, "monotone-map"), validate)
    assignment = dict(_pairs(doc, "assignment", "monotone-map"))
    return poset.MonotoneMap(src, tgt, assignment,
                             name=doc.get("name", "f"), _validate=validate)


def _parse_finite_set(doc, validate):
    return tuple(_need(doc, "elements", list, "finite-set"))


def _parse_mrel(doc, validate):
    source = tuple(_need(doc, "source", list, "multiset-relation"))
    target = tuple(_need(doc, "target", list, "multiset-relation"))
    pairs = set()
    for entry in _need(doc, "pairs", list, "multiset-relation"):
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError("multiset-relation: pairs entries must be "
                              "[multiset, output]")
        m, b = entry
        if not isinstance(m, list):
            raise SchemaError("multiset-relation: premise must be a list of "
                              "(element, multiplicity) pairs")
        items = []
        for cell in m:
            if not isinstance(cell, list) or len(cell) != 2 or cell[1] < 1:
                raise SchemaError("multiset-relation: bad multiplicity entry")
            items.extend([cell[0]] * cell[1])
        pairs.add((rel.mset(items), b))
    r = rel.MultisetRel(source, target, pairs, name=doc.get("name", "R"),
                        _validate=validate)
    return r


def _parse_preorder(doc, validate):
    return rel.Preorder(_need(doc, "elements", list, "preorder"),
                        _pairs(doc, "leq", "preorder"),
                        name=doc.get("name", "Q"), _validate=validate)


def _parse_ideal(doc, validate):
    src = _parse_preorder(_need(doc, "source", dict, "ideal-relation"), validate)
    tgt = _parse_preorder(_need(doc, "target", dict, "ideal-relation"), validate)
    pairs = set()
    for entry in _need(doc, "pairs", list, "ideal-relation"):
        if not isinstance(entry, list) or len(entry) != 2 \
                or not isinstance(entry[0], list):
            raise SchemaError("ideal-relation: pairs entries must be "
                              "[input-set, output]")
        pairs.add((rel.uset(entry[0]), entry[1]))
    return rel.IdealRel(src, tgt, pairs, name=doc.get("name", "R"),
                        _validate=validate)


def _parse_category(doc, validate):
    arrows = [cat.Arrow(*entry)
              for entry in _pairs(doc, "arrows", "category", width=3)]
    identity = dict(_pairs(doc, "identity", "category"))
    table = {(g, f): gf
             for (g, f, gf) in _pairs(doc, "table", "category", width=3)}
    return cat.FinCategory(_need(doc, "objects", list, "category"),
                           arrows, identity, table,
                           name=doc.get("name", "C"), _validate=validate)


def _parse_functor(doc, validate):
    src = _parse_category(_need(doc, "source", dict, "functor"), validate)
    tgt = _parse_category(_need(doc, "target", dict, "functor"), validate)
    return cat.FunctorData(src, tgt,
                           dict(_pairs(doc, "omap", "functor")),
                           dict(_pairs(doc, "amap", "functor")),
                           name=doc.get("name", "F"), _validate=validate)


def _parse_nat_transf(doc, validate):
    src = _parse_functor(_need(doc, "source", dict, "nat-transf"), validate)
    tgt = _parse_functor(_need(doc, "target", dict, "nat-transf"), validate)
    return cat.NatTransfData(src, tgt,
                             dict(_pairs(doc, "components", "nat-transf")),
                             name=doc.get("name", "alpha"),
                             _validate=validate)


def _detuple(x):
    # slot ids built by the library are tuples; JSON carries them as lists
    if isinstance(x, list):
        return tuple(_detuple(i) for i in x)
    return x


def _parse_polynomial(doc, validate):
    slots = [_detuple(e) for e in _need(doc, "slots", list, "polynomial")]
    s = {_detuple(k): v for (k, v) in _pairs(doc, "slot_input", "polynomial")}
    p = {_detuple(k): v
         for (k, v) in _pairs(doc, "slot_constructor", "polynomial")}
    return poly.Polynomial(_need(doc, "inputs", list, "polynomial"),
                           slots,
                           _need(doc, "constructors", list, "polynomial"),
                           _need(doc, "outputs", list, "polynomial"),
                           s, p,
                           dict(_pairs(doc, "constructor_output", "polynomial")),
                           name=doc.get("name", "P"), _validate=validate)


def _parse_system(doc, validate):
    p = _parse_polynomial(_need(doc, "polynomial", dict, "coalgebra-system"),
                          validate)
    step = {}
    for entry in _need(doc, "step", list, "coalgebra-system"):
        if not isinstance(entry, list) or len(entry) != 3 \
                or not isinstance(entry[2], list):
            raise SchemaError("coalgebra-system: step entries must be "
                              "[state, constructor, successor-pairs]")
        x, b, nxt = entry
        step[x] = (b, {_detuple(e): v for (e, v) in nxt})
    return poly.CoalgebraSystem(p, _need(doc, "states", list,
                                         "coalgebra-system"),
                                step, name=doc.get("name", "S"),
                                _validate=validate)


def _parse_suite_config(doc, validate):
    models = _need(doc, "models", list, "suite-config")
    for m in models:
        if m not in MODEL_NAMES:
            raise SchemaError(f"suite-config: unknown model {m!r}")
    draws = doc.get("draws", 60)
    seed = doc.get("seed", 0)
    categories = doc.get("categories", [])
    if not isinstance(draws, int) or draws < 0:
        raise SchemaError("suite-config: draws must be a nonnegative integer")
    if not isinstance(seed, int):
        raise SchemaError("suite-config: seed must be an integer")
    if not isinstance(categories, list):
        raise SchemaError("suite-config: categories must be a list of paths")
    return SuiteConfig(models=list(models), draws=draws, seed=seed,
                       categories=list(categories))


_PARSERS = {
    "poset": _parse_poset,
    "monotone-map": _parse_monotone_map,
    "finite-set": _parse_finite_set,
    "multiset-relation": _parse_mrel,
    "preorder": _parse_preorder,
    "ideal-relation": _parse_ideal,
    "category": _parse_category,
    "functor": _parse_functor,
    "nat-transf": _parse_nat_transf,
    "polynomial": _parse_polynomial,
    "coalgebra-system": _parse_system,
    "suite-config": _parse_suite_config,
}


# --- printing --------------------------------------------------------------------

def _sorted_pairs(mapping):
    return [list(p) for p in sorted(mapping.items(), key=_skey)]


def to_document(obj):
    if isinstance(obj, poset.PointedPoset):
        return {"kind": "poset", "name": obj.name,
                "elements": sorted(obj.elements, key=_skey),
                "leq": [list(p) for p in sorted(obj.leq_pairs)],
                "bottom": obj.bottom}
    if isinstance(obj, poset.MonotoneMap):
        return {"kind": "monotone-map", "name": obj.name,
                "source": to_document(obj.source),
                "target": to_document(obj.target),
                "assignment": _sorted_pairs(obj.assignment)}
    if isinstance(obj, tuple):
        return {"kind": "finite-set", "name": "X",
                "elements": sorted(obj, key=_skey)}
    if isinstance(obj, rel.MultisetRel):
        return {"kind": "multiset-relation", "name": obj.name,
                "source": sorted(obj.source, key=_skey),
                "target": sorted(obj.target, key=_skey),
                "pairs": [[[list(cell) for cell in m], b]
                          for (m, b) in sorted(obj.pairs, key=_skey)]}
    if isinstance(obj, rel.Preorder):
        return {"kind": "preorder", "name": obj.name,
                "elements": sorted(obj.elements, key=_skey),
                "leq": [list(p) for p in sorted(obj.leq_pairs)]}
    if isinstance(obj, rel.IdealRel):
        return {"kind": "ideal-relation", "name": obj.name,
                "source": to_document(obj.source),
                "target": to_document(obj.target),
                "pairs": [[list(u), b]
                          for (u, b) in sorted(obj.pairs, key=_skey)]}
    if isinstance(obj, cat.FinCategory):
        return {"kind": "category", "name": obj.name,
                "objects": sorted(obj.objects, key=_skey),
                "arrows": [[a.id, a.src, a.dst]
                           for a in sorted(obj.arrows.values(),
                                           key=lambda a: a.id)],
                "identity": _sorted_pairs(obj.identity),
                "table": [[g, f, gf]
                          for ((g, f), gf) in sorted(obj.table.items())]}
    if isinstance(obj, cat.FunctorData):
        return {"kind": "functor", "name": obj.name,
                "source": to_document(obj.source),
                "target": to_document(obj.target),
                "omap": _sorted_pairs(obj.omap),
                "amap": _sorted_pairs(obj.amap)}
    if isinstance(obj, cat.NatTransfData):
        return {"kind": "nat-transf", "name": obj.name,
                "source": to_document(obj.source),
                "target": to_document(obj.target),
                "components": _sorted_pairs(obj.components)}
    if isinstance(obj, poly.Polynomial):
        return {"kind": "polynomial", "name": obj.name,
                "inputs": sorted(obj.I, key=_skey),
                "slots": sorted(obj.E, key=_skey),
                "constructors": sorted(obj.B, key=_skey),
                "outputs": sorted(obj.J, key=_skey),
                "slot_input": _sorted_pairs(obj.s),
                "slot_constructor": _sorted_pairs(obj.p),
                "constructor_output": _sorted_pairs(obj.t)}
    if isinstance(obj, poly.CoalgebraSystem):
        return {"kind": "coalgebra-system", "name": obj.name,
                "polynomial": to_document(obj.poly),
                "states": sorted(obj.states, key=_skey),
                "step": [[x, b, _sorted_pairs(nxt)]
                         for x, (b, nxt) in sorted(obj.step.items(),
                                                   key=_skey)]}
    if isinstance(obj, SuiteConfig):
        doc = {"kind": "suite-config", "models": list(obj.models),
               "draws": obj.draws, "seed": obj.seed}
        if obj.categories:
            doc["categories"] = list(obj.categories)
        return doc
    raise SchemaError(f"cannot serialize {obj.__class__.__name__}")


def print_document(obj):
    doc = obj if isinstance(obj, dict) else to_document(obj)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
