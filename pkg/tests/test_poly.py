import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fixcat.errors import NotCartesian, TypeMismatch, ValidationError
from fixcat.poly import (
    POINT,
    CoalgebraSystem,
    PolyMorphism,
    Polynomial,
    WTree,
    apply_polynomial,
    binary_tree_poly,
    bisimilar,
    constant_poly,
    endo_poly,
    freyd_dinat_check,
    identity_poly,
    identity_poly_morphism,
    is_monomial,
    is_span,
    mtype_unfold,
    span_uniformity_check,
    stream_poly,
    wtype_enumerate,
    wtype_stages,
    _small_systems,
)

BIN = binary_tree_poly()
AB_STREAM = stream_poly(["a", "b"])
IDP = identity_poly()


def expected_counts(fibers, depth):
    # the stage-count recurrence, derived from the fibers alone
    counts, c = [0], 0
    for _ in range(depth):
        c = sum(c ** k for k in fibers.values())
        counts.append(c)
    return counts


# --- polynomial data ---------------------------------------------------------------

def test_validation_catches_partial_maps():
    with pytest.raises(ValidationError):
        Polynomial((POINT,), ("e",), ("b",), (POINT,),
                   {}, {"e": "b"}, {"b": POINT})
    with pytest.raises(ValidationError):
        Polynomial((POINT,), ("e",), ("b",), (POINT,),
                   {"e": POINT}, {"e": "other"}, {"b": POINT})


def test_span_and_monomial_predicates():
    assert is_span(IDP) and is_monomial(IDP)
    assert is_span(AB_STREAM) and not is_monomial(AB_STREAM)
    assert not is_span(BIN) and not is_monomial(BIN)
    squaring = endo_poly({"q": 2})
    assert is_monomial(squaring) and not is_span(squaring)
    assert is_monomial(constant_poly(["b"])) and not is_span(constant_poly(["b"]))


def test_apply_constant_gives_one_element_per_constructor():
    # empty product: a single tuple regardless of the input family
    P = Polynomial(("i",), (), ("b",), ("j1", "j2"),
                   {}, {}, {"b": "j1"})
    out = apply_polynomial(P, {"i": ("x", "y")})
    assert out["j1"] == (("b", ()),)
    assert out["j2"] == ()


def test_apply_binary_node_count():
    out = apply_polynomial(BIN, {POINT: (0, 1, 2)})
    tagged = out[POINT]
    assert sum(1 for el in tagged if el[0] == "node") == 9
    assert sum(1 for el in tagged if el[0] == "leaf") == 1


def test_apply_empty_family_keeps_only_constants():
    P = endo_poly({"c": 0, "n": 2})
    out = apply_polynomial(P, {POINT: ()})
    assert out[POINT] == (("c", ()),)


def test_apply_rejects_wrong_index_set():
    with pytest.raises(ValidationError):
        apply_polynomial(BIN, {"not_the_index": ()})


@st.composite
def general_polynomials(draw):
    I = tuple(f"i{k}" for k in range(draw(st.integers(1, 2))))
    J = tuple(f"j{k}" for k in range(draw(st.integers(1, 2))))
    B = tuple(f"b{k}" for k in range(draw(st.integers(1, 3))))
    t = {b: draw(st.sampled_from(J)) for b in B}
    E, s, p = [], {}, {}
    for b in B:
        for k in range(draw(st.integers(0, 2))):
            e = (b, k)
            E.append(e)
            s[e] = draw(st.sampled_from(I))
            p[e] = b
    return Polynomial(I, tuple(E), B, J, s, p, t)


@settings(max_examples=120, deadline=None)
@given(general_polynomials(), st.data())
def test_apply_matches_cardinality_formula(P, data):
    family = {i: tuple(f"{i}_{k}" for k in range(data.draw(st.integers(0, 3))))
              for i in P.I}
    out = apply_polynomial(P, family)
    for j in P.J:
        expected = 0
        for b in P.constructors_at(j):
            prod = 1
            for e in P.fiber(b):
                prod *= len(family[P.s[e]])
            expected += prod
        assert len(out[j]) == expected
        assert len(set(out[j])) == len(out[j])


# --- W-type chains -----------------------------------------------------------------

def test_wtype_constant_stabilizes_at_depth_one():
    P = constant_poly(["b1", "b2"])
    trees0, stable0 = wtype_enumerate(P, 0)
    assert trees0 == [] and not stable0
    trees, stable = wtype_enumerate(P, 1)
    assert stable and len(trees) == 2
    assert {t.root for t in trees} == {"b1", "b2"}
    assert all(t.children == () for t in trees)


def test_wtype_binary_counts_follow_recurrence():
    want = expected_counts({"leaf": 0, "node": 2}, 4)
    assert want == [0, 1, 2, 5, 26]
    for depth in range(5):
        trees, stable = wtype_enumerate(BIN, depth)
        assert len(trees) == want[depth]
        assert not stable
        assert all(t.height() < depth for t in trees)


def test_wtype_labelled_stream_is_empty():
    # no base constructor: the empty set is already the fixed point
    trees, stable = wtype_enumerate(AB_STREAM, 3)
    assert trees == [] and stable


def test_wtype_stages_are_increasing():
    stages = wtype_stages(BIN, 4)
    for small, large in zip(stages, stages[1:]):
        assert small <= large


def test_wtype_argument_errors():
    with pytest.raises(ValidationError):
        wtype_enumerate(BIN, -1)
    not_endo = Polynomial(("i", "i2"), (), ("b",), ("i", "i2"),
                          {}, {}, {"b": "i"})
    with pytest.raises(TypeMismatch):
        wtype_enumerate(not_endo, 1)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.sampled_from(["u", "v", "w"]),
                       st.integers(0, 2), min_size=1, max_size=3))
def test_wtype_counts_match_fiber_recurrence(fibers):
    P = endo_poly(fibers)
    want = expected_counts(fibers, 4)
    for depth in range(5):
        trees, _ = wtype_enumerate(P, depth)
        assert len(trees) == want[depth]


def test_wtree_shape_helpers():
    leaf = WTree("leaf")
    node = WTree("node", ((("node", 0), leaf), (("node", 1), leaf)))
    assert leaf.height() == 0 and node.height() == 1
    assert leaf.size() == 1 and node.size() == 3


# --- coalgebra systems and bisimilarity ----------------------------------------------

def loop(poly, label, name="loop"):
    slots = poly.fiber(label)
    return CoalgebraSystem(poly, ("s",), {"s": (label, {e: "s" for e in slots})},
                           name=name)


def test_system_validation():
    with pytest.raises(ValidationError):
        CoalgebraSystem(AB_STREAM, ("s",), {})
    with pytest.raises(ValidationError):
        CoalgebraSystem(AB_STREAM, ("s",), {"s": ("zzz", {})})
    with pytest.raises(ValidationError):
        CoalgebraSystem(AB_STREAM, ("s",), {"s": ("a", {})})
    with pytest.raises(ValidationError):
        CoalgebraSystem(AB_STREAM, ("s",),
                        {"s": ("a", {("a", 0): "elsewhere"})})


def test_bisimilar_same_state():
    c = loop(AB_STREAM, "a")
    assert bisimilar(c, c, "s", "s")


def test_bisimilar_under_fiber_one_single_constructor_never_splits():
    c1 = loop(IDP, POINT)
    c2 = CoalgebraSystem(IDP, (0, 1),
                         {0: (POINT, {(POINT, 0): 1}), 1: (POINT, {(POINT, 0): 0})})
    for x in c2.states:
        assert bisimilar(c1, c2, "s", x)
        assert bisimilar(c2, c2, 0, x)


def test_bisimilar_splits_on_head_label():
    assert not bisimilar(loop(AB_STREAM, "a"), loop(AB_STREAM, "b"), "s", "s")


def test_bisimilar_folds_unreachable_duplicates():
    # 0 -> 1 -> 1 ... is the same stream as the one-state loop
    c = CoalgebraSystem(AB_STREAM, (0, 1),
                        {0: ("a", {("a", 0): 1}), 1: ("a", {("a", 0): 1})})
    assert bisimilar(c, loop(AB_STREAM, "a"), 0, "s")
    # but an a-head over a b-loop differs from the pure a-loop
    d = CoalgebraSystem(AB_STREAM, (0, 1),
                        {0: ("a", {("a", 0): 1}), 1: ("b", {("b", 0): 1})})
    assert not bisimilar(d, loop(AB_STREAM, "a"), 0, "s")


def test_bisimilar_requires_matching_polynomial():
    with pytest.raises(TypeMismatch):
        bisimilar(loop(AB_STREAM, "a"), loop(IDP, POINT), "s", "s")
    with pytest.raises(ValidationError):
        bisimilar(loop(AB_STREAM, "a"), loop(AB_STREAM, "a"), "s", "zzz")


def test_bisimilar_is_an_equivalence_on_a_small_corpus():
    systems = _small_systems(AB_STREAM, max_states=2, cap=12)
    pool = [(c, x) for c in systems for x in c.states]
    for c, x in pool:
        assert bisimilar(c, c, x, x)
    for (c1, x1), (c2, x2) in itertools.combinations(pool, 2):
        assert bisimilar(c1, c2, x1, x2) == bisimilar(c2, c1, x2, x1)
    for (c1, x1), (c2, x2), (c3, x3) in itertools.combinations(pool[:10], 3):
        if bisimilar(c1, c2, x1, x2) and bisimilar(c2, c3, x2, x3):
            assert bisimilar(c1, c3, x1, x3)


def test_unfold_depth_zero_is_the_constructor():
    assert mtype_unfold(loop(AB_STREAM, "a"), "s", 0) == "a"


def test_unfold_single_state_loop():
    c = loop(IDP, POINT)
    slot = (POINT, 0)
    assert mtype_unfold(c, "s", 2) == (POINT, ((slot, (POINT, ((slot, POINT),))),))
    with pytest.raises(ValidationError):
        mtype_unfold(c, "s", -1)


def test_unfold_agreement_decides_bisimilarity():
    # exact cross-oracle: refinement equality iff deep unfoldings coincide
    for poly in (AB_STREAM, BIN):
        systems = _small_systems(poly, max_states=2, cap=10)
        for c1, c2 in itertools.combinations_with_replacement(systems, 2):
            depth = len(c1.states) + len(c2.states)
            for x1 in c1.states:
                for x2 in c2.states:
                    agree = mtype_unfold(c1, x1, depth) == mtype_unfold(c2, x2, depth)
                    assert bisimilar(c1, c2, x1, x2) == agree


# --- cartesian morphisms --------------------------------------------------------------

def relabel_to_single(name="collapse"):
    target = stream_poly(["x"])
    return target, PolyMorphism(
        AB_STREAM, target, {"a": "x", "b": "x"},
        {("a", ("x", 0)): ("a", 0), ("b", ("x", 0)): ("b", 0)}, name=name)


def test_identity_morphism_on_trees_and_systems():
    m = identity_poly_morphism(BIN)
    trees, _ = wtype_enumerate(BIN, 3)
    for t in trees:
        assert m.on_tree(t) == t
    c = loop(AB_STREAM, "a")
    back = identity_poly_morphism(AB_STREAM).on_system(c)
    assert back.step == c.step


def test_morphism_relabels_a_system():
    target, m = relabel_to_single()
    c = CoalgebraSystem(AB_STREAM, (0, 1),
                        {0: ("a", {("a", 0): 1}), 1: ("b", {("b", 0): 0})})
    image = m.on_system(c)
    assert image.poly == target
    assert image.step == {0: ("x", {("x", 0): 1}), 1: ("x", {("x", 0): 0})}


def test_morphism_validation_rejects_bad_data():
    with pytest.raises(NotCartesian):
        PolyMorphism(AB_STREAM, AB_STREAM, {"a": "b"}, {})
    with pytest.raises(NotCartesian):
        PolyMorphism(AB_STREAM, AB_STREAM, {"a": "b", "b": "a"}, {})
    # fiber sizes differ: no bijection can exist
    with pytest.raises(NotCartesian):
        PolyMorphism(BIN, stream_poly(["x"]),
                     {"leaf": "x", "node": "x"},
                     {("leaf", ("x", 0)): ("node", 0),
                      ("node", ("x", 0)): ("node", 0)})
    # slot image lands in the wrong fiber
    with pytest.raises(NotCartesian):
        PolyMorphism(AB_STREAM, AB_STREAM, {"a": "a", "b": "b"},
                     {("a", ("a", 0)): ("b", 0), ("b", ("b", 0)): ("a", 0)})


def test_uniformity_check_identity_morphisms():
    for poly in (BIN, AB_STREAM, IDP, constant_poly(["b1", "b2"])):
        report = span_uniformity_check(identity_poly_morphism(poly), poly, poly,
                                       depth=3)
        assert report["holds"] and report["w_ok"] and report["m_ok"]
        assert report["systems_checked"] >= 1


def test_uniformity_check_span_relabellings():
    target, m = relabel_to_single()
    assert is_span(AB_STREAM) and is_span(target)
    report = span_uniformity_check(m, AB_STREAM, target, depth=4)
    assert report["holds"]
    swap = PolyMorphism(AB_STREAM, AB_STREAM, {"a": "b", "b": "a"},
                        {("a", ("b", 0)): ("a", 0), ("b", ("a", 0)): ("b", 0)})
    report = span_uniformity_check(swap, AB_STREAM, AB_STREAM, depth=4)
    assert report["holds"]


def test_uniformity_check_constant_shape_map():
    # with no slots the induced map is just the constructor relabelling
    f, g = constant_poly(["b1", "b2"]), constant_poly(["c"])
    report = span_uniformity_check(({"b1": "c", "b2": "c"}, {}), f, g, depth=2)
    assert report["holds"] and report["w_counterexample"] is None


def test_uniformity_check_monomial_morphism():
    # fiber-2 monomials, slot twist
    f, g = endo_poly({"q": 2}), endo_poly({"r": 2})
    m = PolyMorphism(f, g, {"q": "r"},
                     {("q", ("r", 0)): ("q", 1), ("q", ("r", 1)): ("q", 0)})
    assert is_monomial(f) and is_monomial(g)
    report = span_uniformity_check(m, f, g, depth=3)
    assert report["holds"]


def test_uniformity_check_rejects_mismatched_boundary():
    with pytest.raises(TypeMismatch):
        span_uniformity_check(identity_poly_morphism(BIN), AB_STREAM, AB_STREAM)
    with pytest.raises(NotCartesian):
        span_uniformity_check(({"a": "a", "b": "b"}, {}), AB_STREAM, AB_STREAM)


# --- rolling the composite -------------------------------------------------------------

def test_rolling_constant_constant():
    f, g = constant_poly(["f1"]), constant_poly(["g1", "g2"])
    report = freyd_dinat_check(f, g, depth=3)
    assert report["holds"] and not report["partial"]
    assert report["stabilized_at"] == 1
    assert report["fixed_point_ok"] and report["chains_agree"]


def test_rolling_constant_with_binary():
    report = freyd_dinat_check(constant_poly(["c"]), BIN, depth=3)
    assert report["holds"] and report["stabilized_at"] == 1
    # and with the constant on the other side
    report = freyd_dinat_check(BIN, constant_poly(["c"]), depth=3)
    assert report["holds"] and not report["partial"]


def test_rolling_empty_streams():
    report = freyd_dinat_check(stream_poly(["a"]), stream_poly(["b"]), depth=3)
    assert report["holds"] and report["stabilized_at"] == 0
    assert report["stage_counts"]["composite_gf"] == (0, 0, 0, 0)


def test_rolling_binary_binary_partial_stages():
    report = freyd_dinat_check(BIN, BIN, depth=1)
    assert report["partial"] and report["holds"]
    c = expected_counts({"leaf": 0, "node": 2}, 4)
    # composite stages sample the one-step recurrence at even depths
    assert report["stage_counts"]["composite_gf"] == (c[0], c[2])
    assert report["stage_counts"]["composite_fg"] == (c[0], c[2])


def test_rolling_stream_wrap_around_binary():
    # wrapping each stage in a fiber-1 label leaves the counts on the
    # one-step recurrence
    report = freyd_dinat_check(stream_poly(["a"]), BIN, depth=3)
    assert report["partial"] and report["holds"]
    assert report["stage_counts"]["composite_gf"] == (0, 1, 2, 5)
    assert report["stage_counts"]["composite_fg"] == (0, 1, 2, 5)
