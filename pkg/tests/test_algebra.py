import dataclasses
import itertools

import pytest

from fixcat.algebra import (
    AlgebraOneCell,
    adjoint_equivalence_from_initial,
    algebra_morphisms,
    chain_realization,
    cocone_mediator,
    freyd_composite_check,
    initial_algebra_mediator,
    lambek_chain,
    pseudo_initial_mediator,
    unique_algebra_2cell,
    validate_endofunctor,
)
from fixcat.cat import (
    Arrow,
    FinCategory,
    FunctorData,
    NatTransfData,
    SearchBound,
    compose_functors,
    constant_functor,
    enumerate_nat_transfs,
    identity_functor,
    identity_transf,
    is_invertible_transf,
    point_functor,
)
from fixcat.errors import (
    NoInitialObject,
    NoMediator,
    NotInvertible,
    SizeCap,
    TypeMismatch,
    UniquenessViolation,
    ValidationError,
)
from fixcat.poset import MonotoneMap, PointedPoset, kleene_star


# --- fixtures -------------------------------------------------------------------

def thin_cat(name, elements, strict_pairs):
    # strict_pairs must already be transitively closed
    order = set(strict_pairs) | {(x, x) for x in elements}
    arrows, identity = [], {}
    for x in elements:
        for y in elements:
            if (x, y) in order:
                aid = f"id_{x}" if x == y else f"{x}to{y}"
                arrows.append(Arrow(aid, x, y))
                if x == y:
                    identity[x] = aid
    def arrow_id(x, y):
        return identity[x] if x == y else f"{x}to{y}"
    table = {}
    for a in arrows:
        for b in arrows:
            if a.dst == b.src:
                table[(b.id, a.id)] = arrow_id(a.src, b.dst)
    return FinCategory(elements, arrows, identity, table, name=name)


def thin_functor(c, d, omap, name="F"):
    # only valid when d is thin
    amap = {}
    for aid, a in c.arrows.items():
        x, y = omap[a.src], omap[a.dst]
        amap[aid] = d.identity[x] if x == y else f"{x}to{y}"
    return FunctorData(c, d, dict(omap), amap, name=name)


TWO = thin_cat("two", ["0", "1"], {("0", "1")})
THREE = thin_cat("three", ["0", "1", "2"], {("0", "1"), ("1", "2"), ("0", "2")})
FOUR = thin_cat("four", ["0", "1", "2", "3"],
                {("0", "1"), ("1", "2"), ("2", "3"),
                 ("0", "2"), ("0", "3"), ("1", "3")})

JOIN_ONE = thin_functor(TWO, TWO, {"0": "1", "1": "1"}, name="join1")
SUCC3 = thin_functor(THREE, THREE, {"0": "1", "1": "2", "2": "2"}, name="succ")
SUCC4 = thin_functor(FOUR, FOUR, {"0": "1", "1": "2", "2": "3", "3": "3"},
                     name="succ")

WALK = FinCategory(
    ["0", "x", "y"],
    [Arrow("id_0", "0", "0"), Arrow("id_x", "x", "x"), Arrow("id_y", "y", "y"),
     Arrow("0x", "0", "x"), Arrow("0y", "0", "y"),
     Arrow("i", "x", "y"), Arrow("j", "y", "x")],
    {"0": "id_0", "x": "id_x", "y": "id_y"},
    {("id_0", "id_0"): "id_0", ("0x", "id_0"): "0x", ("0y", "id_0"): "0y",
     ("id_x", "0x"): "0x", ("i", "0x"): "0y",
     ("id_y", "0y"): "0y", ("j", "0y"): "0x",
     ("id_x", "id_x"): "id_x", ("i", "id_x"): "i",
     ("id_y", "id_y"): "id_y", ("j", "id_y"): "j",
     ("id_y", "i"): "i", ("j", "i"): "id_x",
     ("id_x", "j"): "j", ("i", "j"): "id_y"},
    name="walk")

F_WALK = FunctorData(
    WALK, WALK, {"0": "x", "x": "y", "y": "x"},
    {"id_0": "id_x", "id_x": "id_y", "id_y": "id_x",
     "0x": "i", "0y": "id_x", "i": "j", "j": "i"},
    name="cycle")

AUT = FinCategory(
    ["0", "z"],
    [Arrow("id_0", "0", "0"), Arrow("u", "0", "z"),
     Arrow("e", "z", "z"), Arrow("id_z", "z", "z")],
    {"0": "id_0", "z": "id_z"},
    {("id_0", "id_0"): "id_0", ("u", "id_0"): "u",
     ("e", "u"): "u", ("id_z", "u"): "u",
     ("e", "e"): "id_z", ("id_z", "e"): "e", ("e", "id_z"): "e",
     ("id_z", "id_z"): "id_z"},
    name="aut")

F_AUT = FunctorData(AUT, AUT, {"0": "z", "z": "z"},
                    {"id_0": "id_z", "u": "e", "e": "id_z", "id_z": "id_z"},
                    name="twist")

IDEM = FinCategory(
    ["0", "w"],
    [Arrow("id_0", "0", "0"), Arrow("u", "0", "w"),
     Arrow("p", "w", "w"), Arrow("id_w", "w", "w")],
    {"0": "id_0", "w": "id_w"},
    {("id_0", "id_0"): "id_0", ("u", "id_0"): "u",
     ("p", "u"): "u", ("id_w", "u"): "u",
     ("p", "p"): "p", ("id_w", "p"): "p", ("p", "id_w"): "p",
     ("id_w", "id_w"): "id_w"},
    name="idem")

F_IDEM = FunctorData(IDEM, IDEM, {"0": "w", "w": "w"},
                     {"id_0": "id_w", "u": "p", "p": "id_w", "id_w": "id_w"},
                     name="collapse")

DISCRETE2 = FinCategory(
    ["a", "b"],
    [Arrow("id_a", "a", "a"), Arrow("id_b", "b", "b")],
    {"a": "id_a", "b": "id_b"},
    {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"},
    name="disc2")

SWAP2 = FunctorData(DISCRETE2, DISCRETE2, {"a": "b", "b": "a"},
                    {"id_a": "id_b", "id_b": "id_a"}, name="swap")

INSTANCES = [JOIN_ONE, SUCC3, F_WALK, F_AUT, F_IDEM]


# --- chain construction ---------------------------------------------------------

def test_chain_join_with_one():
    chain = lambek_chain(JOIN_ONE)
    assert chain.stabilized and chain.index == 1
    assert chain.carrier == "1"
    assert chain.structure == "id_1" and chain.structure_inverse == "id_1"
    assert chain.objects == ["0", "1", "1"]
    assert chain.connectors == ["0to1", "id_1"]


def test_chain_constant_functor_lands_on_its_value():
    const = constant_functor(WALK, WALK, "y")
    chain = lambek_chain(const)
    assert chain.stabilized and chain.index == 1
    assert chain.carrier == "y" and chain.structure == "id_y"
    const_init = constant_functor(TWO, TWO, "0")
    chain0 = lambek_chain(const_init)
    assert chain0.index == 0 and chain0.carrier == "0"


def test_chain_identity_functor_stops_at_initial_object():
    chain = lambek_chain(identity_functor(TWO))
    assert chain.stabilized and chain.index == 0
    assert chain.carrier == "0" and chain.structure == "id_0"


def test_chain_capped_successor():
    chain = lambek_chain(SUCC3)
    assert chain.stabilized and chain.index == 2
    assert chain.carrier == "2" and chain.structure == "id_2"
    assert chain.objects[:4] == ["0", "1", "2", "2"]


def test_chain_walking_iso_has_nonidentity_structure():
    chain = lambek_chain(F_WALK)
    assert chain.stabilized and chain.index == 1
    assert chain.carrier == "x"
    assert chain.structure == "j" and chain.structure_inverse == "i"


def test_chain_automorphism_structure_is_self_inverse():
    chain = lambek_chain(F_AUT)
    assert chain.stabilized and chain.index == 1
    assert chain.carrier == "z"
    assert chain.structure == "e" and chain.structure_inverse == "e"


def test_chain_idempotent_prefix_repeats_a_stage():
    chain = lambek_chain(F_IDEM)
    assert chain.stabilized and chain.index == 2
    assert chain.carrier == "w"
    # stages 1 and 2 are the same ambient object reached by a non-iso connector
    assert chain.objects[1] == chain.objects[2] == "w"
    assert chain.connectors == ["u", "p", "id_w"]


def test_chain_without_initial_object():
    with pytest.raises(NoInitialObject):
        lambek_chain(identity_functor(DISCRETE2))


def test_chain_step_budget():
    chain = lambek_chain(SUCC4, max_steps=2)
    assert not chain.stabilized
    assert chain.index is None and chain.structure is None
    with pytest.raises(ValidationError):
        lambek_chain(SUCC4, max_steps=0)
    assert lambek_chain(SUCC4, max_steps=8).stabilized


def test_validate_endofunctor_rejects_mismatched_boundary():
    with pytest.raises(TypeMismatch):
        validate_endofunctor(thin_functor(TWO, THREE, {"0": "0", "1": "1"}))


# --- arrow-level initiality: exhaustive count vs the chain cocone ----------------

def all_algebra_structures(endo):
    c = endo.source
    for obj in sorted(c.objects):
        for x in sorted(c.hom(endo.on_obj(obj), obj)):
            yield obj, x


@pytest.mark.parametrize("endo", INSTANCES, ids=lambda f: f.name)
def test_every_algebra_gets_exactly_one_morphism(endo):
    chain = lambek_chain(endo)
    seen = 0
    for obj, x in all_algebra_structures(endo):
        found = algebra_morphisms(chain, obj, x)
        assert len(found) == 1
        assert cocone_mediator(chain, obj, x) == found[0]
        assert initial_algebra_mediator(chain, obj, x) == found[0]
        seen += 1
    assert seen >= 1


def test_mediator_counts_on_parallel_arrows():
    # hom(z, z) carries two algebra structures; each selects a different morphism
    chain = lambek_chain(F_AUT)
    assert initial_algebra_mediator(chain, "z", "id_z") == "e"
    assert initial_algebra_mediator(chain, "z", "e") == "id_z"


def test_algebra_morphisms_rejects_wrong_boundary():
    chain = lambek_chain(JOIN_ONE)
    with pytest.raises(TypeMismatch):
        algebra_morphisms(chain, "0", "id_1")
    with pytest.raises(ValidationError):
        algebra_morphisms(lambek_chain(SUCC4, max_steps=2), "3", "id_3")


# --- chains over thin categories recover least fixpoints -------------------------

POSET_SHAPES = [
    ("c2", ["0", "1"], {("0", "1")}),
    ("c3", ["0", "1", "2"], {("0", "1"), ("1", "2"), ("0", "2")}),
    ("diamond", ["b", "l", "r", "t"],
     {("b", "l"), ("b", "r"), ("l", "t"), ("r", "t"), ("b", "t")}),
    ("fork", ["b", "m", "x", "y"],
     {("b", "m"), ("m", "x"), ("m", "y"), ("b", "x"), ("b", "y")}),
]


def monotone_assignments(elements, order):
    for images in itertools.product(elements, repeat=len(elements)):
        omap = dict(zip(elements, images))
        if all((omap[x], omap[y]) in order or omap[x] == omap[y]
               for (x, y) in order):
            yield omap


def test_thin_chains_match_kleene_iteration():
    checked = 0
    for name, elements, strict in POSET_SHAPES:
        cat = thin_cat(name, elements, strict)
        order = set(strict) | {(x, x) for x in elements}
        pos = PointedPoset(elements, order, "0" if "0" in elements else "b")
        for omap in monotone_assignments(list(elements), order):
            endo = thin_functor(cat, cat, omap)
            chain = lambek_chain(endo, max_steps=len(elements) + 1)
            assert chain.stabilized
            assert chain.carrier == kleene_star(MonotoneMap(pos, pos, omap))
            for obj, x in all_algebra_structures(endo):
                assert len(algebra_morphisms(chain, obj, x)) == 1
            checked += 1
    assert checked > 50


# --- the chain as a category with a shift ----------------------------------------

def test_realization_walking_iso():
    real = chain_realization(lambek_chain(F_WALK))
    k = real.category
    assert list(k.objects) == ["n0", "n1"]
    assert sorted(k.arrows) == ["0x#0>1", "id_0#0>0", "id_x#1>1"]
    assert real.shift.omap == {"n0": "n1", "n1": "n1"}
    # every arrow shifts onto the cap stage
    assert real.shift.amap == {"id_0#0>0": "id_x#1>1", "0x#0>1": "id_x#1>1",
                               "id_x#1>1": "id_x#1>1"}
    assert real.inclusion.omap == {"n0": "0", "n1": "x"}
    assert real.cell.mu.components == {"n0": "id_x", "n1": "i"}


def test_realization_keeps_repeated_stages_apart():
    real = chain_realization(lambek_chain(F_IDEM))
    k = real.category
    assert list(k.objects) == ["n0", "n1", "n2"]
    assert real.shift.omap == {"n0": "n1", "n1": "n2", "n2": "n2"}
    # stages 1 and 2 both sit over w but carry distinct copies of its arrows
    assert "p#1>1" in k.arrows and "p#2>2" in k.arrows
    assert real.shift.on_arrow("u#0>1") == "p#1>2"
    assert real.shift.on_arrow("p#1>1") == "id_w#2>2"
    assert real.inclusion.on_obj("n1") == real.inclusion.on_obj("n2") == "w"


def test_realization_requires_stabilized_chain():
    with pytest.raises(ValidationError):
        chain_realization(lambek_chain(SUCC4, max_steps=2))


# --- algebra cells and their unique connecting 2-cells ----------------------------

@pytest.mark.parametrize("endo", INSTANCES, ids=lambda f: f.name)
def test_mediator_exists_and_connects_uniquely(endo):
    chain = lambek_chain(endo)
    real = chain_realization(chain)
    found = pseudo_initial_mediator(chain, endo)
    assert isinstance(found, AlgebraOneCell)
    assert found.algebra == endo
    assert is_invertible_transf(found.mu)
    # determinism of the search
    assert pseudo_initial_mediator(chain, endo) == found
    # a unique invertible 2-cell connects the found cell to the canonical one
    psi = unique_algebra_2cell(chain, found, real.cell)
    assert is_invertible_transf(psi)
    # and the self-pair admits only the identity
    assert unique_algebra_2cell(chain, found, found) == identity_transf(found.u)


def test_two_cell_filter_discards_noncommuting_candidates():
    chain = lambek_chain(F_AUT)
    real = chain_realization(chain)
    cell = real.cell
    invertible = [t for t in enumerate_nat_transfs(cell.u, cell.u)
                  if is_invertible_transf(t)]
    # the automorphism e gives a second invertible candidate
    assert len(invertible) == 2
    psi = unique_algebra_2cell(chain, cell, cell)
    assert psi == identity_transf(cell.u)


def test_no_mediator_into_swap_on_discrete():
    chain = lambek_chain(JOIN_ONE)
    with pytest.raises(NoMediator):
        pseudo_initial_mediator(chain, SWAP2)


def test_unique_2cell_reports_zero_witnesses():
    chain = lambek_chain(JOIN_ONE)
    real = chain_realization(chain)
    idd = identity_functor(DISCRETE2)
    cells = []
    for obj in ["a", "b"]:
        u = constant_functor(real.category, DISCRETE2, obj)
        mu = NatTransfData(compose_functors(u, real.shift),
                           compose_functors(idd, u),
                           {x: DISCRETE2.id_of(obj) for x in real.category.objects})
        cells.append(AlgebraOneCell(real.shift, idd, u, mu))
    with pytest.raises(UniquenessViolation) as info:
        unique_algebra_2cell(chain, cells[0], cells[1])
    assert info.value.count == 0


def test_unique_2cell_rejects_foreign_cells():
    chain = lambek_chain(JOIN_ONE)
    real = chain_realization(chain)
    other = chain_realization(lambek_chain(F_AUT))
    with pytest.raises(TypeMismatch):
        unique_algebra_2cell(chain, real.cell, other.cell)


def test_one_cell_construction_rejects_bad_data():
    shift = identity_functor(TWO)
    algebra = constant_functor(TWO, TWO, "1")
    u = constant_functor(TWO, TWO, "0")
    mu = NatTransfData(compose_functors(u, shift), compose_functors(algebra, u),
                       {"0": "0to1", "1": "0to1"})
    with pytest.raises(NotInvertible):
        AlgebraOneCell(shift, algebra, u, mu)
    with pytest.raises(TypeMismatch):
        AlgebraOneCell(shift, algebra, identity_functor(AUT), mu)
    with pytest.raises(TypeMismatch):
        AlgebraOneCell(shift, algebra, u, identity_transf(u))


def test_mediator_respects_search_bound():
    chain = lambek_chain(F_IDEM)
    with pytest.raises(SizeCap):
        pseudo_initial_mediator(chain, F_IDEM, bound=SearchBound(max_objects=1))


# --- the structure isomorphism as an adjoint equivalence -------------------------

@pytest.mark.parametrize("endo", INSTANCES, ids=lambda f: f.name)
def test_adjoint_equivalence_triangles(endo):
    chain = lambek_chain(endo)
    eq = adjoint_equivalence_from_initial(chain)
    assert eq.right.components["*"] == chain.structure
    assert eq.left.components["*"] == chain.structure_inverse
    assert eq.unit == identity_transf(point_functor(endo.source, chain.carrier))


def test_adjoint_equivalence_walking_iso_components():
    eq = adjoint_equivalence_from_initial(lambek_chain(F_WALK))
    assert eq.right.components == {"*": "j"}
    assert eq.left.components == {"*": "i"}


def test_adjoint_equivalence_rejects_corrupt_certificate():
    chain = lambek_chain(F_WALK)
    corrupt = dataclasses.replace(chain, structure_inverse="j")
    with pytest.raises(NotInvertible):
        adjoint_equivalence_from_initial(corrupt)
    with pytest.raises(ValidationError):
        adjoint_equivalence_from_initial(lambek_chain(SUCC4, max_steps=2))


# --- double application ------------------------------------------------------------

@pytest.mark.parametrize("endo", INSTANCES, ids=lambda f: f.name)
def test_double_application_lands_on_same_carrier(endo):
    out = freyd_composite_check(endo)
    assert out["single_stabilized"] and out["double_stabilized"]
    assert out["forward_count"] == 1
    assert out["holds"] is True


def test_double_application_iso_is_nontrivial_for_walking_iso():
    out = freyd_composite_check(F_WALK)
    # the double chain stops at y, one iso away from the single carrier x
    assert out["iso"] == "j"


def test_double_application_reports_nonstabilizing_chain():
    out = freyd_composite_check(SUCC4, max_steps=2)
    assert not out["single_stabilized"]
    assert out["holds"] is False
