"""Model-generic fixpoint-operator contract and the law-checking engine.

A model adapter packages one ambient setting (pointed posets, multiset
relations, ideal relations over preorders, finite categories) behind a
single interface: 1-cells with identities and composition, 2-cells with
vertical composition and whiskering, a star operation sending endo 1-cells
to points One -> A, and three structural witness families:

    fix(f)         : f . f*   =>  f*
    dinat(f, g)    : (fg)*    =>  f . (gf)*
    unif(s,f,g,y)  : s . f*   =>  g*      given  y : s . f => g . s, s strict

Every law below is checked by evaluating both sides of its pasting through
the adapter and comparing; no law is derived from another.

Thin adapters present a 2-cell as a ThinCell: the bare claim that its two
boundary 1-cells are equal.  Pasting then only composes boundaries, and
each law degenerates to the chain of 1-cell equalities it means in a
locally discrete setting.  The claim is tested when a cell is consumed
(cell_ok / eq2), not at construction, so a violated law surfaces as a
counterexample in a report instead of a crash inside a pasting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import (BoundaryMismatch, FixcatError, InvalidSquare,
                     NoProducts, NotContractible, TypeMismatch)


@dataclass(frozen=True)
class ThinCell:
    """A 2-cell of a locally discrete model: the claim source == target."""

    source: Any
    target: Any

    def __repr__(self):
        return f"ThinCell({self.source!r} => {self.target!r})"


class FixpointModel:
    """Adapter contract consumed by the law engine.

    Concrete adapters fill in the abstract cell operations; the generic
    horizontal composite and the description hooks have workable defaults.
    `thin` marks adapters whose 2-cells are ThinCell claims.
    """

    name = "model"
    thin = True

    # -- objects and 1-cells ------------------------------------------------
    def identity(self, obj):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def src(self, f):
        raise NotImplementedError

    def dst(self, f):
        raise NotImplementedError

    def eq1(self, f, g) -> bool:
        raise NotImplementedError

    def eq_obj(self, a, b) -> bool:
        return a == b

    def terminal_obj(self):
        raise NotImplementedError

    def bang(self, obj):
        """The unique 1-cell obj -> terminal."""
        raise NotImplementedError

    def is_strict(self, s) -> bool:
        raise NotImplementedError

    def star(self, f):
        raise NotImplementedError

    # -- 2-cells -------------------------------------------------------------
    def id2(self, f):
        raise NotImplementedError

    def vcomp2(self, after, before):
        raise NotImplementedError

    def whisker_l(self, h, t):
        raise NotImplementedError

    def whisker_r(self, t, h):
        raise NotImplementedError

    def src2(self, t):
        raise NotImplementedError

    def dst2(self, t):
        raise NotImplementedError

    def eq2(self, a, b) -> bool:
        raise NotImplementedError

    def cell_ok(self, t) -> bool:
        raise NotImplementedError

    def is_invertible2(self, t) -> bool:
        raise NotImplementedError

    def inverse2(self, t):
        raise NotImplementedError

    def star_2cell(self, alpha):
        """Transport a 2-cell between endo 1-cells to one between their stars."""
        raise NotImplementedError

    def enumerate_invertible_cells(self, f, g):
        """All invertible 2-cells f => g; required of non-thin adapters only."""
        raise NotImplementedError

    def hcomp2(self, first, second):
        """second . first on 1-cells; standard whisker-then-stack composite."""
        return self.vcomp2(self.whisker_l(self.dst2(second), first),
                           self.whisker_r(second, self.src2(first)))

    # -- witnesses -----------------------------------------------------------
    def fix_witness(self, f):
        raise NotImplementedError

    def dinat_witness(self, f, g):
        raise NotImplementedError

    def unif_witness(self, s, f, g, gamma):
        raise NotImplementedError

    # -- optional products ----------------------------------------------------
    def has_products(self) -> bool:
        return False

    def product_obj(self, a, b):
        raise NoProducts(f"{self.name} has no products")

    def proj1(self, a, b):
        raise NoProducts(f"{self.name} has no products")

    def proj2(self, a, b):
        raise NoProducts(f"{self.name} has no products")

    def pair(self, f, g):
        raise NoProducts(f"{self.name} has no products")

    def swap_cell(self, a, b):
        raise NoProducts(f"{self.name} has no products")

    # -- reporting hooks -------------------------------------------------------
    def describe1(self, f) -> str:
        return repr(f)

    def describe2(self, t) -> str:
        if isinstance(t, ThinCell):
            return f"{self.describe1(t.source)} => {self.describe1(t.target)}"
        return repr(t)


class ThinModel(FixpointModel):
    """Shared 2-cell calculus for locally discrete adapters."""

    thin = True

    def id2(self, f):
        return ThinCell(f, f)

    def vcomp2(self, after, before):
        if not self.eq1(before.target, after.source):
            raise BoundaryMismatch(
                f"{self.name}: vertical composite boundary mismatch: "
                f"{self.describe1(before.target)} vs {self.describe1(after.source)}")
        return ThinCell(before.source, after.target)

    def whisker_l(self, h, t):
        return ThinCell(self.compose(h, t.source), self.compose(h, t.target))

    def whisker_r(self, t, h):
        return ThinCell(self.compose(t.source, h), self.compose(t.target, h))

    def src2(self, t):
        return t.source

    def dst2(self, t):
        return t.target

    def cell_ok(self, t) -> bool:
        return self.eq1(t.source, t.target)

    def eq2(self, a, b) -> bool:
        # a nonexistent cell (boundary inequality) is never equal to anything
        return (self.cell_ok(a) and self.cell_ok(b)
                and self.eq1(a.source, b.source) and self.eq1(a.target, b.target))

    def is_invertible2(self, t) -> bool:
        return self.cell_ok(t)

    def inverse2(self, t):
        if not self.cell_ok(t):
            raise BoundaryMismatch(
                f"{self.name}: cannot invert a cell whose boundary equality fails: "
                f"{self.describe2(t)}")
        return ThinCell(t.target, t.source)

    def star_2cell(self, alpha):
        return ThinCell(self.star(alpha.source), self.star(alpha.target))


# ---------------------------------------------------------------------------
# Reports.

@dataclass
class LawReport:
    law_id: str
    statement: str
    instances: int
    passes: int
    counterexample: Optional[dict]
    vacuous: bool

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    @property
    def ok(self) -> bool:
        # a vacuous run is reported, never counted as green
        return not self.failed and not self.vacuous

    def line(self) -> str:
        status = "FAIL" if self.failed else ("VACUOUS" if self.vacuous else "pass")
        out = f"[{status}] {self.law_id}: {self.passes}/{self.instances}"
        if self.failed:
            ce = self.counterexample
            out += f"  counterexample {ce['inputs']}: {ce['left']} != {ce['right']}"
        return out


@dataclass
class Corpus:
    """Instance channels consumed by the law checks.

    Channels a model's corpus leaves empty make the corresponding laws
    report as vacuous rather than silently passing.
    """

    endos: list = field(default_factory=list)
    endo_cells: list = field(default_factory=list)       # alpha : f => f', endos
    dinat_pairs: list = field(default_factory=list)      # (f: A->B, g: B->A)
    dinat_triples: list = field(default_factory=list)    # (f: A->B, g: B->C, h: C->A)
    dinat_cells: list = field(default_factory=list)      # (alpha: f => f', g: B->A)
    unif_squares: list = field(default_factory=list)     # (s, f, g, gamma)
    unif_stacks: list = field(default_factory=list)      # ((s,f,g,gamma), (r,g,h,rho))
    unif_thetas: list = field(default_factory=list)      # (theta: s => r, f, g, gamma, rho)
    unif_transports: list = field(default_factory=list)  # (s, alpha: f=>h, beta: g=>k, gamma, rho)
    unif_dinat: list = field(default_factory=list)       # (s, r, f, g, h, k, gamma, rho)


def _run_law(law_id, statement, instances, eval_one, describe):
    tried = 0
    passes = 0
    counterexample = None
    for inst in instances:
        tried += 1
        try:
            ok, left, right = eval_one(inst)
        except FixcatError as e:
            ok, left, right = False, "<error>", f"{e.__class__.__name__}: {e}"
        if ok:
            passes += 1
        elif counterexample is None:
            counterexample = {"inputs": describe(inst), "raw": inst,
                              "left": left, "right": right}
    return LawReport(law_id, statement, tried, passes, counterexample,
                     vacuous=tried == 0)


# ---------------------------------------------------------------------------
# Law checks.

def check_fix(m: FixpointModel, corpus: Corpus):
    """The fixpoint cell itself and its naturality in the endo argument."""

    def d1(x):
        return m.describe1(x)

    def eval_cell(f):
        w = m.fix_witness(f)
        fs = m.star(f)
        want_src = m.compose(f, fs)
        shaped = m.eq1(m.src2(w), want_src) and m.eq1(m.dst2(w), fs)
        ok = shaped and m.cell_ok(w) and m.is_invertible2(w)
        return ok, m.describe2(w), f"invertible cell {d1(want_src)} => {d1(fs)}"

    def eval_nat(alpha):
        f, g = m.src2(alpha), m.dst2(alpha)
        astar = m.star_2cell(alpha)
        lhs = m.vcomp2(astar, m.fix_witness(f))
        rhs = m.vcomp2(m.fix_witness(g), m.hcomp2(astar, alpha))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    return [
        _run_law("fix.cell",
                 "fix(f) is a well-formed invertible 2-cell f.f* => f*",
                 corpus.endos, eval_cell, d1),
        _run_law("fix.naturality",
                 "star2(a) . fix(f) == fix(g) . hcomp(star2(a), a) for a: f => g",
                 corpus.endo_cells, eval_nat, m.describe2),
    ]


def check_dinat(m: FixpointModel, corpus: Corpus):
    """The dinaturality cell family and its axioms."""

    def d1(x):
        return m.describe1(x)

    def dpair(inst):
        f, g = inst
        return f"(f={d1(f)}, g={d1(g)})"

    def eval_cell(inst):
        f, g = inst
        w = m.dinat_witness(f, g)
        want_src = m.star(m.compose(f, g))
        want_dst = m.compose(f, m.star(m.compose(g, f)))
        shaped = m.eq1(m.src2(w), want_src) and m.eq1(m.dst2(w), want_dst)
        ok = shaped and m.cell_ok(w) and m.is_invertible2(w)
        return ok, m.describe2(w), f"invertible cell {d1(want_src)} => {d1(want_dst)}"

    def eval_unity(f):
        one = m.identity(m.src(f))
        lhs = m.dinat_witness(one, f)
        rhs = m.id2(m.star(f))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_fix_remark(f):
        # dinat over an identity inner leg determines fix
        one = m.identity(m.src(f))
        lhs = m.vcomp2(m.fix_witness(f), m.dinat_witness(f, one))
        rhs = m.id2(m.star(f))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_one_nat(inst):
        f, g, h = inst  # f: A->B, g: B->C, h: C->A
        lhs = m.vcomp2(m.whisker_l(g, m.dinat_witness(f, m.compose(h, g))),
                       m.dinat_witness(g, m.compose(f, h)))
        rhs = m.dinat_witness(m.compose(g, f), h)
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_two_nat(inst):
        alpha, g = inst  # alpha: f => f' with f, f': A->B, g: B->A
        f, f2 = m.src2(alpha), m.dst2(alpha)
        lhs = m.vcomp2(m.dinat_witness(f2, g),
                       m.star_2cell(m.whisker_r(alpha, g)))
        rhs = m.vcomp2(
            m.whisker_r(alpha, m.star(m.compose(g, f2))),
            m.vcomp2(m.whisker_l(f, m.star_2cell(m.whisker_l(g, alpha))),
                     m.dinat_witness(f, g)))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_fix_coherence(inst):
        f, g = inst
        fg = m.compose(f, g)
        paste = m.vcomp2(m.whisker_l(f, m.dinat_witness(g, f)),
                         m.dinat_witness(f, g))
        lhs = m.vcomp2(m.fix_witness(fg), paste)
        rhs = m.id2(m.star(fg))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    return [
        _run_law("dinat.cell",
                 "dinat(f,g) is a well-formed invertible 2-cell (fg)* => f.(gf)*",
                 corpus.dinat_pairs, eval_cell, dpair),
        _run_law("dinat.unity",
                 "dinat(id, f) == id2(f*)",
                 corpus.endos, eval_unity, d1),
        _run_law("dinat.fix_remark",
                 "fix(f) . dinat(f, id) == id2(f*)",
                 corpus.endos, eval_fix_remark, d1),
        _run_law("dinat.one_nat",
                 "whisker(g, dinat(f, hg)) . dinat(g, fh) == dinat(gf, h)",
                 corpus.dinat_triples, eval_one_nat,
                 lambda t: f"(f={d1(t[0])}, g={d1(t[1])}, h={d1(t[2])})"),
        _run_law("dinat.two_nat",
                 "dinat(f', g) . star2(a.g) == (a.(gf')*) . (f.star2(g.a)) . dinat(f, g)",
                 corpus.dinat_cells, eval_two_nat,
                 lambda t: f"(alpha={m.describe2(t[0])}, g={d1(t[1])})"),
        _run_law("dinat.fix_coherence",
                 "fix(fg) . whisker(f, dinat(g, f)) . dinat(f, g) == id2((fg)*)",
                 corpus.dinat_pairs, eval_fix_coherence, dpair),
    ]


def require_square(m: FixpointModel, s, f, g, gamma):
    """Validate uniformity-square data; raises InvalidSquare when it is broken."""
    if not m.is_strict(s):
        raise InvalidSquare(f"{m.describe1(s)} is not strict")
    want_src = m.compose(s, f)
    want_dst = m.compose(g, s)
    if not (m.eq1(m.src2(gamma), want_src) and m.eq1(m.dst2(gamma), want_dst)):
        raise InvalidSquare(
            f"square cell boundary is not {m.describe1(want_src)} => {m.describe1(want_dst)}")
    if not m.cell_ok(gamma):
        raise InvalidSquare(f"square cell does not commute: {m.describe2(gamma)}")
    if not m.is_invertible2(gamma):
        raise InvalidSquare(f"square cell is not invertible: {m.describe2(gamma)}")


def check_unif(m: FixpointModel, corpus: Corpus):
    """The uniformity cell family, its four axioms, and both coherences."""

    def d1(x):
        return m.describe1(x)

    def dsq(inst):
        s, f, g, gamma = inst
        return f"(s={d1(s)}, f={d1(f)}, g={d1(g)})"

    def eval_cell(inst):
        s, f, g, gamma = inst
        require_square(m, s, f, g, gamma)
        w = m.unif_witness(s, f, g, gamma)
        want_src = m.compose(s, m.star(f))
        want_dst = m.star(g)
        shaped = m.eq1(m.src2(w), want_src) and m.eq1(m.dst2(w), want_dst)
        ok = shaped and m.cell_ok(w)
        return ok, m.describe2(w), f"cell {d1(want_src)} => {d1(want_dst)}"

    def eval_invertible(inst):
        s, f, g, gamma = inst
        require_square(m, s, f, g, gamma)
        w = m.unif_witness(s, f, g, gamma)
        return m.is_invertible2(w), m.describe2(w), "an invertible 2-cell"

    def eval_unity(f):
        s = m.identity(m.src(f))
        gamma = m.id2(m.compose(s, f))
        lhs = m.unif_witness(s, f, f, gamma)
        rhs = m.id2(m.star(f))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_one_nat(inst):
        (s, f, g, gamma), (r, g2, h, rho) = inst
        if not m.eq1(g, g2):
            raise InvalidSquare("stacked squares do not share the middle endo")
        require_square(m, s, f, g, gamma)
        require_square(m, r, g, h, rho)
        stacked = m.vcomp2(m.whisker_r(rho, s), m.whisker_l(r, gamma))
        lhs = m.unif_witness(m.compose(r, s), f, h, stacked)
        rhs = m.vcomp2(m.unif_witness(r, g, h, rho),
                       m.whisker_l(r, m.unif_witness(s, f, g, gamma)))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_two_nat(inst):
        theta, f, g, gamma, rho = inst  # theta: s => r
        s, r = m.src2(theta), m.dst2(theta)
        if not (m.is_strict(s) and m.is_strict(r) and m.cell_ok(theta)
                and m.is_invertible2(theta)):
            raise InvalidSquare("theta is not an invertible cell between strict 1-cells")
        require_square(m, s, f, g, gamma)
        require_square(m, r, f, g, rho)
        pre_l = m.vcomp2(m.whisker_l(g, theta), gamma)
        pre_r = m.vcomp2(rho, m.whisker_r(theta, f))
        if not m.eq2(pre_l, pre_r):
            raise InvalidSquare("theta does not relate the two squares")
        lhs = m.unif_witness(s, f, g, gamma)
        rhs = m.vcomp2(m.unif_witness(r, f, g, rho),
                       m.whisker_r(theta, m.star(f)))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_transport(inst):
        s, alpha, beta, gamma, rho = inst  # alpha: f => h, beta: g => k
        f, h = m.src2(alpha), m.dst2(alpha)
        g, k = m.src2(beta), m.dst2(beta)
        require_square(m, s, f, g, gamma)
        require_square(m, s, h, k, rho)
        pre_l = m.vcomp2(rho, m.whisker_l(s, alpha))
        pre_r = m.vcomp2(m.whisker_r(beta, s), gamma)
        if not m.eq2(pre_l, pre_r):
            raise InvalidSquare("alpha/beta do not relate the two squares")
        lhs = m.vcomp2(m.unif_witness(s, h, k, rho),
                       m.whisker_l(s, m.star_2cell(alpha)))
        rhs = m.vcomp2(m.star_2cell(beta), m.unif_witness(s, f, g, gamma))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_fix_coherence(inst):
        s, f, g, gamma = inst
        require_square(m, s, f, g, gamma)
        w = m.unif_witness(s, f, g, gamma)
        lhs = m.vcomp2(m.inverse2(m.fix_witness(g)), w)
        rhs = m.vcomp2(
            m.whisker_l(g, w),
            m.vcomp2(m.whisker_r(gamma, m.star(f)),
                     m.whisker_l(s, m.inverse2(m.fix_witness(f)))))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    def eval_dinat_coherence(inst):
        # s: A->C, r: B->D strict; f: A->B, g: B->A, h: C->D, k: D->C;
        # gamma: r.f => h.s, rho: s.g => k.r
        s, r, f, g, h, k, gamma, rho = inst
        glue_r = m.vcomp2(m.whisker_l(h, rho), m.whisker_r(gamma, g))
        glue_s = m.vcomp2(m.whisker_l(k, gamma), m.whisker_r(rho, f))
        fg, gf = m.compose(f, g), m.compose(g, f)
        hk, kh = m.compose(h, k), m.compose(k, h)
        require_square(m, r, fg, hk, glue_r)
        require_square(m, s, gf, kh, glue_s)
        lhs = m.vcomp2(m.dinat_witness(h, k),
                       m.unif_witness(r, fg, hk, glue_r))
        rhs = m.vcomp2(
            m.whisker_l(h, m.unif_witness(s, gf, kh, glue_s)),
            m.vcomp2(m.whisker_r(gamma, m.star(gf)),
                     m.whisker_l(r, m.dinat_witness(f, g))))
        return m.eq2(lhs, rhs), m.describe2(lhs), m.describe2(rhs)

    return [
        _run_law("unif.cell",
                 "unif(s,f,g,y) is a well-formed 2-cell s.f* => g*",
                 corpus.unif_squares, eval_cell, dsq),
        _run_law("unif.invertible",
                 "unif(s,f,g,y) is invertible (reported separately from the axioms)",
                 corpus.unif_squares, eval_invertible, dsq),
        _run_law("unif.unity",
                 "unif(id, f, f, id2) == id2(f*)",
                 corpus.endos, eval_unity, d1),
        _run_law("unif.one_nat",
                 "unif(rs, f, h, stack(y, p)) == unif(r, g, h, p) . whisker(r, unif(s, f, g, y))",
                 corpus.unif_stacks, eval_one_nat,
                 lambda t: f"({dsq(t[0])} over {dsq(t[1])})"),
        _run_law("unif.two_nat",
                 "unif(s, f, g, y) == unif(r, f, g, p) . (theta . f*)",
                 corpus.unif_thetas, eval_two_nat,
                 lambda t: f"(theta={m.describe2(t[0])}, f={d1(t[1])}, g={d1(t[2])})"),
        _run_law("unif.transport",
                 "unif(s, h, k, p) . (s . star2(a)) == star2(b) . unif(s, f, g, y)",
                 corpus.unif_transports, eval_transport,
                 lambda t: f"(s={d1(t[0])}, alpha={m.describe2(t[1])}, beta={m.describe2(t[2])})"),
        _run_law("unif.fix_coherence",
                 "inv(fix(g)) . unif == (g . unif) . (y . f*) . (s . inv(fix(f)))",
                 corpus.unif_squares, eval_fix_coherence, dsq),
        _run_law("unif.dinat_coherence",
                 "dinat(h,k) . unif(r, fg, hk) == (h . unif(s, gf, kh)) . (y . (gf)*) . (r . dinat(f,g))",
                 corpus.unif_dinat, eval_dinat_coherence,
                 lambda t: f"(s={d1(t[0])}, r={d1(t[1])}, f={d1(t[2])}, g={d1(t[3])})"),
    ]


# ---------------------------------------------------------------------------
# Dinaturality from products, and operator comparison.

def build_dinat_via_products(m: FixpointModel, f, g):
    """Construct the dinat cell for (f, g) out of the star of sw . (f x g).

    Returns (cell, agreement): the constructed 2-cell (fg)-star-side to
    f-then-(gf)-star-side, and whether it coincides with the adapter's own
    dinat witness.  Only product-bearing (thin) adapters support this.
    """
    if not m.has_products():
        raise NoProducts(f"{m.name} does not supply products")
    if not m.thin:
        raise TypeMismatch("product route is only implemented for thin models")
    a, b = m.src(f), m.dst(f)
    if not (m.eq_obj(a, m.dst(g)) and m.eq_obj(b, m.src(g))):
        raise TypeMismatch("need f: A -> B and g: B -> A")
    p1 = m.proj1(a, b)
    p2 = m.proj2(a, b)
    fxg = m.pair(m.compose(f, p1), m.compose(g, p2))   # A x B -> B x A
    h = m.compose(m.swap_cell(b, a), fxg)              # A x B -> A x B
    sh = m.star(h)
    left = m.compose(p1, sh)                           # expected: (gf)*
    right = m.compose(p2, sh)                          # expected: (fg)*
    built = ThinCell(right, m.compose(f, left))
    agreement = m.eq2(built, m.dinat_witness(f, g))
    return built, agreement


@dataclass
class CompareReport:
    base: str
    instances: int
    deltas: list
    identity: bool
    certificate: str


def compare_operators(m1: FixpointModel, m2: FixpointModel, endos,
                      cells=(), pairs=()):
    """Search for an isomorphism of operators between two adapters.

    For each endo the candidate components star1(f) => star2(f) are
    narrowed by the fix-compatibility square; exactly one candidate must
    survive per endo (NotContractible otherwise).  Optional channels check
    the delta family against naturality cells and dinat pairs.
    """
    m = m1
    deltas = []
    searched = 0
    for f in endos:
        cands = _delta_candidates(m1, m2, f)
        searched += len(cands)
        good = []
        for d in cands:
            lhs = m.vcomp2(d, m1.fix_witness(f))
            rhs = m.vcomp2(m2.fix_witness(f), m.whisker_l(f, d))
            if m.eq2(lhs, rhs):
                good.append(d)
        if len(good) != 1:
            raise NotContractible(
                len(good),
                f"{m1.name} vs {m2.name} at {m.describe1(f)}: "
                f"{len(good)} fix-compatible candidates among {len(cands)}")
        delta = good[0]
        deltas.append({"endo": m.describe1(f), "candidates": len(cands),
                       "delta": m.describe2(delta),
                       "is_identity": m.eq2(delta, m.id2(m1.star(f)))})
    for alpha in cells:
        f, g = m.src2(alpha), m.dst2(alpha)
        d_f = _delta_for(m1, m2, f)
        d_g = _delta_for(m1, m2, g)
        lhs = m.vcomp2(d_g, m1.star_2cell(alpha))
        rhs = m.vcomp2(m2.star_2cell(alpha), d_f)
        if not m.eq2(lhs, rhs):
            raise NotContractible(0, f"delta is not natural at {m.describe2(alpha)}")
    for (f, g) in pairs:
        fg, gf = m.compose(f, g), m.compose(g, f)
        lhs = m.vcomp2(m2.dinat_witness(f, g), _delta_for(m1, m2, fg))
        rhs = m.vcomp2(m.whisker_l(f, _delta_for(m1, m2, gf)),
                       m1.dinat_witness(f, g))
        if not m.eq2(lhs, rhs):
            raise NotContractible(
                0, f"delta does not commute with dinat at (f={m.describe1(f)}, g={m.describe1(g)})")
    identity = all(d["is_identity"] for d in deltas) and bool(deltas)
    certificate = (f"each of {len(deltas)} components unique among "
                   f"{searched} invertible candidates searched")
    return CompareReport(m1.name + "|" + m2.name, len(deltas), deltas,
                         identity, certificate)


def _delta_candidates(m1, m2, f):
    s1, s2 = m1.star(f), m2.star(f)
    if m1.thin:
        return [ThinCell(s1, s2)] if m1.eq1(s1, s2) else []
    return m1.enumerate_invertible_cells(s1, s2)


def _delta_for(m1, m2, f):
    cands = _delta_candidates(m1, m2, f)
    good = []
    m = m1
    for d in cands:
        lhs = m.vcomp2(d, m1.fix_witness(f))
        rhs = m.vcomp2(m2.fix_witness(f), m.whisker_l(f, d))
        if m.eq2(lhs, rhs):
            good.append(d)
    if len(good) != 1:
        raise NotContractible(len(good), f"at {m.describe1(f)}")
    return good[0]


# ---------------------------------------------------------------------------
# Suite driver.

def run_suite(jobs, seed=0):
    """Run every law check for each (model, corpus) job; sorted by law id.

    Deterministic for a fixed corpus; the seed is only echoed so reports
    produced from seeded corpora carry their provenance.
    """
    reports = []
    for model, corpus in jobs:
        for rep in (check_fix(model, corpus) + check_dinat(model, corpus)
                    + check_unif(model, corpus)):
            rep.law_id = f"{model.name}/{rep.law_id}"
            reports.append(rep)
    return sorted(reports, key=lambda r: r.law_id)
