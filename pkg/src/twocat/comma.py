"""Comma (slice) 2-categories over a lax functor and their induced functors.

Only the variant with legs p : u(a) -> b and cells alpha : p => p' u(f) is
built by hand; the other three are obtained from it by the op/co duality
formulas so orientation bookkeeping lives in one place.  Every carrier keeps
labels ((a, p), (f, alpha), gamma) so downstream certificate checks can
compare discovered witnesses against explicitly named cells.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .core import (TwoCategory, check_budget, dual, lwhisk, rwhisk,
                   tabulate_two_category)
from .functors import (ColaxFunctor, LaxFunctor, Transformation, compose_lax,
                       dual_functor, fiber, identity_functor, strict_co_rep)

VARIANTS = ("lax", "oplax", "colax", "opcolax")


@dataclass
class CommaTwoCat:
    carrier: TwoCategory
    variant: str
    functor: Any                 # the functor the comma was taken over (as passed)
    base_object: int
    source_cat: TwoCategory      # A and B in display orientation
    target_cat: TwoCategory
    _obj_ix: dict = field(repr=False, default_factory=dict)
    _one_ix: dict = field(repr=False, default_factory=dict)
    _two_ix: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        C = self.carrier
        self._obj_ix = {lab: i for i, lab in enumerate(C.obj_labels)}
        self._one_ix = {(C.one_src[j], C.one_tgt[j], lab): j
                        for j, lab in enumerate(C.one_labels)}
        self._two_ix = {(C.two_src[k], C.two_tgt[k], lab): k
                        for k, lab in enumerate(C.two_labels)}

    def obj_of(self, label) -> int:
        return self._obj_ix[label]

    def one_of(self, src: int, tgt: int, label) -> int:
        return self._one_ix[(src, tgt, label)]

    def two_of(self, src: int, tgt: int, label) -> int:
        return self._two_ix[(src, tgt, label)]


def _comma_lax(u: LaxFunctor, b: int, budget: Optional[int] = None) -> TwoCategory:
    A, B = u.source, u.target
    objs = [(a, p) for a in A.objects() for p in B.one_cells()
            if B.one_src[p] == u.obj(a) and B.one_tgt[p] == b]
    obj_pos = {lab: i for i, lab in enumerate(objs)}
    ones = []
    for si, (a, p) in enumerate(objs):
        for ti, (a2, p2) in enumerate(objs):
            for f in A.one_cells_between(a, a2):
                comp = B.compose1(p2, u.one(f))
                for al in B.two_cells_between(p, comp):
                    ones.append((si, ti, (f, al)))
    check_budget(len(objs) + len(ones), budget)
    twos = []
    for j1, (s1, t1, (f, al)) in enumerate(ones):
        for j2, (s2, t2, (g, be)) in enumerate(ones):
            if (s1, t1) != (s2, t2):
                continue
            p2 = objs[t1][1]
            for ga in A.two_cells_between(f, g):
                if B.vcompose(lwhisk(B, p2, u.two(ga)), al) == be:
                    twos.append((j1, j2, ga))
    check_budget(len(objs) + len(ones) + len(twos), budget)

    def id1_of(i):
        a, p = objs[i]
        return (A.id1_of(a), B.hcompose(B.id2_of(p), u.unit(a)))

    def comp1_of(j2, j1):
        f, al = ones[j1][2]
        g, be = ones[j2][2]
        p2 = objs[ones[j2][1]][1]
        fg = A.compose1(g, f)
        cell = B.vcompose(lwhisk(B, p2, u.comp(g, f)),
                          B.vcompose(rwhisk(B, be, u.one(f)), al))
        return (fg, cell)

    return tabulate_two_category(
        objs, ones, twos,
        id1_of=id1_of,
        id2_of=lambda j: A.id2_of(ones[j][2][0]),
        comp1_of=comp1_of,
        vcomp_of=lambda k2, k1: A.vcompose(twos[k2][2], twos[k1][2]),
        hcomp_of=lambda k2, k1: A.hcompose(twos[k2][2], twos[k1][2]),
        budget=budget)


def comma(u, b: int, variant: str = "lax", budget: Optional[int] = None) -> CommaTwoCat:
    """The comma 2-category of the functor u over the object b.

    For the lax and oplax variants u is a lax functor A -> B; for the colax
    and opcolax variants u is a colax functor given through its lax
    representation between the 2-cell duals (pass a ColaxFunctor or the
    representation itself).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown comma variant {variant!r}")
    if isinstance(u, ColaxFunctor):
        u = u.rep if variant in ("colax", "opcolax") else u
    if variant == "lax":
        carrier = _comma_lax(u, b, budget)
        carrier.name = f"comma_lax(b={b})"
        return CommaTwoCat(carrier, variant, u, b, u.source, u.target)
    if variant == "oplax":
        inner = _comma_lax(dual_functor(u, "op"), b, budget)
        carrier = dual(inner, "op")
        carrier.name = f"comma_oplax(b={b})"
        return CommaTwoCat(carrier, variant, u, b, u.source, u.target)
    rep = u
    A = dual(rep.source, "co")
    B = dual(rep.target, "co")
    if variant == "colax":
        inner = _comma_lax(rep, b, budget)
        carrier = dual(inner, "co")
        carrier.name = f"comma_colax(b={b})"
        return CommaTwoCat(carrier, variant, rep, b, A, B)
    inner = _comma_lax(dual_functor(rep, "op"), b, budget)
    carrier = dual(dual(inner, "co"), "op")
    carrier.name = f"comma_opcolax(b={b})"
    return CommaTwoCat(carrier, variant, rep, b, A, B)


def comma_of_strict(u: LaxFunctor, b: int, variant: str,
                    budget: Optional[int] = None) -> CommaTwoCat:
    """Comma of a strict functor in any variant (strict functors are both
    lax and colax, so the representation is transported automatically)."""
    if variant in ("lax", "oplax"):
        return comma(u, b, variant, budget)
    return comma(strict_co_rep(u), b, variant, budget)


def canonical_slice(A: TwoCategory, a: int, variant: str = "lax",
                    budget: Optional[int] = None) -> CommaTwoCat:
    """comma(id_A, a, variant)."""
    if variant in ("lax", "oplax"):
        return comma(identity_functor(A), a, variant, budget)
    return comma(identity_functor(dual(A, "co")), a, variant, budget)


def comma_projection(ct: CommaTwoCat) -> LaxFunctor:
    """The strict projection (a, p) |-> a from the comma to its source."""
    C = ct.carrier
    return LaxFunctor.strict_from_maps(
        C, ct.source_cat,
        obj_map={i: lab[0] for i, lab in enumerate(C.obj_labels)},
        one_map={j: lab[0] for j, lab in enumerate(C.one_labels)},
        two_map={k: lab for k, lab in enumerate(C.two_labels)},
        name="comma_projection")


# ---------------------------------------------------------------------------
# a lazy comma over a functor with a virtual (non-tabulated) source

class VirtualCommaLax:
    """comma(u, b, lax) as a lazy 2-category for functors out of virtual
    2-categories.  Cells carry their endpoints:

      object   (a, p)
      1-cell   (src_obj, tgt_obj, f, alpha)
      2-cell   (src_one, tgt_one, gamma)
    """

    is_finite = False

    def __init__(self, u: LaxFunctor, b: int):
        self.u = u
        self.b = b
        self.base = u.source
        self.amb = u.target

    def objects(self):
        B = self.amb
        for a in self.base.objects():
            for p in B.one_cells():
                if B.one_src[p] == self.u.obj(a) and B.one_tgt[p] == self.b:
                    yield (a, p)

    def src1(self, c):
        return c[0]

    def tgt1(self, c):
        return c[1]

    def src2(self, x):
        return x[0]

    def tgt2(self, x):
        return x[1]

    def id1_of(self, o):
        a, p = o
        B = self.amb
        return (o, o, self.base.id1_of(a), B.hcompose(B.id2_of(p), self.u.unit(a)))

    def id2_of(self, c):
        return (c, c, self.base.id2_of(c[2]))

    def compose1(self, c2, c1):
        B = self.amb
        f, al = c1[2], c1[3]
        g, be = c2[2], c2[3]
        p2 = c2[1][1]
        cell = B.vcompose(lwhisk(B, p2, self.u.comp(g, f)),
                          B.vcompose(rwhisk(B, be, self.u.one(f)), al))
        return (c1[0], c2[1], self.base.compose1(g, f), cell)

    def vcompose(self, x2, x1):
        return (x1[0], x2[1], self.base.vcompose(x2[2], x1[2]))

    def hcompose(self, x2, x1):
        return (self.compose1(x2[0], x1[0]), self.compose1(x2[1], x1[1]),
                self.base.hcompose(x2[2], x1[2]))

    def one_cells_between_bounded(self, src, tgt, paths):
        """1-cells src -> tgt whose base part runs over the given paths."""
        B = self.amb
        out = []
        for f in paths:
            comp = B.compose1(tgt[1], self.u.one(f))
            for al in B.two_cells_between(src[1], comp):
                out.append((src, tgt, f, al))
        return out

    def two_cells_between(self, c1, c2):
        """2-cells c1 => c2; the base must support bounded 2-cell enumeration."""
        B = self.amb
        out = []
        p2 = c1[1][1]
        for ga in self.base.two_cells_between(c1[2], c2[2]):
            if B.vcompose(lwhisk(B, p2, self.u.two(ga)), c1[3]) == c2[3]:
                out.append((c1, c2, ga))
        return out


# ---------------------------------------------------------------------------
# the induced functor between lax commas

def triangle_is_valid(u: LaxFunctor, v: LaxFunctor, w: LaxFunctor,
                      sigma: Transformation) -> bool:
    """Endpoint sanity of the triangle data: sigma must be oplax from v∘u to w."""
    return (sigma.kind in ("oplax", "strict")
            and u.source is w.source and u.target is v.source
            and v.target is w.target)


def induced_functor(u: LaxFunctor, sigma: Transformation, c: int,
                    w_comma: Optional[CommaTwoCat] = None,
                    v_comma: Optional[CommaTwoCat] = None,
                    budget: Optional[int] = None) -> LaxFunctor:
    """The functor comma(w, c) -> comma(v, c) induced by a triangle
    (u : A -> B, w : A -> C, v : B -> C) commuting up to an oplax
    transformation sigma : v∘u => w.

    Sends (a, p) to (u(a), p sigma_a) and (f, alpha) to
    (u(f), (p' * sigma_f)(alpha * sigma_a)); its structural cells are those
    of u, so it is strict as soon as u is.
    """
    w = sigma.tgt
    C = w.target
    if w_comma is None:
        w_comma = comma(w, c, "lax", budget)
    if v_comma is None:
        raise ValueError("pass the target comma (over v) explicitly")
    X, Y = w_comma.carrier, v_comma.carrier

    def on_obj(i):
        a, p = X.obj_labels[i]
        return v_comma.obj_of((u.obj(a), C.compose1(p, sigma.component(a))))

    def on_one(j):
        f, al = X.one_labels[j]
        si, ti = X.one_src[j], X.one_tgt[j]
        a = X.obj_labels[si][0]
        p2 = X.obj_labels[ti][1]
        cell = C.vcompose(lwhisk(C, p2, sigma.nat(f)),
                          rwhisk(C, al, sigma.component(a)))
        return v_comma.one_of(on_obj(si), on_obj(ti), (u.one(f), cell))

    def on_two(k):
        ga = X.two_labels[k]
        return v_comma.two_of(on_one(X.two_src[k]), on_one(X.two_tgt[k]), u.two(ga))

    def unit(i):
        a, _ = X.obj_labels[i]
        oi = on_obj(i)
        return v_comma.two_of(Y.id1[oi], on_one(X.id1[i]), u.unit(a))

    def comp(j2, j1):
        f = X.one_labels[j1][0]
        g = X.one_labels[j2][0]
        src = Y.comp1[(on_one(j2), on_one(j1))]
        tgt = on_one(X.comp1[(j2, j1)])
        return v_comma.two_of(src, tgt, u.comp(g, f))

    return LaxFunctor(X, Y, on_obj, on_one, on_two, unit, comp,
                      strict=u.strict, name=f"induced(c={c})")


def induced_functor_for_triangle(u: LaxFunctor, v: LaxFunctor, w: LaxFunctor,
                                 sigma: Transformation, c: int,
                                 budget: Optional[int] = None
                                 ) -> tuple[LaxFunctor, CommaTwoCat, CommaTwoCat]:
    """Convenience wrapper building both commas for a triangle."""
    if not triangle_is_valid(u, v, w, sigma):
        raise ValueError("triangle data does not typecheck")
    wc = comma(w, c, "lax", budget)
    vc = comma(v, c, "lax", budget)
    return induced_functor(u, sigma, c, wc, vc, budget), wc, vc


# ---------------------------------------------------------------------------
# the fiber-to-comma embedding

_KIND_TO_VARIANT = {"pre": "opcolax", "preop": "colax",
                    "preco": "oplax", "precoop": "lax"}


def j_embedding(u: LaxFunctor, b: int, kind: str = "precoop",
                fib: Optional[TwoCategory] = None,
                cm: Optional[CommaTwoCat] = None,
                budget: Optional[int] = None) -> tuple[LaxFunctor, TwoCategory, CommaTwoCat]:
    """The strict embedding a |-> (a, 1_b) of the fiber over b into the comma
    variant matching the prefibration kind.  Returns (J, fiber, comma)."""
    if not u.strict:
        raise ValueError("the embedding is defined for strict functors")
    if kind not in _KIND_TO_VARIANT:
        raise ValueError(f"unknown prefibration kind {kind!r}")
    variant = _KIND_TO_VARIANT[kind]
    B = u.target
    if fib is None:
        fib = fiber(u, b)
    if cm is None:
        cm = comma_of_strict(u, b, variant, budget)
    leg = B.id1_of(b)
    leg2 = B.id2_of(leg)
    obj_map = {i: cm.obj_of((lab, leg)) for i, lab in enumerate(fib.obj_labels)}
    one_map = {}
    for j, f in enumerate(fib.one_labels):
        one_map[j] = cm.one_of(obj_map[fib.one_src[j]], obj_map[fib.one_tgt[j]],
                               (f, leg2))
    two_map = {}
    for k, x in enumerate(fib.two_labels):
        two_map[k] = cm.two_of(one_map[fib.two_src[k]], one_map[fib.two_tgt[k]], x)
    J = LaxFunctor.strict_from_maps(fib, cm.carrier, obj_map, one_map, two_map,
                                    name=f"J(b={b})")
    return J, fib, cm
