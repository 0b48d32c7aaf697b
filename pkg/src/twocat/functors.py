"""Lax 2-functors, transformations, coherence validation and elementary homotopies.

A lax functor stores its object/1-cell/2-cell maps plus the structural
2-cells u_a : 1_{u(a)} => u(1_a) and u_{g,f} : u(g)u(f) => u(gf).  Maps are
held as callables so functors in and out of lazily generated 2-categories
use the same type; finite functors are built from tables.

Orientation conventions follow the source text of the constructions: a lax
transformation sigma: u => v has sigma_f : sigma_{a'} u(f) => v(f) sigma_a,
an oplax one has sigma_f : v(f) sigma_a => sigma_{a'} u(f).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .core import (TwoCategory, ValidationReport, dual, interval, lwhisk,
                   product, rwhisk, tabulate_two_category)


@dataclass
class LaxFunctor:
    source: Any
    target: Any
    _obj: Callable
    _one: Callable
    _two: Callable
    _unit: Callable
    _comp: Callable
    strict: Optional[bool] = None
    name: Optional[str] = None

    # -- evaluation ---------------------------------------------------------
    def obj(self, a):
        return self._obj(a)

    def one(self, f):
        return self._one(f)

    def two(self, x):
        return self._two(x)

    def unit(self, a):
        """The structural 2-cell 1_{u(a)} => u(1_a)."""
        return self._unit(a)

    def comp(self, g, f):
        """The structural 2-cell u(g)u(f) => u(gf)."""
        return self._comp(g, f)

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_tables(source, target, obj_map, one_map, two_map,
                    unit_cells, comp_cells, name=None) -> "LaxFunctor":
        obj_map = dict(enumerate(obj_map)) if not isinstance(obj_map, dict) else obj_map
        one_map = dict(enumerate(one_map)) if not isinstance(one_map, dict) else one_map
        two_map = dict(enumerate(two_map)) if not isinstance(two_map, dict) else two_map
        unit_cells = dict(enumerate(unit_cells)) if not isinstance(unit_cells, dict) else unit_cells
        strict = (all(unit_cells[a] == target.id2_of(target.id1_of(obj_map[a]))
                      for a in obj_map)
                  and all(c == target.id2_of(target.compose1(one_map[g], one_map[f]))
                          for (g, f), c in comp_cells.items()))
        return LaxFunctor(source, target,
                          obj_map.__getitem__, one_map.__getitem__,
                          two_map.__getitem__, unit_cells.__getitem__,
                          lambda g, f: comp_cells[(g, f)],
                          strict=strict, name=name)

    @staticmethod
    def strict_from_maps(source, target, obj_map, one_map, two_map,
                         name=None) -> "LaxFunctor":
        """A strict functor: structural cells are forced identities."""
        obj_map = dict(enumerate(obj_map)) if not isinstance(obj_map, dict) else obj_map
        one_map = dict(enumerate(one_map)) if not isinstance(one_map, dict) else one_map
        two_map = dict(enumerate(two_map)) if not isinstance(two_map, dict) else two_map
        return LaxFunctor(
            source, target,
            obj_map.__getitem__, one_map.__getitem__, two_map.__getitem__,
            lambda a: target.id2_of(target.id1_of(obj_map[a])),
            lambda g, f: target.id2_of(target.compose1(one_map[g], one_map[f])),
            strict=True, name=name)


def identity_functor(C) -> LaxFunctor:
    return LaxFunctor(C, C, lambda a: a, lambda f: f, lambda x: x,
                      lambda a: C.id2_of(C.id1_of(a)),
                      lambda g, f: C.id2_of(C.compose1(g, f)),
                      strict=True, name="id")


def constant_functor(C, D, d) -> LaxFunctor:
    """The strict functor collapsing C onto the object d of D."""
    i1 = D.id1_of(d)
    i2 = D.id2_of(i1)
    return LaxFunctor(C, D, lambda a: d, lambda f: i1, lambda x: i2,
                      lambda a: i2, lambda g, f: i2, strict=True,
                      name=f"const({d})")


def compose_lax(v: LaxFunctor, u: LaxFunctor) -> LaxFunctor:
    """The composite v∘u with (vu)_a = v(u_a)∘v_{u(a)} and
    (vu)_{g,f} = v(u_{g,f})∘v_{u(g),u(f)}."""
    B = v.target

    def unit(a):
        return B.vcompose(v.two(u.unit(a)), v.unit(u.obj(a)))

    def comp(g, f):
        return B.vcompose(v.two(u.comp(g, f)), v.comp(u.one(g), u.one(f)))

    strict = (u.strict and v.strict) if (u.strict is not None and v.strict is not None) else None
    return LaxFunctor(u.source, B,
                      lambda a: v.obj(u.obj(a)),
                      lambda f: v.one(u.one(f)),
                      lambda x: v.two(u.two(x)),
                      unit, comp, strict=strict)


# ---------------------------------------------------------------------------
# structural cells of composable strings

def structural_cell_of_string(u: LaxFunctor, steps, at=None):
    """Structural 2-cell u(f_m)...u(f_1) => u(f_m...f_1) of a composable string.

    Degenerate conventions: the empty string at an object a gives the unit
    cell u_a, a single cell gives the identity 2-cell of its image.
    """
    A, B = u.source, u.target
    steps = list(steps)
    if not steps:
        if at is None:
            raise ValueError("empty string needs its anchor object")
        return u.unit(at)
    if len(steps) == 1:
        return B.id2_of(u.one(steps[0]))
    if len(steps) == 2:
        return u.comp(steps[1], steps[0])
    head, last = steps[:-1], steps[-1]
    head_comp = A.compose1_path(A.src1(steps[0]), head)
    return B.vcompose(u.comp(last, head_comp),
                      lwhisk(B, u.one(last), structural_cell_of_string(u, head)))


def structural_cell(u: LaxFunctor, steps):
    """Def-style structural cell for a string of at least two composable 1-cells."""
    steps = list(steps)
    if len(steps) < 2:
        raise ValueError("string must contain at least two 1-cells")
    A = u.source
    for s, t in zip(steps, steps[1:]):
        if A.tgt1(s) != A.src1(t):
            raise ValueError("string is not composable")
    return structural_cell_of_string(u, steps)


# ---------------------------------------------------------------------------
# validation

@dataclass
class FunctorDomain:
    """The cells over which a (possibly virtual) functor is checked."""

    objects: list
    one_cells: list
    two_cells: list
    comp_pairs: list          # (g, f) with g after f
    comp_triples: list        # (h, g, f)
    v_pairs: list             # vertically composable 2-cell pairs (b, a)
    h_pairs: list             # horizontally composable 2-cell pairs (b, a)


def full_domain(A: TwoCategory) -> FunctorDomain:
    objects = list(A.objects())
    ones = list(A.one_cells())
    twos = list(A.two_cells())
    comp_pairs = sorted(A.comp1)
    comp_triples = [(h, g, f) for (h, g) in comp_pairs for f in ones
                    if A.one_tgt[f] == A.one_src[g]]
    v_pairs = sorted(A.vcomp)
    h_pairs = sorted(A.hcomp)
    return FunctorDomain(objects, ones, twos, comp_pairs, comp_triples,
                         v_pairs, h_pairs)


def validate_lax_functor(u: LaxFunctor, domain: Optional[FunctorDomain] = None) -> ValidationReport:
    """Check the lax functor coherence laws over the given domain.

    With no domain the source must be finite and the check is exhaustive.
    """
    A, B = u.source, u.target
    if domain is None:
        domain = full_domain(A)
    bad: dict[str, tuple] = {}

    def hit(law, witness):
        bad.setdefault(law, witness)

    for a in domain.objects:
        ua = u.unit(a)
        if B.src2(ua) != B.id1_of(u.obj(a)) or B.tgt2(ua) != u.one(A.id1_of(a)):
            hit("malformed-map", ("unit", a))
    for f in domain.one_cells:
        uf = u.one(f)
        if B.src1(uf) != u.obj(A.src1(f)) or B.tgt1(uf) != u.obj(A.tgt1(f)):
            hit("malformed-map", ("one", f))
    for x in domain.two_cells:
        ux = u.two(x)
        if B.src2(ux) != u.one(A.src2(x)) or B.tgt2(ux) != u.one(A.tgt2(x)):
            hit("malformed-map", ("two", x))
    for (g, f) in domain.comp_pairs:
        c = u.comp(g, f)
        if (B.src2(c) != B.compose1(u.one(g), u.one(f))
                or B.tgt2(c) != u.one(A.compose1(g, f))):
            hit("malformed-map", ("comp", g, f))
    if bad:
        return ValidationReport(False, sorted(bad.items()))

    for f in domain.one_cells:
        if u.two(A.id2_of(f)) != B.id2_of(u.one(f)):
            hit("hom-identity", (f,))
    for (b, a) in domain.v_pairs:
        if u.two(A.vcompose(b, a)) != B.vcompose(u.two(b), u.two(a)):
            hit("hom-vcomp", (b, a))

    for f in domain.one_cells:
        a, a2 = A.src1(f), A.tgt1(f)
        uf = u.one(f)
        left = B.vcompose(u.comp(f, A.id1_of(a)), lwhisk(B, uf, u.unit(a)))
        if left != B.id2_of(uf):
            hit("unit-law", (f, "right"))
        left = B.vcompose(u.comp(A.id1_of(a2), f), rwhisk(B, u.unit(a2), uf))
        if left != B.id2_of(uf):
            hit("unit-law", (f, "left"))

    for (h, g, f) in domain.comp_triples:
        gf = A.compose1(g, f)
        hg = A.compose1(h, g)
        lhs = B.vcompose(u.comp(h, gf), lwhisk(B, u.one(h), u.comp(g, f)))
        rhs = B.vcompose(u.comp(hg, f), rwhisk(B, u.comp(h, g), u.one(f)))
        if lhs != rhs:
            hit("cocycle", (h, g, f))

    for (b, a) in domain.h_pairs:
        f, g = A.src2(a), A.tgt2(a)
        f2, g2 = A.src2(b), A.tgt2(b)
        lhs = B.vcompose(u.two(A.hcompose(b, a)), u.comp(f2, f))
        rhs = B.vcompose(u.comp(g2, g), B.hcompose(u.two(b), u.two(a)))
        if lhs != rhs:
            hit("naturality", (b, a))

    if u.strict is not None:
        claims = u.strict
        actual = (all(u.unit(a) == B.id2_of(B.id1_of(u.obj(a))) for a in domain.objects)
                  and all(u.comp(g, f) == B.id2_of(B.compose1(u.one(g), u.one(f)))
                          for (g, f) in domain.comp_pairs))
        if claims and not actual:
            hit("strictness", ())

    return ValidationReport(not bad, sorted(bad.items()))


def eq_lax_functor(u: LaxFunctor, v: LaxFunctor, domain: Optional[FunctorDomain] = None) -> bool:
    """Cellwise equality of two parallel lax functors, structural cells included."""
    if domain is None:
        domain = full_domain(u.source)
    return (all(u.obj(a) == v.obj(a) for a in domain.objects)
            and all(u.one(f) == v.one(f) for f in domain.one_cells)
            and all(u.two(x) == v.two(x) for x in domain.two_cells)
            and all(u.unit(a) == v.unit(a) for a in domain.objects)
            and all(u.comp(g, f) == v.comp(g, f) for (g, f) in domain.comp_pairs))


# ---------------------------------------------------------------------------
# duality on functors

@dataclass
class ColaxFunctor:
    """A colax functor stored as a lax functor between the 2-cell duals."""

    rep: LaxFunctor

    @property
    def source(self):
        return dual(self.rep.source, "co")

    @property
    def target(self):
        return dual(self.rep.target, "co")

    @property
    def strict(self):
        return self.rep.strict


def dual_functor(u, kind: str):
    """u^op / u^co / u^coop; lax and colax swap under co and coop."""
    if isinstance(u, ColaxFunctor):
        if kind == "op":
            return ColaxFunctor(dual_functor(u.rep, "op"))
        if kind == "co":
            return u.rep
        if kind == "coop":
            return dual_functor(u.rep, "op")
        raise ValueError(kind)
    if kind == "op":
        A, B = u.source, u.target
        return LaxFunctor(dual(A, "op"), dual(B, "op"),
                          u._obj, u._one, u._two, u._unit,
                          lambda g, f: u._comp(f, g),
                          strict=u.strict,
                          name=f"{u.name}^op" if u.name else None)
    if kind == "co":
        return ColaxFunctor(u)
    if kind == "coop":
        return ColaxFunctor(dual_functor(u, "op"))
    raise ValueError(kind)


def strict_co_rep(u: LaxFunctor) -> LaxFunctor:
    """The lax representation of u^co for strict u (same maps between co-duals)."""
    if not u.strict:
        raise ValueError("only strict functors transport to co-duals directly")
    A, B = dual(u.source, "co"), dual(u.target, "co")
    return LaxFunctor(A, B, u._obj, u._one, u._two,
                      lambda a: B.id2_of(B.id1_of(u.obj(a))),
                      lambda g, f: B.id2_of(B.compose1(u.one(g), u.one(f))),
                      strict=True, name=u.name)


# ---------------------------------------------------------------------------
# fibers of strict functors

def fiber(u: LaxFunctor, b) -> TwoCategory:
    """The sub-2-category of cells of the source sitting strictly over b."""
    if not u.strict:
        raise ValueError("fibers are defined for strict functors")
    A = u.source
    B = u.target
    i1, i2 = B.id1_of(b), B.id2_of(B.id1_of(b))
    objs = [a for a in A.objects() if u.obj(a) == b]
    obj_pos = {a: i for i, a in enumerate(objs)}
    ones = [(obj_pos[A.one_src[f]], obj_pos[A.one_tgt[f]], f)
            for f in A.one_cells()
            if u.one(f) == i1 and A.one_src[f] in obj_pos and A.one_tgt[f] in obj_pos]
    one_pos = {lab: i for i, (_, _, lab) in enumerate(ones)}
    twos = [(one_pos[A.two_src[x]], one_pos[A.two_tgt[x]], x)
            for x in A.two_cells()
            if u.two(x) == i2 and A.two_src[x] in one_pos and A.two_tgt[x] in one_pos]
    return tabulate_two_category(
        objs, ones, twos,
        id1_of=lambda i: A.id1[objs[i]],
        id2_of=lambda f: A.id2[ones[f][2]],
        comp1_of=lambda g, f: A.comp1[(ones[g][2], ones[f][2])],
        vcomp_of=lambda b2, a2: A.vcomp[(twos[b2][2], twos[a2][2])],
        hcomp_of=lambda b2, a2: A.hcomp[(twos[b2][2], twos[a2][2])],
        name=f"fiber({u.name or '?'},{b})")


def fiber_inclusion(u: LaxFunctor, b, F: Optional[TwoCategory] = None) -> LaxFunctor:
    """The strict inclusion of the fiber over b into the source of u."""
    if F is None:
        F = fiber(u, b)
    return LaxFunctor.strict_from_maps(
        F, u.source,
        obj_map=list(F.obj_labels), one_map=list(F.one_labels),
        two_map=list(F.two_labels))


# ---------------------------------------------------------------------------
# transformations

@dataclass
class Transformation:
    kind: str                       # "lax" | "oplax" | "strict"
    src: LaxFunctor
    tgt: LaxFunctor
    _component: Callable            # object -> 1-cell sigma_a : u(a) -> v(a)
    _nat: Callable                  # 1-cell -> 2-cell sigma_f
    name: Optional[str] = None

    def component(self, a):
        return self._component(a)

    def nat(self, f):
        return self._nat(f)

    @staticmethod
    def from_tables(kind, src, tgt, components, naturality, name=None) -> "Transformation":
        components = dict(enumerate(components)) if not isinstance(components, dict) else components
        naturality = dict(enumerate(naturality)) if not isinstance(naturality, dict) else naturality
        return Transformation(kind, src, tgt, components.__getitem__,
                              naturality.__getitem__, name=name)


def identity_transformation(u: LaxFunctor, kind: str = "strict") -> Transformation:
    B = u.target
    return Transformation(kind, u, u,
                          lambda a: B.id1_of(u.obj(a)),
                          lambda f: B.id2_of(u.one(f)),
                          name="id")


def op_transport(t: Transformation) -> Transformation:
    """An oplax sigma: u => v as the lax transformation v^op => u^op."""
    if t.kind != "oplax":
        raise ValueError("op transport applies to oplax transformations")
    return Transformation("lax", dual_functor(t.tgt, "op"), dual_functor(t.src, "op"),
                          t._component, t._nat, name=t.name)


def validate_transformation(t: Transformation, domain: Optional[FunctorDomain] = None) -> ValidationReport:
    """Coherence of a transformation over the domain (default: exhaustive)."""
    u, v = t.src, t.tgt
    A, B = u.source, u.target
    bad: dict[str, tuple] = {}

    def hit(law, witness):
        bad.setdefault(law, witness)

    if t.kind == "oplax":
        # mechanical reduction: oplax coherence is lax coherence across 1-cell duals
        if domain is None:
            domain = full_domain(A)
        op_domain = FunctorDomain(
            domain.objects, domain.one_cells, domain.two_cells,
            [(f, g) for (g, f) in domain.comp_pairs],
            [(f, g, h) for (h, g, f) in domain.comp_triples],
            domain.v_pairs,
            [(a, b) for (b, a) in domain.h_pairs])
        return validate_transformation(op_transport(t), op_domain)

    if domain is None:
        domain = full_domain(A)

    for a in domain.objects:
        s = t.component(a)
        if B.src1(s) != u.obj(a) or B.tgt1(s) != v.obj(a):
            hit("malformed-map", ("component", a))
    for f in domain.one_cells:
        a, a2 = A.src1(f), A.tgt1(f)
        n = t.nat(f)
        want_src = B.compose1(t.component(a2), u.one(f))
        want_tgt = B.compose1(v.one(f), t.component(a))
        if B.src2(n) != want_src or B.tgt2(n) != want_tgt:
            hit("malformed-map", ("naturality-cell", f))
    if bad:
        return ValidationReport(False, sorted(bad.items()))

    if t.kind == "strict":
        for f in domain.one_cells:
            if t.nat(f) != B.id2_of(B.src2(t.nat(f))):
                hit("strictness", (f,))

    # naturality in 2-cells
    for x in domain.two_cells:
        f, g = A.src2(x), A.tgt2(x)
        a, a2 = A.src1(f), A.tgt1(f)
        lhs = B.vcompose(rwhisk(B, v.two(x), t.component(a)), t.nat(f))
        rhs = B.vcompose(t.nat(g), lwhisk(B, t.component(a2), u.two(x)))
        if lhs != rhs:
            hit("naturality", (x,))

    # unit compatibility
    for a in domain.objects:
        s = t.component(a)
        lhs = B.vcompose(t.nat(A.id1_of(a)), lwhisk(B, s, u.unit(a)))
        rhs = rwhisk(B, v.unit(a), s)
        if lhs != rhs:
            hit("unit", (a,))

    # composition compatibility
    for (g, f) in domain.comp_pairs:
        a = A.src1(f)
        a2 = A.tgt1(g)
        lhs = B.vcompose(t.nat(A.compose1(g, f)),
                         lwhisk(B, t.component(a2), u.comp(g, f)))
        rhs = B.vcompose(rwhisk(B, v.comp(g, f), t.component(a)),
                         B.vcompose(lwhisk(B, v.one(g), t.nat(f)),
                                    rwhisk(B, t.nat(g), u.one(f))))
        if lhs != rhs:
            hit("composition", (g, f))

    return ValidationReport(not bad, sorted(bad.items()))


# ---------------------------------------------------------------------------
# elementary homotopies (cylinder functors [1] x A -> B)

def _interval_cells():
    I = interval(1)
    return I, I.id1[0], 1, I.id1[1]  # 1 is the one-cell 0 -> 1


def homotopy_from_transformation(t: Transformation) -> LaxFunctor:
    """Build the elementary homotopy [1] x A -> B attached to a transformation.

    The cylinder restricts to the source functor at {0} and to the target
    functor at {1}; validity is enforced by running the functor validator.
    """
    u, v = t.src, t.tgt
    A, B = u.source, u.target
    if not getattr(A, "is_finite", False):
        raise ValueError("elementary homotopies need a finite source")
    kind = "lax" if t.kind == "strict" else t.kind
    I, i0, mid, i1 = _interval_cells()
    P = product(I, A)
    one_lab = P.one_labels
    two_lab = P.two_labels
    obj_lab = P.obj_labels

    def on_obj(p):
        i, a = obj_lab[p]
        return u.obj(a) if i == 0 else v.obj(a)

    def on_one(pf):
        k, f = one_lab[pf]
        if k == i0:
            return u.one(f)
        if k == i1:
            return v.one(f)
        if kind == "lax":
            return B.compose1(v.one(f), t.component(A.src1(f)))
        return B.compose1(t.component(A.tgt1(f)), u.one(f))

    def on_two(px):
        k2, x = two_lab[px]
        if k2 == I.id2[i0]:
            return u.two(x)
        if k2 == I.id2[i1]:
            return v.two(x)
        f = A.src2(x)
        if kind == "lax":
            return rwhisk(B, v.two(x), t.component(A.src1(f)))
        return lwhisk(B, t.component(A.tgt1(f)), u.two(x))

    def unit(p):
        i, a = obj_lab[p]
        return u.unit(a) if i == 0 else v.unit(a)

    def comp(pg, pf):
        kg, g = one_lab[pg]
        kf, f = one_lab[pf]
        a = A.src1(f)
        a2 = A.tgt1(g)
        if kf == i0 and kg == i0:
            return u.comp(g, f)
        if kf == i1 and kg == i1:
            return v.comp(g, f)
        if kind == "lax":
            if kf == mid and kg == i1:
                return rwhisk(B, v.comp(g, f), t.component(a))
            # kf == i0, kg == mid
            return B.vcompose(rwhisk(B, v.comp(g, f), t.component(a)),
                              lwhisk(B, v.one(g), t.nat(f)))
        if kf == mid and kg == i1:
            return B.vcompose(lwhisk(B, t.component(a2), u.comp(g, f)),
                              rwhisk(B, t.nat(g), u.one(f)))
        # kf == i0, kg == mid
        return lwhisk(B, t.component(a2), u.comp(g, f))

    h = LaxFunctor(P, B, on_obj, on_one, on_two, unit, comp,
                   strict=None, name="cylinder")
    report = validate_lax_functor(h)
    if not report.ok:
        raise ValueError(f"homotopy construction is incoherent: {report}")
    return h


def cylinder_inclusion(P: TwoCategory, A: TwoCategory, end: int) -> LaxFunctor:
    """The strict inclusion A -> [1] x A at {0} or {1}."""
    I, i0, _, i1 = _interval_cells()
    obj_index = {lab: i for i, lab in enumerate(P.obj_labels)}
    one_index = {lab: i for i, lab in enumerate(P.one_labels)}
    two_index = {lab: i for i, lab in enumerate(P.two_labels)}
    k = i0 if end == 0 else i1
    return LaxFunctor.strict_from_maps(
        A, P,
        obj_map={a: obj_index[(end, a)] for a in A.objects()},
        one_map={f: one_index[(k, f)] for f in A.one_cells()},
        two_map={x: two_index[(I.id2[k], x)] for x in A.two_cells()},
        name=f"incl{end}")


def is_elementary_homotopy(h: LaxFunctor, u: LaxFunctor, v: LaxFunctor) -> bool:
    """True iff h restricted along the two cylinder ends equals u and v cellwise."""
    P = h.source
    A = u.source
    if not getattr(P, "is_finite", False) or P.n_objects != 2 * A.n_objects:
        raise ValueError("cylinder shape mismatch")
    r0 = compose_lax(h, cylinder_inclusion(P, A, 0))
    r1 = compose_lax(h, cylinder_inclusion(P, A, 1))
    return eq_lax_functor(r0, u) and eq_lax_functor(r1, v)
