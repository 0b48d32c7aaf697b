"""Grothendieck integration of 2-category-valued strict functors.

A 2-Cat-valued functor assigns a finite 2-category to every object of the
base, a strict functor to every 1-cell and a strict transformation to every
2-cell, strictly functorially.  Its integral has cells (a, x), (f, r),
(gamma, phi); the first projection is strict and the tranche construction
sends a lax functor u : A -> B to the B-indexed family of its slices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .comma import CommaTwoCat, comma, induced_functor
from .core import (TwoCategory, ValidationReport, check_budget, lwhisk,
                   rwhisk, tabulate_two_category)
from .functors import (LaxFunctor, Transformation, compose_lax, eq_lax_functor,
                       identity_functor, validate_transformation)


@dataclass
class TwoCatValuedFunctor:
    base: TwoCategory
    values: list[TwoCategory]
    on_one: dict[int, LaxFunctor]          # strict functors between values
    on_two: dict[int, Transformation]      # strict transformations
    value_containers: Optional[list] = None  # CommaTwoCat wrappers when sliced

    def value(self, a: int) -> TwoCategory:
        return self.values[a]


def validate_two_cat_valued(F: TwoCatValuedFunctor) -> ValidationReport:
    """Strict functoriality of a 2-Cat-valued functor, checked cellwise."""
    A = F.base
    bad: dict[str, tuple] = {}

    def hit(law, witness):
        bad.setdefault(law, witness)

    for f in A.one_cells():
        uf = F.on_one[f]
        if uf.source is not F.values[A.one_src[f]] or uf.target is not F.values[A.one_tgt[f]]:
            hit("malformed-map", ("one", f))
        if not uf.strict:
            hit("strictness", ("one", f))
    for a in A.objects():
        if not eq_lax_functor(F.on_one[A.id1_of(a)], identity_functor(F.values[a])):
            hit("identity-functor", (a,))
    for (g, f), h in sorted(A.comp1.items()):
        if not eq_lax_functor(F.on_one[h], compose_lax(F.on_one[g], F.on_one[f])):
            hit("composite-functor", (g, f))
    for x in A.two_cells():
        t = F.on_two[x]
        if t.src is not F.on_one[A.src2(x)] and not eq_lax_functor(t.src, F.on_one[A.src2(x)]):
            hit("malformed-map", ("two-src", x))
        if t.tgt is not F.on_one[A.tgt2(x)] and not eq_lax_functor(t.tgt, F.on_one[A.tgt2(x)]):
            hit("malformed-map", ("two-tgt", x))
        rep = validate_transformation(Transformation("strict", F.on_one[A.src2(x)],
                                                     F.on_one[A.tgt2(x)],
                                                     t._component, t._nat))
        if not rep.ok:
            hit("component-coherence", (x,) + tuple(rep.violations[:1]))
    for f in A.one_cells():
        t = F.on_two[A.id2_of(f)]
        V = F.values[A.one_tgt[f]]
        if any(t.component(y) != V.id1_of(F.on_one[f].obj(y))
               for y in F.values[A.one_src[f]].objects()):
            hit("identity-transformation", (f,))
    for (b, a), c in sorted(A.vcomp.items()):
        tb, ta, tc = F.on_two[b], F.on_two[a], F.on_two[c]
        f = A.src2(a)
        V = F.values[A.one_tgt[f]]
        if any(tc.component(y) != V.compose1(tb.component(y), ta.component(y))
               for y in F.values[A.one_src[f]].objects()):
            hit("vcomp-functorial", (b, a))
    for (b, a), c in sorted(A.hcomp.items()):
        ta, tb, tc = F.on_two[a], F.on_two[b], F.on_two[c]
        f, g = A.src2(a), A.tgt2(a)
        f2 = A.src2(b)
        V = F.values[A.one_tgt[f2]]
        for y in F.values[A.one_src[f]].objects():
            want = V.compose1(tb.component(F.on_one[g].obj(y)),
                              F.on_one[f2].one(ta.component(y)))
            if tc.component(y) != want:
                hit("hcomp-functorial", (b, a))
                break
    return ValidationReport(not bad, sorted(bad.items()))


# ---------------------------------------------------------------------------
# the integral and its projection

@dataclass
class IntegralTwoCat:
    carrier: TwoCategory
    F: TwoCatValuedFunctor
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

    def obj_of(self, label):
        return self._obj_ix[label]

    def one_of(self, src, tgt, label):
        return self._one_ix[(src, tgt, label)]

    def two_of(self, src, tgt, label):
        return self._two_ix[(src, tgt, label)]


def integrate(F: TwoCatValuedFunctor,
              budget: Optional[int] = None) -> tuple[IntegralTwoCat, LaxFunctor]:
    """The total 2-category of F and its strict first projection."""
    A = F.base
    for V in F.values:
        if not getattr(V, "is_finite", False):
            raise ValueError("integration needs finite value 2-categories")
    objs = [(a, x) for a in A.objects() for x in F.values[a].objects()]
    obj_pos = {lab: i for i, lab in enumerate(objs)}
    ones = []
    for f in A.one_cells():
        a, a2 = A.one_src[f], A.one_tgt[f]
        V2 = F.values[a2]
        uf = F.on_one[f]
        for x in F.values[a].objects():
            fx = uf.obj(x)
            for r in V2.one_cells():
                if V2.one_src[r] == fx:
                    ones.append((obj_pos[(a, x)], obj_pos[(a2, V2.one_tgt[r])], (f, r)))
    check_budget(len(objs) + len(ones), budget)
    one_pos = {(s, t, lab): j for j, (s, t, lab) in enumerate(ones)}
    twos = []
    for j1, (s1, t1, (f, r)) in enumerate(ones):
        a2 = A.one_tgt[f]
        V2 = F.values[a2]
        x = objs[s1][1]
        for j2, (s2, t2, (g, s)) in enumerate(ones):
            if (s1, t1) != (s2, t2):
                continue
            for ga in A.two_cells_between(f, g):
                tgt_cell = V2.compose1(s, F.on_two[ga].component(x))
                for phi in V2.two_cells_between(r, tgt_cell):
                    twos.append((j1, j2, (ga, phi)))
    check_budget(len(objs) + len(ones) + len(twos), budget)

    def id1_of(i):
        a, x = objs[i]
        return (A.id1_of(a), F.values[a].id1_of(x))

    def id2_of(j):
        f, r = ones[j][2]
        return (A.id2_of(f), F.values[A.one_tgt[f]].id2_of(r))

    def comp1_of(j2, j1):
        f, r = ones[j1][2]
        g, s = ones[j2][2]
        a3 = A.one_tgt[g]
        V3 = F.values[a3]
        return (A.compose1(g, f), V3.compose1(s, F.on_one[g].one(r)))

    def vcomp_of(k2, k1):
        ga, phi = twos[k1][2]
        de, psi = twos[k2][2]
        f = A.src2(ga)
        V2 = F.values[A.one_tgt[f]]
        x = objs[ones[twos[k1][0]][0]][1]
        cell = V2.vcompose(rwhisk(V2, psi, F.on_two[ga].component(x)), phi)
        return (A.vcompose(de, ga), cell)

    def hcomp_of(k2, k1):
        ga, phi = twos[k1][2]
        ga2, phi2 = twos[k2][2]
        f2 = A.src2(ga2)
        V3 = F.values[A.one_tgt[f2]]
        cell = V3.hcompose(phi2, F.on_one[f2].two(phi))
        return (A.hcompose(ga2, ga), cell)

    carrier = tabulate_two_category(objs, ones, twos, id1_of, id2_of,
                                    comp1_of, vcomp_of, hcomp_of,
                                    name="integral", budget=budget)
    total = IntegralTwoCat(carrier, F)
    proj = LaxFunctor.strict_from_maps(
        carrier, A,
        obj_map={i: lab[0] for i, lab in enumerate(carrier.obj_labels)},
        one_map={j: lab[0] for j, lab in enumerate(carrier.one_labels)},
        two_map={k: lab[0] for k, lab in enumerate(carrier.two_labels)},
        name="P_F")
    return total, proj


# ---------------------------------------------------------------------------
# integration of strict transformations

@dataclass
class TwoCatValuedTransformation:
    src: TwoCatValuedFunctor
    tgt: TwoCatValuedFunctor
    components: dict[int, LaxFunctor]     # per base object, a strict functor


def validate_two_cat_valued_transformation(t: TwoCatValuedTransformation) -> ValidationReport:
    A = t.src.base
    bad: dict[str, tuple] = {}
    for a in A.objects():
        if not t.components[a].strict:
            bad.setdefault("strictness", (a,))
    for f in A.one_cells():
        a, a2 = A.one_src[f], A.one_tgt[f]
        lhs = compose_lax(t.tgt.on_one[f], t.components[a])
        rhs = compose_lax(t.components[a2], t.src.on_one[f])
        if not eq_lax_functor(lhs, rhs):
            bad.setdefault("naturality", (f,))
    for x in A.two_cells():
        f = A.src2(x)
        a, a2 = A.one_src[f], A.one_tgt[f]
        for y in t.src.values[a].objects():
            lhs = t.components[a2].one(t.src.on_two[x].component(y))
            rhs = t.tgt.on_two[x].component(t.components[a].obj(y))
            if lhs != rhs:
                bad.setdefault("two-cell-naturality", (x, y))
                break
    return ValidationReport(not bad, sorted(bad.items()))


def integrate_transformation(t: TwoCatValuedTransformation,
                             total_src: Optional[IntegralTwoCat] = None,
                             total_tgt: Optional[IntegralTwoCat] = None,
                             budget: Optional[int] = None) -> LaxFunctor:
    """The strict functor between integrals induced by a strict transformation:
    (a, x) |-> (a, sigma_a(x)), (f, r) |-> (f, sigma_{a'}(r))."""
    if total_src is None:
        total_src, _ = integrate(t.src, budget)
    if total_tgt is None:
        total_tgt, _ = integrate(t.tgt, budget)
    A = t.src.base
    X, Y = total_src.carrier, total_tgt.carrier

    def on_obj(i):
        a, x = X.obj_labels[i]
        return total_tgt.obj_of((a, t.components[a].obj(x)))

    def on_one(j):
        f, r = X.one_labels[j]
        a2 = A.one_tgt[f]
        return total_tgt.one_of(on_obj(X.one_src[j]), on_obj(X.one_tgt[j]),
                                (f, t.components[a2].one(r)))

    def on_two(k):
        ga, phi = X.two_labels[k]
        a2 = A.one_tgt[A.src2(ga)]
        return total_tgt.two_of(on_one(X.two_src[k]), on_one(X.two_tgt[k]),
                                (ga, t.components[a2].two(phi)))

    return LaxFunctor.strict_from_maps(
        X, Y,
        obj_map={i: on_obj(i) for i in range(X.n_objects)},
        one_map={j: on_one(j) for j in range(X.n_one)},
        two_map={k: on_two(k) for k in range(X.n_two)},
        name="integral_of_transformation")


def integral_fiber_iso(total: IntegralTwoCat, proj: LaxFunctor, a: int):
    """The canonical strict functor F(a) -> Fibre(P_F, a): x |-> (a, x)."""
    from .functors import fiber

    fib = fiber(proj, a)
    F = total.F
    V = F.values[a]
    A = F.base
    fib_obj = {lab: i for i, lab in enumerate(fib.obj_labels)}
    fib_one = {lab: j for j, lab in enumerate(fib.one_labels)}
    fib_two = {lab: k for k, lab in enumerate(fib.two_labels)}
    obj_map = {x: fib_obj[total.obj_of((a, x))] for x in V.objects()}
    one_map = {}
    for r in V.one_cells():
        src = total.obj_of((a, V.one_src[r]))
        tgt = total.obj_of((a, V.one_tgt[r]))
        one_map[r] = fib_one[total.one_of(src, tgt, (A.id1_of(a), r))]
    two_map = {}
    for phi in V.two_cells():
        s1 = one_map[V.two_src[phi]]
        t1 = one_map[V.two_tgt[phi]]
        two_map[phi] = fib_two[total.two_of(fib.one_labels[s1], fib.one_labels[t1],
                                            (A.id2_of(A.id1_of(a)), phi))]
    iso = LaxFunctor.strict_from_maps(V, fib, obj_map, one_map, two_map,
                                      name=f"value_to_fiber({a})")
    return iso, fib


# ---------------------------------------------------------------------------
# the tranche (slice family) of a lax functor

def tranche(u: LaxFunctor, budget: Optional[int] = None) -> TwoCatValuedFunctor:
    """The strict 2-Cat-valued functor b |-> comma(u, b, lax) with
    postcomposition action; validated post-conditions are the caller's to run."""
    B = u.target
    containers = [comma(u, b, "lax", budget) for b in B.objects()]
    values = [c.carrier for c in containers]
    on_one: dict[int, LaxFunctor] = {}
    for f in B.one_cells():
        b, b2 = B.one_src[f], B.one_tgt[f]
        cb, cb2 = containers[b], containers[b2]
        X, Y = values[b], values[b2]

        def make(f=f, cb=cb, cb2=cb2, X=X):
            def on_obj(i):
                a, p = X.obj_labels[i]
                return cb2.obj_of((a, B.compose1(f, p)))

            def on_one_cell(j):
                g, al = X.one_labels[j]
                return cb2.one_of(on_obj(X.one_src[j]), on_obj(X.one_tgt[j]),
                                  (g, lwhisk(B, f, al)))

            def on_two_cell(k):
                return cb2.two_of(on_one_cell(X.two_src[k]),
                                  on_one_cell(X.two_tgt[k]), X.two_labels[k])

            return on_obj, on_one_cell, on_two_cell

        on_obj, on_one_cell, on_two_cell = make()
        on_one[f] = LaxFunctor.strict_from_maps(
            X, values[b2],
            obj_map={i: on_obj(i) for i in range(X.n_objects)},
            one_map={j: on_one_cell(j) for j in range(X.n_one)},
            two_map={k: on_two_cell(k) for k in range(X.n_two)},
            name=f"postcompose({f})")
    on_two: dict[int, Transformation] = {}
    for ga in B.two_cells():
        f, f2 = B.src2(ga), B.tgt2(ga)
        b, b2 = B.one_src[f], B.one_tgt[f]
        X = values[b]
        cb2 = containers[b2]
        Y = values[b2]
        src_f, tgt_f = on_one[f], on_one[f2]

        def comp_of(i, ga=ga, X=X, cb2=cb2, src_f=src_f, tgt_f=tgt_f):
            a, p = X.obj_labels[i]
            cell = B.hcompose(ga, B.hcompose(B.id2_of(p), u.unit(a)))
            return cb2.one_of(src_f.obj(i), tgt_f.obj(i), (u.source.id1_of(a), cell))

        comps = {i: comp_of(i) for i in range(X.n_objects)}
        nats = {}
        for j in range(X.n_one):
            nats[j] = Y.id2_of(Y.compose1(comps[X.one_tgt[j]], src_f.one(j)))
        on_two[ga] = Transformation.from_tables("strict", src_f, tgt_f, comps, nats)
    return TwoCatValuedFunctor(B, values, on_one, on_two,
                               value_containers=containers)


def tranche_transformation(u: LaxFunctor, v: LaxFunctor, w: LaxFunctor,
                           sigma: Transformation,
                           Tw: Optional[TwoCatValuedFunctor] = None,
                           Tv: Optional[TwoCatValuedFunctor] = None,
                           budget: Optional[int] = None) -> TwoCatValuedTransformation:
    """The strict transformation tranche(w) => tranche(v) whose component at c
    is the induced functor comma(w, c) -> comma(v, c); needs u strict."""
    if not u.strict:
        raise ValueError("tranche transformations need a strict u")
    if Tw is None:
        Tw = tranche(w, budget)
    if Tv is None:
        Tv = tranche(v, budget)
    comps = {}
    for c in w.target.objects():
        comps[c] = induced_functor(u, sigma, c,
                                   w_comma=Tw.value_containers[c],
                                   v_comma=Tv.value_containers[c])
    return TwoCatValuedTransformation(Tw, Tv, comps)


# ---------------------------------------------------------------------------
# the second projection Q of the integrated tranche

def q_projection(w: LaxFunctor, budget: Optional[int] = None
                 ) -> tuple[LaxFunctor, IntegralTwoCat, TwoCatValuedFunctor]:
    """Q : integral(tranche(w)) -> A, (c, (a, p)) |-> a; strict."""
    T = tranche(w, budget)
    total, _proj = integrate(T, budget)
    X = total.carrier
    A = w.source

    def obj_lab(i):
        c, xi = X.obj_labels[i]
        return T.values[c].obj_labels[xi][0]

    def one_lab(j):
        k, r = X.one_labels[j]
        c2 = w.target.one_tgt[k]
        return T.values[c2].one_labels[r][0]

    def two_lab(kk):
        ga, phi = X.two_labels[kk]
        c2 = w.target.one_tgt[w.target.src2(ga)]
        return T.values[c2].two_labels[phi]

    Q = LaxFunctor.strict_from_maps(
        X, A,
        obj_map={i: obj_lab(i) for i in range(X.n_objects)},
        one_map={j: one_lab(j) for j in range(X.n_one)},
        two_map={k: two_lab(k) for k in range(X.n_two)},
        name="Q")
    return Q, total, T
