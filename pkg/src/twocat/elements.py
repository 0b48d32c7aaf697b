"""The Cat-valued simplicial object of hom-strings, its op-integration, and
the last-vertex functor with its slice checks.

Level m of the hom-wise nerve is the category whose objects are length-m
composable 1-cell strings and whose morphisms are stepwise 2-cells; the
op-integration over the truncated simplex category glues the levels into a
single finite category of pairs ([m], string).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import (Category, TwoCategory, check_budget, from_category,
                   tabulate_category)
from .functors import LaxFunctor


@dataclass
class CatFunctor:
    source: Category
    target: Category
    obj_map: dict
    arr_map: dict

    def check(self) -> bool:
        C, D = self.source, self.target
        for f in C.arrows():
            g = self.arr_map[f]
            if D.arr_src[g] != self.obj_map[C.arr_src[f]] or \
                    D.arr_tgt[g] != self.obj_map[C.arr_tgt[f]]:
                return False
        if any(self.arr_map[C.ids[a]] != D.ids[self.obj_map[a]] for a in C.objects()):
            return False
        for (g, f), h in C.comp.items():
            if self.arr_map[h] != D.comp[(self.arr_map[g], self.arr_map[f])]:
                return False
        return True


def compose_cat_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    return CatFunctor(F.source, G.target,
                      {a: G.obj_map[F.obj_map[a]] for a in F.source.objects()},
                      {f: G.arr_map[F.arr_map[f]] for f in F.source.arrows()})


# ---------------------------------------------------------------------------
# the hom-wise nerve

def _strings(A: TwoCategory, m: int) -> list[tuple[tuple, tuple]]:
    out = []

    def rec(verts, steps):
        if len(steps) == m:
            out.append((tuple(verts), tuple(steps)))
            return
        for f in A.one_cells():
            if A.one_src[f] == verts[-1]:
                rec(verts + [A.one_tgt[f]], steps + [f])

    for a in A.objects():
        rec([a], [])
    return out


def _fon_level(A: TwoCategory, m: int) -> Category:
    """The category of length-m strings with stepwise 2-cells."""
    strings = _strings(A, m)
    pos = {s: i for i, s in enumerate(strings)}
    arrows = []
    for i, (verts, steps) in enumerate(strings):
        for j, (verts2, steps2) in enumerate(strings):
            if verts != verts2:
                continue
            per = [A.two_cells_between(steps[t], steps2[t]) for t in range(m)]
            if any(not c for c in per):
                continue
            for alphas in itertools.product(*per):
                arrows.append((i, j, tuple(alphas)))
    return tabulate_category(
        strings, arrows,
        id_of=lambda i: tuple(A.id2[s] for s in strings[i][1]),
        comp_of=lambda g, f: tuple(A.vcomp[(arrows[g][2][t], arrows[f][2][t])]
                                   for t in range(m)))


@dataclass
class CatSimplicialObject:
    """Per dimension m <= K a finite category of strings, with face and
    degeneracy functors between consecutive levels."""

    K: int
    levels: list[Category]
    faces: dict            # (m, i) -> CatFunctor level m -> m-1
    degeneracies: dict     # (m, i) -> CatFunctor level m -> m+1


def _paste(A: TwoCategory, cells: list[int], vertex: int) -> int:
    acc = None
    for c in cells:
        acc = c if acc is None else A.hcomp[(c, acc)]
    return A.id2[A.id1[vertex]] if acc is None else acc


def _precompose_string(A: TwoCategory, string, phi) -> tuple[tuple, tuple]:
    verts, steps = string
    new_verts = tuple(verts[p] for p in phi)
    new_steps = tuple(A.compose1_path(verts[phi[i - 1]], steps[phi[i - 1]:phi[i]])
                      for i in range(1, len(phi)))
    return (new_verts, new_steps)


def _precompose_arrow(A: TwoCategory, label, string, phi) -> tuple:
    verts, _ = string
    return tuple(_paste(A, list(label[phi[i - 1]:phi[i]]), verts[phi[i - 1]])
                 for i in range(1, len(phi)))


def nerf_hom(A: TwoCategory, K: int) -> CatSimplicialObject:
    levels = [_fon_level(A, m) for m in range(K + 1)]

    def functor_along(phi, m_src, m_tgt) -> CatFunctor:
        # precomposition with phi : [m_src] -> [m_tgt], a functor level m_tgt -> m_src
        src_level, tgt_level = levels[m_tgt], levels[m_src]
        tgt_pos = {lab: i for i, lab in enumerate(tgt_level.obj_labels)}
        obj_map = {i: tgt_pos[_precompose_string(A, src_level.obj_labels[i], phi)]
                   for i in src_level.objects()}
        arr_pos = {(tgt_level.arr_src[j], tgt_level.arr_tgt[j], tgt_level.arr_labels[j]): j
                   for j in tgt_level.arrows()}
        arr_map = {}
        for j in src_level.arrows():
            lab = _precompose_arrow(A, src_level.arr_labels[j],
                                    src_level.obj_labels[src_level.arr_src[j]], phi)
            arr_map[j] = arr_pos[(obj_map[src_level.arr_src[j]],
                                  obj_map[src_level.arr_tgt[j]], lab)]
        return CatFunctor(src_level, tgt_level, obj_map, arr_map)

    faces = {}
    degeneracies = {}
    for m in range(1, K + 1):
        for i in range(m + 1):
            phi = tuple(x for x in range(m + 1) if x != i)
            faces[(m, i)] = functor_along(phi, m - 1, m)
    for m in range(K):
        for i in range(m + 1):
            phi = tuple(x if x <= i else x - 1 for x in range(m + 2))
            degeneracies[(m, i)] = functor_along(phi, m + 1, m)
    return CatSimplicialObject(K, levels, faces, degeneracies)


def check_cat_simplicial_identities(N: CatSimplicialObject) -> bool:
    """Simplicial functor identities within the truncation, on objects and arrows."""
    def eq(F: CatFunctor, G: CatFunctor) -> bool:
        return F.obj_map == G.obj_map and F.arr_map == G.arr_map

    for m in range(1, N.K + 1):
        for i in range(m + 1):
            if not N.faces[(m, i)].check():
                return False
    for m in range(N.K):
        for i in range(m + 1):
            if not N.degeneracies[(m, i)].check():
                return False
    for m in range(2, N.K + 1):
        for j in range(m + 1):
            for i in range(j):
                lhs = compose_cat_functors(N.faces[(m - 1, i)], N.faces[(m, j)])
                rhs = compose_cat_functors(N.faces[(m - 1, j - 1)], N.faces[(m, i)])
                if not eq(lhs, rhs):
                    return False
    for m in range(N.K - 1):
        for j in range(m + 1):
            for i in range(j + 1):
                lhs = compose_cat_functors(N.degeneracies[(m + 1, j + 1)],
                                           N.degeneracies[(m, i)])
                rhs = compose_cat_functors(N.degeneracies[(m + 1, i)],
                                           N.degeneracies[(m, j)])
                if not eq(lhs, rhs):
                    return False
    return True


# ---------------------------------------------------------------------------
# the truncated simplex category and op-integration

def simplex_category(K: int) -> Category:
    """Objects 0..K (standing for [m]) and all monotone maps."""
    objs = list(range(K + 1))
    arrows = []
    for m in range(K + 1):
        for n in range(K + 1):
            for phi in itertools.combinations_with_replacement(range(n + 1), m + 1):
                arrows.append((m, n, phi))
    return tabulate_category(
        objs, arrows,
        id_of=lambda m: tuple(range(m + 1)),
        comp_of=lambda g, f: tuple(arrows[g][2][v] for v in arrows[f][2]))


@dataclass
class ContraCatValued:
    """A contravariant Cat-valued functor on a finite category."""

    base: Category
    values: list[Category]
    arrow_maps: dict         # base arrow f: a -> a'  ->  CatFunctor values[a'] -> values[a]


def validate_contra_cat_valued(F: ContraCatValued) -> list[tuple]:
    bad = []
    C = F.base
    for f in C.arrows():
        if not F.arrow_maps[f].check():
            bad.append(("functor", f))
    for a in C.objects():
        G = F.arrow_maps[C.ids[a]]
        if any(G.obj_map[x] != x for x in F.values[a].objects()) or \
                any(G.arr_map[r] != r for r in F.values[a].arrows()):
            bad.append(("identity", a))
    for (g, f), h in C.comp.items():
        lhs = F.arrow_maps[h]
        rhs = compose_cat_functors(F.arrow_maps[f], F.arrow_maps[g])
        if lhs.obj_map != rhs.obj_map or lhs.arr_map != rhs.arr_map:
            bad.append(("composite", g, f))
    return bad


def op_integrate(F: ContraCatValued, budget: Optional[int] = None) -> Category:
    """Objects (a, x); morphisms (a, x) -> (a', x') are pairs
    (f : a -> a', r : x -> F(f)(x')) composed by (f', r')(f, r) =
    (f'f, F(f)(r') after r)."""
    C = F.base
    objs = [(a, x) for a in C.objects() for x in F.values[a].objects()]
    obj_pos = {lab: i for i, lab in enumerate(objs)}
    arrows = []
    for f in C.arrows():
        a, a2 = C.arr_src[f], C.arr_tgt[f]
        V = F.values[a]
        back = F.arrow_maps[f]
        for x2 in F.values[a2].objects():
            tgt_in_a = back.obj_map[x2]
            for r in V.arrows():
                if V.arr_tgt[r] == tgt_in_a:
                    arrows.append((obj_pos[(a, V.arr_src[r])],
                                   obj_pos[(a2, x2)], (f, r)))
    check_budget(len(objs) + len(arrows), budget)

    def comp_of(g, f):
        f1, r1 = arrows[f][2]
        f2, r2 = arrows[g][2]
        a = C.arr_src[f1]
        back = F.arrow_maps[f1]
        return (C.comp[(f2, f1)], F.values[a].comp[(back.arr_map[r2], r1)])

    return tabulate_category(
        objs, arrows,
        id_of=lambda i: (C.ids[objs[i][0]],
                         F.values[objs[i][0]].ids[objs[i][1]]),
        comp_of=comp_of)


@dataclass
class NablaElements:
    """The truncated op-integration of the hom-wise nerve."""

    category: Category
    delta: Category
    fon: CatSimplicialObject
    A: TwoCategory
    K: int

    def string_of(self, i: int):
        m, x = self.category.obj_labels[i]
        return self.fon.levels[m].obj_labels[x]

    def level_of(self, i: int) -> int:
        return self.category.obj_labels[i][0]

    def arrow_data(self, j: int):
        """(phi tuple, component 2-cells tuple) of a morphism."""
        f, r = self.category.arr_labels[j]
        phi = self.delta.arr_labels[f]
        m = self.delta.arr_src[f]
        comps = self.fon.levels[m].arr_labels[r]
        return phi, comps


def elements_of_nerfhom(A: TwoCategory, K: int,
                        fon: Optional[CatSimplicialObject] = None,
                        budget: Optional[int] = None) -> NablaElements:
    if fon is None:
        fon = nerf_hom(A, K)
    delta = simplex_category(K)
    arrow_maps = {}
    for f in delta.arrows():
        m, n, phi = delta.arr_src[f], delta.arr_tgt[f], delta.arr_labels[f]
        src_level, tgt_level = fon.levels[n], fon.levels[m]
        tgt_pos = {lab: i for i, lab in enumerate(tgt_level.obj_labels)}
        obj_map = {i: tgt_pos[_precompose_string(A, src_level.obj_labels[i], phi)]
                   for i in src_level.objects()}
        arr_pos = {(tgt_level.arr_src[j], tgt_level.arr_tgt[j], tgt_level.arr_labels[j]): j
                   for j in tgt_level.arrows()}
        arr_map = {}
        for j in src_level.arrows():
            lab = _precompose_arrow(A, src_level.arr_labels[j],
                                    src_level.obj_labels[src_level.arr_src[j]], phi)
            arr_map[j] = arr_pos[(obj_map[src_level.arr_src[j]],
                                  obj_map[src_level.arr_tgt[j]], lab)]
        arrow_maps[f] = CatFunctor(src_level, tgt_level, obj_map, arr_map)
    F = ContraCatValued(delta, [fon.levels[m] for m in range(K + 1)], arrow_maps)
    cat = op_integrate(F, budget)
    return NablaElements(cat, delta, fon, A, K)


# ---------------------------------------------------------------------------
# the last-vertex functor

def sup(A: TwoCategory, K: int,
        nabla: Optional[NablaElements] = None) -> tuple[LaxFunctor, NablaElements, TwoCategory]:
    """The lax functor truncated-elements -> A sending ([m], string) to the
    last vertex; unit cells are identities, composition cells are whiskered
    pastings of the second morphism's components over the leftover tail."""
    if nabla is None:
        nabla = elements_of_nerfhom(A, K)
    cat = nabla.category
    S2 = from_category(cat, name=f"nabla(K={K})")
    obj_map = {}
    for i in cat.objects():
        verts, _ = nabla.string_of(i)
        obj_map[i] = verts[-1]
    one_map = {}
    for j in cat.arrows():
        phi, _ = nabla.arrow_data(j)
        tverts, tsteps = nabla.string_of(cat.arr_tgt[j])
        m = len(phi) - 1
        one_map[j] = A.compose1_path(tverts[phi[m]], tsteps[phi[m]:])
    comp_cells = {}
    for (j2, j1), _h in S2.comp1.items():
        # identity 2-cells in the source 2-category are indexed by arrows
        phi1, _ = nabla.arrow_data(j1)
        phi2, beta = nabla.arrow_data(j2)
        zverts, zsteps = nabla.string_of(cat.arr_tgt[j2])
        m = len(phi1) - 1
        n = len(phi2) - 1
        yverts, _ = nabla.string_of(cat.arr_tgt[j1])
        paste = _paste(A, list(beta[phi1[m]:]), yverts[phi1[m]])
        tail = A.compose1_path(zverts[phi2[n]], zsteps[phi2[n]:])
        comp_cells[(j2, j1)] = A.hcomp[(A.id2[tail], paste)]
    return (LaxFunctor.from_tables(
        S2, A,
        obj_map=obj_map, one_map=one_map,
        two_map={k: A.id2[one_map[k]] for k in range(len(cat.arr_src))},
        unit_cells={i: A.id2[A.id1[obj_map[i]]] for i in cat.objects()},
        comp_cells=comp_cells, name=f"sup(K={K})"),
        nabla, S2)


# ---------------------------------------------------------------------------
# the slice contraction check

@dataclass
class SliceContractionReport:
    ok: bool
    checked_squares: int
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def delhoyo_slice_check(A: TwoCategory, a: int, K: int,
                        budget: Optional[int] = None) -> SliceContractionReport:
    """Build the slice of the last-vertex functor over a, the constant
    endofunctor onto ([0], a, 1_a) and the top-extension endofunctor, and
    verify both contraction transformations are natural on every checked cell
    (the extension raises the level, so levels <= K-1 are checked)."""
    from .comma import comma

    sup_f, nabla, S2 = sup(A, K)
    ct = comma(sup_f, a, "lax", budget)
    X = ct.carrier
    cat = nabla.category
    fon = nabla.fon
    delta = nabla.delta
    delta_pos = {(delta.arr_src[f], delta.arr_tgt[f], delta.arr_labels[f]): f
                 for f in delta.arrows()}
    fon_obj_pos = [{lab: i for i, lab in enumerate(fon.levels[m].obj_labels)}
                   for m in range(K + 1)]
    fon_arr_pos = [{(fon.levels[m].arr_src[j], fon.levels[m].arr_tgt[j],
                     fon.levels[m].arr_labels[j]): j
                    for j in fon.levels[m].arrows()}
                   for m in range(K + 1)]
    nab_obj_pos = {lab: i for i, lab in enumerate(cat.obj_labels)}
    nab_arr_pos = {(cat.arr_src[j], cat.arr_tgt[j], cat.arr_labels[j]): j
                   for j in cat.arrows()}

    def level(i: int) -> int:
        return nabla.level_of(X.obj_labels[i][0])

    z0 = ct.obj_of((nab_obj_pos[(0, fon_obj_pos[0][((a,), ())])], A.id1[a]))

    def D_obj(i: int) -> int:
        xi, p = X.obj_labels[i]
        m = nabla.level_of(xi)
        verts, steps = nabla.string_of(xi)
        new_string = (verts + (a,), steps + (p,))
        nb = nab_obj_pos[(m + 1, fon_obj_pos[m + 1][new_string])]
        return ct.obj_of((nb, A.id1[a]))

    def D_one(j: int) -> int:
        src, tgt = X.one_src[j], X.one_tgt[j]
        g, ga = X.one_labels[j]
        phi, comps = nabla.arrow_data(g)
        m = len(phi) - 1
        n_tgt = nabla.level_of(cat.arr_tgt[g])
        dphi = phi + (n_tgt + 1,)
        dphi_idx = delta_pos[(m + 1, n_tgt + 1, dphi)]
        src_string = nabla.string_of(cat.arr_src[g])
        _, p = X.obj_labels[src]
        new_src_string = (src_string[0] + (a,), src_string[1] + (p,))
        _, p2 = X.obj_labels[tgt]
        tgt_string = nabla.string_of(cat.arr_tgt[g])
        new_tgt_string = (tgt_string[0] + (a,), tgt_string[1] + (p2,))
        fo = fon_obj_pos[m + 1]
        fr = fon_arr_pos[m + 1][(fo[new_src_string],
                                 fo[_precompose_string(A, new_tgt_string, dphi)],
                                 comps + (ga,))]
        arr = nab_arr_pos[(nab_obj_pos[(m + 1, fo[new_src_string])],
                           nab_obj_pos[(n_tgt + 1,
                                        fon_obj_pos[n_tgt + 1][new_tgt_string])],
                           (dphi_idx, fr))]
        return ct.one_of(D_obj(src), D_obj(tgt), (arr, A.id2[A.id1[a]]))

    def iota(i: int) -> int:
        xi, p = X.obj_labels[i]
        m = nabla.level_of(xi)
        verts, steps = nabla.string_of(xi)
        phi = tuple(range(m + 1))
        dphi_idx = delta_pos[(m, m + 1, phi)]
        comps = tuple(A.id2[s] for s in steps)
        lvl = m
        new_string = (verts + (a,), steps + (p,))
        fr = fon_arr_pos[lvl][(fon_obj_pos[lvl][(verts, steps)],
                               fon_obj_pos[lvl][_precompose_string(A, new_string, phi)],
                               comps)]
        arr = nab_arr_pos[(xi, nab_obj_pos[(m + 1, fon_obj_pos[m + 1][new_string])],
                           (dphi_idx, fr))]
        return ct.one_of(i, D_obj(i), (arr, A.id2[p]))

    def kappa(i: int) -> int:
        xi, p = X.obj_labels[i]
        m = nabla.level_of(xi)
        verts, steps = nabla.string_of(xi)
        new_string = (verts + (a,), steps + (p,))
        dphi_idx = delta_pos[(0, m + 1, (m + 1,))]
        fr = fon_arr_pos[0][(fon_obj_pos[0][((a,), ())],
                             fon_obj_pos[0][_precompose_string(A, new_string, (m + 1,))],
                             ())]
        arr = nab_arr_pos[(nab_obj_pos[(0, fon_obj_pos[0][((a,), ())])],
                           nab_obj_pos[(m + 1, fon_obj_pos[m + 1][new_string])],
                           (dphi_idx, fr))]
        return ct.one_of(z0, D_obj(i), (arr, A.id2[A.id1[a]]))

    failures = []
    checked = 0
    # functoriality of the extension on the checked range
    for i in range(X.n_objects):
        if level(i) <= K - 1:
            if X.comp1.get((D_one(X.id1[i]), X.id1[D_obj(i)])) != D_one(X.id1[i]):
                failures.append(("identity", i))
    for (j2, j1), h in sorted(X.comp1.items()):
        if level(X.one_src[j1]) > K - 1 or level(X.one_tgt[j1]) > K - 1 \
                or level(X.one_tgt[j2]) > K - 1:
            continue
        checked += 1
        if X.comp1[(D_one(j2), D_one(j1))] != D_one(h):
            failures.append(("functoriality", j2, j1))
    # naturality squares of both contractions
    for j in range(X.n_one):
        src, tgt = X.one_src[j], X.one_tgt[j]
        if level(src) > K - 1 or level(tgt) > K - 1:
            continue
        checked += 1
        if X.comp1[(D_one(j), iota(src))] != X.comp1[(iota(tgt), j)]:
            failures.append(("iota-naturality", j))
        if X.comp1[(D_one(j), kappa(src))] != kappa(tgt):
            failures.append(("kappa-naturality", j))
    return SliceContractionReport(not failures, checked, failures)


# ---------------------------------------------------------------------------
# the commuting square of the comparison theorem

def elements_functor(u: LaxFunctor, K: int,
                     nabA: Optional[NablaElements] = None,
                     nabB: Optional[NablaElements] = None
                     ) -> tuple[CatFunctor, NablaElements, NablaElements]:
    """The functor between truncated element categories induced by a strict u."""
    if not u.strict:
        raise ValueError("the element functor is defined for strict functors")
    A, B = u.source, u.target
    if nabA is None:
        nabA = elements_of_nerfhom(A, K)
    if nabB is None:
        nabB = elements_of_nerfhom(B, K)
    catA, catB = nabA.category, nabB.category
    fonB_obj = [{lab: i for i, lab in enumerate(nabB.fon.levels[m].obj_labels)}
                for m in range(K + 1)]
    fonB_arr = [{(nabB.fon.levels[m].arr_src[j], nabB.fon.levels[m].arr_tgt[j],
                  nabB.fon.levels[m].arr_labels[j]): j
                 for j in nabB.fon.levels[m].arrows()}
                for m in range(K + 1)]
    nabB_obj = {lab: i for i, lab in enumerate(catB.obj_labels)}
    nabB_arr = {(catB.arr_src[j], catB.arr_tgt[j], catB.arr_labels[j]): j
                for j in catB.arrows()}
    deltaB_pos = {(nabB.delta.arr_src[f], nabB.delta.arr_tgt[f],
                   nabB.delta.arr_labels[f]): f for f in nabB.delta.arrows()}

    def send_string(m, string):
        verts, steps = string
        return fonB_obj[m][(tuple(u.obj(v) for v in verts),
                            tuple(u.one(s) for s in steps))]

    obj_map = {}
    for i in catA.objects():
        m = nabA.level_of(i)
        obj_map[i] = nabB_obj[(m, send_string(m, nabA.string_of(i)))]
    arr_map = {}
    for j in catA.arrows():
        f, r = catA.arr_labels[j]
        m, n = nabA.delta.arr_src[f], nabA.delta.arr_tgt[f]
        phi = nabA.delta.arr_labels[f]
        comps = nabA.fon.levels[m].arr_labels[r]
        new_comps = tuple(u.two(c) for c in comps)
        src_level = nabB.fon.levels[m]
        src_obj = send_string(m, nabA.string_of(catA.arr_src[j]))
        tgt_string = nabB.fon.levels[n].obj_labels[
            send_string(n, nabA.string_of(catA.arr_tgt[j]))]
        tgt_obj = fonB_obj[m][_precompose_string(B, tgt_string, phi)]
        r2 = fonB_arr[m][(src_obj, tgt_obj, new_comps)]
        arr_map[j] = nabB_arr[(obj_map[catA.arr_src[j]], obj_map[catA.arr_tgt[j]],
                               (deltaB_pos[(m, n, phi)], r2))]
    return CatFunctor(catA, catB, obj_map, arr_map), nabA, nabB


def square_check_sup(u: LaxFunctor, K: int) -> bool:
    """Cellwise equality u∘sup_A = sup_B∘elements(u), structural cells included."""
    from .functors import compose_lax, eq_lax_functor

    supA, nabA, S2A = sup(u.source, K)
    supB, nabB, S2B = sup(u.target, K)
    em, _, _ = elements_functor(u, K, nabA, nabB)
    if not em.check():
        return False
    em2 = LaxFunctor.strict_from_maps(S2A, S2B, em.obj_map,
                                      em.arr_map, em.arr_map)
    return eq_lax_functor(compose_lax(u, supA), compose_lax(supB, em2))
