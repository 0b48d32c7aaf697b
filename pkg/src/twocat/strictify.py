"""The path strictification: for a 2-category A, the 2-category of composable
1-cell strings of A, with the unit (a lax section) and the strict counit that
collapses a string to its composite.

The string 2-category is infinite whenever A has a 1-cell, so it is
represented lazily behind the generic 2-category protocol; every exhaustive
check over it takes an explicit path-length bound.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .comma import VirtualCommaLax, comma
from .core import TwoCategory, lwhisk, rwhisk
from .functors import (FunctorDomain, LaxFunctor, Transformation, compose_lax,
                       eq_lax_functor, identity_functor,
                       structural_cell_of_string, validate_lax_functor,
                       validate_transformation)


@dataclass(frozen=True)
class TildePath:
    """A composable string of 1-cells; the empty string is the identity."""

    src: object
    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class TildeCell:
    """A 2-cell between strings: a monotone endpoint-preserving reindexing map
    together with one 2-cell per target step, from the matching source block."""

    src: TildePath
    tgt: TildePath
    phi: tuple            # phi[i] for i = 0..n, phi[0] = 0, phi[n] = len(src)
    blocks: tuple         # n 2-cells of the base


class VirtualTilde:
    """The lazy 2-category of composable strings over any protocol base."""

    is_finite = False

    def __init__(self, base):
        self.base = base

    # -- protocol -----------------------------------------------------------
    def objects(self):
        return self.base.objects()

    def src1(self, p: TildePath):
        return p.src

    def tgt1(self, p: TildePath):
        return self.base.tgt1(p.steps[-1]) if p.steps else p.src

    def vertex(self, p: TildePath, k: int):
        return self.base.tgt1(p.steps[k - 1]) if k else p.src

    def src2(self, c: TildeCell) -> TildePath:
        return c.src

    def tgt2(self, c: TildeCell) -> TildePath:
        return c.tgt

    def id1_of(self, a) -> TildePath:
        return TildePath(a, ())

    def id2_of(self, p: TildePath) -> TildeCell:
        return TildeCell(p, p, tuple(range(len(p) + 1)),
                         tuple(self.base.id2_of(s) for s in p.steps))

    def compose1(self, q: TildePath, p: TildePath) -> TildePath:
        return TildePath(p.src, p.steps + q.steps)

    def block_composite(self, p: TildePath, lo: int, hi: int):
        """The base composite of steps lo..hi-1 of p (identity if empty)."""
        return self.base.compose1_path(self.vertex(p, lo), p.steps[lo:hi]) \
            if hasattr(self.base, "compose1_path") else self._fold(p, lo, hi)

    def _fold(self, p: TildePath, lo: int, hi: int):
        acc = None
        for s in p.steps[lo:hi]:
            acc = s if acc is None else self.base.compose1(s, acc)
        return self.base.id1_of(self.vertex(p, lo)) if acc is None else acc

    def _paste_blocks(self, cells, vertex):
        """Horizontal composite of a list of base 2-cells (inside first)."""
        acc = None
        for c in cells:
            acc = c if acc is None else self.base.hcompose(c, acc)
        return self.base.id2_of(self.base.id1_of(vertex)) if acc is None else acc

    def vcompose(self, c2: TildeCell, c1: TildeCell) -> TildeCell:
        phi = tuple(c1.phi[v] for v in c2.phi)
        blocks = []
        for j in range(1, len(c2.phi)):
            lo, hi = c2.phi[j - 1], c2.phi[j]
            paste = self._paste_blocks(c1.blocks[lo:hi], self.vertex(c1.src, c1.phi[lo]))
            blocks.append(self.base.vcompose(c2.blocks[j - 1], paste))
        return TildeCell(c1.src, c2.tgt, phi, tuple(blocks))

    def hcompose(self, c2: TildeCell, c1: TildeCell) -> TildeCell:
        m1 = len(c1.src)
        phi = c1.phi + tuple(m1 + v for v in c2.phi[1:])
        return TildeCell(self.compose1(c2.src, c1.src),
                         self.compose1(c2.tgt, c1.tgt),
                         phi, c1.blocks + c2.blocks)

    # -- bounded enumeration (finite bases only) ----------------------------
    def paths_between(self, a, b, max_len: int) -> list[TildePath]:
        A = self.base
        out = []

        def rec(cur, steps):
            if cur == b:
                out.append(TildePath(a, tuple(steps)))
            if len(steps) == max_len:
                return
            for f in A.one_cells():
                if A.src1(f) == cur:
                    steps.append(f)
                    rec(A.tgt1(f), steps)
                    steps.pop()

        rec(a, [])
        return out

    def all_paths(self, max_len: int) -> list[TildePath]:
        return [p for a in self.base.objects()
                for b in self.base.objects()
                for p in self.paths_between(a, b, max_len)]

    def two_cells_between(self, p: TildePath, q: TildePath) -> list[TildeCell]:
        A = self.base
        m, n = len(p), len(q)
        if self.src1(p) != self.src1(q) or self.tgt1(p) != self.tgt1(q):
            return []
        out = []

        def rec_phi(i, phi):
            if i == n:
                if phi[-1] != m:
                    return
                per_block = []
                for t in range(1, n + 1):
                    comp = self.block_composite(p, phi[t - 1], phi[t])
                    cands = A.two_cells_between(comp, q.steps[t - 1])
                    if not cands:
                        return
                    per_block.append(cands)
                for blocks in itertools.product(*per_block):
                    out.append(TildeCell(p, q, tuple(phi), blocks))
                return
            for v in range(phi[-1], m + 1):
                if self.vertex(p, v) == self.vertex(q, i + 1):
                    rec_phi(i + 1, phi + [v])

        rec_phi(0, [0])
        return out

    def is_valid_cell(self, c: TildeCell) -> bool:
        A = self.base
        m, n = len(c.src), len(c.tgt)
        if len(c.phi) != n + 1 or c.phi[0] != 0 or c.phi[-1] != m:
            return False
        if any(c.phi[i] > c.phi[i + 1] for i in range(n)):
            return False
        if any(self.vertex(c.src, c.phi[i]) != self.vertex(c.tgt, i)
               for i in range(n + 1)):
            return False
        for t in range(1, n + 1):
            comp = self.block_composite(c.src, c.phi[t - 1], c.phi[t])
            blk = c.blocks[t - 1]
            if A.src2(blk) != comp or A.tgt2(blk) != c.tgt.steps[t - 1]:
                return False
        return True


def tilde(A) -> VirtualTilde:
    return VirtualTilde(A)


def tilde_domain(A: TwoCategory, L: int, triple_budget: Optional[int] = None) -> FunctorDomain:
    """A bounded FunctorDomain over the string 2-category of A: all paths of
    length <= L, all 2-cells between them, composable pairs, and triples with
    total length <= L."""
    T = VirtualTilde(A)
    paths = T.all_paths(L)
    twos = [c for p in paths for q in paths
            if (T.src1(p), T.tgt1(p)) == (T.src1(q), T.tgt1(q))
            for c in T.two_cells_between(p, q)]
    comp_pairs = [(q, p) for p in paths for q in paths if T.tgt1(p) == T.src1(q)]
    comp_triples = [(r, q, p) for p in paths for q in paths for r in paths
                    if T.tgt1(p) == T.src1(q) and T.tgt1(q) == T.src1(r)
                    and len(p) + len(q) + len(r) <= L]
    if triple_budget is not None:
        comp_triples = comp_triples[:triple_budget]
    v_pairs = [(c2, c1) for c1 in twos for c2 in twos if c1.tgt == c2.src]
    h_pairs = [(c2, c1) for c1 in twos for c2 in twos
               if T.tgt1(c1.src) == T.src1(c2.src)
               and len(c1.src) + len(c2.src) <= L and len(c1.tgt) + len(c2.tgt) <= L]
    return FunctorDomain(list(A.objects()), paths, twos, comp_pairs,
                         comp_triples, v_pairs, h_pairs)


def tilde_materialize(A: TwoCategory, L: int) -> dict:
    """A flagged, non-closed truncation of the string 2-category, for
    inspection only (composition leaves the table)."""
    T = VirtualTilde(A)
    paths = T.all_paths(L)
    twos = [c for p in paths for q in paths
            if (T.src1(p), T.tgt1(p)) == (T.src1(q), T.tgt1(q))
            for c in T.two_cells_between(p, q)]
    return {"closed": False, "length_bound": L,
            "objects": list(A.objects()), "one_cells": paths, "two_cells": twos}


# ---------------------------------------------------------------------------
# unit and counit

def eta(A) -> LaxFunctor:
    """The lax unit A -> strings(A): f |-> the one-step string (f)."""
    T = VirtualTilde(A)

    def unit(a):
        return TildeCell(TildePath(a, ()), TildePath(a, (A.id1_of(a),)),
                         (0, 0), (A.id2_of(A.id1_of(a)),))

    def comp(g, f):
        a = A.src1(f)
        return TildeCell(TildePath(a, (f, g)),
                         TildePath(a, (A.compose1(g, f),)),
                         (0, 2), (A.id2_of(A.compose1(g, f)),))

    return LaxFunctor(
        A, T,
        lambda a: a,
        lambda f: TildePath(A.src1(f), (f,)),
        lambda x: TildeCell(TildePath(A.src1(A.src2(x)), (A.src2(x),)),
                            TildePath(A.src1(A.src2(x)), (A.tgt2(x),)),
                            (0, 1), (x,)),
        unit, comp, strict=False, name="eta")


def epsilon(A) -> LaxFunctor:
    """The strict counit strings(A) -> A collapsing a string to its composite."""
    T = VirtualTilde(A)

    def on_one(p: TildePath):
        return T._fold(p, 0, len(p))

    def on_two(c: TildeCell):
        return T._paste_blocks(list(c.blocks), c.src.src)

    return LaxFunctor(
        T, A,
        lambda a: a, on_one, on_two,
        lambda a: A.id2_of(A.id1_of(a)),
        lambda q, p: A.id2_of(on_one(T.compose1(q, p))),
        strict=True, name="epsilon")


def tilde_on_functor(u: LaxFunctor) -> LaxFunctor:
    """The strict functor strings(A) -> strings(B) induced by a lax u: blocks
    are pushed through u and corrected by its structural cells."""
    A, B = u.source, u.target
    TA, TB = VirtualTilde(A), VirtualTilde(B)

    def on_one(p: TildePath) -> TildePath:
        return TildePath(u.obj(p.src), tuple(u.one(s) for s in p.steps))

    def on_two(c: TildeCell) -> TildeCell:
        blocks = []
        for i in range(1, len(c.phi)):
            lo, hi = c.phi[i - 1], c.phi[i]
            struct = structural_cell_of_string(u, c.src.steps[lo:hi],
                                               at=TA.vertex(c.src, lo))
            blocks.append(B.vcompose(u.two(c.blocks[i - 1]), struct))
        return TildeCell(on_one(c.src), on_one(c.tgt), c.phi, tuple(blocks))

    return LaxFunctor(
        TA, TB,
        u._obj, on_one, on_two,
        lambda a: TB.id2_of(TB.id1_of(u.obj(a))),
        lambda q, p: TB.id2_of(on_one(TA.compose1(q, p))),
        strict=True, name=f"tilde({u.name or '?'})")


def bar(u: LaxFunctor) -> LaxFunctor:
    """The strict classifier strings(A) -> B of a lax u : A -> B."""
    out = compose_lax(epsilon(u.target), tilde_on_functor(u))
    out.name = f"bar({u.name or '?'})"
    out.strict = True
    return out


def bar_transformation(t: Transformation) -> Transformation:
    """Strictify a lax/oplax transformation to one between the classifiers,
    by the one-step recursion along the string."""
    u, v = t.src, t.tgt
    C = u.target
    bu, bv = bar(u), bar(v)
    A = u.source
    TA = VirtualTilde(A)

    def nat(p: TildePath):
        if len(p) == 0:
            return C.id2_of(t.component(p.src))
        if len(p) == 1:
            return t.nat(p.steps[0])
        if t.kind == "lax":
            first = p.steps[0]
            rest = TildePath(A.tgt1(first), p.steps[1:])
            v_rest = C.compose1_path(v.obj(A.tgt1(first)),
                                     [v.one(s) for s in rest.steps])
            return C.vcompose(lwhisk(C, v_rest, t.nat(first)),
                              rwhisk(C, nat(rest), u.one(first)))
        last = p.steps[-1]
        init = TildePath(p.src, p.steps[:-1])
        u_init = C.compose1_path(u.obj(p.src), [u.one(s) for s in init.steps])
        return C.vcompose(rwhisk(C, t.nat(last), u_init),
                          lwhisk(C, v.one(last), nat(init)))

    return Transformation(t.kind, bu, bv, t._component, nat,
                          name=f"bar({t.name or 'sigma'})")


def sigma_counit_comparison(u: LaxFunctor) -> Transformation:
    """The lax comparison bar(u) => u∘counit with identity components; on a
    string its naturality cell is the structural cell of the whole string."""
    A, B = u.source, u.target
    ue = compose_lax(u, epsilon(A))
    return Transformation(
        "lax", bar(u), ue,
        lambda a: B.id1_of(u.obj(a)),
        lambda p: structural_cell_of_string(u, p.steps, at=p.src),
        name="counit_comparison")


# ---------------------------------------------------------------------------
# adjunction checks

def check_eta_section(A: TwoCategory) -> bool:
    """counit∘unit = identity of A, exactly, on all cells."""
    return eq_lax_functor(compose_lax(epsilon(A), eta(A)), identity_functor(A))


def check_triangle_identities(A: TwoCategory, length_bound: int = 3) -> bool:
    """Both triangle identities of the strictification adjunction: the
    counit-after-unit identity on A, and the identity on strings(A) checked
    on all cells of path length <= length_bound."""
    if not check_eta_section(A):
        return False
    T = VirtualTilde(A)
    F = compose_lax(epsilon(T), tilde_on_functor(eta(A)))
    ident = identity_functor(T)
    dom = tilde_domain(A, length_bound)
    return eq_lax_functor(F, ident, dom)


def check_unit_naturality(u: LaxFunctor) -> bool:
    """tilde(u)∘eta_A = eta_B∘u cellwise on the (finite) source."""
    return eq_lax_functor(compose_lax(tilde_on_functor(u), eta(u.source)),
                          compose_lax(eta(u.target), u))


def check_counit_naturality(u: LaxFunctor, length_bound: int = 3) -> bool:
    """u∘counit_A = counit_B∘tilde(u) for strict u, on bounded string cells."""
    if not u.strict:
        raise ValueError("counit naturality is a square of strict functors")
    dom = tilde_domain(u.source, length_bound)
    return eq_lax_functor(compose_lax(u, epsilon(u.source)),
                          compose_lax(epsilon(u.target), tilde_on_functor(u)),
                          dom)


def check_bar_composition(v: LaxFunctor, u: LaxFunctor, length_bound: int = 3) -> bool:
    """bar(v)∘tilde(u) = bar(v∘u) on bounded string cells."""
    dom = tilde_domain(u.source, length_bound)
    return eq_lax_functor(compose_lax(bar(v), tilde_on_functor(u)),
                          bar(compose_lax(v, u)), dom)


# ---------------------------------------------------------------------------
# the slice comparison of the counit (bounded terminal-object certificates)

@dataclass
class CounitSliceReport:
    ok: bool
    checked_objects: int
    failures: list

    def __bool__(self) -> bool:
        return self.ok


def counit_comma_final_check(u: LaxFunctor, b: int, length_bound: int = 3) -> CounitSliceReport:
    """For every object (a, p) of comma(u, b): in the colax slice of the
    counit-comparison functor comma(bar u, b) -> comma(u, b) over (a, p), the
    object (a, p, 1_a, p * u_a) is homotopically final on all cells of path
    length <= length_bound.  Terminal-object conditions are checked exactly.
    """
    A, B = u.source, u.target
    TA = VirtualTilde(A)
    bu = bar(u)
    sig = sigma_counit_comparison(u)
    X = VirtualCommaLax(bu, b)          # comma(bar u, b) lazily
    cm = comma(u, b, "lax")             # finite target comma
    Y = cm.carrier

    def E_obj(o):
        # identity components: (a, p) |-> (a, p)
        return cm.obj_of(o)

    def E_one(c):
        src, tgt, f, be = c
        cell = B.vcompose(lwhisk(B, tgt[1], sig.nat(f)), be)
        return cm.one_of(E_obj(src), E_obj(tgt), (epsilon(A).one(f), cell))

    eps = epsilon(A)

    def E_two(x):
        return cm.two_of(E_one(x[0]), E_one(x[1]), eps.two(x[2]))

    failures = []
    checked = 0
    for zi in range(Y.n_objects):
        a, p = Y.obj_labels[zi]
        # distinguished object of the double slice: (a, p) with the identity leg
        z_leg = Y.id1[zi]
        # candidate terminal in each hom: one-step string with the leg itself
        for o in X.objects():
            for q in range(Y.n_one):
                if Y.one_src[q] != cm.obj_of(o) or Y.one_tgt[q] != zi:
                    continue
                checked += 1
                # terminal candidate: h_t = one-step string of the leg, kappa_t = identity
                fq, alq = Y.one_labels[q]
                h_t = (o, (a, p), TildePath(o[0], (fq,)), alq)
                kappa_t = Y.id2[q]
                # hom objects: pairs (h, kappa)
                hom_objs = []
                paths = TA.paths_between(o[0], a, length_bound)
                for h in X.one_cells_between_bounded(o, (a, p), paths):
                    eh = E_one(h)
                    for kappa in Y.two_cells_between(Y.comp1[(z_leg, eh)], q):
                        hom_objs.append((h, kappa))
                if (h_t, kappa_t) not in hom_objs:
                    failures.append(("missing-terminal", (a, p), o, Y.one_labels[q]))
                    continue
                for (h, kappa) in hom_objs:
                    count = 0
                    for tau in X.two_cells_between(h, h_t):
                        if Y.vcomp[(kappa_t, E_two(tau))] == kappa:
                            count += 1
                    if count != 1:
                        failures.append(("not-terminal", (a, p), o,
                                         Y.one_labels[q], h, count))
    return CounitSliceReport(not failures, checked, failures)


# ---------------------------------------------------------------------------
# the strictified-triangle comparison square

def _eta_comma_functor(u: LaxFunctor, c: int, cm, Yv: VirtualCommaLax) -> LaxFunctor:
    """comma(u, c) -> comma(bar u, c) induced by the unit (value-level target)."""
    A = u.source
    B = Yv.amb
    X = cm.carrier
    et = eta(A)

    def on_obj(i):
        return X.obj_labels[i]

    def on_one(j):
        f, al = X.one_labels[j]
        return (on_obj(X.one_src[j]), on_obj(X.one_tgt[j]), et.one(f), al)

    def on_two(k):
        return (on_one(X.two_src[k]), on_one(X.two_tgt[k]), et.two(X.two_labels[k]))

    def unit(i):
        a, p = X.obj_labels[i]
        src = Yv.id1_of(on_obj(i))
        return (src, on_one(X.id1[i]), et.unit(a))

    def comp(j2, j1):
        f = X.one_labels[j1][0]
        g = X.one_labels[j2][0]
        src = Yv.compose1(on_one(j2), on_one(j1))
        return (src, on_one(X.comp1[(j2, j1)]), et.comp(g, f))

    return LaxFunctor(X, Yv, on_obj, on_one, on_two, unit, comp,
                      strict=False, name="eta_comma")


def _tilde_induced_functor(u: LaxFunctor, sigma_bar: Transformation, c: int,
                           Xv: VirtualCommaLax, Yv: VirtualCommaLax) -> LaxFunctor:
    """comma(bar w, c) -> comma(bar v, c) induced by tilde(u) and the
    strictified transformation (value-level source and target)."""
    C = Yv.amb
    tu = tilde_on_functor(u)

    def on_obj(o):
        a, p = o
        return (tu.obj(a), C.compose1(p, sigma_bar.component(a)))

    def on_one(cell):
        src, tgt, f, al = cell
        new = C.vcompose(lwhisk(C, tgt[1], sigma_bar.nat(f)),
                         rwhisk(C, al, sigma_bar.component(src[0])))
        return (on_obj(src), on_obj(tgt), tu.one(f), new)

    def on_two(x):
        return (on_one(x[0]), on_one(x[1]), tu.two(x[2]))

    def unit(o):
        return Yv.id2_of(Yv.id1_of(on_obj(o)))

    def comp(c2, c1):
        return Yv.id2_of(Yv.compose1(on_one(c2), on_one(c1)))

    return LaxFunctor(Xv, Yv, on_obj, on_one, on_two, unit, comp,
                      strict=True, name="tilde_induced")


def square_strictification_check(u: LaxFunctor, v: LaxFunctor, w: LaxFunctor,
                                 sigma: Transformation, c: int) -> bool:
    """The comparison square for a triangle (u, v, w, sigma): strictifying
    then slicing equals slicing then mapping into the strictified slice,
    cellwise on the finite slice of w over c (structural cells included)."""
    from .comma import induced_functor

    cm_w = comma(w, c, "lax")
    cm_v = comma(v, c, "lax")
    F = induced_functor(u, sigma, c, cm_w, cm_v)
    bw, bv = bar(w), bar(v)
    Xv = VirtualCommaLax(bw, c)
    Yv = VirtualCommaLax(bv, c)
    sb = bar_transformation(sigma)
    G1 = compose_lax(_tilde_induced_functor(u, sb, c, Xv, Yv),
                     _eta_comma_functor(w, c, cm_w, Xv))
    G2 = compose_lax(_eta_comma_functor(v, c, cm_v, Yv), F)
    return eq_lax_functor(G1, G2)
