"""Shared corpus fixtures: the 2-categories, functors and triangles the
law checks and acceptance criteria run over."""
from __future__ import annotations

import pytest

from twocat.comma import canonical_slice
from twocat.core import Category, TwoCategory, from_category, group_two_cat, interval, point, product
from twocat.functors import LaxFunctor, Transformation, compose_lax, constant_functor, identity_functor
from twocat.generate import discrete_fiber_functor, idempotent_two_cat, random_poset_category
from twocat.integration import integrate


def monotone_functor(src: TwoCategory, tgt: TwoCategory, vertex_map: dict) -> LaxFunctor:
    """The strict functor between interval 2-categories induced by a
    monotone vertex map."""
    one_map = {}
    for f in src.one_cells():
        i, j = src.one_labels[f]
        one_map[f] = tgt.one_cells_between(vertex_map[i], vertex_map[j])[0]
    return LaxFunctor.strict_from_maps(src, tgt, vertex_map, one_map, one_map)


def projection_functor(P: TwoCategory, factor: int, target: TwoCategory) -> LaxFunctor:
    return LaxFunctor.strict_from_maps(
        P, target,
        obj_map={i: lab[factor] for i, lab in enumerate(P.obj_labels)},
        one_map={i: lab[factor] for i, lab in enumerate(P.one_labels)},
        two_map={i: lab[factor] for i, lab in enumerate(P.two_labels)},
        name=f"pr{factor}")


def pairing_functor(u: LaxFunctor, v: LaxFunctor, P: TwoCategory) -> LaxFunctor:
    """The strict pairing <u, v> : A -> B x C of two strict functors."""
    obj_ix = {lab: i for i, lab in enumerate(P.obj_labels)}
    one_ix = {(P.one_src[j], P.one_tgt[j], lab): j for j, lab in enumerate(P.one_labels)}
    two_ix = {(P.two_src[k], P.two_tgt[k], lab): k for k, lab in enumerate(P.two_labels)}
    A = u.source
    obj_map = {a: obj_ix[(u.obj(a), v.obj(a))] for a in A.objects()}
    one_map = {}
    for f in A.one_cells():
        one_map[f] = one_ix[(obj_map[A.one_src[f]], obj_map[A.one_tgt[f]],
                             (u.one(f), v.one(f)))]
    two_map = {}
    for x in A.two_cells():
        two_map[x] = two_ix[(one_map[A.two_src[x]], one_map[A.two_tgt[x]],
                             (u.two(x), v.two(x)))]
    return LaxFunctor.strict_from_maps(A, P, obj_map, one_map, two_map)


def lax_select(B: TwoCategory = None) -> LaxFunctor:
    """The genuinely lax functor point -> idempotent 2-category sending the
    identity 1-cell to the idempotent e, with unit cell 1 => e."""
    if B is None:
        B = idempotent_two_cat()
    pt = point()
    return LaxFunctor(pt, B, lambda a: 0, lambda f: 1, lambda x: B.id2[1],
                      lambda a: 1, lambda g, f: B.id2[1],
                      strict=False, name="lax_select")


def lax_interval_functor(B: TwoCategory = None) -> LaxFunctor:
    """A genuinely lax functor interval(1) -> idempotent 2-category: the
    identity of 0 goes to e with unit cell t, everything else to e or 1."""
    if B is None:
        B = idempotent_two_cat()
    I1 = interval(1)
    one_map = {I1.id1[0]: 1, I1.id1[1]: 0, 1: 1}   # id_0 -> e, mid -> e, id_1 -> 1
    unit_cells = {0: 1, 1: B.id2[0]}               # t at 0, identity at 1
    comp_cells = {}
    for (g, f) in I1.comp1:
        comp_cells[(g, f)] = B.id2[B.comp1[(one_map[g], one_map[f])]]
    return LaxFunctor.from_tables(I1, B,
                                  obj_map={0: 0, 1: 0},
                                  one_map=one_map,
                                  two_map={x: B.id2[one_map[I1.two_src[x]]]
                                           for x in I1.two_cells()},
                                  unit_cells=unit_cells, comp_cells=comp_cells,
                                  name="lax_interval")


@pytest.fixture(scope="session")
def corpus():
    """Named corpus 2-categories: intervals <= 3, two products, the cyclic
    groups of order 2 and 3, two slices, one integral, plus lax hosts."""
    I1, I2 = interval(1), interval(2)
    sq = product(I1, I1)
    total, _ = integrate(discrete_fiber_functor(2))
    total.carrier.name = "integral(2)"
    cats = {
        "point": point(),
        "interval1": I1,
        "interval2": I2,
        "interval3": interval(3),
        "square": sq,
        "prism": product(I1, I2),
        "group2": group_two_cat(2),
        "group3": group_two_cat(3),
        "slice_i2": canonical_slice(I2, 2, "lax").carrier,
        "slice_sq": canonical_slice(sq, 3, "colax").carrier,
        "integral": total.carrier,
        "idem": idempotent_two_cat(),
    }
    cats["slice_i2"].name = "slice_i2"
    cats["slice_sq"].name = "slice_sq"
    return cats


@pytest.fixture(scope="session")
def mutation_corpus(corpus):
    """The criterion-1 corpus: intervals <= 3, products, both groups,
    two commas, one integral."""
    names = ["point", "interval1", "interval2", "interval3", "square",
             "prism", "group2", "group3", "slice_i2", "slice_sq", "integral"]
    return {n: corpus[n] for n in names}


@pytest.fixture(scope="session")
def strict_functor_corpus(corpus):
    """Named strict functors between corpus members."""
    I1, I2, I3 = corpus["interval1"], corpus["interval2"], interval(3)
    sq = corpus["square"]
    pt = corpus["point"]
    G2 = corpus["group2"]
    out = {
        "id_point": identity_functor(pt),
        "id_interval1": identity_functor(I1),
        "id_interval2": identity_functor(I2),
        "id_group2": identity_functor(G2),
        "select0": constant_functor(pt, I1, 0),
        "collapse_i1": constant_functor(I1, pt, 0),
        "monotone_i2_i1": monotone_functor(I2, I1, {0: 0, 1: 0, 2: 1}),
        "monotone_i3_i2": monotone_functor(I3, I2, {0: 0, 1: 1, 2: 2, 3: 2}),
        "pr1_square": projection_functor(sq, 0, I1),
        "pr2_square": projection_functor(sq, 1, I1),
        "const_g2": constant_functor(G2, pt, 0),
    }
    out["diag_i1"] = pairing_functor(out["id_interval1"], out["id_interval1"], sq)
    return out
