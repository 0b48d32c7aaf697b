"""Deterministic, seedable corpus generators.

Families are written as compact specs: interval:2, group:3, point, idem,
poset:5 (seeded), product(interval:1,interval:2),
slice(interval:2,2,lax), integral:2.  The same seed always produces the
same cells in the same order, so emitted documents are bit-exact.
"""
from __future__ import annotations

import random
from typing import Optional

from .comma import canonical_slice
from .core import (Category, TwoCategory, from_category, group_two_cat,
                   interval, point, product, tabulate_two_category)
from .functors import LaxFunctor, Transformation, constant_functor, identity_functor
from .integration import TwoCatValuedFunctor, integrate


def idempotent_two_cat() -> TwoCategory:
    """One object; an idempotent endo-1-cell e above the identity, with the
    single 2-cell 1 => e.  The smallest host of genuinely lax structure."""
    ones = [(0, 0, "1"), (0, 0, "e")]
    twos = [(0, 0, "i1"), (0, 1, "t"), (1, 1, "ie")]

    def comp1_of(g, f):
        return "e" if "e" in (ones[g][2], ones[f][2]) else "1"

    def vcomp_of(b, a):
        table = {("i1", "i1"): "i1", ("t", "i1"): "t",
                 ("ie", "t"): "t", ("ie", "ie"): "ie"}
        return table[(twos[b][2], twos[a][2])]

    def hcomp_of(b, a):
        x, y = twos[b][2], twos[a][2]
        if x == "i1" and y == "i1":
            return "i1"
        if "ie" in (x, y):
            return "ie"
        return "t"

    return tabulate_two_category(
        [0], ones, twos,
        id1_of=lambda a: "1",
        id2_of=lambda f: ["i1", "ie"][f],
        comp1_of=comp1_of, vcomp_of=vcomp_of, hcomp_of=hcomp_of,
        name="idempotent")


def random_poset_category(n: int, seed: int = 0, density: float = 0.35) -> Category:
    """The category of a random poset on n elements (reflexive-transitive
    closure of a seeded random DAG on 0 < 1 < ... as underlying order)."""
    rng = random.Random(seed)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                rel[i][j] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    arrows = [(i, j, (i, j)) for i in range(n) for j in range(n) if rel[i][j]]
    from .core import tabulate_category
    return tabulate_category(list(range(n)), arrows,
                             id_of=lambda a: (a, a),
                             comp_of=lambda g, f: (arrows[f][2][0], arrows[g][2][1]))


def discrete_fiber_functor(n: int) -> TwoCatValuedFunctor:
    """A 2-Cat-valued functor on the arrow category: point over 0, an
    n-object discrete 2-category over 1, the 1-cell picking object 0."""
    I1 = interval(1)
    pt = point()
    disc = from_category(Category(
        n, tuple(range(n)), tuple(range(n)), tuple(range(n)),
        {(i, i): i for i in range(n)}), name=f"discrete({n})")
    f01 = [f for f in I1.one_cells()
           if I1.one_src[f] == 0 and I1.one_tgt[f] == 1][0]
    on_one = {I1.id1[0]: identity_functor(pt),
              I1.id1[1]: identity_functor(disc),
              f01: constant_functor(pt, disc, 0)}
    from .functors import identity_transformation
    on_two = {x: identity_transformation(on_one[I1.two_src[x]], "strict")
              for x in I1.two_cells()}
    return TwoCatValuedFunctor(I1, [pt, disc], on_one, on_two)


_FAMILIES = ("interval", "group", "point", "idem", "poset", "product",
             "slice", "integral")


def parse_family_spec(spec: str):
    """Parse a compact family spec into a nested tuple."""
    spec = spec.strip()
    if "(" in spec and spec.index("(") < (spec.index(":") if ":" in spec else len(spec)):
        head, rest = spec.split("(", 1)
        if not rest.endswith(")"):
            raise ValueError(f"unbalanced family spec {spec!r}")
        inner = rest[:-1]
        parts = []
        depth = 0
        cur = ""
        for ch in inner:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
            else:
                cur += ch
        if cur:
            parts.append(cur)
        return (head.strip(),) + tuple(parse_family_spec(p) if not p.strip().isdigit()
                                       and p.strip() not in ("lax", "oplax", "colax", "opcolax")
                                       else p.strip() for p in parts)
    if ":" in spec:
        head, *args = spec.split(":")
        return (head,) + tuple(args)
    return (spec,)


def build_family(tree, seed: int = 0) -> TwoCategory:
    head = tree[0]
    if head == "interval":
        return interval(int(tree[1]))
    if head == "group":
        return group_two_cat(int(tree[1]))
    if head == "point":
        return point()
    if head == "idem":
        return idempotent_two_cat()
    if head == "poset":
        n = int(tree[1])
        s = int(tree[2]) if len(tree) > 2 else seed
        return from_category(random_poset_category(n, s), name=f"poset({n},seed={s})")
    if head == "product":
        return product(build_family(tree[1], seed), build_family(tree[2], seed))
    if head == "slice":
        A = build_family(tree[1], seed)
        a = int(tree[2])
        variant = tree[3] if len(tree) > 3 else "lax"
        ct = canonical_slice(A, a, variant)
        C = ct.carrier
        C.name = f"slice({A.name},{a},{variant})"
        return C
    if head == "integral":
        n = int(tree[1]) if len(tree) > 1 else 2
        total, _ = integrate(discrete_fiber_functor(n))
        C = total.carrier
        C.name = f"integral({n})"
        return C
    raise ValueError(f"unknown family {head!r}; known: {', '.join(_FAMILIES)}")


def generate(spec: str, seed: int = 0) -> TwoCategory:
    return build_family(parse_family_spec(spec), seed)
