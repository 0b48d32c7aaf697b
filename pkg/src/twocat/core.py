"""Finite strict 2-categories and finite 1-categories.

Cells are dense integer indices.  A 2-category stores its 1-cell and 2-cell
incidence, identity assignments and the three composition tables (comp1,
vcomp, hcomp) as total maps over the composable domain.  Everything is built
in lexicographic cell order so serialization is deterministic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

Pair = tuple[int, int]


class BudgetExceeded(Exception):
    """Raised when a construction would exceed a configured cell budget."""


def check_budget(n_cells: int, budget: Optional[int]) -> None:
    if budget is not None and n_cells > budget:
        raise BudgetExceeded(f"construction needs {n_cells} cells, budget is {budget}")


# ---------------------------------------------------------------------------
# finite 1-categories

@dataclass
class Category:
    """A finite 1-category with integer-indexed objects and arrows."""

    n_objects: int
    arr_src: tuple[int, ...]
    arr_tgt: tuple[int, ...]
    ids: tuple[int, ...]
    comp: dict[Pair, int]
    obj_labels: Optional[tuple] = None
    arr_labels: Optional[tuple] = None

    @property
    def n_arrows(self) -> int:
        return len(self.arr_src)

    def objects(self) -> range:
        return range(self.n_objects)

    def arrows(self) -> range:
        return range(self.n_arrows)

    def arrows_between(self, a: int, b: int) -> list[int]:
        return [f for f in self.arrows() if self.arr_src[f] == a and self.arr_tgt[f] == b]

    def compose(self, g: int, f: int) -> int:
        """g after f."""
        return self.comp[(g, f)]


def validate_category(C: Category) -> list[tuple[str, tuple]]:
    """All 1-category law violations, one lexicographically minimal witness per law."""
    bad: dict[str, tuple] = {}

    def hit(law: str, witness: tuple) -> None:
        bad.setdefault(law, witness)

    n, m = C.n_objects, C.n_arrows
    if len(C.ids) != n or len(C.arr_src) != m or len(C.arr_tgt) != m:
        hit("malformed-table", ("shape",))
        return list(bad.items())
    for f in C.arrows():
        if not (0 <= C.arr_src[f] < n and 0 <= C.arr_tgt[f] < n):
            hit("malformed-table", ("arrow-endpoints", f))
    for a in C.objects():
        i = C.ids[a]
        if not (0 <= i < m) or C.arr_src[i] != a or C.arr_tgt[i] != a:
            hit("malformed-table", ("identity", a))
    composable = {(g, f) for g in C.arrows() for f in C.arrows() if C.arr_tgt[f] == C.arr_src[g]}
    if set(C.comp) != composable:
        key = sorted(composable.symmetric_difference(set(C.comp)))[0]
        hit("malformed-table", ("comp-domain",) + key)
        return list(bad.items())
    for (g, f), h in sorted(C.comp.items()):
        if not (0 <= h < m) or C.arr_src[h] != C.arr_src[f] or C.arr_tgt[h] != C.arr_tgt[g]:
            hit("malformed-table", ("comp-endpoints", g, f))
    for f in C.arrows():
        if C.comp.get((f, C.ids[C.arr_src[f]])) != f:
            hit("unit", (f, "right"))
        if C.comp.get((C.ids[C.arr_tgt[f]], f)) != f:
            hit("unit", (f, "left"))
    for h in C.arrows():
        for g in C.arrows():
            if C.arr_tgt[g] != C.arr_src[h]:
                continue
            hg = C.comp[(h, g)]
            for f in C.arrows():
                if C.arr_tgt[f] != C.arr_src[g]:
                    continue
                if C.comp[(hg, f)] != C.comp[(h, C.comp[(g, f)])]:
                    hit("assoc", (h, g, f))
    return sorted(bad.items())


def terminal_objects(C: Category) -> list[int]:
    return [t for t in C.objects()
            if all(len(C.arrows_between(x, t)) == 1 for x in C.objects())]


def initial_objects(C: Category) -> list[int]:
    return [s for s in C.objects()
            if all(len(C.arrows_between(s, x)) == 1 for x in C.objects())]


def opposite_category(C: Category) -> Category:
    comp = {(g, f): h for (f, g), h in C.comp.items()}
    return Category(C.n_objects, C.arr_tgt, C.arr_src, C.ids, comp,
                    C.obj_labels, C.arr_labels)


def tabulate_category(obj_labels: list, arrows: list[tuple[int, int, Any]],
                      id_of: Callable[[int], Any],
                      comp_of: Callable[[int, int], Any]) -> Category:
    """Build a Category from labelled data; composition given on labels."""
    arr_index = {(s, t, lab): i for i, (s, t, lab) in enumerate(arrows)}
    if len(arr_index) != len(arrows):
        raise ValueError("duplicate arrow")
    src = tuple(s for s, _, _ in arrows)
    tgt = tuple(t for _, t, _ in arrows)
    ids = tuple(arr_index[(a, a, id_of(a))] for a in range(len(obj_labels)))
    comp = {}
    for g, (gs, gt, _) in enumerate(arrows):
        for f, (fs, ft, _) in enumerate(arrows):
            if ft == gs:
                comp[(g, f)] = arr_index[(fs, gt, comp_of(g, f))]
    return Category(len(obj_labels), src, tgt, ids, comp,
                    tuple(obj_labels), tuple(lab for _, _, lab in arrows))


# ---------------------------------------------------------------------------
# finite strict 2-categories

@dataclass
class TwoCategory:
    """A fully tabulated finite strict 2-category."""

    n_objects: int
    one_src: tuple[int, ...]
    one_tgt: tuple[int, ...]
    two_src: tuple[int, ...]          # 1-cell indices
    two_tgt: tuple[int, ...]
    id1: tuple[int, ...]              # object -> 1-cell
    id2: tuple[int, ...]              # 1-cell -> 2-cell
    comp1: dict[Pair, int]            # (g, f) -> g∘f
    vcomp: dict[Pair, int]            # (b, a) -> b∘a, a first
    hcomp: dict[Pair, int]            # (b, a) -> b⋆a, a on the inside
    obj_labels: Optional[tuple] = None
    one_labels: Optional[tuple] = None
    two_labels: Optional[tuple] = None
    name: Optional[str] = None

    is_finite = True

    @property
    def n_one(self) -> int:
        return len(self.one_src)

    @property
    def n_two(self) -> int:
        return len(self.two_src)

    @property
    def n_cells(self) -> int:
        return self.n_objects + self.n_one + self.n_two

    # -- generic protocol (shared with virtual 2-categories) ---------------
    def objects(self) -> range:
        return range(self.n_objects)

    def src1(self, f: int) -> int:
        return self.one_src[f]

    def tgt1(self, f: int) -> int:
        return self.one_tgt[f]

    def src2(self, x: int) -> int:
        return self.two_src[x]

    def tgt2(self, x: int) -> int:
        return self.two_tgt[x]

    def id1_of(self, a: int) -> int:
        return self.id1[a]

    def id2_of(self, f: int) -> int:
        return self.id2[f]

    def compose1(self, g: int, f: int) -> int:
        return self.comp1[(g, f)]

    def vcompose(self, b: int, a: int) -> int:
        return self.vcomp[(b, a)]

    def hcompose(self, b: int, a: int) -> int:
        return self.hcomp[(b, a)]

    def one_cells(self) -> range:
        return range(self.n_one)

    def two_cells(self) -> range:
        return range(self.n_two)

    def one_cells_between(self, a: int, b: int) -> list[int]:
        return [f for f in self.one_cells()
                if self.one_src[f] == a and self.one_tgt[f] == b]

    def two_cells_between(self, f: int, g: int) -> list[int]:
        return [x for x in self.two_cells()
                if self.two_src[x] == f and self.two_tgt[x] == g]

    def compose1_path(self, at: int, steps: Iterable[int]) -> int:
        """Composite of a composable 1-cell string starting at `at` (empty -> id)."""
        acc = None
        for s in steps:
            acc = s if acc is None else self.compose1(s, acc)
        return self.id1[at] if acc is None else acc


def lwhisk(C, g, x):
    """g ⋆ x: whisker the 2-cell x by the 1-cell g on the outside."""
    return C.hcompose(C.id2_of(g), x)


def rwhisk(C, x, f):
    """x ⋆ f: whisker the 2-cell x by the 1-cell f on the inside."""
    return C.hcompose(x, C.id2_of(f))


@dataclass
class ValidationReport:
    ok: bool
    violations: list[tuple[str, tuple]]

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{law}{w}" for law, w in self.violations)


def validate_two_category(C: TwoCategory) -> ValidationReport:
    """Exhaustively check the strict 2-category axioms.

    Laws checked: table well-formedness, comp1 unit/associativity,
    per-hom category axioms for vcomp, hcomp unit/associativity,
    interchange, and hcomp of identity 2-cells being the identity of
    the composite.  One minimal witness per violated law.
    """
    bad: dict[str, tuple] = {}

    def hit(law: str, witness: tuple) -> None:
        bad.setdefault(law, witness)

    n, m1, m2 = C.n_objects, C.n_one, C.n_two
    if len(C.id1) != n or len(C.id2) != m1:
        hit("malformed-table", ("shape",))
        return ValidationReport(False, sorted(bad.items()))
    for f in range(m1):
        if not (0 <= C.one_src[f] < n and 0 <= C.one_tgt[f] < n):
            hit("malformed-table", ("one-endpoints", f))
            return ValidationReport(False, sorted(bad.items()))
    for x in range(m2):
        if not (0 <= C.two_src[x] < m1 and 0 <= C.two_tgt[x] < m1):
            hit("malformed-table", ("two-endpoints", x))
            return ValidationReport(False, sorted(bad.items()))
        s, t = C.two_src[x], C.two_tgt[x]
        if C.one_src[s] != C.one_src[t] or C.one_tgt[s] != C.one_tgt[t]:
            hit("malformed-table", ("two-not-parallel", x))
    for a in range(n):
        i = C.id1[a]
        if not (0 <= i < m1) or C.one_src[i] != a or C.one_tgt[i] != a:
            hit("malformed-table", ("id1", a))
    for f in range(m1):
        i = C.id2[f]
        if not (0 <= i < m2) or C.two_src[i] != f or C.two_tgt[i] != f:
            hit("malformed-table", ("id2", f))

    comp1_dom = {(g, f) for g in range(m1) for f in range(m1)
                 if C.one_tgt[f] == C.one_src[g]}
    if set(C.comp1) != comp1_dom:
        key = sorted(comp1_dom.symmetric_difference(set(C.comp1)))[0]
        hit("malformed-table", ("comp1-domain",) + key)
        return ValidationReport(False, sorted(bad.items()))
    for (g, f), h in sorted(C.comp1.items()):
        if not (0 <= h < m1) or C.one_src[h] != C.one_src[f] or C.one_tgt[h] != C.one_tgt[g]:
            hit("malformed-table", ("comp1-endpoints", g, f))

    vcomp_dom = {(b, a) for b in range(m2) for a in range(m2)
                 if C.two_tgt[a] == C.two_src[b]}
    if set(C.vcomp) != vcomp_dom:
        key = sorted(vcomp_dom.symmetric_difference(set(C.vcomp)))[0]
        hit("malformed-table", ("vcomp-domain",) + key)
        return ValidationReport(False, sorted(bad.items()))
    for (b, a), c in sorted(C.vcomp.items()):
        if not (0 <= c < m2) or C.two_src[c] != C.two_src[a] or C.two_tgt[c] != C.two_tgt[b]:
            hit("malformed-table", ("vcomp-endpoints", b, a))

    def h_composable(b: int, a: int) -> bool:
        return C.one_tgt[C.two_src[a]] == C.one_src[C.two_src[b]]

    hcomp_dom = {(b, a) for b in range(m2) for a in range(m2) if h_composable(b, a)}
    if set(C.hcomp) != hcomp_dom:
        key = sorted(hcomp_dom.symmetric_difference(set(C.hcomp)))[0]
        hit("malformed-table", ("hcomp-domain",) + key)
        return ValidationReport(False, sorted(bad.items()))
    for (b, a), c in sorted(C.hcomp.items()):
        want_s = C.comp1.get((C.two_src[b], C.two_src[a]))
        want_t = C.comp1.get((C.two_tgt[b], C.two_tgt[a]))
        if not (0 <= c < m2) or C.two_src[c] != want_s or C.two_tgt[c] != want_t:
            hit("malformed-table", ("hcomp-endpoints", b, a))

    if bad:
        return ValidationReport(False, sorted(bad.items()))

    # comp1 unit and associativity
    for f in range(m1):
        if C.comp1[(f, C.id1[C.one_src[f]])] != f:
            hit("comp1-unit", (f, "right"))
        if C.comp1[(C.id1[C.one_tgt[f]], f)] != f:
            hit("comp1-unit", (f, "left"))
    for h in range(m1):
        for g in range(m1):
            if C.one_tgt[g] != C.one_src[h]:
                continue
            hg = C.comp1[(h, g)]
            for f in range(m1):
                if C.one_tgt[f] != C.one_src[g]:
                    continue
                if C.comp1[(hg, f)] != C.comp1[(h, C.comp1[(g, f)])]:
                    hit("comp1-assoc", (h, g, f))

    # hom-category axioms (vcomp)
    for x in range(m2):
        if C.vcomp[(x, C.id2[C.two_src[x]])] != x:
            hit("vcomp-unit", (x, "right"))
        if C.vcomp[(C.id2[C.two_tgt[x]], x)] != x:
            hit("vcomp-unit", (x, "left"))
    vpairs = sorted(vcomp_dom)
    for (b, a) in vpairs:
        ba = C.vcomp[(b, a)]
        for c in range(m2):
            if C.two_tgt[b] != C.two_src[c]:
                continue
            if C.vcomp[(c, ba)] != C.vcomp[(C.vcomp[(c, b)], a)]:
                hit("vcomp-assoc", (c, b, a))

    # hcomp unit and associativity
    for x in range(m2):
        a = C.one_src[C.two_src[x]]
        b = C.one_tgt[C.two_src[x]]
        if C.hcomp[(x, C.id2[C.id1[a]])] != x:
            hit("hcomp-unit", (x, "right"))
        if C.hcomp[(C.id2[C.id1[b]], x)] != x:
            hit("hcomp-unit", (x, "left"))
    hpairs = sorted(hcomp_dom)
    for (b, a) in hpairs:
        ba = C.hcomp[(b, a)]
        for c in range(m2):
            if not h_composable(c, b):
                continue
            if C.hcomp[(c, ba)] != C.hcomp[(C.hcomp[(c, b)], a)]:
                hit("hcomp-assoc", (c, b, a))

    # hcomp of identity 2-cells is the identity of the composite
    for (g, f), h in sorted(C.comp1.items()):
        if C.hcomp[(C.id2[g], C.id2[f])] != C.id2[h]:
            hit("hcomp-id", (g, f))

    # interchange on every composable quadruple
    for a in range(m2):
        for a2 in range(m2):
            if C.two_tgt[a] != C.two_src[a2]:
                continue
            va = C.vcomp[(a2, a)]
            for b in range(m2):
                if not h_composable(b, a):
                    continue
                for b2 in range(m2):
                    if C.two_tgt[b] != C.two_src[b2]:
                        continue
                    lhs = C.hcomp[(C.vcomp[(b2, b)], va)]
                    rhs = C.vcomp[(C.hcomp[(b2, a2)], C.hcomp[(b, a)])]
                    if lhs != rhs:
                        hit("interchange", (b2, b, a2, a))

    return ValidationReport(not bad, sorted(bad.items()))


# ---------------------------------------------------------------------------
# tabulation helper for label-driven constructions

def tabulate_two_category(obj_labels: list,
                          one_cells: list[tuple[int, int, Any]],
                          two_cells: list[tuple[int, int, Any]],
                          id1_of: Callable[[int], Any],
                          id2_of: Callable[[int], Any],
                          comp1_of: Callable[[int, int], Any],
                          vcomp_of: Callable[[int, int], Any],
                          hcomp_of: Callable[[int, int], Any],
                          name: Optional[str] = None,
                          budget: Optional[int] = None) -> TwoCategory:
    """Assemble a TwoCategory from labelled cells and label-level composition.

    1-cells are given as (src_obj, tgt_obj, label); 2-cells as
    (src_one_index, tgt_one_index, label).  The composition callables act
    on cell indices and return the label of the result; the builder derives
    endpoints and resolves labels back to indices.
    """
    check_budget(len(obj_labels) + len(one_cells) + len(two_cells), budget)
    one_index = {key: i for i, key in enumerate(one_cells)}
    two_index = {key: i for i, key in enumerate(two_cells)}
    if len(one_index) != len(one_cells) or len(two_index) != len(two_cells):
        raise ValueError("duplicate cell key")
    one_src = tuple(s for s, _, _ in one_cells)
    one_tgt = tuple(t for _, t, _ in one_cells)
    two_src = tuple(s for s, _, _ in two_cells)
    two_tgt = tuple(t for _, t, _ in two_cells)

    id1 = tuple(one_index[(a, a, id1_of(a))] for a in range(len(obj_labels)))
    id2 = tuple(two_index[(f, f, id2_of(f))] for f in range(len(one_cells)))
    comp1 = {}
    for g in range(len(one_cells)):
        for f in range(len(one_cells)):
            if one_tgt[f] == one_src[g]:
                comp1[(g, f)] = one_index[(one_src[f], one_tgt[g], comp1_of(g, f))]
    vcomp = {}
    for b in range(len(two_cells)):
        for a in range(len(two_cells)):
            if two_tgt[a] == two_src[b]:
                vcomp[(b, a)] = two_index[(two_src[a], two_tgt[b], vcomp_of(b, a))]
    hcomp = {}
    for b in range(len(two_cells)):
        for a in range(len(two_cells)):
            if one_tgt[two_src[a]] == one_src[two_src[b]]:
                s = comp1[(two_src[b], two_src[a])]
                t = comp1[(two_tgt[b], two_tgt[a])]
                hcomp[(b, a)] = two_index[(s, t, hcomp_of(b, a))]
    return TwoCategory(len(obj_labels), one_src, one_tgt, two_src, two_tgt,
                       id1, id2, comp1, vcomp, hcomp,
                       tuple(obj_labels),
                       tuple(lab for _, _, lab in one_cells),
                       tuple(lab for _, _, lab in two_cells),
                       name=name)


# ---------------------------------------------------------------------------
# builders

def interval(m: int) -> TwoCategory:
    """The poset {0..m} as a 2-category: one 1-cell i->j for i<=j, identity 2-cells."""
    if m < 0:
        raise ValueError("m must be >= 0")
    objs = list(range(m + 1))
    ones = [(i, j, (i, j)) for i in objs for j in objs if i <= j]
    one_index = {(i, j): k for k, (i, j, _) in enumerate(ones)}
    twos = [(k, k, (i, j)) for k, (i, j, _) in enumerate(ones)]
    return tabulate_two_category(
        objs, ones, twos,
        id1_of=lambda a: (a, a),
        id2_of=lambda f: ones[f][2],
        comp1_of=lambda g, f: (ones[f][2][0], ones[g][2][1]),
        vcomp_of=lambda b, a: twos[a][2],
        hcomp_of=lambda b, a: (ones[twos[a][0]][2][0], ones[twos[b][0]][2][1]),
        name=f"interval({m})")


def point() -> TwoCategory:
    return interval(0)


def group_two_cat(n: int) -> TwoCategory:
    """One object, its identity 1-cell, and Z/n worth of 2-cells under addition."""
    if n < 1:
        raise ValueError("n must be >= 1")
    objs = [0]
    ones = [(0, 0, "id")]
    twos = [(0, 0, k) for k in range(n)]
    return tabulate_two_category(
        objs, ones, twos,
        id1_of=lambda a: "id",
        id2_of=lambda f: 0,
        comp1_of=lambda g, f: "id",
        vcomp_of=lambda b, a: (a + b) % n,
        hcomp_of=lambda b, a: (a + b) % n,
        name=f"group_two_cat({n})")


def from_category(C: Category, name: Optional[str] = None) -> TwoCategory:
    """Embed a 1-category as a 2-category with only identity 2-cells."""
    objs = list(C.obj_labels) if C.obj_labels else list(range(C.n_objects))
    ones = [(C.arr_src[f], C.arr_tgt[f],
             C.arr_labels[f] if C.arr_labels else f) for f in C.arrows()]
    twos = [(f, f, ones[f][2]) for f in C.arrows()]
    return tabulate_two_category(
        objs, ones, twos,
        id1_of=lambda a: ones[C.ids[a]][2],
        id2_of=lambda f: ones[f][2],
        comp1_of=lambda g, f: ones[C.comp[(g, f)]][2],
        vcomp_of=lambda b, a: twos[a][2],
        hcomp_of=lambda b, a: ones[C.comp[(twos[b][0], twos[a][0])]][2],
        name=name)


def underlying_category(C: TwoCategory) -> Category:
    """Objects and 1-cells of C, forgetting the 2-cells."""
    return Category(C.n_objects, C.one_src, C.one_tgt, C.id1, dict(C.comp1),
                    C.obj_labels, C.one_labels)


def product(C: TwoCategory, D: TwoCategory) -> TwoCategory:
    """Componentwise product; all cell sets are pairs in lexicographic order."""
    objs = [(a, b) for a in C.objects() for b in D.objects()]
    obj_index = {p: i for i, p in enumerate(objs)}
    ones = [(obj_index[(C.one_src[f], D.one_src[g])],
             obj_index[(C.one_tgt[f], D.one_tgt[g])],
             (f, g)) for f in C.one_cells() for g in D.one_cells()]
    one_index = {lab: i for i, (_, _, lab) in enumerate(ones)}
    twos = [(one_index[(C.two_src[x], D.two_src[y])],
             one_index[(C.two_tgt[x], D.two_tgt[y])],
             (x, y)) for x in C.two_cells() for y in D.two_cells()]
    return tabulate_two_category(
        objs, ones, twos,
        id1_of=lambda i: (C.id1[objs[i][0]], D.id1[objs[i][1]]),
        id2_of=lambda f: (C.id2[ones[f][2][0]], D.id2[ones[f][2][1]]),
        comp1_of=lambda g, f: (C.comp1[(ones[g][2][0], ones[f][2][0])],
                               D.comp1[(ones[g][2][1], ones[f][2][1])]),
        vcomp_of=lambda b, a: (C.vcomp[(twos[b][2][0], twos[a][2][0])],
                               D.vcomp[(twos[b][2][1], twos[a][2][1])]),
        hcomp_of=lambda b, a: (C.hcomp[(twos[b][2][0], twos[a][2][0])],
                               D.hcomp[(twos[b][2][1], twos[a][2][1])]),
        name=f"({C.name})x({D.name})" if C.name and D.name else None)


# ---------------------------------------------------------------------------
# duality

class DualView:
    """op/co dual of a non-tabulated 2-category, by delegation.

    Cells are shared with the base; only orientations and composition
    argument order change.
    """

    is_finite = False

    def __init__(self, base, kind: str):
        self.base = base
        self.kind = kind   # "op" | "co"

    def objects(self):
        return self.base.objects()

    def src1(self, f):
        return self.base.tgt1(f) if self.kind == "op" else self.base.src1(f)

    def tgt1(self, f):
        return self.base.src1(f) if self.kind == "op" else self.base.tgt1(f)

    def src2(self, x):
        return self.base.tgt2(x) if self.kind == "co" else self.base.src2(x)

    def tgt2(self, x):
        return self.base.src2(x) if self.kind == "co" else self.base.tgt2(x)

    def id1_of(self, a):
        return self.base.id1_of(a)

    def id2_of(self, f):
        return self.base.id2_of(f)

    def compose1(self, g, f):
        return self.base.compose1(f, g) if self.kind == "op" else self.base.compose1(g, f)

    def vcompose(self, b, a):
        return self.base.vcompose(a, b) if self.kind == "co" else self.base.vcompose(b, a)

    def hcompose(self, b, a):
        return self.base.hcompose(a, b) if self.kind == "op" else self.base.hcompose(b, a)

    def two_cells_between(self, f, g):
        if self.kind == "co":
            return self.base.two_cells_between(g, f)
        return self.base.two_cells_between(f, g)

    def compose1_path(self, at, steps):
        acc = None
        for s in steps:
            acc = s if acc is None else self.compose1(s, acc)
        return self.id1_of(at) if acc is None else acc


def dual(C, kind: str):
    """op reverses 1-cells, co reverses 2-cells, coop reverses both.

    Cell index sets are preserved, so labels carry over unchanged.  Lazy
    2-categories are wrapped in a delegating view instead of re-tabulated.
    """
    if kind == "coop":
        return dual(dual(C, "op"), "co")
    if not isinstance(C, TwoCategory):
        if kind not in ("op", "co"):
            raise ValueError(f"unknown duality kind {kind!r}")
        if isinstance(C, DualView) and C.kind == kind:
            return C.base
        return DualView(C, kind)
    if kind == "op":
        comp1 = {(g, f): h for (f, g), h in C.comp1.items()}
        hcomp = {(b, a): c for (a, b), c in C.hcomp.items()}
        return TwoCategory(C.n_objects, C.one_tgt, C.one_src,
                           C.two_src, C.two_tgt, C.id1, C.id2,
                           comp1, dict(C.vcomp), hcomp,
                           C.obj_labels, C.one_labels, C.two_labels,
                           name=f"{C.name}^op" if C.name else None)
    if kind == "co":
        vcomp = {(b, a): c for (a, b), c in C.vcomp.items()}
        return TwoCategory(C.n_objects, C.one_src, C.one_tgt,
                           C.two_tgt, C.two_src, C.id1, C.id2,
                           dict(C.comp1), vcomp, dict(C.hcomp),
                           C.obj_labels, C.one_labels, C.two_labels,
                           name=f"{C.name}^co" if C.name else None)
    raise ValueError(f"unknown duality kind {kind!r}")


# ---------------------------------------------------------------------------
# hom categories

@dataclass
class HomCategory:
    """Hom(a, a') of a 2-category: objects are 1-cells, morphisms 2-cells."""

    category: Category
    one_of_object: tuple[int, ...]    # hom object -> 1-cell of the ambient C
    two_of_arrow: tuple[int, ...]     # hom arrow -> 2-cell of the ambient C


def hom_category(C: TwoCategory, a: int, b: int) -> HomCategory:
    ones = C.one_cells_between(a, b)
    pos = {f: i for i, f in enumerate(ones)}
    arrows = []
    for x in C.two_cells():
        if C.two_src[x] in pos and C.two_tgt[x] in pos:
            arrows.append((pos[C.two_src[x]], pos[C.two_tgt[x]], x))
    arr_index = {lab: i for i, (_, _, lab) in enumerate(arrows)}
    cat = tabulate_category(
        [ones[i] for i in range(len(ones))], arrows,
        id_of=lambda i: C.id2[ones[i]],
        comp_of=lambda g, f: C.vcomp[(arrows[g][2], arrows[f][2])])
    return HomCategory(cat, tuple(ones), tuple(lab for _, _, lab in arrows))


# ---------------------------------------------------------------------------
# isomorphism search

@dataclass
class CellIso:
    """A structure-preserving bijection on objects, 1-cells and 2-cells."""

    obj_map: tuple[int, ...]
    one_map: tuple[int, ...]
    two_map: tuple[int, ...]


def _obj_profile(C: TwoCategory, a: int) -> tuple:
    outs = sorted((C.one_tgt[f] == a, len(C.two_cells_between(f, f)))
                  for f in C.one_cells() if C.one_src[f] == a)
    ins = sum(1 for f in C.one_cells() if C.one_tgt[f] == a)
    return (len(outs), ins, tuple(outs))


def _one_profile(C: TwoCategory, f: int) -> tuple:
    n_out = sum(1 for x in C.two_cells() if C.two_src[x] == f)
    n_in = sum(1 for x in C.two_cells() if C.two_tgt[x] == f)
    return (C.id1[C.one_src[f]] == f, n_out, n_in)


def iso_two_categories(C: TwoCategory, D: TwoCategory) -> Optional[CellIso]:
    """Search for an isomorphism of 2-categories; None if there is none.

    Exhaustive backtracking over object, 1-cell and 2-cell bijections with
    degree-profile pruning; all tables are verified before returning.
    """
    if (C.n_objects, C.n_one, C.n_two) != (D.n_objects, D.n_one, D.n_two):
        return None
    cprof = [_obj_profile(C, a) for a in C.objects()]
    dprof = [_obj_profile(D, a) for a in D.objects()]
    if sorted(cprof) != sorted(dprof):
        return None

    def try_one_maps(obj_map: list[int]) -> Optional[CellIso]:
        # match 1-cells hom-by-hom, identities to identities
        hom_pairs = []
        for a in C.objects():
            for b in C.objects():
                cs = C.one_cells_between(a, b)
                ds = D.one_cells_between(obj_map[a], obj_map[b])
                if len(cs) != len(ds):
                    return None
                if cs:
                    hom_pairs.append((cs, ds))
        one_map = [-1] * C.n_one

        def assign_hom(i: int) -> Iterator[list[int]]:
            if i == len(hom_pairs):
                yield one_map
                return
            cs, ds = hom_pairs[i]
            cprofs = [_one_profile(C, f) for f in cs]
            dprof_map = {}
            for g in ds:
                dprof_map.setdefault(_one_profile(D, g), []).append(g)
            for perm in itertools.permutations(ds):
                ok = True
                for f, g, p in zip(cs, perm, cprofs):
                    if _one_profile(D, g) != p:
                        ok = False
                        break
                    if (C.id1[C.one_src[f]] == f) != (D.id1[D.one_src[g]] == g):
                        ok = False
                        break
                if not ok:
                    continue
                for f, g in zip(cs, perm):
                    one_map[f] = g
                yield from assign_hom(i + 1)
                for f in cs:
                    one_map[f] = -1

        for candidate in assign_hom(0):
            if any(candidate[C.id1[a]] != D.id1[obj_map[a]] for a in C.objects()):
                continue
            if any(candidate[h] != D.comp1[(candidate[g], candidate[f])]
                   for (g, f), h in C.comp1.items()):
                continue
            two = try_two_maps(obj_map, list(candidate))
            if two is not None:
                return two
        return None

    def try_two_maps(obj_map: list[int], one_map: list[int]) -> Optional[CellIso]:
        pairs = []
        for f in C.one_cells():
            for g in C.one_cells():
                cs = C.two_cells_between(f, g)
                ds = D.two_cells_between(one_map[f], one_map[g])
                if len(cs) != len(ds):
                    return None
                if cs:
                    pairs.append((cs, ds))
        two_map = [-1] * C.n_two

        def assign(i: int) -> Iterator[list[int]]:
            if i == len(pairs):
                yield two_map
                return
            cs, ds = pairs[i]
            for perm in itertools.permutations(ds):
                for x, y in zip(cs, perm):
                    two_map[x] = y
                yield from assign(i + 1)
                for x in cs:
                    two_map[x] = -1

        for candidate in assign(0):
            if any(candidate[C.id2[f]] != D.id2[one_map[f]] for f in C.one_cells()):
                continue
            if any(candidate[c] != D.vcomp[(candidate[b], candidate[a])]
                   for (b, a), c in C.vcomp.items()):
                continue
            if any(candidate[c] != D.hcomp[(candidate[b], candidate[a])]
                   for (b, a), c in C.hcomp.items()):
                continue
            return CellIso(tuple(obj_map), tuple(one_map), tuple(candidate))
        return None

    order = sorted(C.objects(), key=lambda a: (cprof[a], a))
    used = [False] * D.n_objects
    obj_map = [-1] * C.n_objects

    def assign_obj(i: int) -> Optional[CellIso]:
        if i == len(order):
            return try_one_maps(obj_map)
        a = order[i]
        for b in D.objects():
            if used[b] or dprof[b] != cprof[a]:
                continue
            used[b] = True
            obj_map[a] = b
            found = assign_obj(i + 1)
            if found is not None:
                return found
            used[b] = False
            obj_map[a] = -1
        return None

    return assign_obj(0)


def iso_categories(C: Category, D: Category) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Isomorphism search for finite 1-categories (object and arrow bijections)."""
    c2 = from_category(C)
    d2 = from_category(D)
    found = iso_two_categories(c2, d2)
    if found is None:
        return None
    return found.obj_map, found.one_map
