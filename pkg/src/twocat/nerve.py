"""Truncated simplicial sets and the (unnormalized) lax nerve.

An m-simplex of the nerve of A is a lax functor [m] -> A: vertex objects,
a 1-cell for every pair i <= j (including the loops x_{i,i}), unit cells
1_{x_i} => x_{i,i} and composition cells x_{k,j} x_{j,i} => x_{k,i} subject
to the lax coherence laws.  Faces and degeneracies act by reindexing along
the (strict) coface and codegeneracy functors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import Category, TwoCategory, check_budget, lwhisk, rwhisk
from .functors import LaxFunctor


def _pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m + 1) for j in range(i, m + 1)]


def _triples(m: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(m + 1) for j in range(i, m + 1)
            for k in range(j, m + 1)]


@dataclass(frozen=True)
class Simplex:
    """A lax functor [m] -> A in tabular form."""

    verts: tuple[int, ...]
    edges: tuple[int, ...]     # x_{j,i} indexed by pairs (i, j) in lex order
    units: tuple[int, ...]     # 1_{x_i} => x_{i,i}
    comps: tuple[int, ...]     # x_{k,j} x_{j,i} => x_{k,i} by triples (i, j, k)

    @property
    def dim(self) -> int:
        return len(self.verts) - 1

    def edge(self, i: int, j: int) -> int:
        m = self.dim
        return self.edges[_pair_pos(m, i, j)]

    def comp(self, i: int, j: int, k: int) -> int:
        return self.comps[_triple_pos(self.dim, i, j, k)]


def _pair_pos(m: int, i: int, j: int) -> int:
    # pairs (i, j), j >= i, lex: i blocks of length m+1-i
    return i * (m + 1) - i * (i - 1) // 2 + (j - i)


def _triple_pos(m: int, i: int, j: int, k: int) -> int:
    return _TRIPLE_POS.setdefault(m, {t: n for n, t in enumerate(_triples(m))})[(i, j, k)]


_TRIPLE_POS: dict[int, dict] = {}


def reindex(s: Simplex, phi: tuple[int, ...]) -> Simplex:
    """Precompose the lax functor s with the monotone map phi (as a strict functor)."""
    verts = tuple(s.verts[p] for p in phi)
    m2 = len(phi) - 1
    edges = tuple(s.edge(phi[i], phi[j]) for (i, j) in _pairs(m2))
    units = tuple(s.units[p] for p in phi)
    comps = tuple(s.comp(phi[i], phi[j], phi[k]) for (i, j, k) in _triples(m2))
    return Simplex(verts, edges, units, comps)


def coface(m: int, i: int) -> tuple[int, ...]:
    """The injection [m-1] -> [m] skipping i."""
    return tuple(x for x in range(m + 1) if x != i)


def codegeneracy(m: int, i: int) -> tuple[int, ...]:
    """The surjection [m+1] -> [m] hitting i twice."""
    return tuple(x if x <= i else x - 1 for x in range(m + 2))


@dataclass
class TruncatedSimplicialSet:
    """Simplices in dimensions 0..K with face and degeneracy tables."""

    K: int
    simplices: list[list]
    faces: list[Optional[list[tuple[int, ...]]]]         # per dim m>=1
    degeneracies: list[Optional[list[tuple[int, ...]]]]  # per dim m<=K-1
    index: list[dict] = field(repr=False, default_factory=list)

    def __post_init__(self):
        if not self.index:
            self.index = [{s: i for i, s in enumerate(level)}
                          for level in self.simplices]

    def n_simplices(self, m: int) -> int:
        return len(self.simplices[m])

    def face(self, m: int, i: int, s: int) -> int:
        return self.faces[m][s][i]

    def degeneracy(self, m: int, i: int, s: int) -> int:
        return self.degeneracies[m][s][i]

    def degenerate_at(self, m: int) -> set[int]:
        if m == 0:
            return set()
        return {t[i] for t in self.degeneracies[m - 1] for i in range(m)}

    def nondegenerate_at(self, m: int) -> list[int]:
        deg = self.degenerate_at(m)
        return [i for i in range(self.n_simplices(m)) if i not in deg]


def build_truncated(K: int, levels: list[list],
                    face_of: Callable[[int, int, object], object],
                    degeneracy_of: Callable[[int, int, object], object]
                    ) -> TruncatedSimplicialSet:
    index = [{s: i for i, s in enumerate(level)} for level in levels]
    faces: list[Optional[list[tuple[int, ...]]]] = [None]
    for m in range(1, K + 1):
        faces.append([tuple(index[m - 1][face_of(m, i, s)] for i in range(m + 1))
                      for s in levels[m]])
    degeneracies: list[Optional[list[tuple[int, ...]]]] = []
    for m in range(K):
        degeneracies.append([tuple(index[m + 1][degeneracy_of(m, i, s)]
                                   for i in range(m + 1))
                             for s in levels[m]])
    degeneracies.append(None)
    return TruncatedSimplicialSet(K, levels, faces, degeneracies, index)


def check_simplicial_identities(S: TruncatedSimplicialSet) -> list[tuple]:
    """All violated simplicial identities within the truncation."""
    bad = []
    for m in range(2, S.K + 1):
        for s in range(S.n_simplices(m)):
            for j in range(m + 1):
                for i in range(j):
                    if S.face(m - 1, i, S.face(m, j, s)) != S.face(m - 1, j - 1, S.face(m, i, s)):
                        bad.append(("dd", m, i, j, s))
    for m in range(0, S.K - 1):
        for s in range(S.n_simplices(m)):
            for j in range(m + 1):
                for i in range(j + 1):
                    if S.degeneracy(m + 1, j + 1, S.degeneracy(m, i, s)) != \
                            S.degeneracy(m + 1, i, S.degeneracy(m, j, s)):
                        bad.append(("ss", m, i, j, s))
    for m in range(0, S.K):
        for s in range(S.n_simplices(m)):
            for j in range(m + 1):
                for i in range(m + 2):
                    t = S.degeneracy(m, j, s)
                    got = S.face(m + 1, i, t)
                    if i < j:
                        want = S.degeneracy(m - 1, j - 1, S.face(m, i, s)) if m >= 1 else None
                    elif i in (j, j + 1):
                        want = s
                    else:
                        want = S.degeneracy(m - 1, j, S.face(m, i - 1, s)) if m >= 1 else None
                    if want is not None and got != want:
                        bad.append(("ds", m, i, j, s))
    return bad


# ---------------------------------------------------------------------------
# the lax nerve

def _enumerate_simplices(A: TwoCategory, m: int, budget: Optional[int] = None) -> list[Simplex]:
    """All lax functors [m] -> A, built by constraint-pruned backtracking."""
    pairs = _pairs(m)
    triples = _triples(m)
    quads = [(i, j, k, l) for i in range(m + 1) for j in range(i, m + 1)
             for k in range(j, m + 1) for l in range(k, m + 1)]
    tpos = {t: n for n, t in enumerate(triples)}
    # a cocycle quadruple is checkable once its lexicographically last triple is set
    quads_ready: list[list[tuple[int, int, int, int]]] = [[] for _ in triples]
    for q in quads:
        i, j, k, l = q
        last = max(tpos[(i, j, k)], tpos[(i, k, l)], tpos[(i, j, l)], tpos[(j, k, l)])
        quads_ready[last].append(q)

    out: list[Simplex] = []

    def edge_candidates(verts):
        per_pair = []
        for (i, j) in pairs:
            hom = A.one_cells_between(verts[i], verts[j])
            if not hom:
                return None
            per_pair.append(hom)
        return per_pair

    def fill_comps(verts, edges, units):
        ppos = {p: n for n, p in enumerate(pairs)}

        def e(i, j):
            return edges[ppos[(i, j)]]

        comps: list[int] = []

        def ok_so_far(n: int) -> bool:
            (i, j, k) = triples[n]
            c = comps[n]
            if i == j:
                lhs = A.vcompose(c, lwhisk(A, e(j, k), units[i]))
                if lhs != A.id2_of(e(i, k)):
                    return False
            if j == k:
                lhs = A.vcompose(c, rwhisk(A, units[j], e(i, j)))
                if lhs != A.id2_of(e(i, k)):
                    return False
            for (qi, qj, qk, ql) in quads_ready[n]:
                lhs = A.vcompose(comps[tpos[(qi, qk, ql)]],
                                 lwhisk(A, e(qk, ql), comps[tpos[(qi, qj, qk)]]))
                rhs = A.vcompose(comps[tpos[(qi, qj, ql)]],
                                 rwhisk(A, comps[tpos[(qj, qk, ql)]], e(qi, qj)))
                if lhs != rhs:
                    return False
            return True

        def rec(n: int):
            if n == len(triples):
                out.append(Simplex(verts, edges, units, tuple(comps)))
                check_budget(len(out), budget)
                return
            (i, j, k) = triples[n]
            src = A.compose1(e(j, k), e(i, j))
            for c in A.two_cells_between(src, e(i, k)):
                comps.append(c)
                if ok_so_far(n):
                    rec(n + 1)
                comps.pop()

        rec(0)

    def rec_edges(verts, per_pair, n, chosen):
        if n == len(pairs):
            edges = tuple(chosen)
            unit_candidates = []
            for i in range(m + 1):
                cands = A.two_cells_between(A.id1_of(verts[i]),
                                            edges[_pair_pos(m, i, i)])
                if not cands:
                    return
                unit_candidates.append(cands)
            for units in itertools.product(*unit_candidates):
                fill_comps(verts, edges, tuple(units))
            return
        for f in per_pair[n]:
            chosen.append(f)
            rec_edges(verts, per_pair, n + 1, chosen)
            chosen.pop()

    for verts in itertools.product(A.objects(), repeat=m + 1):
        per_pair = edge_candidates(verts)
        if per_pair is None:
            continue
        rec_edges(verts, per_pair, 0, [])
    return out


def lax_nerve(A: TwoCategory, K: int, budget: Optional[int] = None) -> TruncatedSimplicialSet:
    """The truncated lax nerve of A: dimension m holds all lax functors [m] -> A."""
    if K < 1:
        raise ValueError("truncation level must be at least 1")
    levels = [_enumerate_simplices(A, m, budget) for m in range(K + 1)]
    return build_truncated(
        K, levels,
        face_of=lambda m, i, s: reindex(s, coface(m, i)),
        degeneracy_of=lambda m, i, s: reindex(s, codegeneracy(m, i)))


# ---------------------------------------------------------------------------
# nerves of maps

@dataclass
class SimplicialMap:
    src: TruncatedSimplicialSet
    tgt: TruncatedSimplicialSet
    maps: list[list[int]]

    def check(self) -> bool:
        """Commutation with all faces and degeneracies within the truncation."""
        for m in range(1, self.src.K + 1):
            for s in range(self.src.n_simplices(m)):
                for i in range(m + 1):
                    if self.maps[m - 1][self.src.face(m, i, s)] != \
                            self.tgt.face(m, i, self.maps[m][s]):
                        return False
        for m in range(self.src.K):
            for s in range(self.src.n_simplices(m)):
                for i in range(m + 1):
                    if self.maps[m + 1][self.src.degeneracy(m, i, s)] != \
                            self.tgt.degeneracy(m, i, self.maps[m][s]):
                        return False
        return True


def apply_functor_to_simplex(u: LaxFunctor, s: Simplex) -> Simplex:
    """Compose a lax simplex [m] -> A with u : A -> B."""
    B = u.target
    m = s.dim
    verts = tuple(u.obj(a) for a in s.verts)
    edges = tuple(u.one(f) for f in s.edges)
    units = tuple(B.vcompose(u.two(s.units[i]), u.unit(s.verts[i]))
                  for i in range(m + 1))
    comps = tuple(B.vcompose(u.two(s.comp(i, j, k)),
                             u.comp(s.edge(j, k), s.edge(i, j)))
                  for (i, j, k) in _triples(m))
    return Simplex(verts, edges, units, comps)


def nerve_map(u: LaxFunctor, K: int,
              SA: Optional[TruncatedSimplicialSet] = None,
              SB: Optional[TruncatedSimplicialSet] = None,
              budget: Optional[int] = None) -> SimplicialMap:
    """The simplicial map N(A) -> N(B) induced by u, commutation verified."""
    if SA is None:
        SA = lax_nerve(u.source, K, budget)
    if SB is None:
        SB = lax_nerve(u.target, K, budget)
    maps = []
    for m in range(K + 1):
        level = []
        for s in SA.simplices[m]:
            level.append(SB.index[m][apply_functor_to_simplex(u, s)])
        maps.append(level)
    f = SimplicialMap(SA, SB, maps)
    if not f.check():
        raise ValueError("induced map does not commute with faces/degeneracies")
    return f


# ---------------------------------------------------------------------------
# the classical nerve of a 1-category (independent comparison construction)

def classical_nerve(C: Category, K: int) -> TruncatedSimplicialSet:
    """Nerve of a 1-category: m-simplices are length-m composable strings."""
    # a simplex is (verts tuple, arrows tuple)
    levels: list[list] = []
    for m in range(K + 1):
        level = []

        def rec(verts, arrows):
            if len(arrows) == m:
                level.append((tuple(verts), tuple(arrows)))
                return
            for g in C.arrows():
                if C.arr_src[g] == verts[-1]:
                    rec(verts + [C.arr_tgt[g]], arrows + [g])

        for a in C.objects():
            rec([a], [])
        levels.append(level)

    def face_of(m, i, s):
        verts, arrows = s
        if i == 0:
            return (verts[1:], arrows[1:])
        if i == m:
            return (verts[:-1], arrows[:-1])
        merged = C.comp[(arrows[i], arrows[i - 1])]
        return (verts[:i] + verts[i + 1:],
                arrows[:i - 1] + (merged,) + arrows[i + 1:])

    def degeneracy_of(m, i, s):
        verts, arrows = s
        return (verts[:i + 1] + verts[i:],
                arrows[:i] + (C.ids[verts[i]],) + arrows[i:])

    return build_truncated(K, levels, face_of, degeneracy_of)


def classical_comparison(C: Category, S: TruncatedSimplicialSet,
                         A2: TwoCategory) -> Optional[SimplicialMap]:
    """Explicit bijection classical nerve of C -> lax nerve of its 2-category
    image, when the latter was built from from_category(C); None on mismatch."""
    N = classical_nerve(C, S.K)
    maps = []
    for m in range(S.K + 1):
        level = []
        for (verts, arrows) in N.simplices[m]:
            # edges forced: composite of the string between i and j
            edges = []
            for (i, j) in _pairs(m):
                acc = A2.id1[verts[i]]
                for t in range(i, j):
                    acc = A2.comp1[(arrows[t], acc)]
                edges.append(acc)
            edges = tuple(edges)
            units = tuple(A2.id2[edges[_pair_pos(m, i, i)]] for i in range(m + 1))
            comps = tuple(A2.id2[edges[_pair_pos(m, i, k)]] for (i, j, k) in _triples(m))
            s = Simplex(tuple(verts), edges, units, comps)
            if s not in S.index[m]:
                return None
            level.append(S.index[m][s])
        maps.append(level)
    f = SimplicialMap(N, S, maps)
    if not f.check():
        return None
    # bijectivity level by level
    for m in range(S.K + 1):
        if len(set(maps[m])) != len(maps[m]) or len(maps[m]) != S.n_simplices(m):
            return None
    return f
