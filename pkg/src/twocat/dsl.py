"""A small declaration language for 2-category presentations.

    2cat K {
      objects: x, y;
      1cells f: x -> y, g: x -> y;
      2cells s: f => g;
      comp1 { g.f = h; }
      vcomp { t.s = u; }
      hcomp { t*s = u; }
    }

Identities are implicit: object x gets the 1-cell id_x, a 1-cell f gets the
2-cell iid_f.  Table entries forced by the unit laws are filled in
automatically; everything else must be declared, and elaboration runs the
full validator.  Builder expressions (interval 2, group 3, point,
product(..., ...), dual op (...)) are accepted in place of a block.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import TwoCategory, ValidationReport, dual, group_two_cat, interval, point, product, validate_two_category


class DslError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class ElaborationError(DslError):
    pass


@dataclass
class Token:
    kind: str      # word | int | punct
    text: str
    line: int
    col: int


_PUNCT = ("->", "=>", "{", "}", "(", ")", ":", ";", ",", ".", "*", "=")


def tokenize(text: str) -> list[Token]:
    out = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i:i + 2]
        if two in ("->", "=>"):
            out.append(Token("punct", two, line, col))
            i += 2
            col += 2
            continue
        if c in "{}():;,.*=":
            out.append(Token("punct", c, line, col))
            i += 1
            col += 1
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "int" if word.isdigit() else "word"
            out.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise DslError(f"unexpected character {c!r}", line, col)
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class Presentation:
    name: str
    objects: list = field(default_factory=list)           # [(name, pos)]
    ones: list = field(default_factory=list)              # [(name, src, tgt, pos)]
    twos: list = field(default_factory=list)              # [(name, src, tgt, pos)]
    comp1: list = field(default_factory=list)             # [(g, f, h, pos)]
    vcomp: list = field(default_factory=list)
    hcomp: list = field(default_factory=list)
    builder: Optional[tuple] = None


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise DslError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def expect_word(self) -> Token:
        t = self.next()
        if t.kind != "word":
            raise DslError(f"expected a name, found {t.text!r}", t.line, t.col)
        return t

    def expect_int(self) -> int:
        t = self.next()
        if t.kind != "int":
            raise DslError(f"expected an integer, found {t.text!r}", t.line, t.col)
        return int(t.text)

    # -- builders ----------------------------------------------------------
    def builder(self) -> tuple:
        t = self.next()
        if t.text == "interval":
            return ("interval", self.expect_int())
        if t.text == "group":
            return ("group", self.expect_int())
        if t.text == "point":
            return ("point",)
        if t.text == "product":
            self.expect("(")
            left = self.builder()
            self.expect(",")
            right = self.builder()
            self.expect(")")
            return ("product", left, right)
        if t.text == "dual":
            kind = self.expect_word().text
            if kind not in ("op", "co", "coop"):
                raise DslError(f"unknown duality {kind!r}", t.line, t.col)
            self.expect("(")
            inner = self.builder()
            self.expect(")")
            return ("dual", kind, inner)
        if t.text == "(":
            inner = self.builder()
            self.expect(")")
            return inner
        raise DslError(f"unknown builder {t.text!r}", t.line, t.col)

    def presentation(self) -> Presentation:
        t = self.peek()
        if t.text != "2cat":
            p = Presentation(name="anonymous", builder=self.builder())
            if self.peek().text == ";":
                self.next()
            self.expect("")  # eof
            return p
        self.next()
        name = self.expect_word().text
        if self.peek().text == "=":
            self.next()
            b = self.builder()
            if self.peek().text == ";":
                self.next()
            self.expect("")
            return Presentation(name=name, builder=b)
        self.expect("{")
        p = Presentation(name=name)
        while self.peek().text != "}":
            self.declaration(p)
        self.expect("}")
        self.expect("")
        return p

    def declaration(self, p: Presentation) -> None:
        t = self.next()
        if t.text == "objects":
            self.expect(":")
            while True:
                w = self.expect_word()
                p.objects.append((w.text, (w.line, w.col)))
                nxt = self.next()
                if nxt.text == ";":
                    return
                if nxt.text != ",":
                    raise DslError("expected ',' or ';'", nxt.line, nxt.col)
        elif t.text == "1cells":
            while True:
                w = self.expect_word()
                self.expect(":")
                s = self.expect_word()
                self.expect("->")
                g = self.expect_word()
                p.ones.append((w.text, s.text, g.text, (w.line, w.col)))
                nxt = self.next()
                if nxt.text == ";":
                    return
                if nxt.text != ",":
                    raise DslError("expected ',' or ';'", nxt.line, nxt.col)
        elif t.text == "2cells":
            while True:
                w = self.expect_word()
                self.expect(":")
                s = self.expect_word()
                self.expect("=>")
                g = self.expect_word()
                p.twos.append((w.text, s.text, g.text, (w.line, w.col)))
                nxt = self.next()
                if nxt.text == ";":
                    return
                if nxt.text != ",":
                    raise DslError("expected ',' or ';'", nxt.line, nxt.col)
        elif t.text in ("comp1", "vcomp", "hcomp"):
            sep = "*" if t.text == "hcomp" else "."
            table = getattr(p, t.text)
            self.expect("{")
            while self.peek().text != "}":
                g = self.expect_word()
                self.expect(sep)
                f = self.expect_word()
                self.expect("=")
                h = self.expect_word()
                self.expect(";")
                table.append((g.text, f.text, h.text, (g.line, g.col)))
            self.expect("}")
        else:
            raise DslError(f"unknown declaration {t.text!r}", t.line, t.col)


def parse(text: str) -> Presentation:
    return _Parser(tokenize(text)).presentation()


# ---------------------------------------------------------------------------
# elaboration

class ValidationFailure(Exception):
    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


def _build(b: tuple) -> TwoCategory:
    if b[0] == "interval":
        return interval(b[1])
    if b[0] == "group":
        return group_two_cat(b[1])
    if b[0] == "point":
        return point()
    if b[0] == "product":
        return product(_build(b[1]), _build(b[2]))
    if b[0] == "dual":
        return dual(_build(b[2]), b[1])
    raise ValueError(b)


def elaborate(p: Presentation) -> TwoCategory:
    """Resolve names, add implicit identities and unit-forced table entries,
    check totality and run the full validator."""
    if p.builder is not None:
        C = _build(p.builder)
        C.name = p.name
        return C

    obj_names = [n for n, _ in p.objects]
    obj_ix = {}
    for n, pos in p.objects:
        if n in obj_ix:
            raise ElaborationError(f"duplicate object {n!r}", *pos)
        obj_ix[n] = len(obj_ix)

    one_names: list[str] = []
    one_src: list[int] = []
    one_tgt: list[int] = []
    one_ix: dict[str, int] = {}

    def add_one(name, s, t, pos):
        if name in one_ix or name in obj_ix:
            raise ElaborationError(f"duplicate name {name!r}", *pos)
        one_ix[name] = len(one_names)
        one_names.append(name)
        one_src.append(s)
        one_tgt.append(t)

    for n, _ in p.objects:
        add_one(f"id_{n}", obj_ix[n], obj_ix[n], (0, 0))
    for name, s, t, pos in p.ones:
        if s not in obj_ix:
            raise ElaborationError(f"undeclared object {s!r}", *pos)
        if t not in obj_ix:
            raise ElaborationError(f"undeclared object {t!r}", *pos)
        add_one(name, obj_ix[s], obj_ix[t], pos)

    two_names: list[str] = []
    two_src: list[int] = []
    two_tgt: list[int] = []
    two_ix: dict[str, int] = {}

    def add_two(name, s, t, pos):
        if name in two_ix or name in one_ix or name in obj_ix:
            raise ElaborationError(f"duplicate name {name!r}", *pos)
        two_ix[name] = len(two_names)
        two_names.append(name)
        two_src.append(s)
        two_tgt.append(t)

    for f in range(len(one_names)):
        add_two(f"iid_{one_names[f]}", f, f, (0, 0))
    for name, s, t, pos in p.twos:
        if s not in one_ix:
            raise ElaborationError(f"undeclared 1-cell {s!r}", *pos)
        if t not in one_ix:
            raise ElaborationError(f"undeclared 1-cell {t!r}", *pos)
        add_two(name, one_ix[s], one_ix[t], pos)

    id1 = tuple(one_ix[f"id_{n}"] for n in obj_names)
    id2 = tuple(two_ix[f"iid_{one_names[f]}"] for f in range(len(one_names)))

    comp1: dict[tuple[int, int], int] = {}
    for g, f, h, pos in p.comp1:
        for nm in (g, f, h):
            if nm not in one_ix:
                raise ElaborationError(f"undeclared 1-cell {nm!r}", *pos)
        comp1[(one_ix[g], one_ix[f])] = one_ix[h]
    for f in range(len(one_names)):
        comp1.setdefault((f, id1[one_src[f]]), f)
        comp1.setdefault((id1[one_tgt[f]], f), f)
    missing = [(g, f) for g in range(len(one_names)) for f in range(len(one_names))
               if one_tgt[f] == one_src[g] and (g, f) not in comp1]
    if missing:
        g, f = missing[0]
        raise ElaborationError(
            f"missing comp1 entry for {one_names[g]}.{one_names[f]}", 0, 0)

    vcomp: dict[tuple[int, int], int] = {}
    for b, a, c, pos in p.vcomp:
        for nm in (b, a, c):
            if nm not in two_ix:
                raise ElaborationError(f"undeclared 2-cell {nm!r}", *pos)
        vcomp[(two_ix[b], two_ix[a])] = two_ix[c]
    for x in range(len(two_names)):
        vcomp.setdefault((x, id2[two_src[x]]), x)
        vcomp.setdefault((id2[two_tgt[x]], x), x)
    missing = [(b, a) for b in range(len(two_names)) for a in range(len(two_names))
               if two_tgt[a] == two_src[b] and (b, a) not in vcomp]
    if missing:
        b, a = missing[0]
        raise ElaborationError(
            f"missing vcomp entry for {two_names[b]}.{two_names[a]}", 0, 0)

    hcomp: dict[tuple[int, int], int] = {}
    for b, a, c, pos in p.hcomp:
        for nm in (b, a, c):
            if nm not in two_ix:
                raise ElaborationError(f"undeclared 2-cell {nm!r}", *pos)
        hcomp[(two_ix[b], two_ix[a])] = two_ix[c]
    for b in range(len(two_names)):
        for a in range(len(two_names)):
            if one_tgt[two_src[a]] != one_src[two_src[b]]:
                continue
            if (b, a) in hcomp:
                continue
            sa, sb = two_src[a], two_src[b]
            if b in id2 and a in id2:
                key = comp1.get((sb, sa))
                if key is not None:
                    hcomp[(b, a)] = id2[key]
            elif a == id2[id1[one_src[sa]]]:
                hcomp[(b, a)] = b
            elif b == id2[id1[one_tgt[sb]]]:
                hcomp[(b, a)] = a
    missing = [(b, a) for b in range(len(two_names)) for a in range(len(two_names))
               if one_tgt[two_src[a]] == one_src[two_src[b]] and (b, a) not in hcomp]
    if missing:
        b, a = missing[0]
        raise ElaborationError(
            f"missing hcomp entry for {two_names[b]}*{two_names[a]}", 0, 0)

    C = TwoCategory(len(obj_names), tuple(one_src), tuple(one_tgt),
                    tuple(two_src), tuple(two_tgt), id1, id2,
                    comp1, vcomp, hcomp,
                    tuple(obj_names), tuple(one_names), tuple(two_names),
                    name=p.name)
    report = validate_two_category(C)
    if not report.ok:
        raise ValidationFailure(report)
    return C


def print_presentation(C: TwoCategory) -> str:
    """Canonical DSL text for a named-cell 2-category (round-trip partner)."""
    on = C.obj_labels or tuple(f"o{i}" for i in range(C.n_objects))
    fn = C.one_labels or tuple(f"f{i}" for i in range(C.n_one))
    xn = C.two_labels or tuple(f"x{i}" for i in range(C.n_two))
    on = tuple(str(x) for x in on)
    fn = tuple(str(x) for x in fn)
    xn = tuple(str(x) for x in xn)
    lines = [f"2cat {C.name or 'anonymous'} {{"]
    lines.append("  objects: " + ", ".join(on) + ";")
    user_ones = [f for f in C.one_cells() if f not in C.id1]
    if user_ones:
        lines.append("  1cells " + ", ".join(
            f"{fn[f]}: {on[C.one_src[f]]} -> {on[C.one_tgt[f]]}" for f in user_ones) + ";")
    user_twos = [x for x in C.two_cells() if x not in C.id2]
    if user_twos:
        lines.append("  2cells " + ", ".join(
            f"{xn[x]}: {fn[C.two_src[x]]} => {fn[C.two_tgt[x]]}" for x in user_twos) + ";")
    ent = [(g, f, h) for (g, f), h in sorted(C.comp1.items())
           if f not in C.id1 and g not in C.id1]
    if ent:
        lines.append("  comp1 { " + " ".join(f"{fn[g]}.{fn[f]} = {fn[h]};"
                                             for g, f, h in ent) + " }")
    ent = [(b, a, c) for (b, a), c in sorted(C.vcomp.items())
           if a not in C.id2 and b not in C.id2]
    if ent:
        lines.append("  vcomp { " + " ".join(f"{xn[b]}.{xn[a]} = {xn[c]};"
                                             for b, a, c in ent) + " }")
    unit2 = {C.id2[C.id1[a]] for a in C.objects()}
    ent = []
    for (b, a), c in sorted(C.hcomp.items()):
        if a in C.id2 and b in C.id2:
            continue
        if a in unit2 or b in unit2:
            continue
        ent.append((b, a, c))
    if ent:
        lines.append("  hcomp { " + " ".join(f"{xn[b]}*{xn[a]} = {xn[c]};"
                                             for b, a, c in ent) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"
