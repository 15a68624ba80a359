"""A small line-oriented script language for rings, ideals, modules and maps.

    script   := ringdecl? stmt*
    ringdecl := "ring" "p=" INT "vars" NAME ("," NAME)* ";"
    stmt     := "ideal" NAME "=" item ("," item)* ";"
              | "poly" NAME "=" POLY ";"
              | "family" NAME "=" "(" POLY ("," POLY)* ")" ("," "(" ... ")")* ";"
              | "module" NAME "=" modexpr ("over" NAME)? ";"
              | "map" NAME ":" NAME "->" NAME "=" "(" POLY ("," POLY)* ")" ("," ...)* ";"
              | WORD arg* ";"
    modexpr  := "quotient" NAME | "submodule" NAME
              | "coker" "[" INT ("," INT)* "]" ("(" POLY ("," POLY)* ")" ("," ...)*)?

An ideal item is a polynomial or the name of an ideal or polynomial.  A
command is any other word followed by arguments up to the next semicolon.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InputError, NotHomogeneous, ScriptNotHomogeneous, ScriptSyntaxError, UndeclaredName
from .groebner import ideal
from .linprod import LinearIdealFamily
from .modules import ModuleMap, PresentedModule
from .poly import FreeModuleElement, GradedFreeModule, GradedPolynomial, PolyRing, is_homogeneous, make_ring, parse_terms

KEYWORDS = {"ring", "ideal", "poly", "family", "module", "map"}

_TOK = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<arrow>->)|(?P<flag>--[A-Za-z][A-Za-z0-9_-]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[=;,()\[\]:^*+\-/])"
)


@dataclass
class Token:
    kind: str
    text: str
    pos: int
    line: int
    col: int


@dataclass
class Command:
    name: str
    args: list
    line: int
    col: int


@dataclass
class Script:
    ring: PolyRing | None = None
    objects: dict = field(default_factory=dict)  # name -> (kind, value)
    commands: list = field(default_factory=list)

    def get(self, name: str, kind: str | None = None):
        if name not in self.objects:
            raise UndeclaredName(f"{name!r} is not declared")
        k, v = self.objects[name]
        if kind is not None and k != kind:
            raise InputError(f"{name!r} is a {k}, expected a {kind}")
        return v

    def kind(self, name: str) -> str:
        self.get(name)
        return self.objects[name][0]


def _tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ScriptSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), pos, line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, char: int | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.char = char
        self.script = Script()

    # -- token helpers ---------------------------------------------------------
    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def where(self, tok: Token | None = None):
        tok = tok or self.peek()
        if tok is None:
            lines = self.text.split("\n")
            return len(lines), len(lines[-1]) + 1
        return tok.line, tok.col

    def fail(self, msg: str, tok: Token | None = None, cls=ScriptSyntaxError):
        line, col = self.where(tok)
        raise cls(msg, line, col)

    def take(self, kind: str | None = None, text: str | None = None) -> Token:
        t = self.peek()
        if t is None or (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind
            got = "end of input" if t is None else repr(t.text)
            self.fail(f"expected {want}, got {got}", t)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def _pos_to_linecol(self, pos: int):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    # -- statements ------------------------------------------------------------
    def parse(self) -> Script:
        while self.peek() is not None:
            t = self.peek()
            if t.kind != "name":
                self.fail(f"expected a statement, got {t.text!r}", t)
            if t.text == "ring":
                self.ring_decl()
            elif t.text in KEYWORDS:
                if self.script.ring is None:
                    self.fail("declare a ring first", t)
                getattr(self, f"decl_{t.text}")()
            else:
                self.command()
        return self.script

    def ring_decl(self):
        start = self.take("name", "ring")
        if self.script.ring is not None:
            self.fail("ring declared twice", start)
        self.take("name", "p")
        self.take("sym", "=")
        p = int(self.take("int").text)
        self.take("name", "vars")
        names = [self.take("name").text]
        while self.at(","):
            self.take("sym", ",")
            names.append(self.take("name").text)
        self.take("sym", ";")
        if len(set(names)) != len(names):
            self.fail("repeated variable name", start)
        try:
            self.script.ring = make_ring(names, self.char or p)
        except InputError as e:
            self.fail(str(e), start)

    def declare(self, name_tok: Token, kind: str, value):
        if name_tok.text in self.script.objects or name_tok.text in self.script.ring.variables:
            self.fail(f"{name_tok.text!r} is already declared", name_tok)
        self.script.objects[name_tok.text] = (kind, value)

    def header(self, kw: str) -> Token:
        self.take("name", kw)
        name = self.take("name")
        return name

    def decl_poly(self):
        name = self.header("poly")
        self.take("sym", "=")
        f = self.poly()
        self.take("sym", ";")
        self.declare(name, "poly", f)

    def decl_ideal(self):
        name = self.header("ideal")
        self.take("sym", "=")
        gens = self.ideal_items()
        self.take("sym", ";")
        self.declare(name, "ideal", ideal(self.script.ring, gens))

    def ideal_items(self) -> list:
        gens = []
        while True:
            t = self.peek()
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            single = t is not None and t.kind == "name" and (nxt is None or nxt.text in (",", ";", ")"))
            if single and t.text in self.script.objects:
                self.i += 1
                kind, v = self.script.objects[t.text]
                if kind == "ideal":
                    gens.extend(v.polys())
                elif kind == "poly":
                    gens.append(v)
                else:
                    self.fail(f"{t.text!r} is a {kind}, not an ideal or polynomial", t)
            else:
                gens.append(self.poly())
            if not self.at(","):
                return gens
            self.take("sym", ",")

    def decl_family(self):
        name = self.header("family")
        self.take("sym", "=")
        groups = [self.paren_polys()]
        while self.at(","):
            self.take("sym", ",")
            groups.append(self.paren_polys())
        end = self.take("sym", ";")
        try:
            F = LinearIdealFamily.from_forms(self.script.ring, groups)
        except InputError as e:
            self.fail(str(e), end)
        self.declare(name, "family", F)

    def paren_polys(self) -> list:
        self.take("sym", "(")
        out = [self.poly()]
        while self.at(","):
            self.take("sym", ",")
            out.append(self.poly())
        self.take("sym", ")")
        return out

    def decl_module(self):
        name = self.header("module")
        self.take("sym", "=")
        kind = self.take("name")
        ring = self.script.ring
        if kind.text in ("quotient", "submodule"):
            ref = self.take("name")
            I = self.ref(ref, "ideal")
            build = (lambda J: PresentedModule.cyclic(I, J)) if kind.text == "quotient" else (lambda J: PresentedModule.of_submodule(I, J))
        elif kind.text == "coker":
            self.take("sym", "[")
            shifts = [self.signed_int()]
            while self.at(","):
                self.take("sym", ",")
                shifts.append(self.signed_int())
            self.take("sym", "]")
            F = GradedFreeModule(ring, tuple(shifts))
            rels = []
            if self.at("("):
                rels.append(self.vector(F))
                while self.at(","):
                    self.take("sym", ",")
                    rels.append(self.vector(F))
            build = lambda J: PresentedModule(F, rels, J)  # noqa: E731
        else:
            self.fail(f"unknown module constructor {kind.text!r}", kind)
        J = None
        if self.at("over"):
            self.take("name", "over")
            J = self.ref(self.take("name"), "ideal")
        self.take("sym", ";")
        self.declare(name, "module", build(J))

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.take("sym", "-")
            sign = -1
        return sign * int(self.take("int").text)

    def vector(self, F: GradedFreeModule) -> FreeModuleElement:
        start = self.peek()
        entries = self.paren_polys()
        if len(entries) != F.rank:
            self.fail(f"vector has {len(entries)} entries, expected {F.rank}", start)
        try:
            return F.element(entries)
        except NotHomogeneous as e:
            self.fail(str(e), start, ScriptNotHomogeneous)

    def decl_map(self):
        name = self.header("map")
        self.take("sym", ":")
        src = self.ref(self.take("name"), "module")
        self.take("arrow")
        tgt = self.ref(self.take("name"), "module")
        self.take("sym", "=")
        start = self.peek()
        cols = [self.vector(tgt.cover).terms]
        while self.at(","):
            self.take("sym", ",")
            cols.append(self.vector(tgt.cover).terms)
        self.take("sym", ";")
        if len(cols) != src.rank:
            self.fail(f"map needs {src.rank} columns, got {len(cols)}", start)
        try:
            phi = ModuleMap(src, tgt, cols)
        except InputError as e:
            self.fail(str(e), start)
        self.declare(name, "map", phi)

    def ref(self, tok: Token, kind: str):
        if tok.text not in self.script.objects:
            self.fail(f"{tok.text!r} is not declared", tok, UndeclaredName)
        k, v = self.script.objects[tok.text]
        if k != kind:
            self.fail(f"{tok.text!r} is a {k}, expected a {kind}", tok)
        return v

    def command(self):
        """WORD arg* ';' with whitespace-separated words, so hyphenated names
        and inline polynomials such as x1^2+y survive intact."""
        head = self.take("name")
        if self.script.ring is None:
            self.fail("declare a ring first", head)
        while not self.at(";"):
            if self.peek() is None:
                self.fail("expected ';'")
            self.i += 1
        end = self.take("sym", ";")
        words = re.sub(r"#[^\n]*", " ", self.text[head.pos : end.pos]).split()
        self.script.commands.append(Command(words[0], words[1:], head.line, head.col))

    # -- polynomials -------------------------------------------------------------
    def poly(self) -> GradedPolynomial:
        """Consume tokens of one polynomial and parse them with term positions."""
        start = self.i
        depth_stop = {",", ";", ")", "]"}
        while self.peek() is not None and self.peek().text not in depth_stop:
            t = self.peek()
            if t.kind not in ("int", "name") and t.text not in "^*+-":
                self.fail(f"unexpected {t.text!r} in polynomial", t)
            self.i += 1
        if self.i == start:
            self.fail("expected a polynomial")
        toks = self.toks[start : self.i]
        lo, hi = toks[0].pos, toks[-1].pos + len(toks[-1].text)
        body = self.text[lo:hi]
        ring = self.script.ring
        # a lone name of a declared polynomial
        if len(toks) == 1 and toks[0].kind == "name" and toks[0].text in self.script.objects:
            return self.ref(toks[0], "poly")
        try:
            raw = parse_terms(body, ring.variables)
        except InputError as e:
            off = getattr(e, "offset", 0)
            line, col = self._pos_to_linecol(lo + off)
            cls = UndeclaredName if getattr(e, "name", None) else ScriptSyntaxError
            raise cls(str(e).split(" at offset")[0], line, col) from None
        ok, _ = is_homogeneous(raw)
        if not ok:
            starts = [toks[0].pos]
            for k, t in enumerate(toks):
                if k > 0 and t.text in "+-" and toks[k - 1].text != "^":
                    starts.append(t.pos)
            d0 = sum(raw[0][0])
            bad = next(k for k, (e, _) in enumerate(raw) if sum(e) != d0)
            line, col = self._pos_to_linecol(starts[min(bad, len(starts) - 1)])
            raise ScriptNotHomogeneous(f"polynomial {body!r} is not homogeneous", line, col)
        return ring.from_terms(raw)


def parse_script(text: str, char: int | None = None) -> Script:
    """Parse a script; ``char`` overrides the characteristic of the ring declaration."""
    return _Parser(text, char).parse()
