"""Recursive-descent parser from surface syntax to core terms.

Derived operators and the square-filling statements are expanded while
parsing, so the result contains core constructors only.  Every node the
parser creates is given a source span (keyed by object identity) for
diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import interval as iv
from .. import macros
from .. import syntax as s
from ..interval import IVar
from ..synth.statements import isset_type, sqfill_type, sqpfill_type
from ..typechecker import Span
from .lexer import KEYWORDS, ParseError, Token, syntax_error, tokenize


@dataclass
class SourceModule:
    path: str | None
    declarations: list = field(default_factory=list)
    spans: dict = field(default_factory=dict)


_LITERALS = {
    "U": s.U, "Unit": s.UnitT, "tt": s.Tt, "Empty": s.EmptyT,
    "Bool": s.BoolT, "true": s.BTrue, "false": s.BFalse,
}


class Parser:
    def __init__(self, source: str, path: str | None = None, known=()):
        self.path = path
        self.toks = tokenize(source, path)
        self.pos = 0
        self.spans: dict = {}
        self.known = set(known)
        self.scope: list[tuple[str, str]] = []  # ("t" | "i", name), innermost last

    # -- tokens ------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def error(self, message: str, tok: Token | None = None, notes=()) -> ParseError:
        tok = tok or self.tok
        return syntax_error(message, tok.line, tok.col, tok.end_col, self.path, notes)

    def expect(self, text: str, what: str | None = None) -> Token:
        if not self.at(text):
            raise self.error(f"syntax error: expected {what or repr(text)}, found {self.tok.describe()}")
        return self.advance()

    def ident(self, what: str = "a name") -> str:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error(f"syntax error: expected {what}, found {t.describe()}")
        self.pos += 1
        return t.text

    def mark(self, node, start: Token):
        end = self.toks[self.pos - 1] if self.pos > 0 else start
        self.spans[id(node)] = Span(start.line, start.col, end.line, end.end_col)
        return node

    # -- scope -------------------------------------------------------------

    @property
    def depth(self) -> tuple[int, int]:
        return (sum(1 for k, _ in self.scope if k == "t"), sum(1 for k, _ in self.scope if k == "i"))

    def push(self, kind: str, names):
        self.scope.extend((kind, n) for n in names)

    def pop(self, n: int):
        del self.scope[len(self.scope) - n:]

    def lookup(self, name: str, tok: Token):
        """Return ``("t", index)``, ``("i", index)`` or ``("g", name)``."""
        counts = {"t": 0, "i": 0}
        for kind, n in reversed(self.scope):
            if n == name:
                return kind, counts[kind]
            counts[kind] += 1
        if name in self.known:
            return "g", name
        raise self.error(f"unbound identifier {name}", tok)

    # -- declarations ------------------------------------------------------

    def module(self) -> SourceModule:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.declaration())
        return SourceModule(self.path, decls, self.spans)

    def declaration(self):
        start = self.tok
        if self.accept("def"):
            name_tok = self.tok
            name = self.ident("a definition name")
            self.check_fresh(name, name_tok)
            ty = self.term() if self.accept(":") else None
            self.expect(":=")
            body = self.term()
            self.known.add(name)
            return self.mark(s.Definition(name, ty, body), start)
        if self.accept("evidence"):
            name_tok = self.tok
            name = self.ident("an evidence name")
            self.check_fresh(name, name_tok)
            self.expect(":")
            kind_tok = self.tok
            kind = self.advance().text
            if kind == "sqfill":
                subject = self.term()
            elif kind == "sqpfill":
                subject = self.square()
            else:
                raise self.error("syntax error: expected sqfill or sqpfill", kind_tok)
            self.expect(":=")
            proof = self.term()
            self.known.add(name)
            return self.mark(s.Evidence(name, kind, subject, proof), start)
        raise self.error(f"syntax error: expected a declaration (def or evidence), "
                         f"found {self.tok.describe()}")

    def check_fresh(self, name: str, tok: Token):
        if name in self.known:
            raise self.error(f"duplicate name {name}", tok)

    def square(self) -> s.TypeSquare:
        """``\\i j. A``, optionally parenthesized."""
        paren = self.accept("(")
        self.expect("\\", "a square binder \\i j.")
        i, j = self.ident("an interval name"), self.ident("an interval name")
        self.expect(".")
        self.push("i", [i, j])
        body = self.term()
        self.pop(2)
        if paren:
            self.expect(")")
        return s.TypeSquare(body, i, j)

    # -- terms -------------------------------------------------------------

    def term(self) -> s.Term:
        start = self.tok
        if self.accept("\\"):
            names = self.binder_names()
            self.expect(".")
            self.push("t", names)
            body = self.term()
            self.pop(len(names))
            for n in reversed(names):
                body = self.mark(s.Lam(body, n), start)
            return body
        if self.accept("<"):
            names = self.binder_names(closing=">")
            self.expect(">")
            self.push("i", names)
            body = self.term()
            self.pop(len(names))
            for n in reversed(names):
                body = self.mark(s.PLam(body, n), start)
            return body
        if self.accept("let"):
            name = self.binder_name()
            self.expect(":")
            annot = self.term()
            self.expect(":=")
            bound = self.term()
            self.expect("in")
            self.push("t", [name])
            body = self.term()
            self.pop(1)
            return self.mark(s.Let(annot, bound, body, name), start)
        if self.at("(") and self.is_telescope():
            return self.telescope()
        dom = self.sum_level()
        if self.accept("->"):
            self.push("t", ["_"])
            cod = self.term()
            self.pop(1)
            return self.mark(s.Pi(dom, cod, "_"), start)
        return dom

    def binder_name(self) -> str:
        t = self.tok
        if t.kind == "ident" and t.text == "_":
            self.pos += 1
            return "_"
        return self.ident("a binder name")

    def binder_names(self, closing: str = ".") -> list[str]:
        names = [self.binder_name()]
        while self.tok.kind == "ident" and not self.at(closing):
            names.append(self.binder_name())
        return names

    def is_telescope(self) -> bool:
        k = 1
        if self.peek(k).kind != "ident":
            return False
        while self.peek(k).kind == "ident":
            k += 1
        return self.peek(k).text == ":"

    def telescope(self) -> s.Term:
        start = self.tok
        binders: list[tuple[str, s.Term]] = []
        while self.at("(") and self.is_telescope():
            self.expect("(")
            names = self.binder_names(closing=":")
            self.expect(":")
            ty = self.term()
            self.expect(")")
            for k, n in enumerate(names):
                binders.append((n, s.shift(ty, k, 0)))
                self.push("t", [n])
        op = self.tok
        if not (self.accept("->") or self.accept("*")):
            raise self.error(f"syntax error: expected '->' or '*' after a binder, found {op.describe()}")
        body = self.term()
        self.pop(len(binders))
        former = s.Pi if op.text == "->" else s.Sigma
        for name, dom in reversed(binders):
            body = self.mark(former(dom, body, name), start)
        return body

    def sum_level(self) -> s.Term:
        start = self.tok
        left = self.prod_level()
        if self.accept("+"):
            right = self.sum_level()
            return self.mark(s.Sum(left, right), start)
        return left

    def prod_level(self) -> s.Term:
        start = self.tok
        left = self.papp_level()
        if self.accept("*"):
            self.push("t", ["_"])
            right = self.prod_level()
            self.pop(1)
            return self.mark(s.Sigma(left, right, "_"), start)
        return left

    def papp_level(self) -> s.Term:
        start = self.tok
        t = self.app()
        while self.accept("@"):
            r = self.iatom()
            t = self.mark(s.PApp(t, r), start)
        return t

    def app(self) -> s.Term:
        start = self.tok
        if self.tok.kind == "ident" and self.tok.text in _FORMS:
            self.pos += 1
            return self.mark(_FORMS[start.text](self), start)
        t = self.atom()
        while self.starts_atom():
            t = self.mark(s.App(t, self.atom()), start)
        return t

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "ident":
            return t.text not in KEYWORDS or t.text in _LITERALS
        return t.text == "("

    def atom(self) -> s.Term:
        start = self.tok
        t = self.tok
        if t.kind == "ident" and t.text in _LITERALS:
            self.pos += 1
            node = self.mark(_LITERALS[t.text](), start)
        elif t.kind == "ident" and t.text not in KEYWORDS:
            self.pos += 1
            kind, ref = self.lookup(t.text, t)
            if kind == "t":
                node = s.Var(ref, t.text)
            elif kind == "g":
                node = s.Ref(ref)
            else:
                raise self.error(f"{t.text} is an interval variable, not a term", t)
            node = self.mark(node, start)
        elif self.accept("("):
            inner = self.term()
            if self.accept(","):
                parts = [inner, self.term()]
                while self.accept(","):
                    parts.append(self.term())
                self.expect(")")
                node = parts[-1]
                for p in reversed(parts[:-1]):
                    node = self.mark(s.Pair(p, node), start)
            else:
                self.expect(")")
                node = inner
        elif t.kind == "eof":
            raise self.error("syntax error: unexpected end of input, expected a term")
        else:
            raise self.error(f"syntax error: expected a term, found {t.describe()}")
        while self.at(".1") or self.at(".2"):
            proj = self.advance().text
            node = self.mark(s.Fst(node) if proj == ".1" else s.Snd(node), start)
        return node

    def binder_arg(self, kind: str, count: int) -> tuple[list[str], s.Term]:
        """``(\\x. t)`` binding exactly ``count`` names of ``kind``; body in scope."""
        self.expect("(")
        self.expect("\\", "a binder \\x.")
        names = self.binder_names()
        if len(names) != count:
            raise self.error(f"expected {count} bound name(s), got {len(names)}")
        self.expect(".")
        self.push(kind, names)
        body = self.term()
        self.pop(count)
        self.expect(")")
        return names, body

    # -- intervals ---------------------------------------------------------

    def iexpr(self) -> iv.IntervalExpr:
        e = self.iconj()
        while self.accept("\\/"):
            e = iv.IJoin(e, self.iconj())
        return e

    def iconj(self) -> iv.IntervalExpr:
        e = self.iatom()
        while self.accept("/\\"):
            e = iv.IMeet(e, self.iatom())
        return e

    def iatom(self) -> iv.IntervalExpr:
        t = self.tok
        if self.accept("0"):
            return iv.ZERO
        if self.accept("1"):
            return iv.ONE
        if self.accept("~"):
            return iv.INeg(self.iatom())
        if self.accept("("):
            e = self.iexpr()
            self.expect(")")
            return e
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.pos += 1
            return IVar(self.ivar_index(t))
        raise self.error(f"syntax error: expected an interval expression, found {t.describe()}")

    def ivar_index(self, t: Token) -> int:
        kind, ref = self.lookup(t.text, t)
        if kind != "i":
            raise self.error(f"{t.text} is not an interval variable", t)
        return ref

    def system(self) -> tuple:
        """``[ face -> \\k. t , ... ]``; a face is a disjunction of conjunctions."""
        self.expect("[")
        branches = []
        while not self.at("]"):
            faces = [self.face()]
            while self.accept("\\/"):
                faces.append(self.face())
            self.expect("->")
            self.expect("\\", "a side binder \\k.")
            k = self.binder_name()
            self.expect(".")
            self.push("i", [k])
            side = self.term()
            self.pop(1)
            for f in faces:
                if s.face_consistent(f):
                    branches.append(s.Branch(s.make_face(f), side, k))
            if not self.accept(","):
                break
        self.expect("]")
        return tuple(branches)

    def face(self) -> list[tuple[int, int]]:
        self.expect("(", "a face such as (i=0)")
        out = []
        if self.accept("1"):
            self.expect(")")
            return out
        while True:
            t = self.tok
            if t.kind != "ident":
                raise self.error(f"syntax error: expected an interval variable, found {t.describe()}")
            self.pos += 1
            k = self.ivar_index(t)
            self.expect("=")
            bit = self.tok
            if not (self.accept("0") or self.accept("1")):
                raise self.error("syntax error: a face constrains a variable to 0 or 1", bit)
            out.append((k, int(bit.text)))
            if not self.accept("/\\"):
                break
        self.expect(")")
        return out

    def macro(self, name: str, args) -> s.Term:
        gt, gi = self.depth
        return macros.expand_macro(name, args, gt, gi)


def _case(p: Parser) -> s.Term:
    scrut = p.atom()
    (mn,), motive = p.binder_arg("t", 1)
    (ln,), left = p.binder_arg("t", 1)
    (rn,), right = p.binder_arg("t", 1)
    return s.Case(scrut, motive, left, right, mn, ln, rn)


def _if(p: Parser) -> s.Term:
    (mn,), motive = p.binder_arg("t", 1)
    return s.If(motive, p.atom(), p.atom(), p.atom(), mn)


def _transp(p: Parser) -> s.Term:
    (n,), line = p.binder_arg("i", 1)
    phi = p.iatom()
    return s.Transp(line, phi, p.atom(), n)


def _hcomp(p: Parser) -> s.Term:
    ty = p.atom()
    sys = p.system()
    return s.HComp(ty, sys, p.atom())


def _pathp(p: Parser) -> s.Term:
    (n,), line = p.binder_arg("i", 1)
    return s.PathP(line, p.atom(), p.atom(), n)


def _path(p: Parser) -> s.Term:
    return s.path(p.atom(), p.atom(), p.atom())


def _transport(p: Parser) -> s.Term:
    _, line = p.binder_arg("i", 1)
    return p.macro("transport", [line, p.atom()])


def _transp_fill(p: Parser) -> s.Term:
    _, line = p.binder_arg("i", 1)
    phi = p.iatom()
    return p.macro("transp_filler", [line, phi, p.atom()])


def _comp(p: Parser) -> s.Term:
    _, line = p.binder_arg("i", 1)
    sys = p.system()
    return p.macro("comp", [line, sys, p.atom()])


def _hfill(p: Parser) -> s.Term:
    ty = p.atom()
    sys = p.system()
    base = p.atom()
    t = p.tok
    r = p.iatom()
    if not isinstance(r, IVar):
        raise p.error("hfill coordinate must be an interval variable", t)
    return p.macro("hfill", [ty, sys, base, r])


def _refl(p: Parser) -> s.Term:
    return p.macro("refl", [p.atom()])


def _j(p: Parser) -> s.Term:
    _, motive = p.binder_arg("t", 2)
    return p.macro("J", [motive, p.atom(), p.atom()])


def _transport_refl(p: Parser) -> s.Term:
    return p.macro("transportRefl", [p.atom(), p.atom()])


def _sqfill(p: Parser) -> s.Term:
    gt, gi = p.depth
    return sqfill_type(p.atom(), gt, gi)


def _sqpfill(p: Parser) -> s.Term:
    (i, j), body = p.binder_arg("i", 2)
    gt, gi = p.depth
    return sqpfill_type(s.TypeSquare(body, i, j), gt, gi)


def _isset(p: Parser) -> s.Term:
    gt, gi = p.depth
    return isset_type(p.atom(), gt, gi)


_FORMS = {
    "inl": lambda p: s.Inl(p.atom()),
    "inr": lambda p: s.Inr(p.atom()),
    "case": _case,
    "if": _if,
    "absurd": lambda p: s.Absurd(p.atom(), p.atom()),
    "transp": _transp,
    "hcomp": _hcomp,
    "PathP": _pathp,
    "Path": _path,
    "transport": _transport,
    "transpFill": _transp_fill,
    "comp": _comp,
    "hfill": _hfill,
    "refl": _refl,
    "J": _j,
    "transportRefl": _transport_refl,
    "SqFill": _sqfill,
    "SqPFill": _sqpfill,
    "isSet": _isset,
}


# ---------------------------------------------------------------------------
# Entry points


def parse_module(source: str, path: str | None = None, known=()) -> SourceModule:
    return Parser(source, path, known).module()


def _finish(p: Parser):
    if p.tok.kind != "eof":
        raise p.error(f"syntax error: unexpected {p.tok.describe()} after the end of the term")


def parse_term(source: str, known=(), names=(), inames=(), path: str | None = None) -> s.Term:
    p = Parser(source, path, known)
    p.push("t", names)
    p.push("i", inames)
    t = p.term()
    _finish(p)
    return t


def parse_square(source: str, known=(), path: str | None = None) -> s.TypeSquare:
    p = Parser(source, path, known)
    sq = p.square()
    _finish(p)
    return sq


def parse_interval(source: str) -> tuple[iv.IntervalExpr, list[str]]:
    """Parse an interval expression; its free names are bound in order of appearance."""
    toks = tokenize(source)
    names: list[str] = []
    for t in toks:
        if t.kind == "ident" and t.text not in names:
            if t.text in KEYWORDS:
                raise syntax_error(f"syntax error: {t.text} is not an interval variable",
                                   t.line, t.col, t.end_col)
            names.append(t.text)
    p = Parser(source)
    p.push("i", names)
    e = p.iexpr()
    _finish(p)
    return e, names
