"""Pretty-printer producing surface syntax that parses back to the same term.

Binder names are taken from the hints stored in the term and renamed only
when they would capture or be shadowed.  Interval expressions are printed
as written; normal forms print as sorted joins of meets.
"""

from __future__ import annotations

from .. import interval as iv
from .. import syntax as s
from .lexer import KEYWORDS

# precedence levels
BINDER, SUM, PROD, PAPP, APP, ATOM = range(6)


class _Names:
    """Display names of the term and interval variables in scope."""

    def __init__(self, names, inames, avoid):
        self.names = list(names)
        self.inames = list(inames)
        self.avoid = set(avoid) | KEYWORDS

    def taken(self) -> set:
        return set(self.names) | set(self.inames) | self.avoid

    def pick(self, hint: str, used: bool) -> str:
        if hint == "_" and not used:
            return "_"
        base = hint if hint and hint != "_" and _valid(hint) else "x"
        base = base.rstrip("0123456789") or "x"
        taken = self.taken()
        if hint not in taken and hint != "_" and _valid(hint):
            return hint
        k = 1
        while f"{base}{k}" in taken:
            k += 1
        return f"{base}{k}"

    def bind(self, hint: str, used: bool) -> tuple[str, _Names]:
        n = self.pick(hint, used)
        return n, _Names(self.names + [n], self.inames, self.avoid)

    def ibind(self, hint: str, used: bool) -> tuple[str, _Names]:
        n = self.pick(hint, used)
        return n, _Names(self.names, self.inames + [n], self.avoid)

    def var(self, k: int) -> str:
        return self.names[-1 - k] if k < len(self.names) else f"#{k}"

    def ivar(self, k: int) -> str:
        return self.inames[-1 - k] if k < len(self.inames) else f"#{k}"


def _valid(name: str) -> bool:
    return (name[:1].isalpha() or name[:1] == "_") and name not in KEYWORDS and \
        all(c.isalnum() or c in "_'" for c in name)


def _uses(t: s.Term) -> bool:
    return 0 in s.free_term_vars(t)


def _iuses(t: s.Term) -> bool:
    return 0 in s.free_interval_vars(t)


def _paren(text: str, level: int, want: int) -> str:
    return f"({text})" if level < want else text


# -- intervals --------------------------------------------------------------


def _interval(e: iv.IntervalExpr, ns: _Names, want: int) -> str:
    match e:
        case iv.IZero():
            return "0"
        case iv.IOne():
            return "1"
        case iv.IVar(k):
            return ns.ivar(k)
        case iv.INeg(x):
            return "~" + _interval(x, ns, 3)
        case iv.IMeet(a, b):
            return _paren(f"{_interval(a, ns, 2)} /\\ {_interval(b, ns, 3)}", 2, want)
        case iv.IJoin(a, b):
            return _paren(f"{_interval(a, ns, 1)} \\/ {_interval(b, ns, 2)}", 1, want)
    raise TypeError(e)


def print_interval(e, inames=()) -> str:
    """Interval expression (or normal form) with variables named by ``inames``."""
    if isinstance(e, iv.IntervalNF):
        return print_nf(e, lambda v: str(v))
    return _interval(e, _Names((), inames, ()), 0)


def print_nf(nf: iv.IntervalNF, name=str) -> str:
    """Normal form as a sorted join of meets, with ``name`` naming its variables."""
    if nf.is_zero:
        return "0"
    if nf.is_one:
        return "1"
    clauses = []
    for c in nf.clauses:
        lits = [("~" if neg else "") + name(v) for v, neg in c]
        clauses.append(" /\\ ".join(lits))
    return " \\/ ".join(clauses)


def _face(face, ns: _Names) -> str:
    if not face:
        return "(1)"
    return "(" + " /\\ ".join(f"{ns.ivar(k)}={bit}" for k, bit in face) + ")"


def print_face(face, inames=()) -> str:
    return _face(face, _Names((), inames, ()))


# -- terms ------------------------------------------------------------------


def _level(t: s.Term) -> int:
    match t:
        case s.Lam() | s.PLam() | s.Let():
            return BINDER
        case s.Pi():
            return BINDER
        case s.Sigma(_, snd):
            return BINDER if _uses(snd) else PROD
        case s.Sum():
            return SUM
        case s.PApp():
            return PAPP
        case (s.App() | s.Inl() | s.Inr() | s.Case() | s.If() | s.Absurd() | s.Transp()
              | s.HComp() | s.PathP()):
            return APP
    return ATOM


def _p(t: s.Term, ns: _Names, want: int) -> str:
    return _paren(_show(t, ns), _level(t), want)


def _show(t: s.Term, ns: _Names) -> str:
    match t:
        case s.U():
            return "U"
        case s.UnitT():
            return "Unit"
        case s.Tt():
            return "tt"
        case s.EmptyT():
            return "Empty"
        case s.BoolT():
            return "Bool"
        case s.BTrue():
            return "true"
        case s.BFalse():
            return "false"
        case s.Var(k):
            return ns.var(k)
        case s.Ref(name):
            return name
        case s.Lam():
            names = []
            while isinstance(t, s.Lam):
                n, ns = ns.bind(t.name, _uses(t.body))
                names.append(n)
                t = t.body
            return "\\" + " ".join(names) + ". " + _show(t, ns)
        case s.PLam():
            names = []
            while isinstance(t, s.PLam):
                n, ns = ns.ibind(t.name, _iuses(t.body))
                names.append(n)
                t = t.body
            return "<" + " ".join(names) + "> " + _show(t, ns)
        case s.Let(annot, bound, body, name):
            n, inner = ns.bind(name, _uses(body))
            return (f"let {n} : {_show(annot, ns)} := {_show(bound, ns)} in "
                    f"{_show(body, inner)}")
        case s.Pi(dom, cod, name):
            if not _uses(cod):
                _, inner = ns.bind("_", False)
                return f"{_p(dom, ns, SUM)} -> {_show(cod, inner)}"
            n, inner = ns.bind(name, True)
            return f"({n} : {_show(dom, ns)}) -> {_show(cod, inner)}"
        case s.Sigma(fst, snd, name):
            if not _uses(snd):
                _, inner = ns.bind("_", False)
                return f"{_p(fst, ns, PAPP)} * {_p(snd, inner, PROD)}"
            n, inner = ns.bind(name, True)
            return f"({n} : {_show(fst, ns)}) * {_show(snd, inner)}"
        case s.Sum(a, b):
            return f"{_p(a, ns, PROD)} + {_p(b, ns, SUM)}"
        case s.App(f, a):
            head = _p(f, ns, APP) if isinstance(f, s.App) else _p(f, ns, ATOM)
            return f"{head} {_p(a, ns, ATOM)}"
        case s.Pair(a, b):
            return f"({_show(a, ns)}, {_show(b, ns)})"
        case s.Fst(p):
            return f"{_p(p, ns, ATOM)}.1"
        case s.Snd(p):
            return f"{_p(p, ns, ATOM)}.2"
        case s.Inl(a):
            return f"inl {_p(a, ns, ATOM)}"
        case s.Inr(a):
            return f"inr {_p(a, ns, ATOM)}"
        case s.Case(scrut, motive, left, right, mn, ln, rn):
            return (f"case {_p(scrut, ns, ATOM)} {_tbinder(motive, mn, ns)} "
                    f"{_tbinder(left, ln, ns)} {_tbinder(right, rn, ns)}")
        case s.If(motive, scrut, then, else_, mn):
            return (f"if {_tbinder(motive, mn, ns)} {_p(scrut, ns, ATOM)} "
                    f"{_p(then, ns, ATOM)} {_p(else_, ns, ATOM)}")
        case s.Absurd(motive, e):
            return f"absurd {_p(motive, ns, ATOM)} {_p(e, ns, ATOM)}"
        case s.PathP(line, a, b, name):
            if not _iuses(line):
                return (f"Path {_p(s.shift(line, 0, -1), ns, ATOM)} "
                        f"{_p(a, ns, ATOM)} {_p(b, ns, ATOM)}")
            return f"PathP {_ibinder(line, name, ns)} {_p(a, ns, ATOM)} {_p(b, ns, ATOM)}"
        case s.PApp(p, r):
            return f"{_p(p, ns, PAPP)} @ {_interval(r, ns, 3)}"
        case s.Transp(line, phi, a, name):
            return f"transp {_ibinder(line, name, ns)} {_interval(phi, ns, 3)} {_p(a, ns, ATOM)}"
        case s.HComp(ty, system, base):
            sides = []
            for br in system:
                k, inner = ns.ibind(br.name, _iuses(br.side))
                sides.append(f"{_face(br.face, ns)} -> \\{k}. {_show(br.side, inner)}")
            return f"hcomp {_p(ty, ns, ATOM)} [{', '.join(sides)}] {_p(base, ns, ATOM)}"
    raise TypeError(f"cannot print {t!r}")


def _tbinder(body: s.Term, name: str, ns: _Names) -> str:
    n, inner = ns.bind(name, _uses(body))
    return f"(\\{n}. {_show(body, inner)})"


def _ibinder(body: s.Term, name: str, ns: _Names) -> str:
    n, inner = ns.ibind(name, _iuses(body))
    return f"(\\{n}. {_show(body, inner)})"


def print_term(t: s.Term, names=(), inames=()) -> str:
    """Surface syntax for ``t`` whose free variables are named by ``names``/``inames``."""
    return _show(t, _Names(names, inames, s.refs(t)))


def print_square(sq: s.TypeSquare) -> str:
    ns = _Names((), (), s.refs(sq.body))
    i, ns = ns.ibind(sq.iname, True)
    j, ns = ns.ibind(sq.jname, True)
    return f"\\{i} {j}. {_show(sq.body, ns)}"


def print_declaration(d) -> str:
    if isinstance(d, s.Evidence):
        subject = print_square(d.subject) if d.kind == "sqpfill" else print_term(d.subject)
        return f"evidence {d.name} : {d.kind} {subject} :=\n  {print_term(d.proof)}"
    head = f"def {d.name}"
    if d.type is not None:
        head += f" : {print_term(d.type)}"
    return f"{head} :=\n  {print_term(d.body)}"


def print_module(decls) -> str:
    return "\n\n".join(print_declaration(d) for d in decls) + "\n"
