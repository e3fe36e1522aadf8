"""Core terms of the object language.

Term variables and interval variables live in two separate de Bruijn index
spaces: ``Var(k)`` counts enclosing term binders and ``IVar(k)`` inside an
:class:`~mcube.interval.IntervalExpr` counts enclosing interval binders.
Binder name fields are display hints only and take no part in equality, so
structural equality of terms is alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import interval as iv
from .interval import IntervalExpr, IVar


class Term:
    __slots__ = ()


def _hint(default: str):
    return field(default=default, compare=False)


@dataclass(frozen=True)
class U(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int
    name: str = _hint("x")


@dataclass(frozen=True)
class Ref(Term):
    """Reference to a top-level definition or registered evidence."""

    name: str


@dataclass(frozen=True)
class Pi(Term):
    dom: Term
    cod: Term  # binds one term variable
    name: str = _hint("x")


@dataclass(frozen=True)
class Lam(Term):
    body: Term
    name: str = _hint("x")


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Sigma(Term):
    fst: Term
    snd: Term  # binds one term variable
    name: str = _hint("x")


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Fst(Term):
    pair: Term


@dataclass(frozen=True)
class Snd(Term):
    pair: Term


@dataclass(frozen=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inl(Term):
    value: Term


@dataclass(frozen=True)
class Inr(Term):
    value: Term


@dataclass(frozen=True)
class Case(Term):
    scrut: Term
    motive: Term  # binds the scrutinee
    left: Term  # binds the inl payload
    right: Term  # binds the inr payload
    mname: str = _hint("c")
    lname: str = _hint("a")
    rname: str = _hint("b")


@dataclass(frozen=True)
class PathP(Term):
    line: Term  # binds one interval variable
    left: Term
    right: Term
    name: str = _hint("i")


@dataclass(frozen=True)
class PLam(Term):
    body: Term  # binds one interval variable
    name: str = _hint("i")


@dataclass(frozen=True)
class PApp(Term):
    path: Term
    at: IntervalExpr


@dataclass(frozen=True)
class UnitT(Term):
    pass


@dataclass(frozen=True)
class Tt(Term):
    pass


@dataclass(frozen=True)
class EmptyT(Term):
    pass


@dataclass(frozen=True)
class Absurd(Term):
    motive: Term
    scrut: Term


@dataclass(frozen=True)
class BoolT(Term):
    pass


@dataclass(frozen=True)
class BTrue(Term):
    pass


@dataclass(frozen=True)
class BFalse(Term):
    pass


@dataclass(frozen=True)
class If(Term):
    motive: Term  # binds the scrutinee
    scrut: Term
    then: Term
    else_: Term
    mname: str = _hint("b")


@dataclass(frozen=True)
class Transp(Term):
    line: Term  # binds one interval variable
    phi: IntervalExpr
    arg: Term
    name: str = _hint("i")


Face = tuple  # tuple of (interval index, 0 | 1), sorted by index


@dataclass(frozen=True)
class Branch:
    face: Face
    side: Term  # binds one interval variable
    name: str = _hint("k")


@dataclass(frozen=True)
class HComp(Term):
    type: Term
    system: tuple  # of Branch
    base: Term


@dataclass(frozen=True)
class Let(Term):
    annot: Term
    bound: Term
    body: Term  # binds one term variable
    name: str = _hint("x")


@dataclass(frozen=True)
class TypeSquare:
    """A type under two interval binders; ``body`` sees j as index 0, i as 1."""

    body: Term
    iname: str = _hint("i")
    jname: str = _hint("j")


# ---------------------------------------------------------------------------
# Declarations


@dataclass(frozen=True)
class Definition:
    name: str
    type: Term | None
    body: Term


@dataclass(frozen=True)
class Evidence:
    name: str
    kind: str  # "sqfill" | "sqpfill"
    subject: Term | TypeSquare
    proof: Term


def face_formula(face: Face) -> IntervalExpr:
    return iv.meet_all(IVar(k) if bit else iv.INeg(IVar(k)) for k, bit in face)


def face_consistent(face: Iterable[tuple[int, int]]) -> bool:
    seen: dict[int, int] = {}
    for k, bit in face:
        if seen.setdefault(k, bit) != bit:
            return False
    return True


def make_face(pairs: Iterable[tuple[int, int]]) -> Face:
    return tuple(sorted(set(pairs)))


# ---------------------------------------------------------------------------
# Generic traversal and substitution

VarFn = Callable[[int, int, int], Term]
IVarFn = Callable[[int, int, int], IntervalExpr]


def traverse(t: Term, on_var: VarFn, on_ivar: IVarFn, dt: int = 0, di: int = 0) -> Term:
    """Rebuild ``t``, replacing free variables.

    ``on_var(k, dt, di)`` receives the free index ``k`` (relative to the
    outside of ``t``) together with the number of term and interval binders
    crossed, and must return a term valid at that depth.  ``on_ivar`` is the
    same for interval variables.
    """

    def ie(e: IntervalExpr, dt: int, di: int) -> IntervalExpr:
        return iv.map_vars(e, lambda k: IVar(k) if k < di else on_ivar(k - di, dt, di))

    def face(f: Face, dt: int, di: int) -> list:
        # a constraint on a compound formula becomes a disjunction of faces
        alts: list[list] = [[]]
        for k, bit in f:
            if k < di:
                opts = [[(k, bit)]]
            else:
                r = on_ivar(k - di, dt, di)
                if isinstance(r, IVar):
                    opts = [[(r.index, bit)]]
                else:
                    nf = iv.normalize(r if bit == 1 else iv.INeg(r))
                    opts = [[(v, 0 if neg else 1) for v, neg in c] for c in nf.clauses]
            alts = [a + o for a in alts for o in opts]
        out = []
        for a in alts:
            if face_consistent(a):
                fa = make_face(a)
                if fa not in out:
                    out.append(fa)
        return out

    def system(sys, dt, di):
        out = []
        for br in sys:
            faces = face(br.face, dt, di)
            if faces:
                side = go(br.side, dt, di + 1)
                out.extend(Branch(fa, side, br.name) for fa in faces)
        return tuple(out)

    def go(t: Term, dt: int, di: int) -> Term:
        match t:
            case Var(k, name):
                return t if k < dt else on_var(k - dt, dt, di)
            case U() | UnitT() | Tt() | EmptyT() | BoolT() | BTrue() | BFalse() | Ref():
                return t
            case Pi(a, b, n):
                return Pi(go(a, dt, di), go(b, dt + 1, di), n)
            case Lam(b, n):
                return Lam(go(b, dt + 1, di), n)
            case App(f, a):
                return App(go(f, dt, di), go(a, dt, di))
            case Sigma(a, b, n):
                return Sigma(go(a, dt, di), go(b, dt + 1, di), n)
            case Pair(a, b):
                return Pair(go(a, dt, di), go(b, dt, di))
            case Fst(p):
                return Fst(go(p, dt, di))
            case Snd(p):
                return Snd(go(p, dt, di))
            case Sum(a, b):
                return Sum(go(a, dt, di), go(b, dt, di))
            case Inl(a):
                return Inl(go(a, dt, di))
            case Inr(a):
                return Inr(go(a, dt, di))
            case Case(s, m, l, r, mn, ln, rn):
                return Case(go(s, dt, di), go(m, dt + 1, di), go(l, dt + 1, di),
                            go(r, dt + 1, di), mn, ln, rn)
            case PathP(a, x, y, n):
                return PathP(go(a, dt, di + 1), go(x, dt, di), go(y, dt, di), n)
            case PLam(b, n):
                return PLam(go(b, dt, di + 1), n)
            case PApp(p, r):
                return PApp(go(p, dt, di), ie(r, dt, di))
            case Absurd(m, e):
                return Absurd(go(m, dt, di), go(e, dt, di))
            case If(m, s, a, b, mn):
                return If(go(m, dt + 1, di), go(s, dt, di), go(a, dt, di), go(b, dt, di), mn)
            case Transp(a, phi, x, n):
                return Transp(go(a, dt, di + 1), ie(phi, dt, di), go(x, dt, di), n)
            case HComp(a, sys, b):
                return HComp(go(a, dt, di), system(sys, dt, di), go(b, dt, di))
            case Let(a, x, b, n):
                return Let(go(a, dt, di), go(x, dt, di), go(b, dt + 1, di), n)
        raise TypeError(f"not a term: {t!r}")

    return go(t, dt, di)


def shift(t: Term, by_t: int = 0, by_i: int = 0) -> Term:
    """Weaken ``t`` by ``by_t`` term binders and ``by_i`` interval binders."""
    if by_t == 0 and by_i == 0:
        return t
    return traverse(
        t,
        lambda k, dt, di: Var(k + dt + by_t),
        lambda k, dt, di: IVar(k + di + by_i),
    )


def _keep_var(k, dt, di):
    return Var(k + dt)


def _keep_ivar(k, dt, di):
    return IVar(k + di)


def subst_term(t: Term, index: int, replacement: Term) -> Term:
    """Replace free term variable ``index`` by ``replacement`` (same scope)."""

    def on_var(k, dt, di):
        return shift(replacement, dt, di) if k == index else Var(k + dt)

    return traverse(t, on_var, _keep_ivar)


def subst_interval(t: Term, index: int, replacement: IntervalExpr) -> Term:
    """Replace free interval variable ``index`` by ``replacement`` (same scope)."""

    def on_ivar(k, dt, di):
        return iv.shift(replacement, di) if k == index else IVar(k + di)

    return traverse(t, _keep_var, on_ivar)


def open_term(body: Term, arg: Term) -> Term:
    """Instantiate the innermost term binder of ``body`` with ``arg``."""

    def on_var(k, dt, di):
        return shift(arg, dt, di) if k == 0 else Var(k - 1 + dt)

    return traverse(body, on_var, _keep_ivar)


def open_interval(body: Term, r: IntervalExpr) -> Term:
    """Instantiate the innermost interval binder of ``body`` with ``r``."""

    def on_ivar(k, dt, di):
        return iv.shift(r, di) if k == 0 else IVar(k - 1 + di)

    return traverse(body, _keep_var, on_ivar)


def instantiate(body: Term, terms: list[Term], intervals: list[IntervalExpr]) -> Term:
    """Open ``len(terms)`` term binders and ``len(intervals)`` interval binders.

    ``terms[-1]`` replaces index 0 (the innermost binder); likewise for
    intervals.  Replacements live in the scope outside the binders.
    """
    nt, ni = len(terms), len(intervals)

    def on_var(k, dt, di):
        if k < nt:
            return shift(terms[nt - 1 - k], dt, di)
        return Var(k - nt + dt)

    def on_ivar(k, dt, di):
        if k < ni:
            return iv.shift(intervals[ni - 1 - k], di)
        return IVar(k - ni + di)

    return traverse(body, on_var, on_ivar)


def free_term_vars(t: Term) -> set[int]:
    out: set[int] = set()

    def on_var(k, dt, di):
        out.add(k)
        return Var(k + dt)

    traverse(t, on_var, _keep_ivar)
    return out


def free_interval_vars(t: Term) -> set[int]:
    out: set[int] = set()

    def on_ivar(k, dt, di):
        out.add(k)
        return IVar(k + di)

    traverse(t, _keep_var, on_ivar)
    return out


# ---------------------------------------------------------------------------
# Analyses


def children(t: Term):
    match t:
        case Pi(a, b) | Sigma(a, b) | App(a, b) | Pair(a, b) | Sum(a, b) | Absurd(a, b):
            return [a, b]
        case Lam(b) | Fst(b) | Snd(b) | Inl(b) | Inr(b) | PLam(b) | PApp(b, _):
            return [b]
        case Case(s, m, l, r):
            return [s, m, l, r]
        case PathP(a, x, y):
            return [a, x, y]
        case If(m, s, a, b):
            return [m, s, a, b]
        case Transp(a, _, x):
            return [a, x]
        case HComp(a, sys, b):
            return [a, *(br.side for br in sys), b]
        case Let(a, x, b):
            return [a, x, b]
    return []


def kan_count(t: Term) -> tuple[int, int]:
    """Number of syntactic ``hcomp`` and ``transp`` nodes in ``t``."""
    hc = tr = 0
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, HComp):
            hc += 1
        elif isinstance(s, Transp):
            tr += 1
        stack.extend(children(s))
    return hc, tr


def size(t: Term) -> int:
    n = 0
    stack = [t]
    while stack:
        n += 1
        stack.extend(children(stack.pop()))
    return n


def refs(t: Term) -> set[str]:
    out = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Ref):
            out.add(s.name)
        stack.extend(children(s))
    return out


def path(a: Term, x: Term, y: Term) -> Term:
    """Homogeneous path type: a ``PathP`` whose line ignores its variable."""
    return PathP(shift(a, 0, 1), x, y, "_")


def arrow(a: Term, b: Term) -> Term:
    return Pi(a, shift(b, 1, 0), "_")


def product(a: Term, b: Term) -> Term:
    return Sigma(a, shift(b, 1, 0), "_")
