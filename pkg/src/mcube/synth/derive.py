"""Synthesis of square fillings by recursion on the normal form of a type.

The type is normalized once; the recursion then walks its syntax.  A
:class:`View` is a subterm of that normal form together with the number
of term and interval binders (holes) between it and the ambient scope, so
it can be instantiated at staged terms when a filling is built.  Closed
subtypes consult the evidence map first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .. import builder as b
from .. import syntax as s
from .. import typechecker as tc
from ..builder import R, RI
from . import heterogeneous as het
from . import homogeneous as hom
from . import sums
from .statements import sqfill_r, sqpfill_r, sqfill_type, sqpfill_type


class DeriveError(Exception):
    def __init__(self, message: str, notes=()):
        super().__init__(message)
        self.message = message
        self.notes = list(notes)


class Cited(R):
    """A registered proof cited by name; never worth let-binding."""

    __slots__ = ()


@dataclass(frozen=True)
class View:
    scope: b.Scope
    term: s.Term
    nt: int = 0
    ni: int = 0

    def raw(self, terms=(), ivals=()) -> R:
        return self.scope.inst(self.term, list(terms), list(ivals))

    def under(self, t: s.Term, dt: int = 0, di: int = 0) -> View:
        return View(self.scope, t, self.nt + dt, self.ni + di)

    def lowered(self) -> s.Term | None:
        """The term without its holes, if it mentions none of them."""
        if any(k < self.nt for k in s.free_term_vars(self.term)):
            return None
        if any(k < self.ni for k in s.free_interval_vars(self.term)):
            return None
        return s.shift(self.term, -self.nt, -self.ni)


Args = Callable[[RI, RI], tuple[list, list]]


@dataclass
class Derivation:
    term: s.Term
    statement: s.Term
    defs: list = field(default_factory=list)  # auxiliary definitions cited by ``term``


_HEADS = {"BoolT": "Bool", "UnitT": "Unit", "EmptyT": "Empty", "U": "U", "Pi": "a Pi type",
          "Sigma": "a Sigma type", "Sum": "a sum", "PathP": "a path type", "Var": "a type variable"}


def _head(t: s.Term) -> str:
    name = type(t).__name__
    return _HEADS.get(name, "a stuck " + name.lower())


class Deriver:
    def __init__(self, checker: tc.Checker, scope: b.Scope | None = None):
        self.checker = checker
        self.scope = scope or b.TOP
        self.top_defs: dict[str, R] | None = None

    # -- homogeneous -------------------------------------------------------

    def cite(self, view: View) -> R | None:
        closed = view.lowered()
        if closed is None or self.scope.gt or self.scope.gi:
            return None
        if s.free_term_vars(closed) or s.free_interval_vars(closed):
            return None
        name = self.checker.evidence.lookup("sqfill", closed)
        return Cited(b.ref(name).build) if name else None

    def fill(self, view: View, terms: list) -> R:
        """Filling of ``SqFill (view at terms)``."""
        got = self.cite(view)
        if got is not None:
            return got
        t = view.term
        A = view.raw(terms)
        if isinstance(t, s.UnitT):
            return hom.unit_fill()
        if isinstance(t, s.EmptyT):
            return hom.empty_fill(A)
        if isinstance(t, s.Pi):
            dom, cod = view.under(t.dom), view.under(t.cod, dt=1)
            eB = self.family(dom, cod, terms, t.name)
            return _share("eB", b.pi(t.name, dom.raw(terms), lambda x: sqfill_r(cod.raw(terms + [x]))),
                          eB, lambda e: hom.emit_sqfill_pi(
                              dom.raw(terms), lambda x: cod.raw(terms + [x]), e))
        if isinstance(t, s.Sigma):
            dom, cod = view.under(t.fst), view.under(t.snd, dt=1)
            eB = self.family(dom, cod, terms, t.name)
            return _share("eA", sqfill_r(dom.raw(terms)), self.fill(dom, terms), lambda eA: _share(
                "eB", b.pi(t.name, dom.raw(terms), lambda x: sqfill_r(cod.raw(terms + [x]))),
                eB, lambda e: hom.emit_sqfill_sigma(
                    dom.raw(terms), lambda x: cod.raw(terms + [x]), eA, e)))
        if isinstance(t, s.Sum):
            L, Rt = view.under(t.left), view.under(t.right)
            La, Ra = L.raw(terms), Rt.raw(terms)
            handles, self.top_defs = self.top_defs, None
            return _share("eA", sqfill_r(La), self.fill(L, terms), lambda eA: _share(
                "eB", sqfill_r(Ra), self.fill(Rt, terms),
                lambda eB: self.sum_fill(La, Ra, eA, eB, handles)))
        if isinstance(t, s.PathP):
            base = self.constant_line(view, t)
            Aa = base.raw(terms)
            x, y = view.under(t.left).raw(terms), view.under(t.right).raw(terms)
            return _share("eA", sqfill_r(Aa), self.fill(base, terms),
                          lambda eA: hom.emit_sqfill_path(Aa, x, y, eA))
        if isinstance(t, s.If):
            return self.split(view, t, terms)
        raise self.unsupported(t, "SqFill")

    def family(self, dom: View, cod: View, terms: list, name: str) -> R:
        return b.lam(name, lambda x: self.fill(cod, terms + [x]))

    def sum_fill(self, A: R, B: R, eA: R, eB: R, handles: dict | None) -> R:
        if handles is not None:
            return sums.emit_sum_fill(lambda i, j: (A, B), sums.BundleOps(**handles), eA, eB, "hcomp")
        return sums.emit_sqfill_sum(A, B, eA, eB)

    def split(self, view: View, t: s.If, terms: list) -> R:
        """Case split on a type-level boolean; each branch is filled separately."""
        motive = view.under(t.motive, dt=1)
        then_, else_ = view.under(t.then), view.under(t.else_)
        scrut = view.under(t.scrut).raw(terms)
        then_r, else_r = then_.raw(terms), else_.raw(terms)

        def stmt(c):
            return sqfill_r(b.if_(lambda x: motive.raw(terms + [x]), c, then_r, else_r, t.mname))

        return b.if_(stmt, scrut, self.fill(then_, terms), self.fill(else_, terms), t.mname)

    def constant_line(self, view: View, t: s.PathP) -> View:
        if 0 in s.free_interval_vars(t.line):
            raise DeriveError("square filling for a path type over a varying line is not supported",
                              ["only Path A x y (a constant line) is handled"])
        return view.under(s.shift(t.line, 0, -1))

    # -- heterogeneous -----------------------------------------------------

    def pfill(self, view: View, args: Args) -> R:
        """Filling of ``SqPFill (λ i j. view at args i j)``."""
        if view.lowered() is not None:
            closed = View(view.scope, view.lowered())
            return self.fill(closed, [])
        t = view.term

        def at(v: View) -> Callable[[RI, RI], R]:
            return lambda i, j: v.raw(*args(i, j))

        if isinstance(t, s.Pi):
            dom, cod = view.under(t.dom), view.under(t.cod, dt=1)

            def B(i, j, x):
                ts, vs = args(i, j)
                return cod.raw(ts + [x], vs)

            def eB_at(a, i, j):
                def moved(i2, j2):
                    ts, vs = args(i2, j2)
                    return ts + [het.emit_spread(at(dom), a, i, j, i2, j2)], vs
                return self.pfill(cod, moved)

            return het.emit_sqpfill_pi(at(dom), B, eB_at)
        if isinstance(t, s.Sigma):
            dom, cod = view.under(t.fst), view.under(t.snd, dt=1)

            def B(i, j, x):
                ts, vs = args(i, j)
                return cod.raw(ts + [x], vs)

            def eB_for(sqa):
                def over(i, j):
                    ts, vs = args(i, j)
                    return ts + [sqa.at(i, j)], vs
                return self.pfill(cod, over)

            return _share("eA", sqpfill_r(at(dom)), self.pfill(dom, args),
                          lambda eA: het.emit_sqpfill_sigma(at(dom), B, eA, eB_for))
        if isinstance(t, s.Sum):
            L, Rt = view.under(t.left), view.under(t.right)
            return _share("eL", sqpfill_r(at(L)), self.pfill(L, args), lambda eL: _share(
                "eR", sqpfill_r(at(Rt)), self.pfill(Rt, args),
                lambda eR: sums.emit_sqpfill_sum(lambda i, j: (at(L)(i, j), at(Rt)(i, j)), eL, eR)))
        if isinstance(t, s.PathP):
            base = self.constant_line(view, t)
            x, y = view.under(t.left), view.under(t.right)
            return _share("eA", sqpfill_r(at(base)), self.pfill(base, args),
                          lambda eA: het.emit_sqpfill_path(at(base), at(x), at(y), eA))
        raise self.unsupported(t, "SqPFill")

    def unsupported(self, t: s.Term, kind: str) -> DeriveError:
        shown = self.checker.show(self.checker.context(), t) if not s.free_term_vars(t) else _head(t)
        notes = []
        if isinstance(t, (s.Var, s.App, s.Fst, s.Snd, s.PApp, s.Case, s.If, s.Transp, s.HComp, s.Ref)):
            notes.append("the type is stuck; register evidence for it with an evidence declaration")
        if isinstance(t, s.BoolT):
            notes.append("no sqfill evidence for Bool is in scope; the prelude provides it")
        if isinstance(t, s.U):
            notes.append("the universe has no square-filling property here")
        what = shown if shown == _head(t) else f"{_head(t)}: {shown}"
        return DeriveError(f"cannot derive {kind} for {what}", notes)


def _share(name: str, ty: R, value: R, body: Callable[[R], R]) -> R:
    """Let-bind ``value`` unless it is a citation."""
    if isinstance(value, Cited):
        return body(value)
    return b.let(name, ty, value, body)


def _normalize_type(checker: tc.Checker, t: s.Term, inames=()) -> s.Term:
    ctx = checker.context()
    for n in inames:
        ctx, _ = ctx.ibind(n)
    checker.check_type(ctx, t)
    return ctx.quote_type(ctx.eval(t))


def _verify(checker: tc.Checker, term: s.Term, stmt: s.Term) -> None:
    ctx = checker.context()
    checker.check(ctx, term, ctx.eval(stmt))


def bundle_defs(A: s.Term, B: s.Term, prefix: str) -> tuple[list[s.Definition], dict[str, R]]:
    """Top-level definitions of the code operations of ``A + B``."""
    handles: dict[str, R] = {}
    defs = []
    Ar, Br = b.lit(A), b.lit(B)
    for name, _ in sums.sum_code_bundle(Ar, Br).items():
        ty, body = dict(sums.sum_code_bundle(Ar, Br, handles).items())[name]
        full = f"{prefix}{name}"
        defs.append(s.Definition(full, b.build(ty), b.build(body)))
        handles[name] = b.ref(full)
    return defs, handles


def derive_sqfill(checker: tc.Checker, A: s.Term, name: str = "fill",
                  verify: bool = True) -> Derivation:
    """Filling of every hollow square in the closed type ``A``, checked before return."""
    nf = _normalize_type(checker, A)
    d = Deriver(checker)
    defs: list[s.Definition] = []
    if isinstance(nf, s.Sum) and d.cite(View(b.TOP, nf)) is None:
        defs, d.top_defs = bundle_defs(nf.left, nf.right, f"{name}_")
    term = b.build(d.fill(View(b.TOP, nf), []))
    stmt = sqfill_type(A)
    if verify:
        _gate(checker, defs, term, stmt)
    return Derivation(term, stmt, defs)


def derive_sqpfill(checker: tc.Checker, sq: s.TypeSquare, name: str = "fill",
                   verify: bool = True) -> Derivation:
    """Filling over the square of types ``sq``, checked before return."""
    nf = _normalize_type(checker, sq.body, (sq.iname, sq.jname))
    d = Deriver(checker)
    term = b.build(d.pfill(View(b.TOP, nf, 0, 2), lambda i, j: ([], [i, j])))
    stmt = sqpfill_type(sq)
    if verify:
        _gate(checker, [], term, stmt)
    return Derivation(term, stmt, [])


def _gate(checker: tc.Checker, defs: list, term: s.Term, stmt: s.Term) -> None:
    """Check auxiliary definitions and the filling on a scratch copy of the checker."""
    scratch = tc.Checker(dict(checker.globals), checker.evidence.copy())
    for dd in defs:
        scratch.check_definition(dd)
    _verify(scratch, term, stmt)
