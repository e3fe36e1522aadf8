"""Bidirectional type checking with endpoint and face-agreement checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import evaluator as ev
from . import syntax as s
from .evaluator import Env, GlobalEntry, Names, Value
from .interval import NF_ONE, NF_ZERO, nf_var


@dataclass
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass
class Diagnostic:
    message: str
    span: Span | None = None
    severity: str = "error"
    notes: list[str] = field(default_factory=list)
    path: str | None = None

    def render(self) -> str:
        where = self.path or "<input>"
        if self.span is not None:
            where += f":{self.span.line}:{self.span.col}"
        out = f"{where}: {self.severity}: {self.message}"
        for n in self.notes:
            out += f"\n  note: {n}"
        return out

    def to_json(self) -> dict:
        d = {"severity": self.severity, "message": self.message, "notes": list(self.notes),
             "path": self.path}
        if self.span is not None:
            d["span"] = {"line": self.span.line, "col": self.span.col,
                         "end_line": self.span.end_line, "end_col": self.span.end_col}
        return d


class CheckError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


class EvidenceMap:
    """Registered square-filling evidence, keyed by normalized subject."""

    def __init__(self):
        self.entries: dict = {}

    @staticmethod
    def key(kind: str, subject: s.Term) -> tuple:
        return (kind, subject)

    def lookup(self, kind: str, subject: s.Term) -> str | None:
        return self.entries.get(self.key(kind, subject))

    def register(self, kind: str, subject: s.Term, name: str) -> None:
        self.entries[self.key(kind, subject)] = name

    def copy(self) -> EvidenceMap:
        out = EvidenceMap()
        out.entries = dict(self.entries)
        return out


class Context:
    """Typing context: values and types of term variables, fresh interval names."""

    __slots__ = ("env", "types", "names", "inames", "q")

    def __init__(self, env: Env, types=(), names=(), inames=(), q: Names | None = None):
        self.env = env
        self.types = types
        self.names = names
        self.inames = inames
        self.q = q or Names()

    @staticmethod
    def empty(globals: dict) -> Context:
        return Context(Env(globals=globals))

    @property
    def globals(self) -> dict:
        return self.env.globals

    @property
    def depth(self) -> tuple[int, int]:
        return len(self.types), len(self.inames)

    def bind(self, name: str, ty: Value) -> tuple[Context, Value]:
        n, v = ev.neutral_var(ty)
        return Context(self.env.extend(v), self.types + (ev.Cell(ty),), self.names + (name,),
                       self.inames, self.q.bind(n)), v

    def define(self, name: str, ty: Value, value: Value) -> Context:
        return Context(self.env.extend(value), self.types + (ev.Cell(ty),), self.names + (name,),
                       self.inames, self.q.bind(ev.fresh()))

    def ibind(self, name: str):
        n = ev.fresh()
        r = nf_var(n)
        return Context(self.env.iextend(r), self.types, self.names, self.inames + (name,),
                       self.q.ibind(n)), r

    def restrict(self, sub: dict) -> Context:
        if not sub:
            return self
        return Context(self.env.isubst(sub), tuple(t.then(sub) for t in self.types),
                       self.names, self.inames, self.q)

    def eval(self, t: s.Term) -> Value:
        return ev.eval_term(self.env, t)

    def quote(self, v: Value, ty: Value) -> s.Term:
        return ev.quote(self.q, v, ty)

    def quote_type(self, v: Value) -> s.Term:
        return ev.quote_type(self.q, v)

    def conv(self, a: Value, b: Value, ty: Value) -> bool:
        return ev.conv(self.q, a, b, ty)

    def conv_type(self, a: Value, b: Value) -> bool:
        return ev.conv_type(self.q, a, b)


def _face_subs(f) -> list[dict]:
    return [ev.face_sub(c) for c in f.consistent_clauses()]


def _merge(a: dict, b: dict) -> dict | None:
    out = dict(a)
    for k, v in b.items():
        if k in out and out[k] != v:
            return None
        out[k] = v
    return out


class Checker:
    """Checks terms against a global environment and evidence map."""

    def __init__(self, globals: dict | None = None, evidence: EvidenceMap | None = None,
                 spans: dict | None = None, path: str | None = None):
        self.globals = globals if globals is not None else {}
        self.evidence = evidence if evidence is not None else EvidenceMap()
        self.spans = spans or {}
        self.path = path
        self._stack: list = []

    # -- diagnostics -------------------------------------------------------

    def fail(self, message: str, notes=()) -> None:
        span = None
        for node in reversed(self._stack):
            span = self.spans.get(id(node))
            if span is not None:
                break
        raise CheckError(Diagnostic(message, span, notes=list(notes), path=self.path))

    def show(self, ctx: Context, t: s.Term) -> str:
        from .frontend.printer import print_term
        try:
            return print_term(t, list(ctx.names), list(ctx.inames))
        except Exception:  # diagnostics must never mask the real error
            return repr(t)

    def show_value(self, ctx: Context, v: Value, ty: Value | None = None) -> str:
        try:
            t = ctx.quote(v, ty) if ty is not None else ctx.quote_type(v)
        except ev.EvalError:
            return "<value>"
        return self.show(ctx, t)

    def mismatch(self, ctx, what, expected, got, ty=None):
        self.fail(f"{what}: expected {self.show_value(ctx, expected, ty)}, "
                  f"got {self.show_value(ctx, got, ty)}")

    # -- entry points ------------------------------------------------------

    def context(self) -> Context:
        return Context.empty(self.globals)

    def check_type(self, ctx: Context, t: s.Term) -> Value:
        self.check(ctx, t, ev.U_)
        return ctx.eval(t)

    def check(self, ctx: Context, t: s.Term, ty: Value) -> None:
        self._stack.append(t)
        try:
            self._check(ctx, t, ty)
        except ev.EvalError as e:
            self.fail(f"evaluation failed: {e}")
        finally:
            self._stack.pop()

    def infer(self, ctx: Context, t: s.Term) -> Value:
        self._stack.append(t)
        try:
            return self._infer(ctx, t)
        except ev.EvalError as e:
            self.fail(f"evaluation failed: {e}")
        finally:
            self._stack.pop()

    # -- checking ----------------------------------------------------------

    def _check(self, ctx: Context, t: s.Term, ty: Value) -> None:
        match t:
            case s.Lam(body, name):
                if not isinstance(ty, ev.VPi):
                    self.fail(f"lambda checked against non-function type {self.show_value(ctx, ty)}")
                c2, x = ctx.bind(name, ty.dom)
                self.check(c2, body, ty.cod.apply(x))
            case s.Pair(a, b):
                if not isinstance(ty, ev.VSigma):
                    self.fail(f"pair checked against non-pair type {self.show_value(ctx, ty)}")
                self.check(ctx, a, ty.dom)
                self.check(ctx, b, ty.cod.apply(ctx.eval(a)))
            case s.Inl(a) | s.Inr(a):
                if not isinstance(ty, ev.VSum):
                    self.fail(f"injection checked against non-sum type {self.show_value(ctx, ty)}")
                self.check(ctx, a, ty.left if isinstance(t, s.Inl) else ty.right)
            case s.PLam(body, name):
                if not isinstance(ty, ev.VPathP):
                    self.fail(f"path abstraction checked against non-path type {self.show_value(ctx, ty)}")
                c2, i = ctx.ibind(name)
                self.check(c2, body, ty.line.apply(i))
                for bit, want in ((0, ty.left), (1, ty.right)):
                    r = NF_ONE if bit else NF_ZERO
                    got = ev.eval_term(ctx.env.iextend(r), body)
                    at = ty.line.apply(r)
                    if not ctx.conv(got, want, at):
                        self.fail(
                            f"path endpoint mismatch at {bit}: expected "
                            f"{self.show_value(ctx, want, at)}, got {self.show_value(ctx, got, at)}")
            case s.Tt():
                if not isinstance(ty, ev.VUnit):
                    self.mismatch(ctx, "type mismatch", ty, ev.UNIT)
            case s.Let(annot, bound, body, name):
                a = self.check_type(ctx, annot)
                self.check(ctx, bound, a)
                self.check(ctx.define(name, a, ctx.eval(bound)), body, ty)
            case _:
                got = self.infer(ctx, t)
                if not ctx.conv_type(got, ty):
                    self.mismatch(ctx, "type mismatch", ty, got)

    def _infer(self, ctx: Context, t: s.Term) -> Value:
        match t:
            case s.Var(k):
                if k >= len(ctx.types):
                    self.fail(f"unbound variable #{k}")
                return ctx.types[-1 - k].get()
            case s.Ref(name):
                g = ctx.globals.get(name)
                if g is None:
                    self.fail(f"unbound identifier {name}")
                return g.type
            case s.U() | s.UnitT() | s.EmptyT() | s.BoolT():
                return ev.U_
            case s.Pi(a, b, n) | s.Sigma(a, b, n):
                av = self.check_type(ctx, a)
                c2, _ = ctx.bind(n, av)
                self.check_type(c2, b)
                return ev.U_
            case s.Sum(a, b):
                self.check_type(ctx, a)
                self.check_type(ctx, b)
                return ev.U_
            case s.PathP(a, x, y, n):
                c2, _ = ctx.ibind(n)
                self.check_type(c2, a)
                line = ev.TIClo(ctx.env, a, n)
                self.check(ctx, x, line.apply(NF_ZERO))
                self.check(ctx, y, line.apply(NF_ONE))
                return ev.U_
            case s.Tt():
                return ev.UNIT
            case s.BTrue() | s.BFalse():
                return ev.BOOL
            case s.App(f, a):
                ft = self.infer(ctx, f)
                if not isinstance(ft, ev.VPi):
                    self.fail(f"applying a non-function of type {self.show_value(ctx, ft)}")
                self.check(ctx, a, ft.dom)
                return ft.cod.apply(ctx.eval(a))
            case s.Fst(p) | s.Snd(p):
                pt = self.infer(ctx, p)
                if not isinstance(pt, ev.VSigma):
                    self.fail(f"projection from a non-pair of type {self.show_value(ctx, pt)}")
                if isinstance(t, s.Fst):
                    return pt.dom
                return pt.cod.apply(ev.vfst(ctx.eval(p)))
            case s.PApp(p, r):
                pt = self.infer(ctx, p)
                if not isinstance(pt, ev.VPathP):
                    self.fail(f"path application of a non-path of type {self.show_value(ctx, pt)}")
                return pt.line.apply(self.interval(ctx, r))
            case s.Case(sc, m, l, r, mn, ln, rn):
                st = self.infer(ctx, sc)
                if not isinstance(st, ev.VSum):
                    self.fail(f"case on a non-sum of type {self.show_value(ctx, st)}")
                c2, _ = ctx.bind(mn, st)
                self.check_type(c2, m)
                motive = ev.TClo(ctx.env, m, mn)
                cl, a = ctx.bind(ln, st.left)
                self.check(cl, l, motive.apply(ev.VInl(a)))
                cr, b = ctx.bind(rn, st.right)
                self.check(cr, r, motive.apply(ev.VInr(b)))
                return motive.apply(ctx.eval(sc))
            case s.If(m, sc, a, b, mn):
                c2, _ = ctx.bind(mn, ev.BOOL)
                self.check_type(c2, m)
                motive = ev.TClo(ctx.env, m, mn)
                self.check(ctx, sc, ev.BOOL)
                self.check(ctx, a, motive.apply(ev.TRUE))
                self.check(ctx, b, motive.apply(ev.FALSE))
                return motive.apply(ctx.eval(sc))
            case s.Absurd(m, e):
                mv = self.check_type(ctx, m)
                self.check(ctx, e, ev.EMPTY)
                return mv
            case s.Transp(a, phi, x, n):
                c2, _ = ctx.ibind(n)
                self.check_type(c2, a)
                line = ev.TIClo(ctx.env, a, n)
                phiv = self.interval(ctx, phi)
                for sub in _face_subs(phiv):
                    cr, probe = ctx.restrict(sub).ibind(n)
                    lr = line.isubst(sub)
                    if not cr.conv_type(lr.apply(probe), lr.apply(NF_ZERO)):
                        self.fail("transp line is not constant where its constraint holds",
                                  notes=[f"constraint: {self.show_interval(ctx, phi)}"])
                self.check(ctx, x, line.apply(NF_ZERO))
                return line.apply(NF_ONE)
            case s.HComp(a, sys, base):
                av = self.check_type(ctx, a)
                self.check(ctx, base, av)
                self.check_system(ctx, sys, av, base)
                return av
            case s.Let(annot, bound, body, name):
                av = self.check_type(ctx, annot)
                self.check(ctx, bound, av)
                return self.infer(ctx.define(name, av, ctx.eval(bound)), body)
            case s.Lam() | s.Pair() | s.Inl() | s.Inr() | s.PLam():
                self.fail(f"cannot infer the type of this {type(t).__name__.lower()}; add an annotation")
        self.fail(f"cannot infer the type of {type(t).__name__}")

    def interval(self, ctx: Context, r) -> ev.IntervalNF:
        bad = [k for k in s.iv.free_vars(r) if k >= len(ctx.inames)]
        if bad:
            self.fail(f"unbound interval variable #{bad[0]}")
        return ev.ieval(ctx.env, r)

    def show_interval(self, ctx: Context, r) -> str:
        from .frontend.printer import print_interval
        return print_interval(r, list(ctx.inames))

    def check_system(self, ctx: Context, sys, ty: Value, base: s.Term) -> None:
        """Sides type-check under their faces, agree with ``base`` at 0 and pairwise on overlaps."""
        basev = ctx.eval(base)
        faces = []
        for br in sys:
            for k, _ in br.face:
                if k >= len(ctx.inames):
                    self.fail(f"unbound interval variable #{k} in a face")
            if not s.face_consistent(br.face):
                self.fail("unsatisfiable face")
            faces.append(_face_subs(ev.eval_face(ctx.env, br.face)))
        for br, subs in zip(sys, faces):
            self._stack.append(br.side)
            try:
                for sub in subs:
                    cr = ctx.restrict(sub)
                    tr = ty.isubst(sub)
                    c2, _ = cr.ibind(br.name)
                    self.check(c2, br.side, tr)
                    at0 = ev.eval_term(cr.env.iextend(NF_ZERO), br.side)
                    if not cr.conv(at0, basev.isubst(sub), tr):
                        self.fail(f"side on face {self.show_face(ctx, br.face)} does not agree with the base at 0")
            finally:
                self._stack.pop()
        for x in range(len(sys)):
            for y in range(x + 1, len(sys)):
                for sa in faces[x]:
                    for sb in faces[y]:
                        sub = _merge(sa, sb)
                        if sub is None:
                            continue
                        cr = ctx.restrict(sub)
                        c2, probe = cr.ibind(sys[x].name)
                        va = ev.eval_term(cr.env.iextend(probe), sys[x].side)
                        vb = ev.eval_term(cr.env.iextend(probe), sys[y].side)
                        cr = c2
                        if not cr.conv(va, vb, ty.isubst(sub)):
                            self._stack.append(sys[y].side)
                            self.fail(
                                f"sides on faces {self.show_face(ctx, sys[x].face)} and "
                                f"{self.show_face(ctx, sys[y].face)} disagree on their overlap")

    def show_face(self, ctx: Context, face) -> str:
        from .frontend.printer import print_face
        return print_face(face, list(ctx.inames))

    # -- declarations ------------------------------------------------------

    def add_global(self, name: str, ty: Value, value: Value | None, term=None, type_term=None):
        if name in self.globals:
            self.fail(f"duplicate name {name}")
        self.globals[name] = GlobalEntry(ty, value, term, type_term)

    def check_definition(self, d: s.Definition) -> None:
        self._stack.append(d)
        try:
            ctx = self.context()
            if d.name in self.globals:
                self.fail(f"duplicate name {d.name}")
            if d.type is not None:
                ty = self.check_type(ctx, d.type)
                self.check(ctx, d.body, ty)
                type_term = d.type
            else:
                ty = self.infer(ctx, d.body)
                type_term = ctx.quote_type(ty)
            self.add_global(d.name, ty, ctx.eval(d.body), d.body, type_term)
        finally:
            self._stack.pop()

    def evidence_key(self, kind: str, subject) -> s.Term:
        """Normal form of an evidence subject (a type, or a type square body)."""
        ctx = self.context()
        if kind == "sqfill":
            return ctx.quote_type(ctx.eval(subject))
        c2, _ = ctx.ibind(subject.iname)
        c3, _ = c2.ibind(subject.jname)
        return c3.quote_type(c3.eval(subject.body))

    def check_evidence(self, d: s.Evidence) -> None:
        from .synth.statements import sqfill_type, sqpfill_type

        self._stack.append(d)
        try:
            ctx = self.context()
            if d.name in self.globals:
                self.fail(f"duplicate name {d.name}")
            if d.kind == "sqfill":
                self.check_type(ctx, d.subject)
                stmt = sqfill_type(d.subject)
            else:
                c2, _ = ctx.ibind(d.subject.iname)
                c3, _ = c2.ibind(d.subject.jname)
                self.check_type(c3, d.subject.body)
                stmt = sqpfill_type(d.subject)
            ty = ctx.eval(stmt)
            self.check(ctx, d.proof, ty)
            key = self.evidence_key(d.kind, d.subject)
            if self.evidence.lookup(d.kind, key) is not None:
                self.fail(f"duplicate {d.kind} evidence for this type "
                          f"(already registered as {self.evidence.lookup(d.kind, key)})")
            self.add_global(d.name, ty, ctx.eval(d.proof), d.proof, stmt)
            self.evidence.register(d.kind, key, d.name)
        finally:
            self._stack.pop()

    def check_declaration(self, d) -> None:
        if isinstance(d, s.Evidence):
            self.check_evidence(d)
        else:
            self.check_definition(d)

    def check_module(self, decls) -> None:
        for d in decls:
            self.check_declaration(d)
