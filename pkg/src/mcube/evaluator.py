"""Normalization by evaluation for the cubical core.

Values use globally fresh names for both term and interval variables, which
makes face restriction (substituting an interval name by 0 or 1) a plain
structural operation.  Neutral terms are rebuilt through the eliminators when
restricted, so stuck Kan operations and path applications resume computing as
soon as their faces or endpoints become constant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from . import interval as iv
from . import syntax as s
from .interval import NF_ONE, NF_ZERO, IntervalNF, nf_const, nf_var


class EvalError(Exception):
    """Internal error: evaluation met an ill-typed or ill-scoped term."""


_names = itertools.count()


def fresh() -> int:
    return next(_names)


Sub = Mapping[int, IntervalNF]


# ---------------------------------------------------------------------------
# Values


class Value:
    __slots__ = ()

    def isubst(self, sub: Sub) -> Value:
        return self


@dataclass(frozen=True, eq=False)
class VU(Value):
    pass


@dataclass(frozen=True, eq=False)
class VUnit(Value):
    pass


@dataclass(frozen=True, eq=False)
class VTt(Value):
    pass


@dataclass(frozen=True, eq=False)
class VEmpty(Value):
    pass


@dataclass(frozen=True, eq=False)
class VBool(Value):
    pass


@dataclass(frozen=True, eq=False)
class VTrue(Value):
    pass


@dataclass(frozen=True, eq=False)
class VFalse(Value):
    pass


U_, UNIT, TT, EMPTY, BOOL, TRUE, FALSE = VU(), VUnit(), VTt(), VEmpty(), VBool(), VTrue(), VFalse()


class Clo:
    """Closure over one term variable."""

    __slots__ = ()
    name = "x"

    def apply(self, v: Value) -> Value:
        raise NotImplementedError

    def isubst(self, sub: Sub) -> Clo:
        raise NotImplementedError


class IClo:
    """Closure over one interval variable."""

    __slots__ = ()
    name = "i"

    def apply(self, r: IntervalNF) -> Value:
        raise NotImplementedError

    def isubst(self, sub: Sub) -> IClo:
        raise NotImplementedError


def compose(first: Sub, then: Sub) -> Sub:
    """The substitution ``first`` followed by ``then``."""
    if not first:
        return then
    if not then:
        return first
    out = {k: r.subst(then) for k, r in first.items()}
    for k, r in then.items():
        out.setdefault(k, r)
    return out


class Cell:
    """A value under a pending interval substitution, forced on first use."""

    __slots__ = ("value", "sub")

    def __init__(self, value: Value, sub: Sub | None = None):
        self.value, self.sub = value, sub

    def get(self) -> Value:
        if self.sub:
            self.value, self.sub = self.value.isubst(self.sub), None
        return self.value

    def then(self, sub: Sub) -> Cell:
        return Cell(self.value, compose(self.sub, sub) if self.sub else sub)


class Env:
    """Environment; restriction is lazy, so closures can be restricted cheaply."""

    __slots__ = ("cells", "ivals", "globals")

    def __init__(self, cells=(), ivals=(), globals=None):
        self.cells = cells
        self.ivals = ivals
        self.globals = globals if globals is not None else {}

    def extend(self, v: Value) -> Env:
        return Env(self.cells + (Cell(v),), self.ivals, self.globals)

    def iextend(self, r: IntervalNF) -> Env:
        return Env(self.cells, self.ivals + (r,), self.globals)

    def lookup(self, k: int) -> Value:
        if k >= len(self.cells):
            raise EvalError(f"term variable {k} out of scope")
        return self.cells[-1 - k].get()

    def ilookup(self, k: int) -> IntervalNF:
        if k >= len(self.ivals):
            raise EvalError(f"interval variable {k} out of scope")
        return self.ivals[-1 - k]

    def isubst(self, sub: Sub) -> Env:
        if not sub:
            return self
        return Env(tuple(c.then(sub) for c in self.cells),
                   tuple(r.subst(sub) for r in self.ivals), self.globals)


class TClo(Clo):
    __slots__ = ("env", "body", "name")

    def __init__(self, env: Env, body: s.Term, name: str = "x"):
        self.env, self.body, self.name = env, body, name

    def apply(self, v):
        return eval_term(self.env.extend(v), self.body)

    def isubst(self, sub):
        return TClo(self.env.isubst(sub), self.body, self.name) if sub else self


class FClo(Clo):
    __slots__ = ("fn", "name")

    def __init__(self, fn: Callable[[Value], Value], name: str = "x"):
        self.fn, self.name = fn, name

    def apply(self, v):
        return self.fn(v)

    def isubst(self, sub):
        if not sub:
            return self
        fn = self.fn
        return FClo(lambda v: fn(v).isubst(sub), self.name)


class TIClo(IClo):
    __slots__ = ("env", "body", "name")

    def __init__(self, env: Env, body: s.Term, name: str = "i"):
        self.env, self.body, self.name = env, body, name

    def apply(self, r):
        return eval_term(self.env.iextend(r), self.body)

    def isubst(self, sub):
        return TIClo(self.env.isubst(sub), self.body, self.name) if sub else self


class FIClo(IClo):
    __slots__ = ("fn", "name")

    def __init__(self, fn: Callable[[IntervalNF], Value], name: str = "i"):
        self.fn, self.name = fn, name

    def apply(self, r):
        return self.fn(r)

    def isubst(self, sub):
        if not sub:
            return self
        fn = self.fn
        return FIClo(lambda r: fn(r).isubst(sub), self.name)


def const_iclo(v: Value) -> IClo:
    return FIClo(lambda r: v, "_")


@dataclass(frozen=True, eq=False)
class VPi(Value):
    dom: Value
    cod: Clo

    def isubst(self, sub):
        return VPi(self.dom.isubst(sub), self.cod.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VLam(Value):
    body: Clo

    def isubst(self, sub):
        return VLam(self.body.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VSigma(Value):
    dom: Value
    cod: Clo

    def isubst(self, sub):
        return VSigma(self.dom.isubst(sub), self.cod.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VPair(Value):
    fst: Value
    snd: Value

    def isubst(self, sub):
        return VPair(self.fst.isubst(sub), self.snd.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VSum(Value):
    left: Value
    right: Value

    def isubst(self, sub):
        return VSum(self.left.isubst(sub), self.right.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VInl(Value):
    value: Value

    def isubst(self, sub):
        return VInl(self.value.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VInr(Value):
    value: Value

    def isubst(self, sub):
        return VInr(self.value.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VPathP(Value):
    line: IClo
    left: Value
    right: Value

    def isubst(self, sub):
        if not sub:
            return self
        return VPathP(self.line.isubst(sub), self.left.isubst(sub), self.right.isubst(sub))


@dataclass(frozen=True, eq=False)
class VPLam(Value):
    body: IClo

    def isubst(self, sub):
        return VPLam(self.body.isubst(sub)) if sub else self


@dataclass(frozen=True, eq=False)
class VNe(Value):
    ne: Neutral

    def isubst(self, sub):
        return self.ne.isubst(sub) if sub else self


# A value-level system: tuple of (face formula, side closure).
System = tuple


def system_isubst(sys: System, sub: Sub) -> System:
    if not sub:
        return sys
    return tuple((f.subst(sub), u.isubst(sub)) for f, u in sys)


# ---------------------------------------------------------------------------
# Neutrals


class Neutral:
    __slots__ = ()

    def isubst(self, sub: Sub) -> Value:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class NVar(Neutral):
    name: int
    type: Value

    def isubst(self, sub):
        return VNe(NVar(self.name, self.type.isubst(sub)))


@dataclass(frozen=True, eq=False)
class NRef(Neutral):
    """Opaque global constant (no unfolding available)."""

    name: str
    type: Value

    def isubst(self, sub):
        return VNe(self)


@dataclass(frozen=True, eq=False)
class NApp(Neutral):
    fn: Neutral
    arg: Value

    def isubst(self, sub):
        return vapp(self.fn.isubst(sub), self.arg.isubst(sub))


@dataclass(frozen=True, eq=False)
class NFst(Neutral):
    pair: Neutral

    def isubst(self, sub):
        return vfst(self.pair.isubst(sub))


@dataclass(frozen=True, eq=False)
class NSnd(Neutral):
    pair: Neutral

    def isubst(self, sub):
        return vsnd(self.pair.isubst(sub))


@dataclass(frozen=True, eq=False)
class NPApp(Neutral):
    path: Neutral
    at: IntervalNF

    def isubst(self, sub):
        return vpapp(self.path.isubst(sub), self.at.subst(sub))


@dataclass(frozen=True, eq=False)
class NCase(Neutral):
    scrut: Neutral
    motive: Clo
    left: Clo
    right: Clo

    def isubst(self, sub):
        return vcase(self.scrut.isubst(sub), self.motive.isubst(sub),
                     self.left.isubst(sub), self.right.isubst(sub))


@dataclass(frozen=True, eq=False)
class NIf(Neutral):
    motive: Clo
    scrut: Neutral
    then: Value
    else_: Value

    def isubst(self, sub):
        return vif(self.motive.isubst(sub), self.scrut.isubst(sub),
                   self.then.isubst(sub), self.else_.isubst(sub))


@dataclass(frozen=True, eq=False)
class NAbsurd(Neutral):
    motive: Value
    scrut: Neutral

    def isubst(self, sub):
        return vabsurd(self.motive.isubst(sub), self.scrut.isubst(sub))


@dataclass(frozen=True, eq=False)
class NTransp(Neutral):
    line: IClo
    phi: IntervalNF
    arg: Value

    def isubst(self, sub):
        return do_transp(self.line.isubst(sub), self.phi.subst(sub), self.arg.isubst(sub))


@dataclass(frozen=True, eq=False)
class NHComp(Neutral):
    type: Value
    system: System
    base: Value

    def isubst(self, sub):
        return do_hcomp(self.type.isubst(sub), system_isubst(self.system, sub),
                        self.base.isubst(sub))


def neutral_var(type_: Value, name: int | None = None) -> tuple[int, Value]:
    n = fresh() if name is None else name
    return n, VNe(NVar(n, type_))


# ---------------------------------------------------------------------------
# Eliminators


def vapp(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return f.body.apply(a)
    if isinstance(f, VNe):
        return VNe(NApp(f.ne, a))
    raise EvalError(f"application of a non-function {f!r}")


def vfst(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.fst
    if isinstance(p, VNe):
        return VNe(NFst(p.ne))
    raise EvalError(f"projection from a non-pair {p!r}")


def vsnd(p: Value) -> Value:
    if isinstance(p, VPair):
        return p.snd
    if isinstance(p, VNe):
        return VNe(NSnd(p.ne))
    raise EvalError(f"projection from a non-pair {p!r}")


def vpapp(p: Value, r: IntervalNF) -> Value:
    if isinstance(p, VPLam):
        return p.body.apply(r)
    if isinstance(p, VNe):
        c = r.constant()
        if c is not None:
            t = infer_neutral(p.ne)
            if not isinstance(t, VPathP):
                raise EvalError("path application of a non-path neutral")
            return t.right if c else t.left
        return VNe(NPApp(p.ne, r))
    raise EvalError(f"path application of a non-path {p!r}")


def vcase(sc: Value, motive: Clo, left: Clo, right: Clo) -> Value:
    if isinstance(sc, VInl):
        return left.apply(sc.value)
    if isinstance(sc, VInr):
        return right.apply(sc.value)
    if isinstance(sc, VNe):
        return VNe(NCase(sc.ne, motive, left, right))
    raise EvalError(f"case on a non-sum {sc!r}")


def vif(motive: Clo, sc: Value, then: Value, else_: Value) -> Value:
    if isinstance(sc, VTrue):
        return then
    if isinstance(sc, VFalse):
        return else_
    if isinstance(sc, VNe):
        return VNe(NIf(motive, sc.ne, then, else_))
    raise EvalError(f"if on a non-boolean {sc!r}")


def vabsurd(motive: Value, sc: Value) -> Value:
    if isinstance(sc, VNe):
        return VNe(NAbsurd(motive, sc.ne))
    raise EvalError(f"absurd on a canonical value {sc!r}")


def infer_neutral(ne: Neutral) -> Value:
    """Type of a neutral, recovered from the types stored at its head."""
    match ne:
        case NVar(_, t) | NRef(_, t):
            return t
        case NApp(f, a):
            t = infer_neutral(f)
            return t.cod.apply(a)
        case NFst(p):
            return infer_neutral(p).dom
        case NSnd(p):
            return infer_neutral(p).cod.apply(vfst(VNe(p)))
        case NPApp(p, r):
            return infer_neutral(p).line.apply(r)
        case NCase(sc, m, _, _):
            return m.apply(VNe(sc))
        case NIf(m, sc, _, _):
            return m.apply(VNe(sc))
        case NAbsurd(m, _):
            return m
        case NTransp(line, _, _):
            return line.apply(NF_ONE)
        case NHComp(t, _, _):
            return t
    raise EvalError(f"unknown neutral {ne!r}")


# ---------------------------------------------------------------------------
# Kan operations


def _expect(v: Value, cls):
    if not isinstance(v, cls):
        raise EvalError(f"type line changed head: expected {cls.__name__}, got {type(v).__name__}")
    return v


def do_transp(line: IClo, phi: IntervalNF, a: Value) -> Value:
    """Transport ``a : line 0`` to ``line 1``; the identity wherever ``phi`` holds."""
    if phi.is_one:
        return a
    head = line.apply(nf_var(fresh()))

    if isinstance(head, VPi):
        def at_dom(r):
            return _expect(line.apply(r), VPi).dom

        def result(x1: Value) -> Value:
            def back(t: IntervalNF) -> Value:
                return do_transp(FIClo(lambda j: at_dom((~j) | t)), phi | t, x1)

            cod_line = FIClo(lambda t: _expect(line.apply(t), VPi).cod.apply(back(t)))
            return do_transp(cod_line, phi, vapp(a, back(NF_ZERO)))

        return VLam(FClo(result, head.cod.name))

    if isinstance(head, VSigma):
        a0 = vfst(a)

        def fill(t: IntervalNF) -> Value:
            return do_transp(FIClo(lambda j: _expect(line.apply(t & j), VSigma).dom),
                             (~t) | phi, a0)

        snd_line = FIClo(lambda t: _expect(line.apply(t), VSigma).cod.apply(fill(t)))
        return VPair(fill(NF_ONE), do_transp(snd_line, phi, vsnd(a)))

    if isinstance(head, VPathP):
        def body(j: IntervalNF) -> Value:
            aj = FIClo(lambda t: _expect(line.apply(t), VPathP).line.apply(j))
            sides = (
                (phi, FIClo(lambda t: vpapp(a, j))),
                (~j, FIClo(lambda t: _expect(line.apply(t), VPathP).left)),
                (j, FIClo(lambda t: _expect(line.apply(t), VPathP).right)),
            )
            return comp(aj, sides, vpapp(a, j))

        return VPLam(FIClo(body, head.line.name))

    if isinstance(head, VSum):
        if isinstance(a, VInl):
            return VInl(do_transp(FIClo(lambda t: _expect(line.apply(t), VSum).left), phi, a.value))
        if isinstance(a, VInr):
            return VInr(do_transp(FIClo(lambda t: _expect(line.apply(t), VSum).right), phi, a.value))
        return VNe(NTransp(line, phi, a))

    if isinstance(head, (VUnit, VBool, VEmpty)):
        # set-model computation at ground types
        return a

    return VNe(NTransp(line, phi, a))


def comp(line: IClo, sys: System, base: Value) -> Value:
    """Heterogeneous composition: forward-transport every side, then hcomp."""
    def lift(u: IClo) -> IClo:
        def side(t: IntervalNF) -> Value:
            return do_transp(FIClo(lambda s_: line.apply(t | s_)), t, u.apply(t))
        return FIClo(side)

    top = line.apply(NF_ONE)
    return do_hcomp(top, tuple((f, lift(u)) for f, u in sys), do_transp(line, NF_ZERO, base))


def hfill(ty: Value, sys: System, base: Value, t: IntervalNF) -> Value:
    def shrink(u: IClo) -> IClo:
        return FIClo(lambda r: u.apply(t & r))

    sides = tuple((f, shrink(u)) for f, u in sys) + ((~t, const_iclo(base)),)
    return do_hcomp(ty, sides, base)


def face_sub(face: dict) -> dict:
    return {n: nf_const(b) for n, b in face.items()}


def do_hcomp(ty: Value, sys: System, base: Value) -> Value:
    """Homogeneous composition of ``base`` along the partial sides ``sys``."""
    sys = tuple((f, u) for f, u in sys if not f.is_zero)
    for f, u in sys:
        if f.is_one:
            return u.apply(NF_ONE)

    if isinstance(ty, VPi):
        def fn(x: Value) -> Value:
            sides = tuple((f, FIClo(lambda t, u=u: vapp(u.apply(t), x))) for f, u in sys)
            return do_hcomp(ty.cod.apply(x), sides, vapp(base, x))

        return VLam(FClo(fn, ty.cod.name))

    if isinstance(ty, VSigma):
        fst_sides = tuple((f, FIClo(lambda t, u=u: vfst(u.apply(t)))) for f, u in sys)
        b0 = vfst(base)

        def fill(t: IntervalNF) -> Value:
            return hfill(ty.dom, fst_sides, b0, t)

        snd_sides = tuple((f, FIClo(lambda t, u=u: vsnd(u.apply(t)))) for f, u in sys)
        b = comp(FIClo(lambda t: ty.cod.apply(fill(t))), snd_sides, vsnd(base))
        return VPair(fill(NF_ONE), b)

    if isinstance(ty, VPathP):
        def body(j: IntervalNF) -> Value:
            sides = tuple((f, FIClo(lambda t, u=u: vpapp(u.apply(t), j))) for f, u in sys)
            sides += ((~j, const_iclo(ty.left)), (j, const_iclo(ty.right)))
            return do_hcomp(ty.line.apply(j), sides, vpapp(base, j))

        return VPLam(FIClo(body, ty.line.name))

    if isinstance(ty, VSum):
        for ctor, part in ((VInl, ty.left), (VInr, ty.right)):
            if isinstance(base, ctor):
                sides = _strip_constructor(sys, ctor)
                if sides is None:
                    break
                return ctor(do_hcomp(part, sides, base.value))
        return VNe(NHComp(ty, sys, base))

    if isinstance(ty, VUnit):
        return TT
    if isinstance(ty, VBool) and isinstance(base, (VTrue, VFalse)):
        # set-model computation at ground types
        return base
    return VNe(NHComp(ty, sys, base))


def _strip_constructor(sys: System, ctor) -> System | None:
    out = []
    for f, u in sys:
        for face in f.consistent_clauses():
            sub = face_sub(face)
            ur = u.isubst(sub)
            probe = ur.apply(nf_var(fresh()))
            if not isinstance(probe, ctor):
                return None
            clause = iv.IntervalNF.of([[(n, b == 0) for n, b in face.items()]])
            out.append((clause, FIClo(lambda t, ur=ur: _payload(ur.apply(t), ctor))))
    return tuple(out)


def _payload(v: Value, ctor) -> Value:
    if not isinstance(v, ctor):
        raise EvalError("side of a constructor composition changed constructor")
    return v.value


# ---------------------------------------------------------------------------
# Evaluation


def ieval(env: Env, r: iv.IntervalExpr) -> IntervalNF:
    return iv.normalize(r, env.ilookup)


def eval_face(env: Env, face: s.Face) -> IntervalNF:
    out = NF_ONE
    for k, bit in face:
        r = env.ilookup(k)
        out = out & (r if bit else ~r)
    return out


@dataclass
class GlobalEntry:
    type: Value
    value: Value | None
    term: s.Term | None = None
    type_term: s.Term | None = None


def eval_term(env: Env, t: s.Term) -> Value:
    match t:
        case s.Var(k):
            return env.lookup(k)
        case s.Ref(name):
            g = env.globals.get(name)
            if g is None:
                raise EvalError(f"unknown global {name}")
            return g.value if g.value is not None else VNe(NRef(name, g.type))
        case s.U():
            return U_
        case s.Pi(a, b, n):
            return VPi(eval_term(env, a), TClo(env, b, n))
        case s.Lam(b, n):
            return VLam(TClo(env, b, n))
        case s.App(f, a):
            return vapp(eval_term(env, f), eval_term(env, a))
        case s.Sigma(a, b, n):
            return VSigma(eval_term(env, a), TClo(env, b, n))
        case s.Pair(a, b):
            return VPair(eval_term(env, a), eval_term(env, b))
        case s.Fst(p):
            return vfst(eval_term(env, p))
        case s.Snd(p):
            return vsnd(eval_term(env, p))
        case s.Sum(a, b):
            return VSum(eval_term(env, a), eval_term(env, b))
        case s.Inl(a):
            return VInl(eval_term(env, a))
        case s.Inr(a):
            return VInr(eval_term(env, a))
        case s.Case(sc, m, l, r, mn, ln, rn):
            return vcase(eval_term(env, sc), TClo(env, m, mn), TClo(env, l, ln), TClo(env, r, rn))
        case s.PathP(a, x, y, n):
            return VPathP(TIClo(env, a, n), eval_term(env, x), eval_term(env, y))
        case s.PLam(b, n):
            return VPLam(TIClo(env, b, n))
        case s.PApp(p, r):
            return vpapp(eval_term(env, p), ieval(env, r))
        case s.UnitT():
            return UNIT
        case s.Tt():
            return TT
        case s.EmptyT():
            return EMPTY
        case s.Absurd(m, e):
            return vabsurd(eval_term(env, m), eval_term(env, e))
        case s.BoolT():
            return BOOL
        case s.BTrue():
            return TRUE
        case s.BFalse():
            return FALSE
        case s.If(m, sc, a, b, mn):
            return vif(TClo(env, m, mn), eval_term(env, sc), eval_term(env, a), eval_term(env, b))
        case s.Transp(a, phi, x, n):
            return do_transp(TIClo(env, a, n), ieval(env, phi), eval_term(env, x))
        case s.HComp(a, sys, b):
            return do_hcomp(eval_term(env, a), eval_system(env, sys), eval_term(env, b))
        case s.Let(_, x, b):
            return eval_term(env.extend(eval_term(env, x)), b)
    raise EvalError(f"cannot evaluate {t!r}")


def eval_system(env: Env, sys) -> System:
    return tuple((eval_face(env, br.face), TIClo(env, br.side, br.name)) for br in sys)


# ---------------------------------------------------------------------------
# Read-back


class Names:
    """Fresh names in scope, in binding order, for converting back to indices."""

    __slots__ = ("tnames", "inames", "tlevel", "ilevel")

    def __init__(self, tnames=(), inames=()):
        self.tnames = tnames
        self.inames = inames
        self.tlevel = {n: k for k, n in enumerate(tnames)}
        self.ilevel = {n: k for k, n in enumerate(inames)}

    def bind(self, n) -> Names:
        return Names(self.tnames + (n,), self.inames)

    def ibind(self, n) -> Names:
        return Names(self.tnames, self.inames + (n,))

    def tindex(self, n) -> int:
        if n not in self.tlevel:
            raise EvalError(f"read-back met an unbound variable {n}")
        return len(self.tnames) - 1 - self.tlevel[n]

    def iindex(self, n) -> int:
        if n not in self.ilevel:
            raise EvalError(f"read-back met an unbound interval variable {n}")
        return len(self.inames) - 1 - self.ilevel[n]


def quote_interval(q: Names, r: IntervalNF) -> iv.IntervalExpr:
    # order clauses and literals by their de Bruijn reading, not by fresh name
    clauses = [[(q.iindex(n), neg) for n, neg in c] for c in r.clauses]
    return iv.to_expr(IntervalNF.of(clauses))


def _hint_of(v: Value, fallback: str) -> str:
    # prefer the binder name written on the value itself
    if isinstance(v, (VLam, VPLam)) and v.body.name not in ("_", ""):
        return v.body.name
    return fallback


def quote(q: Names, v: Value, ty: Value) -> s.Term:
    """Eta-long read-back of ``v`` at type ``ty``."""
    if isinstance(ty, VPi):
        n, x = neutral_var(ty.dom)
        body = quote(q.bind(n), vapp(v, x), ty.cod.apply(x))
        return s.Lam(body, _hint_of(v, ty.cod.name))
    if isinstance(ty, VSigma):
        a = vfst(v)
        return s.Pair(quote(q, a, ty.dom), quote(q, vsnd(v), ty.cod.apply(a)))
    if isinstance(ty, VPathP):
        n = fresh()
        r = nf_var(n)
        return s.PLam(quote(q.ibind(n), vpapp(v, r), ty.line.apply(r)), _hint_of(v, ty.line.name))
    if isinstance(ty, VUnit):
        return s.Tt()
    if isinstance(v, VNe):
        return quote_neutral(q, v.ne)[0]
    if isinstance(ty, VU):
        return quote_type(q, v)
    if isinstance(ty, VSum):
        if isinstance(v, VInl):
            return s.Inl(quote(q, v.value, ty.left))
        if isinstance(v, VInr):
            return s.Inr(quote(q, v.value, ty.right))
    if isinstance(ty, VBool):
        if isinstance(v, VTrue):
            return s.BTrue()
        if isinstance(v, VFalse):
            return s.BFalse()
    raise EvalError(f"cannot read back {type(v).__name__} at {type(ty).__name__}")


def quote_type(q: Names, v: Value) -> s.Term:
    match v:
        case VU():
            return s.U()
        case VPi(a, b):
            n, x = neutral_var(a)
            return s.Pi(quote_type(q, a), quote_type(q.bind(n), b.apply(x)), b.name)
        case VSigma(a, b):
            n, x = neutral_var(a)
            return s.Sigma(quote_type(q, a), quote_type(q.bind(n), b.apply(x)), b.name)
        case VSum(a, b):
            return s.Sum(quote_type(q, a), quote_type(q, b))
        case VPathP(line, x, y):
            n = fresh()
            body = quote_type(q.ibind(n), line.apply(nf_var(n)))
            return s.PathP(body, quote(q, x, line.apply(NF_ZERO)),
                           quote(q, y, line.apply(NF_ONE)), line.name)
        case VUnit():
            return s.UnitT()
        case VEmpty():
            return s.EmptyT()
        case VBool():
            return s.BoolT()
        case VNe(ne):
            return quote_neutral(q, ne)[0]
    raise EvalError(f"not a type: {type(v).__name__}")


def quote_system(q: Names, ty: Value, sys: System) -> tuple:
    faces = [(face, u) for f, u in sys for face in f.consistent_clauses()]
    keys = [frozenset(face.items()) for face, _ in faces]
    branches = []
    for idx, (face, u) in enumerate(faces):
        # a face implied by another (or repeated) adds nothing: sides agree there
        if any(o < keys[idx] or (o == keys[idx] and j < idx) for j, o in enumerate(keys)):
            continue
        sub = face_sub(face)
        n = fresh()
        side = quote(q.ibind(n), u.isubst(sub).apply(nf_var(n)), ty.isubst(sub))
        tface = s.make_face((q.iindex(k), b) for k, b in face.items())
        branches.append(s.Branch(tface, side))
    branches.sort(key=lambda br: br.face)
    return tuple(branches)


def quote_neutral(q: Names, ne: Neutral) -> tuple[s.Term, Value]:
    match ne:
        case NVar(n, t):
            return s.Var(q.tindex(n)), t
        case NRef(name, t):
            return s.Ref(name), t
        case NApp(f, a):
            tf, ft = quote_neutral(q, f)
            return s.App(tf, quote(q, a, ft.dom)), ft.cod.apply(a)
        case NFst(p):
            tp, pt = quote_neutral(q, p)
            return s.Fst(tp), pt.dom
        case NSnd(p):
            tp, pt = quote_neutral(q, p)
            return s.Snd(tp), pt.cod.apply(vfst(VNe(p)))
        case NPApp(p, r):
            tp, pt = quote_neutral(q, p)
            return s.PApp(tp, quote_interval(q, r)), pt.line.apply(r)
        case NCase(sc, m, l, r):
            ts, st = quote_neutral(q, sc)
            nc, c = neutral_var(st)
            motive = quote_type(q.bind(nc), m.apply(c))
            na, a = neutral_var(st.left)
            left = quote(q.bind(na), l.apply(a), m.apply(VInl(a)))
            nb, b = neutral_var(st.right)
            right = quote(q.bind(nb), r.apply(b), m.apply(VInr(b)))
            return (s.Case(ts, motive, left, right, m.name, l.name, r.name),
                    m.apply(VNe(sc)))
        case NIf(m, sc, a, b):
            ts, _ = quote_neutral(q, sc)
            nc, c = neutral_var(BOOL)
            motive = quote_type(q.bind(nc), m.apply(c))
            return (s.If(motive, ts, quote(q, a, m.apply(TRUE)), quote(q, b, m.apply(FALSE)), m.name),
                    m.apply(VNe(sc)))
        case NAbsurd(m, e):
            te, _ = quote_neutral(q, e)
            return s.Absurd(quote_type(q, m), te), m
        case NTransp(line, phi, a):
            n = fresh()
            tl = quote_type(q.ibind(n), line.apply(nf_var(n)))
            ta = quote(q, a, line.apply(NF_ZERO))
            return s.Transp(tl, quote_interval(q, phi), ta, line.name), line.apply(NF_ONE)
        case NHComp(t, sys, base):
            return (s.HComp(quote_type(q, t), quote_system(q, t, sys), quote(q, base, t)), t)
    raise EvalError(f"unknown neutral {ne!r}")


def conv(q: Names, a: Value, b: Value, ty: Value) -> bool:
    """Definitional equality at ``ty``, decided by comparing eta-long normal forms."""
    if a is b:
        return True
    return quote(q, a, ty) == quote(q, b, ty)


def conv_type(q: Names, a: Value, b: Value) -> bool:
    if a is b:
        return True
    return quote_type(q, a) == quote_type(q, b)


def normalize_closed(t: s.Term, ty: s.Term, globals=None) -> s.Term:
    env = Env(globals=globals or {})
    return quote(Names(), eval_term(env, t), eval_term(env, ty))
