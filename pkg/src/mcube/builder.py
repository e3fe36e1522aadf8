"""Staged construction of core terms with named (higher-order) binders.

A raw term is a function from the current binder depth ``(dt, di)`` to a
core term.  Binders pass their variable to a Python callback, so code that
emits proofs can be written with ordinary names instead of de Bruijn
arithmetic.  Core terms living in an ambient context are embedded with
``Scope.embed``, which shifts them to the depth of the use site.
"""

from __future__ import annotations

from typing import Callable, Sequence

from . import interval as iv
from . import syntax as s
from .interval import IVar


class RI:
    """Staged interval expression."""

    __slots__ = ("build",)

    def __init__(self, build: Callable[[int], iv.IntervalExpr]):
        self.build = build

    def __and__(self, other):
        a, b = self.build, ri(other).build
        return RI(lambda di: iv.IMeet(a(di), b(di)))

    __rand__ = __and__

    def __or__(self, other):
        a, b = self.build, ri(other).build
        return RI(lambda di: iv.IJoin(a(di), b(di)))

    __ror__ = __or__

    def __invert__(self):
        a = self.build
        return RI(lambda di: iv.INeg(a(di)))


class IVarR(RI):
    """Interval variable bound at a fixed level."""

    __slots__ = ("level",)

    def __init__(self, level: int):
        self.level = level
        super().__init__(lambda di: IVar(di - 1 - level))


I0 = RI(lambda di: iv.ZERO)
I1 = RI(lambda di: iv.ONE)


def ri(x) -> RI:
    if isinstance(x, RI):
        return x
    if x == 0:
        return I0
    if x == 1:
        return I1
    raise TypeError(f"not an interval: {x!r}")


def coe(i0, i1, k) -> RI:
    i0, i1, k = ri(i0), ri(i1), ri(k)
    return ((~k | i1) & i0) | ((k | i0) & i1)


class R:
    """Staged term; supports ``f(x, y)``, ``p @ r``, ``t.fst`` and ``t.snd``."""

    __slots__ = ("build",)

    def __init__(self, build: Callable[[int, int], s.Term]):
        self.build = build

    def __call__(self, *args: R) -> R:
        out = self
        for a in args:
            f, x = out.build, a.build
            out = R(lambda dt, di, f=f, x=x: s.App(f(dt, di), x(dt, di)))
        return out

    def __matmul__(self, r) -> R:
        p, r = self.build, ri(r).build
        return R(lambda dt, di: s.PApp(p(dt, di), r(di)))

    def at(self, *rs) -> R:
        out = self
        for r in rs:
            out = out @ r
        return out

    @property
    def fst(self) -> R:
        p = self.build
        return R(lambda dt, di: s.Fst(p(dt, di)))

    @property
    def snd(self) -> R:
        p = self.build
        return R(lambda dt, di: s.Snd(p(dt, di)))


def lit(t: s.Term) -> R:
    """A closed core term (no free variables)."""
    return R(lambda dt, di: t)


def _var(level: int) -> R:
    return R(lambda dt, di: s.Var(dt - 1 - level))


U = lit(s.U())
Unit = lit(s.UnitT())
tt = lit(s.Tt())
Empty = lit(s.EmptyT())
Bool = lit(s.BoolT())
true = lit(s.BTrue())
false = lit(s.BFalse())


def ref(name: str) -> R:
    return lit(s.Ref(name))


def _bind_t(name: str, fn: Callable[[R], R]) -> Callable[[int, int], s.Term]:
    def build(dt, di):
        return fn(_var(dt)).build(dt + 1, di)
    return build


def _bind_i(fn: Callable[[RI], R]) -> Callable[[int, int], s.Term]:
    def build(dt, di):
        return fn(IVarR(di)).build(dt, di + 1)
    return build


def pi(name: str, dom: R, fn: Callable[[R], R]) -> R:
    body = _bind_t(name, fn)
    return R(lambda dt, di: s.Pi(dom.build(dt, di), body(dt, di), name))


def arrow(dom: R, cod: R) -> R:
    return pi("_", dom, lambda _: cod)


def pis(binders: Sequence[tuple[str, R | Callable]], fn: Callable[..., R]) -> R:
    """Telescope: each binder type may be a function of the earlier variables."""
    def go(k: int, got: list[R]) -> R:
        if k == len(binders):
            return fn(*got)
        name, ty = binders[k]
        dom = ty(*got) if callable(ty) and not isinstance(ty, R) else ty
        return pi(name, dom, lambda x: go(k + 1, got + [x]))
    return go(0, [])


class LamR(R):
    """Staged lambda; applying it substitutes at staging time (no beta-redex is emitted)."""

    __slots__ = ("fn",)

    def __init__(self, build, fn):
        super().__init__(build)
        self.fn = fn

    def __call__(self, *args: R) -> R:
        if not args:
            return self
        return self.fn(args[0])(*args[1:])


class PLamR(R):
    """Staged path abstraction; ``@`` substitutes at staging time."""

    __slots__ = ("fn",)

    def __init__(self, build, fn):
        super().__init__(build)
        self.fn = fn

    def __matmul__(self, r) -> R:
        return self.fn(ri(r))


def lam(name: str, fn: Callable[[R], R]) -> R:
    body = _bind_t(name, fn)
    return LamR(lambda dt, di: s.Lam(body(dt, di), name), fn)


def lams(names: Sequence[str], fn: Callable[..., R]) -> R:
    def go(k: int, got: list[R]) -> R:
        if k == len(names):
            return fn(*got)
        return lam(names[k], lambda x: go(k + 1, got + [x]))
    return go(0, [])


def sigma(name: str, dom: R, fn: Callable[[R], R]) -> R:
    body = _bind_t(name, fn)
    return R(lambda dt, di: s.Sigma(dom.build(dt, di), body(dt, di), name))


class PairR(R):
    """Staged pair; projections reduce at staging time."""

    __slots__ = ("parts",)

    def __init__(self, build, parts):
        super().__init__(build)
        self.parts = parts

    @property
    def fst(self) -> R:
        return self.parts[0]

    @property
    def snd(self) -> R:
        return self.parts[1]


def pair(a: R, b: R) -> R:
    return PairR(lambda dt, di: s.Pair(a.build(dt, di), b.build(dt, di)), (a, b))


class InjR(R):
    """Staged injection; ``case`` on it reduces at staging time."""

    __slots__ = ("left", "payload")

    def __init__(self, build, left: bool, payload: R):
        super().__init__(build)
        self.left, self.payload = left, payload


def sum_(a: R, b: R) -> R:
    return R(lambda dt, di: s.Sum(a.build(dt, di), b.build(dt, di)))


def inl(a: R) -> R:
    return InjR(lambda dt, di: s.Inl(a.build(dt, di)), True, a)


def inr(a: R) -> R:
    return InjR(lambda dt, di: s.Inr(a.build(dt, di)), False, a)


def case(scrut: R, motive: Callable[[R], R], left: Callable[[R], R],
         right: Callable[[R], R], names=("c", "a", "b")) -> R:
    if isinstance(scrut, InjR):
        return (left if scrut.left else right)(scrut.payload)
    m, l, r = _bind_t(names[0], motive), _bind_t(names[1], left), _bind_t(names[2], right)
    return R(lambda dt, di: s.Case(scrut.build(dt, di), m(dt, di), l(dt, di), r(dt, di), *names))


def if_(motive: Callable[[R], R], scrut: R, then: R, else_: R, name: str = "b") -> R:
    m = _bind_t(name, motive)
    return R(lambda dt, di: s.If(m(dt, di), scrut.build(dt, di), then.build(dt, di),
                                 else_.build(dt, di), name))


def absurd(motive: R, e: R) -> R:
    return R(lambda dt, di: s.Absurd(motive.build(dt, di), e.build(dt, di)))


def pathp(name: str, line: Callable[[RI], R], a: R, b: R) -> R:
    body = _bind_i(line)
    return R(lambda dt, di: s.PathP(body(dt, di), a.build(dt, di), b.build(dt, di), name))


def path(ty: R, a: R, b: R) -> R:
    return pathp("_", lambda _: ty, a, b)


def plam(name: str, fn: Callable[[RI], R]) -> R:
    body = _bind_i(fn)
    return PLamR(lambda dt, di: s.PLam(body(dt, di), name), fn)


def plams(names: Sequence[str], fn: Callable[..., R]) -> R:
    def go(k: int, got: list[RI]) -> R:
        if k == len(names):
            return fn(*got)
        return plam(names[k], lambda i: go(k + 1, got + [i]))
    return go(0, [])


def transp(name: str, line: Callable[[RI], R], phi, a: R) -> R:
    body = _bind_i(line)
    phi = ri(phi)
    return R(lambda dt, di: s.Transp(body(dt, di), phi.build(di), a.build(dt, di), name))


Face = Sequence[tuple[IVarR, int]]


def hcomp(ty: R, system: Sequence[tuple[Face, Callable[[RI], R]]], base: R, name: str = "k") -> R:
    """``system`` lists ``(face, side)``; a face is a list of ``(interval var, bit)``."""
    sides = [(face, _bind_i(side)) for face, side in system]

    def build(dt, di):
        branches = []
        for face, side in sides:
            f = s.make_face((di - 1 - v.level, bit) for v, bit in face)
            if s.face_consistent(f):
                branches.append(s.Branch(f, side(dt, di), name))
        return s.HComp(ty.build(dt, di), tuple(branches), base.build(dt, di))
    return R(build)


class LetR(R):
    """Staged let; eliminations are pushed into the body so it stays checkable."""

    __slots__ = ("parts",)

    def __init__(self, build, parts):
        super().__init__(build)
        self.parts = parts

    def _push(self, elim: Callable[[R], R]) -> R:
        name, annot, bound, fn = self.parts
        return let(name, annot, bound, lambda x: elim(fn(x)))

    def __call__(self, *args: R) -> R:
        return self._push(lambda r: r(*args)) if args else self

    def __matmul__(self, r) -> R:
        return self._push(lambda p: p @ r)

    @property
    def fst(self) -> R:
        return self._push(lambda p: p.fst)

    @property
    def snd(self) -> R:
        return self._push(lambda p: p.snd)


def let(name: str, annot: R, bound: R, fn: Callable[[R], R]) -> R:
    body = _bind_t(name, fn)
    return LetR(lambda dt, di: s.Let(annot.build(dt, di), bound.build(dt, di), body(dt, di), name),
                (name, annot, bound, fn))


def _weaken_free(t: s.Term, nt: int, ni: int, by_t: int, by_i: int) -> s.Term:
    """Shift the free variables of ``t`` beyond its first ``nt``/``ni`` open binders."""
    if by_t == 0 and by_i == 0:
        return t
    return s.traverse(
        t,
        lambda k, dt, di: s.Var(k + dt + (by_t if k >= nt else 0)),
        lambda k, dt, di: IVar(k + di + (by_i if k >= ni else 0)),
    )


class Scope:
    """Ambient context of depth ``(gt, gi)`` in which built terms are closed off."""

    def __init__(self, gt: int = 0, gi: int = 0):
        self.gt, self.gi = gt, gi

    def embed(self, t: s.Term) -> R:
        gt, gi = self.gt, self.gi
        return R(lambda dt, di: _weaken_free(t, 0, 0, dt - gt, di - gi))

    def inst(self, body: s.Term, terms: Sequence[R] = (), ivals: Sequence = ()) -> R:
        """Embed ``body`` (with extra open binders) and instantiate them."""
        gt, gi = self.gt, self.gi
        nt, ni = len(terms), len(ivals)
        ivals = [ri(r) for r in ivals]

        def build(dt, di):
            b = _weaken_free(body, nt, ni, dt - gt, di - gi)
            return s.instantiate(b, [a.build(dt, di) for a in terms],
                                 [r.build(di) for r in ivals])
        return R(build)

    def var(self, k: int) -> R:
        """Ambient term variable with index ``k``."""
        return _var(self.gt - 1 - k)

    def ivar(self, k: int) -> IVarR:
        return IVarR(self.gi - 1 - k)

    def close(self, r: R) -> s.Term:
        return r.build(self.gt, self.gi)


TOP = Scope()


def build(r: R, scope: Scope = TOP) -> s.Term:
    return scope.close(r)
