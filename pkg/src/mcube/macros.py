"""Derived operators, expanded into core ``transp``/``hcomp`` terms."""

from __future__ import annotations

from typing import Callable, Sequence

from . import builder as b
from . import syntax as s
from .builder import R, RI


class MacroError(Exception):
    pass


Line = Callable[[RI], R]


def transport(line: Line, a: R, name: str = "i") -> R:
    return b.transp(name, line, 0, a)


def transp_filler(line: Line, phi, a: R) -> R:
    """Path from ``a`` to ``transp line phi a`` over ``line``."""
    return b.plam("i", lambda i: b.transp("j", lambda j: line(i & j), ~i | phi, a))


def comp(line: Line, system, base: R) -> R:
    """Heterogeneous composition: hcomp at ``line 1`` of forward-transported sides."""
    def lift(side):
        return lambda t: b.transp("s", lambda u: line(t | u), t, side(t))

    return b.hcomp(line(b.I1), [(face, lift(side)) for face, side in system],
                   b.transp("i", line, 0, base))


def hfill(ty: R, system, base: R, t: b.IVarR) -> R:
    sides = [(face, (lambda side: lambda u: side(t & u))(side)) for face, side in system]
    sides.append(([(t, 0)], lambda u: base))
    return b.hcomp(ty, sides, base)


def refl(a: R) -> R:
    return b.plam("_", lambda _: a)


def J(motive: Callable[[R, R], R], d: R, p: R) -> R:
    """Path induction: ``motive y q`` at ``y := p 1``, ``q := p``, from ``d`` at refl."""
    return b.transp(
        "i", lambda i: motive(p @ i, b.plam("j", lambda j: p @ (i & j))), 0, d)


def transport_refl(ty: R, a: R) -> R:
    """Path from ``transport (const ty) a`` to ``a``."""
    return b.plam("i", lambda i: b.transp("_", lambda _: ty, i, a))


# ---------------------------------------------------------------------------
# Core-term interface

_ARITY = {
    "transport": 2,
    "transp_filler": 3,
    "comp": 3,
    "hfill": 4,
    "refl": 1,
    "J": 3,
    "transportRefl": 2,
}


def expand_macro(name: str, args: Sequence, gt: int = 0, gi: int = 0) -> s.Term:
    """Expand a derived operator applied to core arguments.

    Lines (``transport``, ``transp_filler``, ``comp``) are terms binding one
    interval variable.  Systems are tuples of :class:`syntax.Branch`.  The
    ``J`` motive binds two term variables (endpoint, then path).  ``hfill``
    takes its filling coordinate as an interval expression whose variable
    must be bound in the ambient context.
    """
    if name not in _ARITY:
        raise MacroError(f"unknown macro {name}")
    if len(args) != _ARITY[name]:
        raise MacroError(f"{name} expects {_ARITY[name]} arguments, got {len(args)}")
    sc = b.Scope(gt, gi)

    def line(t):
        return lambda i: sc.inst(t, ivals=[i])

    def system(branches):
        out = []
        for br in branches:
            face = [(sc.ivar(k), bit) for k, bit in br.face]
            out.append((face, (lambda side: lambda u: sc.inst(side, ivals=[u]))(br.side)))
        return out

    def interval(e):
        return b.RI(lambda di: s.iv.shift(e, di - gi))

    match name:
        case "transport":
            a, x = args
            r = transport(line(a), sc.embed(x))
        case "transp_filler":
            a, phi, x = args
            r = transp_filler(line(a), interval(phi), sc.embed(x))
        case "comp":
            a, sys, x = args
            r = comp(line(a), system(sys), sc.embed(x))
        case "hfill":
            a, sys, x, t = args
            if not isinstance(t, s.iv.IVar):
                raise MacroError("hfill coordinate must be an interval variable")
            r = hfill(sc.embed(a), system(sys), sc.embed(x), sc.ivar(t.index))
        case "refl":
            r = refl(sc.embed(args[0]))
        case "J":
            motive, d, p = args
            r = J(lambda y, q: sc.inst(motive, terms=[y, q]), sc.embed(d), sc.embed(p))
        case "transportRefl":
            a, x = args
            r = transport_refl(sc.embed(a), sc.embed(x))
    return sc.close(r)
