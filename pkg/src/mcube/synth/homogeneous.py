"""Square fillings for homogeneous squares, one emitter per type former.

Emitters work on staged terms (see :mod:`mcube.builder`).  Sub-evidence is
passed in as a staged term, usually a let-bound variable, so an emitter's
Kan-operation count reflects only its own construction.
"""

from __future__ import annotations

from typing import Callable

from .. import builder as b
from .. import macros as m
from ..builder import R, RI
from .statements import sqfill_r

CORNERS = ("lu", "ru", "ld", "rd")
SIDES = ("l", "r", "u", "d")
ARGS = CORNERS + SIDES


def unit_fill() -> R:
    return b.lams(ARGS, lambda *_: b.plams(("i", "j"), lambda i, j: b.tt))


def empty_fill(A: R) -> R:
    """Any square in an empty type: eliminate its upper-left corner."""
    return b.lam("lu", lambda lu: b.absurd(_rest_type(A, lu), lu))


def _rest_type(A: R, lu: R) -> R:
    """Statement remaining after the first corner has been bound."""
    return b.pis(
        [("ru", A), ("ld", A), ("rd", A),
         ("l", lambda ru, ld, rd: b.path(A, lu, ld)),
         ("r", lambda ru, ld, rd, l: b.path(A, ru, rd)),
         ("u", lambda ru, ld, rd, l, r: b.path(A, lu, ru)),
         ("d", lambda ru, ld, rd, l, r, u: b.path(A, ld, rd))],
        lambda ru, ld, rd, l, r, u, d: b.pathp("i", lambda i: b.path(A, u @ i, d @ i), l, r))


def emit_sqfill_pi(A: R, B: Callable[[R], R], eB: R) -> R:
    """Pointwise filling: ``eB a`` fills the square of values at ``a``."""
    def body(lu, ru, ld, rd, l, r, u, d):
        def at(p):
            return lambda a: b.plam("k", lambda k: (p @ k)(a))

        return b.plams(("i", "j"), lambda i, j: b.lam("a", lambda a: eB(
            a, lu(a), ru(a), ld(a), rd(a), at(l)(a), at(r)(a), at(u)(a), at(d)(a)).at(i, j)))
    return b.lams(ARGS, body)


def emit_sqfill_sigma(A: R, B: Callable[[R], R], eA: R, eB: R) -> R:
    """Transport-fill-align for dependent pairs.

    The first projections are filled by ``eA``.  The second projections are
    transported into the fibre over each point of that filling along
    coercion lines, filled there by ``eB``, and realigned with the original
    sides by one composition along reverse transport fillers.
    """
    def body(lu, ru, ld, rd, l, r, u, d):
        def side1(p):
            return b.plam("k", lambda k: (p @ k).fst)

        sqa = eA(lu.fst, ru.fst, ld.fst, rd.fst, side1(l), side1(r), side1(u), side1(d))

        def fibre(x, y):
            return B(sqa.at(x, y))

        def cell(i, j):
            def to_here(x, y, v):
                # move v from the fibre over (x, y) to the fibre over (i, j)
                return b.transp("k", lambda k: fibre(b.coe(x, i, k), b.coe(y, j, k)), 0, v)

            def back(x, y, v):
                # reverse filler: from to_here(x, y, v) at k = 0 to v at k = 1
                return lambda k: b.transp(
                    "m", lambda m: fibre(b.coe(x, i, ~k & m), b.coe(y, j, ~k & m)), k, v)

            G = eB(sqa.at(i, j),
                   to_here(0, 0, lu.snd), to_here(1, 0, ru.snd),
                   to_here(0, 1, ld.snd), to_here(1, 1, rd.snd),
                   b.plam("j'", lambda y: to_here(0, y, (l @ y).snd)),
                   b.plam("j'", lambda y: to_here(1, y, (r @ y).snd)),
                   b.plam("i'", lambda x: to_here(x, 0, (u @ x).snd)),
                   b.plam("i'", lambda x: to_here(x, 1, (d @ x).snd)))
            snd = b.hcomp(fibre(i, j), [
                ([(i, 0)], back(0, j, (l @ j).snd)),
                ([(i, 1)], back(1, j, (r @ j).snd)),
                ([(j, 0)], back(i, 0, (u @ i).snd)),
                ([(j, 1)], back(i, 1, (d @ i).snd)),
            ], G.at(i, j))
            return b.pair(sqa.at(i, j), snd)

        return b.plams(("i", "j"), cell)
    return b.lams(ARGS, body)


def prop_path(eA: R, a: R, b_: R, p: R, q: R) -> R:
    """Any two paths ``a = b`` are equal: a degenerate square with reflexive top and bottom."""
    return eA(a, a, b_, b_, p, q, m.refl(a), m.refl(b_))


def emit_sqfill_path(A: R, x: R, y: R, eA: R) -> R:
    """Fill a square of paths by one hcomp from the constant upper-left corner."""
    def body(lu, ru, ld, rd, l, r, u, d):
        def to(target):
            return lambda k: prop_path(eA, x, y, lu, target) @ k

        return b.plams(("i", "j"), lambda i, j: b.hcomp(b.path(A, x, y), [
            ([(i, 0)], to(l @ j)),
            ([(i, 1)], to(r @ j)),
            ([(j, 0)], to(u @ i)),
            ([(j, 1)], to(d @ i)),
        ], lu))
    return b.lams(ARGS, body)


def path_to_pathp(line: Callable[[RI], R], x: R, y: R, p: R) -> R:
    """Turn ``p : transport line x = y`` into a path over ``line`` from ``x`` to ``y``."""
    def filler(i):
        # the transport filler at i, written out to avoid a beta-redex
        return b.transp("j", lambda j: line(i & j), ~i | b.I0, x)

    return b.plam("i", lambda i: b.hcomp(line(i), [
        ([(i, 0)], lambda k: x),
        ([(i, 1)], lambda k: p @ k),
    ], filler(i)))


def uip_from_sqfill(A: R, e: R) -> R:
    """Specialise a filling to a square with reflexive top and bottom."""
    return b.lams(("x", "y", "p", "q"),
                  lambda x, y, p, q: e(x, x, y, y, p, q, m.refl(x), m.refl(y)))


def sqfill_from_uip(A: R, h: R) -> R:
    def body(lu, ru, ld, rd, l, r, u, d):
        def line(i):
            return b.path(A, u @ i, d @ i)

        moved = m.transport(line, l)
        return path_to_pathp(line, l, r, h(ru, rd, moved, r))
    return b.lams(ARGS, body)


def sqfill_statement(A: R) -> R:
    return sqfill_r(A)
