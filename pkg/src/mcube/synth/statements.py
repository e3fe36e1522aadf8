"""Square-filling statements as object-language types."""

from __future__ import annotations

from typing import Callable

from .. import builder as b
from .. import syntax as s
from ..builder import R, RI

SquareFn = Callable[[RI, RI], R]


def sqfill_r(A: R) -> R:
    """Every hollow square in ``A`` (four corners, four sides) has a filling."""
    return b.pis(
        [("lu", A), ("ru", A), ("ld", A), ("rd", A),
         ("l", lambda lu, ru, ld, rd: b.path(A, lu, ld)),
         ("r", lambda lu, ru, ld, rd, l: b.path(A, ru, rd)),
         ("u", lambda lu, ru, ld, rd, l, r: b.path(A, lu, ru)),
         ("d", lambda lu, ru, ld, rd, l, r, u: b.path(A, ld, rd))],
        lambda lu, ru, ld, rd, l, r, u, d: b.pathp(
            "i", lambda i: b.path(A, u @ i, d @ i), l, r))


def sqpfill_r(A: SquareFn) -> R:
    """Heterogeneous version over a square of types ``A i j``."""
    return b.pis(
        [("lu", A(b.I0, b.I0)), ("ru", A(b.I1, b.I0)),
         ("ld", A(b.I0, b.I1)), ("rd", A(b.I1, b.I1)),
         ("l", lambda lu, ru, ld, rd: b.pathp("j", lambda j: A(b.I0, j), lu, ld)),
         ("r", lambda lu, ru, ld, rd, l: b.pathp("j", lambda j: A(b.I1, j), ru, rd)),
         ("u", lambda lu, ru, ld, rd, l, r: b.pathp("i", lambda i: A(i, b.I0), lu, ru)),
         ("d", lambda lu, ru, ld, rd, l, r, u: b.pathp("i", lambda i: A(i, b.I1), ld, rd))],
        lambda lu, ru, ld, rd, l, r, u, d: b.pathp(
            "i", lambda i: b.pathp("j", lambda j: A(i, j), u @ i, d @ i), l, r))


def isset_r(A: R) -> R:
    return b.pis(
        [("x", A), ("y", A),
         ("p", lambda x, y: b.path(A, x, y)), ("q", lambda x, y, p: b.path(A, x, y))],
        lambda x, y, p, q: b.path(b.path(A, x, y), p, q))


def square_fn(sc: b.Scope, body: s.Term) -> SquareFn:
    """A type-square body (``j`` innermost) as a function of its two coordinates."""
    return lambda i, j: sc.inst(body, ivals=[i, j])


def sqfill_type(A: s.Term, gt: int = 0, gi: int = 0) -> s.Term:
    sc = b.Scope(gt, gi)
    return sc.close(sqfill_r(sc.embed(A)))


def sqpfill_type(sq: s.TypeSquare, gt: int = 0, gi: int = 0) -> s.Term:
    sc = b.Scope(gt, gi)
    return sc.close(sqpfill_r(square_fn(sc, sq.body)))


def isset_type(A: s.Term, gt: int = 0, gi: int = 0) -> s.Term:
    sc = b.Scope(gt, gi)
    return sc.close(isset_r(sc.embed(A)))
