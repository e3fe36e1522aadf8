"""Square fillings over a square of types ``A i j``."""

from __future__ import annotations

from typing import Callable

from .. import builder as b
from .. import macros as m
from ..builder import R, RI
from .homogeneous import ARGS

SquareFn = Callable[[RI, RI], R]
Point = tuple  # (RI, RI)

STANDARD = {"lu": (b.I0, b.I0), "ru": (b.I1, b.I0), "ld": (b.I0, b.I1), "rd": (b.I1, b.I1)}


def coe2(p: Point, q: Point, t) -> Point:
    return (b.coe(p[0], q[0], t), b.coe(p[1], q[1], t))


def emit_spread(A: SquareFn, a: R, i, j, i2, j2) -> R:
    """Move ``a : A i j`` to ``A i2 j2`` along the coercion lines."""
    return b.transp("k", lambda k: A(*coe2((i, j), (i2, j2), k)), 0, a)


def emit_sqpfill_pi(A: SquareFn, B: Callable[[RI, RI, R], R],
                    eB_at: Callable[[R, RI, RI], R]) -> R:
    """Spread the argument over the square, fill pointwise, then align by one comp.

    ``eB_at(a, i, j)`` must fill squares over ``B i' j' (spread a i j i' j')``.
    """
    def body(lu, ru, ld, rd, l, r, u, d):
        def cell(i, j):
            def fn(a):
                def sp(x, y):
                    return emit_spread(A, a, i, j, x, y)

                def w(k):
                    return b.transp("m", lambda _: A(i, j), k, a)

                G = eB_at(a, i, j)(
                    lu(sp(0, 0)), ru(sp(1, 0)), ld(sp(0, 1)), rd(sp(1, 1)),
                    b.plam("j'", lambda y: (l @ y)(sp(0, y))),
                    b.plam("j'", lambda y: (r @ y)(sp(1, y))),
                    b.plam("i'", lambda x: (u @ x)(sp(x, 0))),
                    b.plam("i'", lambda x: (d @ x)(sp(x, 1))))
                return m.comp(lambda k: B(i, j, w(k)), [
                    ([(i, 0)], lambda k: (l @ j)(w(k))),
                    ([(i, 1)], lambda k: (r @ j)(w(k))),
                    ([(j, 0)], lambda k: (u @ i)(w(k))),
                    ([(j, 1)], lambda k: (d @ i)(w(k))),
                ], G.at(i, j))
            return b.lam("a", fn)
        return b.plams(("i", "j"), cell)
    return b.lams(ARGS, body)


def emit_sqpfill_sigma(A: SquareFn, B: Callable[[RI, RI, R], R], eA: R,
                       eB_for: Callable[[R], R]) -> R:
    """Fill first projections, then second projections over that filling; no Kan operation.

    ``eB_for(sqa)`` must fill squares over ``B i j (sqa @ i @ j)``.
    """
    def body(lu, ru, ld, rd, l, r, u, d):
        def proj(p, which):
            return b.plam("k", lambda k: getattr(p @ k, which))

        sqa = eA(lu.fst, ru.fst, ld.fst, rd.fst,
                 proj(l, "fst"), proj(r, "fst"), proj(u, "fst"), proj(d, "fst"))
        G = eB_for(sqa)(lu.snd, ru.snd, ld.snd, rd.snd,
                        proj(l, "snd"), proj(r, "snd"), proj(u, "snd"), proj(d, "snd"))
        return b.plams(("i", "j"), lambda i, j: b.pair(sqa.at(i, j), G.at(i, j)))
    return b.lams(ARGS, body)


def quad_cell(A: SquareFn, eA: R, pos: dict, corners: dict, sides: dict):
    """Filling of a quadrilateral with corners at arbitrary points of the square.

    ``pos`` maps each corner name to its position; sides run along coercion
    lines between those positions.  Returns the filling as a function of the
    two coordinates; its type at ``(k, m)`` is ``A`` at
    ``coe2(coe2(lu, ru, k), coe2(ld, rd, k), m)``.
    """
    def move(p, q, w):
        return b.transp("t", lambda t: A(*coe2(p, q, t)), 0, w)

    def back(p, q, w):
        # from move(p, q, w) at t = 0 to w at t = 1
        return lambda t: b.transp("s", lambda s_: A(*coe2(p, q, ~t & s_)), t, w)

    side_lines = {
        "l": (lambda t: coe2(pos["lu"], pos["ld"], t), lambda t: (b.I0, t)),
        "r": (lambda t: coe2(pos["ru"], pos["rd"], t), lambda t: (b.I1, t)),
        "u": (lambda t: coe2(pos["lu"], pos["ru"], t), lambda t: (t, b.I0)),
        "d": (lambda t: coe2(pos["ld"], pos["rd"], t), lambda t: (t, b.I1)),
    }

    def moved_side(name):
        src, dst = side_lines[name]
        return b.plam("t", lambda t: move(src(t), dst(t), sides[name] @ t))

    std = [move(pos[c], STANDARD[c], corners[c]) for c in ("lu", "ru", "ld", "rd")]
    G = eA(*std, *(moved_side(s_) for s_ in "lrud"))

    def cell(k, mm):
        target = coe2(coe2(pos["lu"], pos["ru"], k), coe2(pos["ld"], pos["rd"], k), mm)

        def side(name, t):
            src, dst = side_lines[name]
            return back(src(t), dst(t), sides[name] @ t)

        return m.comp(lambda t: A(b.coe(k, target[0], t), b.coe(mm, target[1], t)), [
            ([(k, 0)], side("l", mm)),
            ([(k, 1)], side("r", mm)),
            ([(mm, 0)], side("u", k)),
            ([(mm, 1)], side("d", k)),
        ], G.at(k, mm))
    return cell


def emit_quad_fill(A: SquareFn, eA: R, pos: dict, corners: dict, sides: dict) -> R:
    cell = quad_cell(A, eA, pos, corners, sides)
    return b.plams(("k", "m"), cell)


def emit_sqpfill_path(A: SquareFn, x: SquareFn, y: SquareFn, eA: R) -> R:
    """Square of path types: compose from the upper-left corner with quadrilateral side faces."""
    def S(i, j):
        return b.path(A(i, j), x(i, j), y(i, j))

    def body(lu, ru, ld, rd, l, r, u, d):
        def diagonal(p, q, v):
            # path over k -> S(k /\ p, k /\ q) from lu to v
            cell = quad_cell(
                A, eA,
                {"lu": (b.I0, b.I0), "ld": (b.I0, b.I0), "ru": (p, q), "rd": (p, q)},
                {"lu": x(b.I0, b.I0), "ld": y(b.I0, b.I0), "ru": x(p, q), "rd": y(p, q)},
                {"l": lu, "r": v,
                 "u": b.plam("k", lambda k: x(k & p, k & q)),
                 "d": b.plam("k", lambda k: y(k & p, k & q))})
            return lambda k: b.plam("m", lambda mm: cell(k, mm))

        def cell(i, j):
            return m.comp(lambda k: S(k & i, k & j), [
                ([(i, 0)], diagonal(b.I0, j, l @ j)),
                ([(i, 1)], diagonal(b.I1, j, r @ j)),
                ([(j, 0)], diagonal(i, b.I0, u @ i)),
                ([(j, 1)], diagonal(i, b.I1, d @ i)),
            ], lu)
        return b.plams(("i", "j"), cell)
    return b.lams(ARGS, body)
