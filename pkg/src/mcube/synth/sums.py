"""Encode-decode fillings for coproducts.

A line of coproducts is given as a function from an interval point to the
pair ``(L t, R t)`` of summands.  The code family ``Cover`` relates two
points of the coproduct at the ends of such a line: same-side points are
related by a path over the corresponding summand, mixed points by ``Empty``.
For a homogeneous coproduct the code operations are let-bound once as a
:class:`SumCodeBundle`; over a varying type square they are emitted inline,
one instance per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .. import builder as b
from ..builder import R, RI

Line = Callable[[RI], tuple[R, R]]


def total(line: Line, t) -> R:
    left, right = line(b.ri(t))
    return b.sum_(left, right)


def restrict(line: Line, k: RI) -> Line:
    return lambda t: line(k & t)


def const(parts: tuple[R, R]) -> Line:
    return lambda t: parts


def contract(p: R, k: RI) -> R:
    """The part of ``p`` between 0 and ``k``."""
    return b.plam("m", lambda m: p @ (k & m))


class Ops:
    """Code operations; ``Inline`` writes them out, ``BundleOps`` cites let-bound ones."""

    def cover(self, line: Line, x: R, y: R) -> R:
        return b.case(x, lambda _: b.U,
                      lambda a: b.case(y, lambda _: b.U,
                                       lambda a2: b.pathp("t", lambda t: line(t)[0], a, a2),
                                       lambda _: b.Empty),
                      lambda c: b.case(y, lambda _: b.U,
                                       lambda _: b.Empty,
                                       lambda c2: b.pathp("t", lambda t: line(t)[1], c, c2)))

    def refl_code(self, line: Line, x: R) -> R:
        flat = const(line(b.I0))
        return b.case(x, lambda c: self.cover(flat, c, c),
                      lambda a: b.plam("_", lambda _: a),
                      lambda c: b.plam("_", lambda _: c))

    def encode(self, line: Line, x: R, y: R, p: R) -> R:
        return b.transp("k", lambda k: self.cover(restrict(line, k), x, p @ k), 0,
                        self.refl_code(line, x))

    def decode(self, line: Line, x: R, y: R, c: R) -> R:
        def target(x_, y_):
            return b.arrow(self.cover(line, x_, y_),
                           b.pathp("t", lambda t: total(line, t), x_, y_))

        def no(x_, y_):
            return b.lam("c", lambda c_: b.absurd(
                b.pathp("t", lambda t: total(line, t), x_, y_), c_))

        fn = b.case(
            x, lambda x_: target(x_, y),
            lambda a: b.case(
                y, lambda y_: target(b.inl(a), y_),
                lambda a2: b.lam("c", lambda c_: b.plam("t", lambda t: b.inl(c_ @ t))),
                lambda c2: no(b.inl(a), b.inr(c2))),
            lambda a: b.case(
                y, lambda y_: target(b.inr(a), y_),
                lambda a2: no(b.inr(a), b.inl(a2)),
                lambda c2: b.lam("c", lambda c_: b.plam("t", lambda t: b.inr(c_ @ t)))))
        return fn(c)

    def decode_encode(self, line: Line, x: R, y: R, p: R) -> R:
        """Path from ``decode (encode p)`` to ``p``, by path induction on ``p``."""
        def motive(k):
            lk = restrict(line, k)
            q = contract(p, k)
            return b.path(b.pathp("t", lambda t: total(lk, t), x, p @ k),
                          self.decode(lk, x, p @ k, self.encode(lk, x, p @ k, q)), q)

        return b.transp("k", motive, 0, self.base(line, x))

    def base(self, line: Line, x: R) -> R:
        flat = const(line(b.I0))
        left0, right0 = line(b.I0)

        def motive(x_):
            rx = b.plam("_", lambda _: x_)
            return b.path(b.path(total(flat, 0), x_, x_),
                          self.decode(flat, x_, x_, self.encode(flat, x_, x_, rx)), rx)

        def corrected(ty, inj, a):
            # the transport along a constant line is only propositionally refl
            refl = b.plam("_", lambda _: a)
            return b.plams(("k", "t"), lambda k, t: inj(
                b.transp("_", lambda _: b.path(ty, a, a), k, refl) @ t))

        return b.case(x, motive,
                      lambda a: corrected(left0, b.inl, a),
                      lambda c: corrected(right0, b.inr, c))


class Inline(Ops):
    pass


@dataclass
class SumCodeBundle:
    """Staged type and body for each code operation of ``A + B``."""

    cover: tuple[R, R]
    reflCode: tuple[R, R]
    encode: tuple[R, R]
    decode: tuple[R, R]
    decodeEncode: tuple[R, R]

    def items(self):
        return [("Cover", self.cover), ("reflCode", self.reflCode), ("encode", self.encode),
                ("decode", self.decode), ("decodeEncode", self.decodeEncode)]


class BundleOps(Ops):
    """Code operations of a fixed coproduct, cited through let-bound handles."""

    def __init__(self, **handles: R):
        self.h = handles

    def cover(self, line, x, y):
        return self.h["Cover"](x, y) if "Cover" in self.h else super().cover(line, x, y)

    def refl_code(self, line, x):
        return self.h["reflCode"](x) if "reflCode" in self.h else super().refl_code(line, x)

    def encode(self, line, x, y, p):
        return self.h["encode"](x, y, p) if "encode" in self.h else super().encode(line, x, y, p)

    def decode(self, line, x, y, c):
        return self.h["decode"](x, y, c) if "decode" in self.h else super().decode(line, x, y, c)

    def decode_encode(self, line, x, y, p):
        if "decodeEncode" in self.h:
            return self.h["decodeEncode"](x, y, p)
        return super().decode_encode(line, x, y, p)


def sum_code_bundle(A: R, B: R, handles: dict | None = None) -> SumCodeBundle:
    """Definitions of the code operations; later ones cite ``handles`` for earlier ones."""
    ops = BundleOps(**(handles or {}))
    line = const((A, B))
    AB = b.sum_(A, B)
    cover_t = b.arrow(AB, b.arrow(AB, b.U))
    cover = b.lams(("x", "y"), lambda x, y: Ops.cover(ops, line, x, y))
    refl_t = b.pi("c", AB, lambda c: ops.cover(line, c, c))
    refl = b.lam("c", lambda c: Ops.refl_code(ops, line, c))
    enc_t = b.pis([("x", AB), ("y", AB), ("p", lambda x, y: b.path(AB, x, y))],
                  lambda x, y, p: ops.cover(line, x, y))
    enc = b.lams(("x", "y", "p"), lambda x, y, p: Ops.encode(ops, line, x, y, p))
    dec_t = b.pis([("x", AB), ("y", AB), ("c", lambda x, y: ops.cover(line, x, y))],
                  lambda x, y, c: b.path(AB, x, y))
    dec = b.lams(("x", "y", "c"), lambda x, y, c: Ops.decode(ops, line, x, y, c))
    de_t = b.pis([("x", AB), ("y", AB), ("p", lambda x, y: b.path(AB, x, y))],
                 lambda x, y, p: b.path(b.path(AB, x, y),
                                        ops.decode(line, x, y, ops.encode(line, x, y, p)), p))
    de = b.lams(("x", "y", "p"), lambda x, y, p: Ops.decode_encode(ops, line, x, y, p))
    return SumCodeBundle((cover_t, cover), (refl_t, refl), (enc_t, enc), (dec_t, dec), (de_t, de))


def let_bundle(A: R, B: R, body: Callable[[BundleOps], R]) -> R:
    """Let-bind the bundle operations one by one, then continue with ``body``."""
    names = ["Cover", "reflCode", "encode", "decode", "decodeEncode"]

    def go(k: int, handles: dict) -> R:
        if k == len(names):
            return body(BundleOps(**handles))
        bundle = sum_code_bundle(A, B, handles)
        ty, val = dict(bundle.items())[names[k]]
        return b.let(names[k], ty, val, lambda h: go(k + 1, {**handles, names[k]: h}))
    return go(0, {})


# ---------------------------------------------------------------------------
# The filling

SumSquare = Callable[[RI, RI], tuple[R, R]]

_POS = {"lu": (0, 0), "ru": (1, 0), "ld": (0, 1), "rd": (1, 1)}


def _telescope(sq: SumSquare, given: list[R]) -> R:
    """Square statement with the first ``len(given)`` corners fixed."""
    def S(i, j):
        return total(lambda _: sq(b.ri(i), b.ri(j)), 0)

    names = list(_POS)
    rest = names[len(given):]

    def finish(*vals):
        lu, ru, ld, rd = list(given) + list(vals)
        return b.pis(
            [("l", b.pathp("j", lambda j: S(0, j), lu, ld)),
             ("r", lambda l: b.pathp("j", lambda j: S(1, j), ru, rd)),
             ("u", lambda l, r: b.pathp("i", lambda i: S(i, 0), lu, ru)),
             ("d", lambda l, r, u: b.pathp("i", lambda i: S(i, 1), ld, rd))],
            lambda l, r, u, d: b.pathp(
                "i", lambda i: b.pathp("j", lambda j: S(i, j), u @ i, d @ i), l, r))

    return b.pis([(n, S(*_POS[n])) for n in rest], finish)


def emit_sum_fill(sq: SumSquare, ops: Ops, eL: R, eR: R, align: str = "hcomp") -> R:
    """Split all four corners; mixed squares are absurd, uniform ones fill in a summand.

    The filling from the summand is decoded back and realigned with the given
    sides along the ``decode_encode`` paths, by ``hcomp`` or (over a varying
    square) by ``comp`` along the constant line at the current point.
    """
    from .. import macros as m

    def S(i, j):
        return total(lambda _: sq(b.ri(i), b.ri(j)), 0)

    lines = {
        "l": ("lu", "ld", lambda t: sq(b.I0, t)),
        "r": ("ru", "rd", lambda t: sq(b.I1, t)),
        "u": ("lu", "ru", lambda t: sq(t, b.I0)),
        "d": ("ld", "rd", lambda t: sq(t, b.I1)),
    }

    def leaf(corners: dict, tags: dict, payload: dict) -> R:
        def body(l, r, u, d):
            sides = {"l": l, "r": r, "u": u, "d": d}
            result = b.pathp("i", lambda i: b.pathp("j", lambda j: S(i, j), u @ i, d @ i), l, r)
            for s_ in "lrud":
                x, y, line = lines[s_]
                if tags[x] != tags[y]:
                    return b.absurd(result, ops.encode(line, corners[x], corners[y], sides[s_]))
            left = tags["lu"] == "inl"
            inj, ev = (b.inl, eL) if left else (b.inr, eR)
            codes = [ops.encode(lines[s_][2], corners[lines[s_][0]], corners[lines[s_][1]], sides[s_])
                     for s_ in "lrud"]
            G = ev(payload["lu"], payload["ru"], payload["ld"], payload["rd"], *codes)

            def de(s_):
                x, y, line = lines[s_]
                return ops.decode_encode(line, corners[x], corners[y], sides[s_])

            def cell(i, j):
                system = [
                    ([(i, 0)], lambda k: de("l") @ k @ j),
                    ([(i, 1)], lambda k: de("r") @ k @ j),
                    ([(j, 0)], lambda k: de("u") @ k @ i),
                    ([(j, 1)], lambda k: de("d") @ k @ i),
                ]
                base = inj(G.at(i, j))
                if align == "comp":
                    return m.comp(lambda k: S(i, j), system, base)
                return b.hcomp(S(i, j), system, base)

            return b.plams(("i", "j"), cell)
        return b.lams(("l", "r", "u", "d"), body)

    names = list(_POS)

    def tree(k: int, given: list[R], corners: dict, tags: dict, payload: dict) -> R:
        if k == len(names):
            return leaf(corners, tags, payload)
        n = names[k]

        def branch(tag, inj):
            return lambda a: tree(k + 1, given + [inj(a)], {**corners, n: inj(a)},
                                  {**tags, n: tag}, {**payload, n: a})

        return b.lam(n, lambda c: b.case(
            c, lambda c_: _telescope(sq, given + [c_]),
            branch("inl", b.inl), branch("inr", b.inr)))

    return tree(0, [], {}, {}, {})


def emit_sqfill_sum(A: R, B: R, eA: R, eB: R) -> R:
    """Homogeneous coproduct: bundle the code operations, then fill."""
    return let_bundle(A, B, lambda ops: emit_sum_fill(lambda i, j: (A, B), ops, eA, eB, "hcomp"))


def emit_sqpfill_sum(sq: SumSquare, eL: R, eR: R) -> R:
    """Coproduct over a square of types; codes are per-line, alignment is a comp."""
    return emit_sum_fill(sq, Inline(), eL, eR, "comp")
