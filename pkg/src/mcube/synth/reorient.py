"""Reorienting square boundaries by the symmetries of the square.

A filling ``F i j`` of a boundary has ``F 0 j = l j``, ``F 1 j = r j``,
``F i 0 = u i`` and ``F i 1 = d i``.  An :class:`Orientation` names a
symmetry ``g`` of the unit square, and the reoriented boundary is the
boundary of ``F . g``.  Sides of the new boundary are read off the old
ones, so no filling is needed to compute it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import builder as b
from ..builder import R, RI


@dataclass(frozen=True)
class SquareBoundary:
    lu: R
    ru: R
    ld: R
    rd: R
    l: R  # lu -> ld
    r: R  # ru -> rd
    u: R  # lu -> ru
    d: R  # ld -> rd

    def args(self) -> list[R]:
        """Arguments of a square-filling proof, in statement order."""
        return [self.lu, self.ru, self.ld, self.rd, self.l, self.r, self.u, self.d]


@dataclass(frozen=True)
class Orientation:
    """``(i, j) |-> (x, y)`` with ``(x, y) = (j, i)`` if ``swap``, then negated per flag."""

    swap: bool = False
    neg_i: bool = False
    neg_j: bool = False

    def coords(self, i, j):
        x, y = (j, i) if self.swap else (i, j)
        return (_neg(x) if self.neg_i else x), (_neg(y) if self.neg_j else y)

    def then(self, other: Orientation) -> Orientation:
        """The orientation whose square is ``F . self . other``."""
        x, y = self.coords(*other.coords(("i", False), ("j", False)))
        return Orientation(x[0] == "j", x[1], y[1])

    def inverse(self) -> Orientation:
        return next(g for g in ALL if self.then(g) == IDENTITY)


def _neg(x):
    if isinstance(x, tuple):
        return (x[0], not x[1])
    if isinstance(x, int):
        return 1 - x
    return ~x


IDENTITY = Orientation()
TRANSPOSE = Orientation(swap=True)
FLIP_I = Orientation(neg_i=True)
FLIP_J = Orientation(neg_j=True)
ORIENTATIONS = {"identity": IDENTITY, "transpose": TRANSPOSE, "flip_i": FLIP_I, "flip_j": FLIP_J}
ALL = tuple(Orientation(*bits) for bits in itertools.product((False, True), repeat=3))


def _point(bd: SquareBoundary, a, c):
    """``F a c`` for a square ``F`` with boundary ``bd``; at least one coordinate is 0 or 1."""
    if isinstance(a, int) and isinstance(c, int):
        return [[bd.lu, bd.ld], [bd.ru, bd.rd]][a][c]
    if isinstance(a, int):
        return (bd.r if a else bd.l) @ c
    return (bd.d if c else bd.u) @ a


def _side(bd: SquareBoundary, g: Orientation, at) -> R:
    """The side of ``F . g`` obtained by fixing one coordinate through ``at``."""
    probe = at(("v", False))
    a, c = g.coords(*probe)
    free = a if isinstance(a, tuple) else c
    fixed_first = isinstance(a, int)
    if not free[1]:
        # the side is an old side traversed forwards; reuse it as is
        k = a if fixed_first else c
        return (bd.r if k else bd.l) if fixed_first else (bd.d if k else bd.u)

    def body(v: RI) -> R:
        a2, c2 = g.coords(*at(v))
        return _point(bd, a2, c2)

    return b.plam("k", body)


def reorient_square(bd: SquareBoundary, g: Orientation | str) -> SquareBoundary:
    """Boundary of ``<i j> F (g (i, j))`` for any filling ``F`` of ``bd``."""
    g = ORIENTATIONS[g] if isinstance(g, str) else g
    corner = lambda i, j: _point(bd, *g.coords(i, j))  # noqa: E731
    return SquareBoundary(
        corner(0, 0), corner(1, 0), corner(0, 1), corner(1, 1),
        _side(bd, g, lambda v: (0, v)), _side(bd, g, lambda v: (1, v)),
        _side(bd, g, lambda v: (v, 0)), _side(bd, g, lambda v: (v, 1)))


def reorient_filling(F: R, g: Orientation | str) -> R:
    """A filling of ``reorient_square(bd, g)`` from a filling ``F`` of ``bd``."""
    g = ORIENTATIONS[g] if isinstance(g, str) else g
    return b.plams(["i", "j"], lambda i, j: F.at(*g.coords(i, j)))


def square_type(A: R, bd: SquareBoundary) -> R:
    """The type of fillings of ``bd`` in ``A``."""
    return b.pathp("i", lambda i: b.path(A, bd.u @ i, bd.d @ i), bd.l, bd.r)
