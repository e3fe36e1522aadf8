"""Interval expressions and their canonical form in the free De Morgan algebra.

The free De Morgan algebra on a set of variables is the free bounded
distributive lattice on the variables and their formal negations.  An
element is therefore represented by an antichain of clauses, each clause
being a meet of literals.  Excluded middle (``i \\/ ~i = 1``) and absurdity
(``i /\\ ~i = 0``) are *not* laws, so a clause may hold both polarities of a
variable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping


class ScopeError(Exception):
    """An interval variable has no binding or assignment."""


# ---------------------------------------------------------------------------
# Syntax


class IntervalExpr:
    """Base class for interval expressions; variables are de Bruijn indices."""

    __slots__ = ()

    def __and__(self, other: IntervalExpr) -> IntervalExpr:
        return IMeet(self, other)

    def __or__(self, other: IntervalExpr) -> IntervalExpr:
        return IJoin(self, other)

    def __invert__(self) -> IntervalExpr:
        return INeg(self)


@dataclass(frozen=True)
class IZero(IntervalExpr):
    def __repr__(self):
        return "0"


@dataclass(frozen=True)
class IOne(IntervalExpr):
    def __repr__(self):
        return "1"


@dataclass(frozen=True)
class IVar(IntervalExpr):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ScopeError(f"negative interval index {self.index}")

    def __repr__(self):
        return f"#{self.index}"


@dataclass(frozen=True)
class IMeet(IntervalExpr):
    left: IntervalExpr
    right: IntervalExpr

    def __repr__(self):
        return f"({self.left!r} /\\ {self.right!r})"


@dataclass(frozen=True)
class IJoin(IntervalExpr):
    left: IntervalExpr
    right: IntervalExpr

    def __repr__(self):
        return f"({self.left!r} \\/ {self.right!r})"


@dataclass(frozen=True)
class INeg(IntervalExpr):
    inner: IntervalExpr

    def __repr__(self):
        return f"~{self.inner!r}"


ZERO = IZero()
ONE = IOne()


def meet_all(es: Iterable[IntervalExpr]) -> IntervalExpr:
    out: IntervalExpr | None = None
    for e in es:
        out = e if out is None else IMeet(out, e)
    return ONE if out is None else out


def join_all(es: Iterable[IntervalExpr]) -> IntervalExpr:
    out: IntervalExpr | None = None
    for e in es:
        out = e if out is None else IJoin(out, e)
    return ZERO if out is None else out


def free_vars(e: IntervalExpr) -> set[int]:
    match e:
        case IVar(k):
            return {k}
        case IMeet(a, b) | IJoin(a, b):
            return free_vars(a) | free_vars(b)
        case INeg(a):
            return free_vars(a)
    return set()


def isubst(e: IntervalExpr, target: int, replacement: IntervalExpr) -> IntervalExpr:
    """Replace every occurrence of variable ``target`` by ``replacement``."""
    match e:
        case IVar(k):
            return replacement if k == target else e
        case IMeet(a, b):
            return IMeet(isubst(a, target, replacement), isubst(b, target, replacement))
        case IJoin(a, b):
            return IJoin(isubst(a, target, replacement), isubst(b, target, replacement))
        case INeg(a):
            return INeg(isubst(a, target, replacement))
    return e


def map_vars(e: IntervalExpr, f: Callable[[int], IntervalExpr]) -> IntervalExpr:
    match e:
        case IVar(k):
            return f(k)
        case IMeet(a, b):
            return IMeet(map_vars(a, f), map_vars(b, f))
        case IJoin(a, b):
            return IJoin(map_vars(a, f), map_vars(b, f))
        case INeg(a):
            return INeg(map_vars(a, f))
    return e


def shift(e: IntervalExpr, by: int, cutoff: int = 0) -> IntervalExpr:
    if by == 0:
        return e
    return map_vars(e, lambda k: IVar(k + by) if k >= cutoff else IVar(k))


# ---------------------------------------------------------------------------
# Normal forms

Literal = tuple  # (variable, negated: bool)
Clause = tuple  # sorted tuple of literals


def _key(x):
    # variables may be ints or other hashables; keep a total order
    return (type(x).__name__, x)


def _lit_key(lit):
    return (_key(lit[0]), lit[1])


def _clause_key(c):
    return (len(c), [_lit_key(l) for l in c])


@dataclass(frozen=True)
class IntervalNF:
    """Irredundant DNF over De Morgan literals, stored in canonical order.

    ``clauses == ()`` is 0 and ``clauses == ((),)`` is 1.
    """

    clauses: tuple

    @staticmethod
    def of(clauses: Iterable[Iterable[Literal]]) -> IntervalNF:
        sets = {frozenset(c) for c in clauses}
        # absorption: drop any clause that is a strict superset of another
        kept = [c for c in sets if not any(o < c for o in sets)]
        ordered = sorted(
            (tuple(sorted(c, key=_lit_key)) for c in kept), key=_clause_key
        )
        return IntervalNF(tuple(ordered))

    @property
    def is_zero(self) -> bool:
        return self.clauses == ()

    @property
    def is_one(self) -> bool:
        return self.clauses == ((),)

    def variables(self) -> set:
        return {v for c in self.clauses for (v, _) in c}

    def constant(self) -> int | None:
        if self.is_zero:
            return 0
        if self.is_one:
            return 1
        return None

    def __or__(self, other: IntervalNF) -> IntervalNF:
        return IntervalNF.of(self.clauses + other.clauses)

    def __and__(self, other: IntervalNF) -> IntervalNF:
        return IntervalNF.of(
            set(a) | set(b) for a in self.clauses for b in other.clauses
        )

    def __invert__(self) -> IntervalNF:
        # ~(\/_c /\_l l) = /\_c \/_l ~l, redistributed into DNF
        if not self.clauses:
            return NF_ONE
        negated = [[(v, not n) for (v, n) in c] for c in self.clauses]
        return IntervalNF.of(set(choice) for choice in itertools.product(*negated))

    def subst(self, mapping: Mapping[Hashable, IntervalNF]) -> IntervalNF:
        """Simultaneous substitution of variables by normal forms."""
        if not mapping or not (self.variables() & mapping.keys()):
            return self
        out = NF_ZERO
        for c in self.clauses:
            acc = NF_ONE
            for v, neg in c:
                if v in mapping:
                    lit = mapping[v]
                    lit = ~lit if neg else lit
                else:
                    lit = IntervalNF((((v, neg),),))
                acc = acc & lit
            out = out | acc
        return out

    def consistent_clauses(self) -> list[dict]:
        """Clauses read as face constraints ``{var: 0|1}``.

        A clause holding both polarities of a variable describes no point of
        the cube and is skipped.
        """
        out = []
        for c in self.clauses:
            face: dict = {}
            ok = True
            for v, neg in c:
                bit = 0 if neg else 1
                if face.get(v, bit) != bit:
                    ok = False
                    break
                face[v] = bit
            if ok:
                out.append(face)
        return out

    def __repr__(self):
        if self.is_zero:
            return "0"
        if self.is_one:
            return "1"
        parts = []
        for c in self.clauses:
            parts.append(" /\\ ".join(("~" if n else "") + str(v) for v, n in c))
        return " \\/ ".join(f"({p})" if len(c) > 1 and len(self.clauses) > 1 else p
                            for p, c in zip(parts, self.clauses))


NF_ZERO = IntervalNF(())
NF_ONE = IntervalNF(((),))


def nf_var(v: Hashable, negated: bool = False) -> IntervalNF:
    return IntervalNF((((v, negated),),))


def nf_const(bit: int) -> IntervalNF:
    return NF_ONE if bit else NF_ZERO


def normalize(e: IntervalExpr, env: Callable[[int], IntervalNF] | None = None) -> IntervalNF:
    """Canonical form of ``e``; ``env`` optionally interprets variables."""
    match e:
        case IZero():
            return NF_ZERO
        case IOne():
            return NF_ONE
        case IVar(k):
            return env(k) if env is not None else nf_var(k)
        case IMeet(a, b):
            return normalize(a, env) & normalize(b, env)
        case IJoin(a, b):
            return normalize(a, env) | normalize(b, env)
        case INeg(a):
            return ~normalize(a, env)
    raise TypeError(f"not an interval expression: {e!r}")


def to_expr(nf: IntervalNF, var: Callable[[Hashable], IntervalExpr] = IVar) -> IntervalExpr:
    """Read a normal form back as a join of meets."""
    def lit(v, neg):
        x = var(v)
        return INeg(x) if neg else x

    return join_all(meet_all(lit(v, n) for v, n in c) for c in nf.clauses)


def nf_equal(x: IntervalExpr, y: IntervalExpr) -> bool:
    return normalize(x) == normalize(y)


def is_top(e: IntervalExpr | IntervalNF) -> bool:
    nf = e if isinstance(e, IntervalNF) else normalize(e)
    return nf.is_one


# ---------------------------------------------------------------------------
# Named formulas


def coe(i0: IntervalExpr, i1: IntervalExpr, k: IntervalExpr) -> IntervalExpr:
    """Coercion from ``i0`` to ``i1`` along ``k``; constant when ``i0 == i1``."""
    return ((~k | i1) & i0) | ((k | i0) & i1)


def coe_naive(i0: IntervalExpr, i1: IntervalExpr, k: IntervalExpr) -> IntervalExpr:
    """If-then-else coercion; lacks the eta law in a De Morgan algebra."""
    return (~k & i0) | (k & i1)


def eq_probe(i: IntervalExpr, j: IntervalExpr) -> IntervalExpr:
    """Boolean equality test; ``eq_probe(i, i)`` is ``i \\/ ~i``, not 1."""
    return (i & j) | (~i & ~j)


# ---------------------------------------------------------------------------
# Four-element De Morgan algebra (independent oracle)

DM4 = ("bot", "a", "b", "top")
_ENC = {"bot": (0, 0), "a": (1, 0), "b": (0, 1), "top": (1, 1)}
_DEC = {v: k for k, v in _ENC.items()}


def eval_dm4(e: IntervalExpr, rho: Mapping[int, str]) -> str:
    """Evaluate in {bot, a, b, top} where ~a = a, ~b = b and a /\\ b = bot."""

    def go(e):
        match e:
            case IZero():
                return (0, 0)
            case IOne():
                return (1, 1)
            case IVar(k):
                if k not in rho:
                    raise ScopeError(f"no assignment for interval variable {k}")
                return _ENC[rho[k]]
            case IMeet(a, b):
                x, y = go(a), go(b)
                return (x[0] & y[0], x[1] & y[1])
            case IJoin(a, b):
                x, y = go(a), go(b)
                return (x[0] | y[0], x[1] | y[1])
            case INeg(a):
                x = go(a)
                return (1 - x[1], 1 - x[0])
        raise TypeError(f"not an interval expression: {e!r}")

    return _DEC[go(e)]


def dm4_assignments(variables: Iterable[int]):
    vs = sorted(variables)
    for values in itertools.product(DM4, repeat=len(vs)):
        yield dict(zip(vs, values))


def dm4_equal(x: IntervalExpr, y: IntervalExpr) -> bool:
    vs = free_vars(x) | free_vars(y)
    return all(eval_dm4(x, r) == eval_dm4(y, r) for r in dm4_assignments(vs))
