"""A walk through the interval algebra: normal forms, missing excluded middle,
and why the coercion formula needs its extra disjunct.

Run with ``python3 demos/interval_tour.py``.
"""

from mcube import interval as iv
from mcube.frontend.parser import parse_interval
from mcube.frontend.printer import print_nf


def show(src: str) -> None:
    e, names = parse_interval(src)
    nf = iv.normalize(e, lambda k: iv.nf_var(names[len(names) - 1 - k]))
    print(f"  {src:<28} ~>  {print_nf(nf)}")


print("Normal forms are irredundant joins of meets of literals:")
for src in [r"(i /\ j) \/ i", r"~(i \/ ~j)", r"i /\ (j \/ k)", r"(i /\ ~i) \/ j"]:
    show(src)

print("\nThe interval is a De Morgan algebra, not a Boolean one:")
i = iv.IVar(0)
print("  i \\/ ~i is top?", iv.is_top(i | ~i))
print("  i /\\ ~i is bottom?", iv.nf_equal(i & ~i, iv.IZero()))

print("\nCoercion between two endpoints along k:")
i0, k = iv.IVar(1), iv.IVar(0)
names = lambda v: {1: "i", 0: "k"}[v]  # noqa: E731
for label, f in [("coe", iv.coe), ("naive", iv.coe_naive)]:
    nf = iv.normalize(f(i0, i0, k), lambda v: iv.nf_var(names(v)))
    print(f"  {label:<6} i i k  ~>  {print_nf(nf)}")
probe = iv.eq_probe(i0, i0)
print("  the equality probe at (i, i) is top?", iv.is_top(probe))
