"""Closed booleans computed through synthesized fillings still reduce to
``true`` or ``false``: the Kan operations never leave a stuck term behind.

Run with ``python3 demos/canonicity.py``.
"""

from mcube import syntax as s
from mcube.frontend.driver import Session
from mcube.frontend.parser import parse_term
from mcube.frontend.printer import print_term
from mcube.synth.derive import derive_sqfill

sess = Session()
sess.load(r"""
def h : Path (Bool -> Bool) (\x. x) (\x. x) :=
  <i> \x. hcomp Bool [(i=0) -> \k. x, (i=1) -> \k. x] x
""", "<lib>")
chk = sess.checker

for name, src in [("fillPair", "Bool * Bool"), ("fillFn", "Bool -> Bool"),
                  ("fillSum", "Bool + Unit")]:
    d = derive_sqfill(chk, parse_term(src, sess.known), name)
    for aux in d.defs:
        chk.check_definition(aux)
    chk.check_definition(s.Definition(name, d.statement, d.term))
    sess.known.add(name)
    sess.known.update(aux.name for aux in d.defs)

B2 = "(true, false)"
P2 = f"(<_> {B2})"
programs = [
    f"(fillPair {B2} {B2} {B2} {B2} {P2} {P2} {P2} {P2} @ 0 @ 1).2",
    r"(fillFn (\x. x) (\x. x) (\x. x) (\x. x) h h h h @ 0 @ 1) false",
    r"case (fillSum (inl true) (inl true) (inl true) (inl true)"
    r" (<_> inl true) (<_> inl true) (<_> inl true) (<_> inl true) @ 1 @ 1)"
    r" (\_. Bool) (\b. b) (\_. false)",
]
for src in programs:
    t = parse_term(src, sess.known)
    ctx = chk.context()
    ty = chk.infer(ctx, t)
    print(f"{print_term(ctx.quote(ctx.eval(t), ty)):<6} <- {src[:70]}")
