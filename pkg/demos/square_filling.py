"""Synthesize square fillings for a few types, count the Kan operations in
each, then write one out as a module and check it again from text.

Run with ``python3 demos/square_filling.py``.
"""

import tempfile
from pathlib import Path

from mcube import syntax as s
from mcube.frontend.driver import Session
from mcube.frontend.parser import parse_square, parse_term
from mcube.frontend.printer import print_module, print_term
from mcube.synth.derive import DeriveError, derive_sqfill, derive_sqpfill

LIB = r"""
def h : Path (Bool -> Bool) (\x. x) (\x. x) :=
  <i> \x. hcomp Bool [(i=0) -> \k. x, (i=1) -> \k. x] x
"""

sess = Session()
sess.load(LIB, "<lib>")
chk = sess.checker

print("Homogeneous fillings (hcomp, transp):")
for src in ["Unit", "Bool", "Bool -> Bool", "Bool * Unit", "Bool + Unit",
            "Path Bool true true", r"(b : Bool) -> if (\_. U) b Unit Bool"]:
    d = derive_sqfill(chk, parse_term(src, sess.known))
    total = [s.kan_count(d.term)] + [s.kan_count(x.body) for x in d.defs]
    print(f"  {src:<40} {tuple(map(sum, zip(*total)))}")

print("\nA square of types that varies in both directions:")
sq = parse_square(r"\i j. (x : Bool) -> Path Bool ((h @ i) x) ((h @ j) x)", sess.known)
d = derive_sqpfill(chk, sq, "fillH")
print("  kan operations:", s.kan_count(d.term))

print("\nSome types have no filling this way:")
for src in ["U", r"(p : Path U Bool Bool) -> PathP (\k. p @ k) true true"]:
    try:
        derive_sqfill(chk, parse_term(src, sess.known))
    except DeriveError as e:
        print(f"  {src}: {e.message}")

print("\nRound trip through text:")
decls = sess.dependencies(s.refs(d.term) | s.refs(d.statement)) + [s.Definition("fillH", d.statement, d.term)]
text = print_module(decls)
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "fillH.mct"
    out.write_text(text)
    Session().load_file(str(out))
print(f"  {len(text.splitlines())} lines written and checked again")
print("  statement:", print_term(d.statement)[:72], "...")
