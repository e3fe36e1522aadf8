import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture
from mcube import interval as iv
from mcube import syntax as s
from mcube.frontend.cli import cli_main
from mcube.frontend.driver import Session, prelude_files
from mcube.frontend.lexer import ParseError, tokenize
from mcube.frontend.parser import parse_interval, parse_module, parse_square, parse_term
from mcube.frontend.printer import print_interval, print_module, print_nf, print_term


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


# -- lexer ------------------------------------------------------------------

def test_tokens_and_comments():
    toks = tokenize("def x' := p.1 -- trailing\n  @ ~i")
    assert [t.text for t in toks if t.kind != "eof"] == ["def", "x'", ":=", "p", ".1", "@", "~", "i"]
    assert (toks[-2].line, toks[-2].col) == (2, 6)


def test_bad_character():
    with pytest.raises(ParseError) as info:
        tokenize("def x := $")
    assert info.value.diagnostic.span.col == 10


# -- parser -----------------------------------------------------------------

def test_arrows_and_products_associate_right():
    assert parse_term("Bool -> Bool -> Bool") == \
        s.arrow(s.BoolT(), s.arrow(s.BoolT(), s.BoolT()))
    assert parse_term("Bool * Unit * Bool") == \
        s.product(s.BoolT(), s.product(s.UnitT(), s.BoolT()))
    assert parse_term("Bool + Unit -> Bool") == \
        s.arrow(s.Sum(s.BoolT(), s.UnitT()), s.BoolT())


def test_telescopes_bind_in_order():
    t = parse_term("(x y : Bool) -> Path Bool x y")
    assert t == s.Pi(s.BoolT(), s.Pi(s.BoolT(), s.path(s.BoolT(), s.Var(1), s.Var(0))))


def test_path_application_binds_looser_than_application():
    t = parse_term(r"\f p. f p @ i", inames=["i"])
    assert t == s.Lam(s.Lam(s.PApp(s.App(s.Var(1), s.Var(0)), iv.IVar(0))))


def test_interval_precedence():
    e, names = parse_interval(r"i \/ j /\ ~k")
    assert names == ["i", "j", "k"]
    assert e == iv.IJoin(iv.IVar(2), iv.IMeet(iv.IVar(1), iv.INeg(iv.IVar(0))))


def test_faces_and_systems():
    t = parse_term(r"<i j> hcomp Bool [(i=0 /\ j=1) -> \k. true, (1) -> \k. true] true")
    sys = t.body.body.system
    assert sys[0].face == ((0, 1), (1, 0))
    assert sys[1].face == ()


def test_macros_expand_to_core_terms():
    t = parse_term(r"\A a. transport (\i. A) a", names=[])
    assert s.kan_count(t) == (0, 1)
    sq = parse_term("SqFill Bool")
    assert isinstance(sq, s.Pi)


def test_square_literal():
    sq = parse_square(r"\i j. Path Bool true true")
    assert (sq.iname, sq.jname) == ("i", "j")


def test_parse_errors_point_at_the_problem():
    with pytest.raises(ParseError) as info:
        parse_module("def bad := ", "x.mct")
    d = info.value.diagnostic
    assert "end of input" in d.message
    assert (d.span.line, d.span.col) == (1, 12)
    with pytest.raises(ParseError) as info:
        parse_term("(true, ")
    assert "end of input" in info.value.diagnostic.message


def test_unbound_names():
    with pytest.raises(ParseError):
        parse_term("x")
    with pytest.raises(ParseError):
        parse_term("<i> true @ j")


# -- printer ----------------------------------------------------------------

@st.composite
def scoped_terms(draw, nt=0, ni=0, depth=4):
    """Well-scoped terms over ``nt`` term and ``ni`` interval variables."""
    leaves = [s.BoolT(), s.BTrue(), s.BFalse(), s.UnitT(), s.Tt(), s.U(), s.EmptyT()]
    leaves += [s.Var(k) for k in range(nt)]
    if depth == 0:
        return draw(st.sampled_from(leaves))
    kind = draw(st.integers(0, 14))
    sub = lambda dt=0, di=0: draw(scoped_terms(nt + dt, ni + di, depth - 1))  # noqa: E731
    name = draw(st.sampled_from(["x", "y", "_", "if", "x1", "lu"]))

    def ival(extra=0):
        n = ni + extra
        atoms = [iv.IZero(), iv.IOne()] + [iv.IVar(k) for k in range(n)]
        a, b = draw(st.sampled_from(atoms)), draw(st.sampled_from(atoms))
        return draw(st.sampled_from([a, iv.INeg(a), iv.IMeet(a, b), iv.IJoin(a, iv.INeg(b))]))

    match kind:
        case 0:
            return draw(st.sampled_from(leaves))
        case 1:
            return s.Lam(sub(1), name)
        case 2:
            return s.App(sub(), sub())
        case 3:
            return s.Pi(sub(), sub(1), name)
        case 4:
            return s.Sigma(sub(), sub(1), name)
        case 5:
            return s.Pair(sub(), sub())
        case 6:
            return draw(st.sampled_from([s.Fst, s.Snd]))(sub())
        case 7:
            return s.Sum(sub(), sub())
        case 8:
            return s.Case(sub(), sub(1), sub(1), sub(1), name, "a", "b")
        case 9:
            return s.If(sub(1), sub(), sub(), sub(), name)
        case 10:
            return s.PathP(sub(0, 1), sub(), sub(), "i")
        case 11:
            return s.PApp(sub(), ival())
        case 12:
            return s.PLam(sub(0, 1), draw(st.sampled_from(["i", "_", "j"])))
        case 13:
            return s.Transp(sub(0, 1), ival(), sub(), "i")
        case _:
            faces = [()] + [((k, b),) for k in range(ni) for b in (0, 1)]
            face = draw(st.sampled_from(faces))
            return s.HComp(sub(), (s.Branch(face, sub(0, 1), "k"),), sub())


@settings(max_examples=300, deadline=None)
@given(scoped_terms())
def test_print_then_parse_is_identity(t):
    assert parse_term(print_term(t)) == t


@settings(max_examples=100, deadline=None)
@given(scoped_terms(nt=2, ni=1))
def test_round_trip_with_free_names(t):
    text = print_term(t, ["x", "y"], ["i"])
    assert parse_term(text, names=["x", "y"], inames=["i"]) == t


def test_printer_renames_to_avoid_capture():
    # \x. \x1. x with hint "x" on both binders must not print as \x x. x
    t = s.Lam(s.Lam(s.Var(1), "x"), "x")
    text = print_term(t)
    assert parse_term(text) == t
    assert text == r"\x x1. x"


def test_printer_avoids_global_names():
    t = s.Lam(s.App(s.Ref("x"), s.Var(0)), "x")
    assert parse_term(print_term(t), known={"x"}) == t


def test_nf_printing():
    nf = iv.normalize(iv.IJoin(iv.IMeet(iv.IVar(0), iv.IVar(1)), iv.INeg(iv.IVar(0))))
    # no excluded middle, so i /\ j is not absorbed into ~i \/ j
    assert print_nf(nf, lambda v: "ij"[v]) == r"~i \/ i /\ j"
    assert print_interval(iv.IMeet(iv.IVar(0), iv.IJoin(iv.IVar(1), iv.IZero())),
                          ["a", "b"]) == r"b /\ (a \/ 0)"


def test_module_round_trip():
    text = fixture("lib.mct").read_text()
    decls = parse_module(text, "lib.mct", set()).declarations
    again = parse_module(print_module(decls), "again.mct", set()).declarations
    assert [(d.name, d.type, d.body) for d in again] == [(d.name, d.type, d.body) for d in decls]


# -- command line -----------------------------------------------------------

def test_check_exit_codes():
    assert run("check", str(fixture("ok.mct"))) == (0, "", "")
    code, out, err = run("check", str(fixture("type_error.mct")))
    assert code == 1 and "type_error.mct:5:13: error: path endpoint mismatch" in err
    code, _, err = run("check", str(fixture("syntax_error.mct")))
    assert code == 1 and "syntax error" in err
    assert run("check", "does/not/exist.mct")[0] == 2
    assert run()[0] == 2
    assert run("derive", str(fixture("lib.mct")))[0] == 2


def test_help_goes_to_stdout():
    code, out, err = run("--help")
    assert code == 0 and "nf-interval" in out and err == ""
    code, out, _ = run("derive", "-h")
    assert code == 0 and "--count-kan" in out


def test_check_is_independent_per_file():
    # both files define ``and``; each is checked on its own
    assert run("check", str(fixture("ok.mct")), str(fixture("ok.mct")))[0] == 0


def test_json_diagnostics():
    code, out, err = run("--json", "check", str(fixture("type_error.mct")))
    assert code == 1
    obj = json.loads(err.strip())
    assert obj["severity"] == "error" and obj["span"]["line"] == 5


def test_eval():
    code, out, _ = run("eval", str(fixture("lib.mct")), "-e", "notnot false @ 0")
    assert (code, out.strip()) == (0, "false")
    code, out, _ = run("--json", "eval", str(fixture("lib.mct")), "-e", "h")
    obj = json.loads(out)
    assert obj["type"] == r"Path (Bool -> Bool) (\x. x) (\x. x)"
    assert obj["result"].startswith("<i> \\x. hcomp Bool")


def test_nf_interval():
    assert run("nf-interval", r"(i /\ j) \/ (i /\ ~j) \/ i")[1].strip() == "i"
    assert run("nf-interval", r"~(i /\ ~j) \/ k")[1].strip() == r"~i \/ j \/ k"
    code, _, err = run("nf-interval", r"i /\ ")
    assert code == 1 and "interval" in err


def test_derive_counts_and_emits(tmp_path):
    out_file = tmp_path / "fill.mct"
    code, out, err = run("derive", "--sqfill", "(Bool -> Unit)", str(fixture("lib.mct")),
                         "--count-kan", "--emit", str(out_file))
    assert code == 0, err
    assert out.splitlines()[-1] == "hcomp=0 transp=0"
    assert run("check", str(out_file))[0] == 0
    assert "def fill :" in out_file.read_text()


def test_derive_emit_includes_file_dependencies(tmp_path):
    out_file = tmp_path / "dep.mct"
    square = r"\i j. (x : Bool) -> Path Bool ((h @ i) x) ((h @ j) x)"
    code, _, err = run("derive", "--sqpfill", square, str(fixture("lib.mct")),
                       "--emit", str(out_file), "--name", "pf")
    assert code == 0, err
    text = out_file.read_text()
    assert "def h :" in text and "def pf :" in text
    assert run("check", str(out_file))[0] == 0


def test_derive_json_and_failures():
    code, out, _ = run("--json", "derive", "--sqfill", "Bool * Bool", str(fixture("lib.mct")),
                       "--count-kan")
    obj = json.loads(out)
    assert (code, obj["hcomp"], obj["transp"]) == (0, 1, 12)
    code, _, err = run("derive", "--sqfill", "U", str(fixture("lib.mct")))
    assert code == 1 and "error" in err


def test_no_prelude_hides_bool_evidence():
    code, _, err = run("--no-prelude", "derive", "--sqfill", "Bool", str(fixture("ok.mct")))
    assert code == 1 and "cannot derive SqFill for Bool" in err
    # the flag is honoured after the subcommand too
    assert run("derive", "--no-prelude", "--sqfill", "Bool", str(fixture("ok.mct")))[0] == 1
    assert run("derive", "--sqfill", "Bool", str(fixture("ok.mct")))[1].strip() == "sqfillBool"
    assert run("--no-prelude", "check", str(fixture("ok.mct")))[0] == 0


def test_flags_before_or_after_the_subcommand():
    before = run("--json", "nf-interval", r"i /\ i")
    after = run("nf-interval", "--json", r"i /\ i")
    assert before == after and json.loads(before[1])["result"] == "i"


def test_prelude_modules_check():
    # each prelude file loads on top of the earlier ones, so check them as one module
    text = "\n".join(f.read_text() for f in prelude_files())
    Session(prelude=False).load(text, "<prelude>")
