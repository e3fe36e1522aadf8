"""Command-line driver: ``mcube check | eval | derive | nf-interval``.

Exit codes: 0 on success, 1 on a parse, type or synthesis error, 2 on a
usage error (bad arguments or unreadable files).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from .. import interval as iv
from .. import syntax as s
from ..synth.derive import DeriveError, derive_sqfill, derive_sqpfill
from ..typechecker import CheckError, Diagnostic
from .driver import Session
from .parser import parse_interval, parse_square, parse_term
from .printer import print_module, print_nf, print_term

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        # subcommands repeat the flags with suppressed defaults so they do not
        # overwrite a value given before the subcommand
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", default=default,
                            help="print diagnostics and results as one JSON object per line")
        common.add_argument("--no-prelude", action="store_true", default=default,
                            help="do not load the shipped prelude")
        return common

    p = _ArgParser(prog="mcube", description="cubical kernel with square-filling synthesis",
                   parents=[flags(False)])
    common = flags(argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    c = sub.add_parser("check", parents=[common], help="typecheck modules")
    c.add_argument("files", nargs="+", metavar="FILE")

    e = sub.add_parser("eval", parents=[common], help="evaluate an expression in a module's scope")
    e.add_argument("file", metavar="FILE")
    e.add_argument("-e", "--expr", required=True, metavar="EXPR")

    d = sub.add_parser("derive", parents=[common], help="synthesize a square filling")
    what = d.add_mutually_exclusive_group(required=True)
    what.add_argument("--sqfill", metavar="TYPE")
    what.add_argument("--sqpfill", metavar="TYPESQUARE", help="a square of types, \\i j. A")
    d.add_argument("file", metavar="FILE")
    d.add_argument("--count-kan", action="store_true", help="append hcomp=<n> transp=<m>")
    d.add_argument("--emit", metavar="OUT.mct", help="write a checkable module")
    d.add_argument("--name", default="fill", help="name of the emitted definition")

    n = sub.add_parser("nf-interval", parents=[common], help="print an interval normal form")
    n.add_argument("expr", metavar="EXPR")
    return p


class Output:
    def __init__(self, as_json: bool, out=None, err=None):
        self.json = as_json
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def diagnostic(self, d: Diagnostic) -> None:
        if self.json:
            print(json.dumps(d.to_json()), file=self.err)
        else:
            print(d.render(), file=self.err)

    def result(self, text: str | None = None, **fields) -> None:
        if self.json:
            obj = {"result": text} if text is not None else {}
            obj.update(fields)
            print(json.dumps(obj), file=self.out)
        elif text is not None:
            print(text, file=self.out)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from e


def _session(args, path: str | None = None) -> Session:
    session = Session(prelude=not args.no_prelude)
    if path is not None:
        session.load(_read(path), path)
    return session


def cmd_check(args, out: Output) -> int:
    sources = [(f, _read(f)) for f in args.files]
    for path, text in sources:
        Session(prelude=not args.no_prelude).load(text, path)
    return EXIT_OK


def cmd_eval(args, out: Output) -> int:
    session = _session(args, args.file)
    t = parse_term(args.expr, session.known, path="<expr>")
    chk = session.checker
    chk.spans, chk.path = {}, "<expr>"
    ctx = chk.context()
    ty = chk.infer(ctx, t)
    nf = ctx.quote(ctx.eval(t), ty)
    out.result(print_term(nf), type=print_term(ctx.quote_type(ty)) if out.json else None)
    return EXIT_OK


def cmd_derive(args, out: Output) -> int:
    session = _session(args, args.file)
    chk = session.checker
    chk.spans, chk.path = {}, "<derive>"
    name = session.fresh_name(args.name)
    if args.sqfill is not None:
        A = parse_term(args.sqfill, session.known, path="<type>")
        d = derive_sqfill(chk, A, name)
    else:
        sq = parse_square(args.sqpfill, session.known, path="<square>")
        d = derive_sqpfill(chk, sq, name)
    text = print_term(d.term)
    hc, tr = s.kan_count(d.term)
    for aux in d.defs:
        h2, t2 = s.kan_count(aux.body)
        hc, tr = hc + h2, tr + t2
    if out.json:
        fields = {"hcomp": hc, "transp": tr} if args.count_kan else {}
        out.result(text, **fields)
    else:
        out.result(text)
        if args.count_kan:
            out.result(f"hcomp={hc} transp={tr}")
    if args.emit:
        roots = s.refs(d.term) | s.refs(d.statement)
        for aux in d.defs:
            roots |= s.refs(aux.body) | s.refs(aux.type)
        decls = session.dependencies(roots) + d.defs + [s.Definition(name, d.statement, d.term)]
        header = "-- square filling synthesized by mcube derive; checked before writing\n\n"
        Path(args.emit).write_text(header + print_module(decls), encoding="utf-8")
    return EXIT_OK


def cmd_nf_interval(args, out: Output) -> int:
    e, names = parse_interval(args.expr)
    nf = iv.normalize(e, lambda k: iv.nf_var(names[len(names) - 1 - k]))
    out.result(print_nf(nf))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "eval": cmd_eval, "derive": cmd_derive,
            "nf-interval": cmd_nf_interval}


def main(argv=None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    output = Output(as_json, out, err)
    try:
        try:
            with contextlib.redirect_stdout(output.out):
                args = build_parser().parse_args(argv)
        except SystemExit as e:  # --help
            return EXIT_OK if not e.code else EXIT_USAGE
        return COMMANDS[args.command](args, output)
    except UsageError as e:
        output.diagnostic(Diagnostic(f"usage: {e}", severity="error"))
        return EXIT_USAGE
    except CheckError as e:
        output.diagnostic(e.diagnostic)
        return EXIT_ERROR
    except DeriveError as e:
        output.diagnostic(Diagnostic(e.message, notes=e.notes, path="<derive>"))
        return EXIT_ERROR


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
