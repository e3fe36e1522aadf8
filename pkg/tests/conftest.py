from __future__ import annotations

from pathlib import Path

import pytest

from mcube import builder as b
from mcube import evaluator as ev
from mcube import syntax as s
from mcube.frontend.driver import Session

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def lib_session() -> Session:
    """Prelude plus ``tests/fixtures/lib.mct``; treat as read-only."""
    sess = Session()
    sess.load_file(str(fixture("lib.mct")))
    return sess


@pytest.fixture
def fresh_session() -> Session:
    return Session()


def postulate(checker, name: str, ty: b.R) -> b.R:
    """Add an opaque constant of type ``ty`` and return a reference to it."""
    t = b.build(ty)
    checker.check_type(checker.context(), t)
    checker.globals[name] = ev.GlobalEntry(checker.context().eval(t), None)
    return b.ref(name)


def check_closed(checker, term: s.Term, ty: s.Term) -> None:
    ctx = checker.context()
    checker.check(ctx, term, checker.check_type(ctx, ty))


def nf(checker, term: s.Term) -> s.Term:
    """Normal form of a closed term, at its inferred type."""
    ctx = checker.context()
    ty = checker.infer(ctx, term)
    return ctx.quote(ctx.eval(term), ty)


# -- acceptance summary -----------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, secs = ACCEPTANCE[k]
        terminalreporter.write_line(
            f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")
