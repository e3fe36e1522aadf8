"""Loading modules on top of the shipped prelude."""

from __future__ import annotations

from pathlib import Path

from .. import syntax as s
from ..typechecker import Checker
from .parser import SourceModule, parse_module

PRELUDE_DIR = Path(__file__).resolve().parent.parent / "prelude"


def prelude_files() -> list[Path]:
    return sorted(PRELUDE_DIR.glob("*.mct"))


class Session:
    """A checker plus the declarations loaded into it, in order."""

    def __init__(self, prelude: bool = True):
        self.checker = Checker()
        self.decls: dict[str, object] = {}
        self.origin: dict[str, str | None] = {}
        self.prelude_names: set[str] = set()
        if prelude:
            for f in prelude_files():
                self.load(f.read_text(encoding="utf-8"), str(f))
            self.prelude_names = set(self.decls)

    @property
    def known(self) -> set[str]:
        return set(self.checker.globals)

    def parse(self, source: str, path: str | None = None) -> SourceModule:
        return parse_module(source, path, self.known)

    def load(self, source: str, path: str | None = None) -> SourceModule:
        """Parse and check a module; raises ``CheckError`` with a diagnostic on failure."""
        module = self.parse(source, path)
        self.checker.spans = module.spans
        self.checker.path = path
        for d in module.declarations:
            self.checker.check_declaration(d)
            self.decls[d.name] = d
            self.origin[d.name] = path
        return module

    def load_file(self, path: str) -> SourceModule:
        return self.load(Path(path).read_text(encoding="utf-8"), path)

    def dependencies(self, roots) -> list:
        """Non-prelude declarations reachable from ``roots``, in load order."""
        seen: set[str] = set()
        stack = list(roots)
        while stack:
            n = stack.pop()
            if n in seen or n not in self.decls or n in self.prelude_names:
                continue
            seen.add(n)
            stack.extend(declaration_refs(self.decls[n]))
        return [d for name, d in self.decls.items() if name in seen]

    def fresh_name(self, base: str) -> str:
        if base not in self.checker.globals:
            return base
        k = 1
        while f"{base}{k}" in self.checker.globals:
            k += 1
        return f"{base}{k}"


def declaration_refs(d) -> set[str]:
    if isinstance(d, s.Evidence):
        subject = d.subject.body if isinstance(d.subject, s.TypeSquare) else d.subject
        return s.refs(subject) | s.refs(d.proof)
    out = s.refs(d.body)
    if d.type is not None:
        out |= s.refs(d.type)
    return out
