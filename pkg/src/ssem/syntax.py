"""Concrete syntax: a small Prolog subset, and the check-report encoding.

Accepted input::

    % comment
    fact(a, [X, Y | T], 3).
    head(X) :- body1(X), body2(X, _).

Identifiers starting with a lowercase letter are functors, identifiers
starting with an uppercase letter or ``_`` are variables (each bare ``_`` is a
distinct variable), integer literals ``n`` stand for ``s^n(0)``.  There are no
operators, strings or floats.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .terms import NIL, Clause, Program, Struct, Term, Var, peano, peano_value, NotANumeral

__all__ = [
    "ParseError",
    "parse_program",
    "parse_clause",
    "parse_query",
    "parse_term",
    "to_text",
    "report_encode",
    "REPORT_SCHEMA",
]

REPORT_SCHEMA = "v1"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<neck>:-)
  | (?P<query>\?-)
  | (?P<int>\d+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*|\[\])
  | (?P<punct>[()\[\],|.])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.names: Dict[str, Var] = {}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str):
        t = self.tok
        where = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(t.line, t.col, f"{message} at {where}")

    def eat(self, text: str):
        if self.tok.text != text or self.tok.kind in ("eof", "var", "int"):
            self.error(f"expected {text!r}")
        self.i += 1

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "neck") and self.tok.text == text

    def var(self, name: str) -> Var:
        if name == "_":
            return Var()
        v = self.names.get(name)
        if v is None:
            v = self.names[name] = Var(name)
        return v

    def term(self) -> Term:
        t = self.tok
        if t.kind == "var":
            self.i += 1
            return self.var(t.text)
        if t.kind == "int":
            self.i += 1
            return peano(int(t.text))
        if t.kind == "name":
            return self.struct()
        if self.at("["):
            return self.list_()
        self.error("expected a term")

    def struct(self) -> Struct:
        t = self.tok
        if t.kind != "name":
            self.error("expected a functor")
        self.i += 1
        args = []
        if self.at("("):
            self.i += 1
            args.append(self.term())
            while self.at(","):
                self.i += 1
                args.append(self.term())
            self.eat(")")
        return Struct(t.text, args)

    def list_(self) -> Term:
        self.eat("[")
        if self.at("]"):
            self.i += 1
            return NIL
        items = [self.term()]
        while self.at(","):
            self.i += 1
            items.append(self.term())
        tail = NIL
        if self.at("|"):
            self.i += 1
            tail = self.term()
        self.eat("]")
        for item in reversed(items):
            tail = Struct(".", (item, tail))
        return tail

    def atom(self) -> Struct:
        if self.tok.kind != "name" or self.tok.text == "[]":
            self.error("expected an atom")
        return self.struct()

    def clause(self) -> Clause:
        self.names = {}
        head = self.atom()
        body = []
        if self.at(":-"):
            self.i += 1
            body.append(self.atom())
            while self.at(","):
                self.i += 1
                body.append(self.atom())
        self.eat(".")
        return Clause(head, tuple(body))

    def program(self) -> Program:
        clauses = []
        while self.tok.kind != "eof":
            clauses.append(self.clause())
        return Program(tuple(clauses))

    def query(self) -> Tuple[Struct, ...]:
        if self.tok.kind == "query":
            self.i += 1
        atoms = [self.atom()]
        while self.at(","):
            self.i += 1
            atoms.append(self.atom())
        if self.at("."):
            self.i += 1
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return tuple(atoms)


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_clause(text: str) -> Clause:
    p = _Parser(text)
    c = p.clause()
    if p.tok.kind != "eof":
        p.error("unexpected trailing input")
    return c


def parse_query(text: str) -> Tuple[Struct, ...]:
    """A conjunction of atoms; a leading ``?-`` and a final ``.`` are optional."""
    return _Parser(text).query()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("unexpected trailing input")
    return t


# -- printing ----------------------------------------------------------------

class _Names:
    """Printed names for one object: source names where unambiguous, else ``_G<k>``."""

    def __init__(self):
        self.names: Dict[Var, str] = {}
        self.taken: Dict[str, Var] = {}
        self.counter = 0

    def __call__(self, v: Var) -> str:
        name = self.names.get(v)
        if name is not None:
            return name
        if v.name is not None and v.name != "_" and self.taken.get(v.name, v) is v:
            name = v.name
        else:
            while True:
                self.counter += 1
                name = f"_G{self.counter}"
                if name not in self.taken:
                    break
        self.names[v] = name
        self.taken[name] = v
        return name


def _fmt(t: Term, names: _Names) -> str:
    if isinstance(t, Var):
        return names(t)
    if t.functor in ("s", "0") and len(t.args) <= 1:
        try:
            return str(peano_value(t))
        except NotANumeral:
            pass
    if t.functor == "." and len(t.args) == 2:
        items = []
        while isinstance(t, Struct) and t.functor == "." and len(t.args) == 2:
            items.append(_fmt(t.args[0], names))
            t = t.args[1]
        if t == NIL:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + _fmt(t, names) + "]"
    if not t.args:
        return t.functor
    return t.functor + "(" + ",".join(_fmt(a, names) for a in t.args) + ")"


def to_text(x, names: Optional[_Names] = None) -> str:
    """Deterministic printed form of a term, atom, clause, substitution, query or program."""
    if names is None:
        names = _Names()
    if isinstance(x, (Var, Struct)):
        return _fmt(x, names)
    if isinstance(x, Clause):
        head = _fmt(x.head, names)
        if not x.body:
            return head + "."
        return head + " :- " + ", ".join(_fmt(b, names) for b in x.body) + "."
    if isinstance(x, Program):
        return "\n".join(to_text(c) for c in x.clauses) + ("\n" if x.clauses else "")
    if isinstance(x, dict):
        parts = []
        for v in sorted(x, key=lambda v: v.serial):
            parts.append(f"{names(v)} = {_fmt(x[v], names)}")
        return "{" + ", ".join(parts) + "}"
    return ", ".join(_fmt(a, names) for a in x)


# -- reports -----------------------------------------------------------------

def _report_dict(r, timing: bool) -> dict:
    d = {
        "schema": REPORT_SCHEMA,
        "check": r.check,
        "program": r.program,
        "spec": r.spec,
        "verdict": r.verdict,
        "bounded": True,
        "bounds": r.bounds,
        "statistics": dict(r.statistics),
        "counterexamples": [dict(c) for c in r.counterexamples],
    }
    if r.targets is not None:
        d["targets"] = [dict(t) for t in r.targets]
    if getattr(r, "items", None) is not None:
        d["items"] = [dict(t) for t in r.items]
    if timing and r.elapsed is not None:
        d["elapsed_seconds"] = round(r.elapsed, 3)
    return d


def _kv(value) -> str:
    if isinstance(value, dict):
        return " ".join(f"{k}={_kv(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "[" + "; ".join(_kv(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def report_encode(report, fmt: str = "text", timing: bool = False) -> str:
    """Encode a check report in the v1 schema, as key/value lines or JSON.

    Elapsed time is left out unless ``timing`` is set, so equal runs encode
    to equal bytes.
    """
    d = _report_dict(report, timing)
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = []
    for key in ("schema", "check", "program", "spec", "verdict", "bounded", "bounds"):
        lines.append(f"{key}: {_kv(d[key])}")
    for k, v in d["statistics"].items():
        lines.append(f"stat.{k}: {_kv(v)}")
    lines.append(f"counterexamples: {len(d['counterexamples'])}")
    for n, c in enumerate(d["counterexamples"], 1):
        lines.append(f"counterexample[{n}]: {_kv(c)}")
    for n, t in enumerate(d.get("targets", ()), 1):
        lines.append(f"target[{n}]: {_kv(t)}")
    for n, t in enumerate(d.get("items", ()), 1):
        lines.append(f"item[{n}]: {_kv(t)}")
    if "elapsed_seconds" in d:
        lines.append(f"elapsed_seconds: {d['elapsed_seconds']}")
    return "\n".join(lines) + "\n"
