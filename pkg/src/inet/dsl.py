"""The ``.inet`` text format.

::

    # Tweety
    net tweety { a -> b; a -> c; c -> b; b -> d; c !> d; }
    query tweety: a ? d expect neg;

Nets and queries may be interleaved; ``serialize`` writes all nets first,
each with its links sorted, then the queries in order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .net import (NEG, POS, CycleDetected, Diagram, DiagramError, HardContradiction, Link, Polarity,
                  SelfLoop, build_diagram)


class SyntaxError(ValueError):  # noqa: A001 - the name is part of the format's API
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line, self.col, self.expected = line, col, expected
        where = f" but found {found!r}" if found else ""
        super().__init__(f"line {line}, col {col}: expected {expected}{where}")


class SemanticError(ValueError):
    """A well-formed file describing an invalid net or a dangling query."""

    def __init__(self, line: int, message: str, cause: Exception | None = None):
        self.line = line
        self.cause = cause
        super().__init__(f"line {line}: {message}")


_EXPECT = {"pos": POS, "neg": NEG, "none": None}
_EXPECT_NAME = {POS: "pos", NEG: "neg", None: "none"}


@dataclass(frozen=True)
class Query:
    net: str
    subject: str
    predicate: str
    expect: Polarity | None = None
    has_expect: bool = False  # distinguishes "expect none" from no clause

    def __str__(self) -> str:
        tail = f" expect {_EXPECT_NAME[self.expect]}" if self.has_expect else ""
        return f"query {self.net}: {self.subject} ? {self.predicate}{tail};"


@dataclass(frozen=True)
class NetFile:
    nets: tuple[tuple[str, Diagram], ...] = ()
    queries: tuple[Query, ...] = ()

    def net(self, name: str) -> Diagram:
        for n, g in self.nets:
            if n == name:
                return g
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.nets]


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow>->|!>)
  | (?P<punct>[{};:?])
  | (?P<ident>[A-Za-z0-9_]+)
""", re.VERBOSE)

_KEYWORDS = {"net", "query", "expect"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos, line, col = [], 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SyntaxError(line, col, "a token", text[pos])
        kind, s = m.lastgroup, m.group()
        if kind != "ws":
            if kind == "ident" and s in _KEYWORDS:
                kind = "kw"
            toks.append(_Tok(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None, expected: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            if expected is None:
                expected = repr(text) if text else kind
            raise SyntaxError(t.line, t.col, expected, t.text or "end of input")
        self.i += 1
        return t

    def ident(self, what: str) -> str:
        t = self.tok
        if t.kind not in ("ident", "kw"):
            raise SyntaxError(t.line, t.col, what, t.text or "end of input")
        self.i += 1
        return t.text

    def file(self) -> NetFile:
        nets: list[tuple[str, Diagram]] = []
        queries: list[tuple[Query, int]] = []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "kw" and t.text == "net":
                name, g = self.net()
                if name in dict(nets):
                    raise SemanticError(t.line, f"net {name!r} declared twice")
                nets.append((name, g))
            elif t.kind == "kw" and t.text == "query":
                queries.append((self.query(), t.line))
            else:
                raise SyntaxError(t.line, t.col, "'net' or 'query'", t.text)
        known = dict(nets)
        for q, line in queries:
            if q.net not in known:
                raise SemanticError(line, f"query refers to unknown net {q.net!r}")
            for n in (q.subject, q.predicate):
                if n not in known[q.net].nodes:
                    raise SemanticError(line, f"node {n!r} is not in net {q.net!r}")
        return NetFile(tuple(nets), tuple(q for q, _ in queries))

    def net(self) -> tuple[str, Diagram]:
        start = self.take("kw", "net")
        name = self.ident("a net name")
        self.take("punct", "{")
        links: list[tuple[Link, int]] = []
        while not (self.tok.kind == "punct" and self.tok.text == "}"):
            line = self.tok.line
            src = self.ident("a node name or '}'")
            arrow = self.take("arrow", expected="'->' or '!>'")
            dst = self.ident("a node name")
            self.take("punct", ";")
            links.append((Link(src, dst, POS if arrow.text == "->" else NEG), line))
        self.take("punct", "}")
        try:
            g = build_diagram((), [l for l, _ in links])
        except DiagramError as e:
            raise SemanticError(_blame(e, links, start.line), str(e), e) from e
        return name, g

    def query(self) -> Query:
        self.take("kw", "query")
        net = self.ident("a net name")
        self.take("punct", ":")
        x = self.ident("a node name")
        self.take("punct", "?")
        y = self.ident("a node name")
        expect, has = None, False
        if self.tok.kind == "kw" and self.tok.text == "expect":
            self.i += 1
            t = self.tok
            if t.text not in _EXPECT:
                raise SyntaxError(t.line, t.col, "'pos', 'neg' or 'none'", t.text or "end of input")
            self.i += 1
            expect, has = _EXPECT[t.text], True
        self.take("punct", ";")
        return Query(net, x, y, expect, has)


def _blame(err: DiagramError, links, default: int) -> int:
    """Line of the statement most likely responsible for a validation error."""
    for l, line in reversed(links):
        if isinstance(err, SelfLoop) and l.source == l.target == err.node:
            return line
        if isinstance(err, HardContradiction) and (l.source, l.target) == (err.source, err.target):
            return line
        if isinstance(err, CycleDetected):
            cyc = err.cycle
            if any((l.source, l.target) == (a, b) for a, b in zip(cyc, cyc[1:])):
                return line
    return default


def parse(text: str) -> NetFile:
    return _Parser(text).file()


def serialize(nf: NetFile) -> str:
    out = []
    for name, g in nf.nets:
        linked = {n for l in g.links for n in (l.source, l.target)}
        if linked != set(g.nodes):
            raise ValueError(f"net {name!r} has isolated nodes, which the format cannot express")
        out.append(f"net {name} {{")
        for l in sorted(g.links, key=lambda l: (l.source, l.target, l.polarity.value)):
            out.append(f"  {l};")
        out.append("}")
    out.extend(str(q) for q in nf.queries)
    return "\n".join(out) + "\n" if out else ""


def load(path) -> NetFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def load_corpus() -> NetFile:
    """The bundled corpus of example nets."""
    from importlib.resources import files

    return parse(files("inet.data").joinpath("corpus.inet").read_text(encoding="utf-8"))
