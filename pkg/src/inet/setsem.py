"""Relative-size reading of inheritance nets.

A link ``X -> Y`` says that X ∩ Y is a Y-BIG subset of X, ``X !> Y`` that
X ∩ ∁Y is.  Conclusions reached through composite paths only ever give
Y-*big* subsets.  Derivations use six rules:

    Base  one BIG statement per link
    R3    A ∈ B(R, Z)  ⇒  A ∈ b(R, Z)
    R12   X∩S ∈ b(X,S), X∩S' ∈ b(X,S')  ⇒  X∩S∩S' ∈ b(X, S∩S')
    R13   Y_i ∩ ±Z ∈ B(Y_i, Z) for all i  ⇒  ∩Y_i ∩ ±Z ∈ B(∩Y_i, Z)   (by preclusion)
    R14   R∩±Z ∈ B(R,Z), X∩R ∈ b(X,R)  ⇒  X∩R∩±Z ∈ b(X∩R, Z)
    R2    X∩R∩±Z ∈ b(X∩R, Z), X∩R ∈ b(X,R)  ⇒  X∩±Z ∈ b(X, Z)

The reference class for X and Z is the set of nodes Y with a direct link to
Z such that X∩Y ∈ b(X,Y) is derivable.  R13 picks the winning polarity with
``resolve_sources``; Y is more specific than Y' when Y∩Y' ∈ b(Y,Y') is
itself derivable.  Undecided combinations yield no statement at all.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .config import Resolver
from .engine import Engine, SourceReport, resolve_sources
from .net import NEG, POS, Diagram, Polarity


class Grade(str, Enum):
    BIG = "B"
    big = "b"


class Rule(str, Enum):
    BASE = "Base"
    R3 = "R3"
    R12 = "R12"
    R13 = "R13"
    R14 = "R14"
    R2 = "R2"


@dataclass(frozen=True)
class SetExpr:
    positive_factors: frozenset[str]
    complemented: str | None = None

    def __post_init__(self):
        if not self.positive_factors:
            raise ValueError("a set expression needs a positive factor")
        if self.complemented in self.positive_factors:
            raise ValueError(f"{self.complemented} is both a factor and complemented")

    def __str__(self) -> str:
        parts = sorted(self.positive_factors)
        if self.complemented is not None:
            parts.append("~" + self.complemented)
        return "&".join(parts)


def _names(s: frozenset[str]) -> str:
    return "&".join(sorted(s))


@dataclass(frozen=True)
class SizeStatement:
    """``subject ∈ B(reference, about)`` or ``subject ∈ b(reference, about)``.

    The subject is the reference intersected with ``about`` (positive) or
    with the complement of the single node in ``about`` (negative).
    """
    reference: frozenset[str]
    about: frozenset[str]
    grade: Grade
    polarity: Polarity = POS

    def __post_init__(self):
        if not self.reference or not self.about:
            raise ValueError("empty reference or about")
        if self.polarity is NEG and (len(self.about) != 1 or self.about <= self.reference):
            raise ValueError("a negative statement is about one node outside the reference")

    @property
    def subject(self) -> SetExpr:
        if self.polarity is POS:
            return SetExpr(self.reference | self.about)
        (z,) = self.about
        return SetExpr(self.reference, z)

    def __str__(self) -> str:
        return f"{self.subject} in {self.grade.value}({_names(self.reference)},{_names(self.about)})"


def statement(reference, about, grade=Grade.big, polarity=POS) -> SizeStatement:
    as_set = lambda v: frozenset([v]) if isinstance(v, str) else frozenset(v)  # noqa: E731
    return SizeStatement(as_set(reference), as_set(about), grade, polarity)


@dataclass(frozen=True)
class Derivation:
    conclusion: SizeStatement
    rule: Rule
    premises: tuple["Derivation", ...] = ()

    def __post_init__(self):
        _check_shape(self)

    @property
    def depth(self) -> int:
        return 1 + max((p.depth for p in self.premises), default=0)

    def rules(self) -> list[Rule]:
        """Rules used, in pre-order."""
        out = [self.rule]
        for p in self.premises:
            out += p.rules()
        return out

    def statements(self):
        yield self.conclusion
        for p in self.premises:
            yield from p.statements()

    def pretty(self, indent: int = 0) -> str:
        head = "  " * indent + f"{self.conclusion}  [{self.rule.value}]"
        return "\n".join([head] + [p.pretty(indent + 1) for p in self.premises])

    __str__ = pretty


class BadDerivation(ValueError):
    pass


def _check_shape(d: Derivation) -> None:
    c, ps = d.conclusion, [p.conclusion for p in d.premises]

    def need(ok: bool):
        if not ok:
            raise BadDerivation(f"{d.rule.value} does not yield {c} from {list(map(str, ps))}")

    if d.rule is Rule.BASE:
        need(not ps and c.grade is Grade.BIG and len(c.reference) == 1 and len(c.about) == 1)
    elif d.rule is Rule.R3:
        need(len(ps) == 1 and ps[0].grade is Grade.BIG and c == SizeStatement(
            ps[0].reference, ps[0].about, Grade.big, ps[0].polarity))
    elif d.rule is Rule.R12:
        need(len(ps) == 2 and all(p.grade is Grade.big and p.polarity is POS for p in ps)
             and ps[0].reference == ps[1].reference == c.reference
             and c.about == ps[0].about | ps[1].about and c.grade is Grade.big and c.polarity is POS)
    elif d.rule is Rule.R13:
        need(len(ps) >= 2 and all(p.grade is Grade.BIG and p.about == c.about for p in ps)
             and c.reference == frozenset().union(*(p.reference for p in ps))
             and c.grade is Grade.BIG and any(p.polarity is c.polarity for p in ps))
    elif d.rule is Rule.R14:
        need(len(ps) == 2 and ps[0].grade is Grade.BIG and ps[1].grade is Grade.big
             and ps[1].about == ps[0].reference and ps[1].polarity is POS
             and c == SizeStatement(ps[1].reference | ps[0].reference, ps[0].about,
                                    Grade.big, ps[0].polarity))
    elif d.rule is Rule.R2:
        need(len(ps) == 2 and ps[0].grade is ps[1].grade is Grade.big
             and ps[0].reference == ps[1].reference | ps[1].about
             and c == SizeStatement(ps[1].reference, ps[0].about, Grade.big, ps[0].polarity))


def base_theory(gamma: Diagram) -> set[SizeStatement]:
    return {SizeStatement(frozenset([l.source]), frozenset([l.target]), Grade.BIG, l.polarity)
            for l in gamma.links}


class Saturation:
    """Every statement derivable about pairs of nodes, with one derivation each.

    Pairs are handled in increasing degree, so the channel and specificity
    facts a pair needs are always in place before it is reached.
    """

    def __init__(self, gamma: Diagram, resolver: Resolver = Resolver.P22):
        self.gamma = gamma
        self.resolver = resolver
        self.known: dict[SizeStatement, Derivation] = {}
        self.pair: dict[tuple[str, str], Derivation] = {}
        for s in sorted(base_theory(gamma), key=str):
            self._add(Derivation(s, Rule.BASE))
        pairs = sorted((d, x, z) for x in sorted(gamma.nodes)
                       for z, d in gamma.longest_from(x).items())
        for _, x, z in pairs:
            found = self._derive_pair(x, z)
            if found is not None:
                self.pair[x, z] = self._add(found)

    def _add(self, d: Derivation) -> Derivation:
        for sub in _subderivations(d):
            self.known.setdefault(sub.conclusion, sub)
        return self.known[d.conclusion]

    def channel(self, x: str, y: str) -> Derivation | None:
        """Derivation of X∩Y ∈ b(X,Y), if there is one."""
        d = self.pair.get((x, y))
        return d if d is not None and d.conclusion.polarity is POS else None

    def _derive_pair(self, x: str, z: str) -> Derivation | None:
        direct = self.gamma.link(x, z)
        if direct is not None:
            base = self.known[statement(x, z, Grade.BIG, direct.polarity)]
            return Derivation(SizeStatement(base.conclusion.reference, base.conclusion.about,
                                            Grade.big, direct.polarity), Rule.R3, (base,))
        refs = sorted(l.source for l in self.gamma.in_links(z) if self.channel(x, l.source))
        if not refs:
            return None
        sources = {l.source: l for l in self.gamma.in_links(z)}
        if len(refs) == 1:
            (y,) = refs
            top = self.known[statement(y, z, Grade.BIG, sources[y].polarity)]
            chan = self.channel(x, y)
        else:
            reports = [SourceReport(y, sources[y].polarity, z) for y in refs]
            res = resolve_sources(reports, lambda a, b: self.channel(a, b) is not None, self.resolver)
            if res.verdict is None:
                return None  # medium: no statement
            premises = tuple(self.known[statement(y, z, Grade.BIG, sources[y].polarity)] for y in refs)
            top = Derivation(SizeStatement(frozenset(refs), frozenset([z]), Grade.BIG, res.verdict),
                             Rule.R13, premises)
            chan = self._fold(x, refs)
        s14 = SizeStatement(frozenset([x]) | top.conclusion.reference, top.conclusion.about,
                            Grade.big, top.conclusion.polarity)
        d14 = Derivation(s14, Rule.R14, (top, chan))
        return Derivation(SizeStatement(frozenset([x]), frozenset([z]), Grade.big, s14.polarity),
                          Rule.R2, (d14, chan))

    def _fold(self, x: str, refs: list[str]) -> Derivation:
        """X∩Y1∩..∩Yn ∈ b(X, Y1∩..∩Yn) by a balanced tree of R12 steps."""
        if len(refs) == 1:
            return self.channel(x, refs[0])
        mid = len(refs) // 2
        left, right = self._fold(x, refs[:mid]), self._fold(x, refs[mid:])
        s = SizeStatement(frozenset([x]), frozenset(refs), Grade.big, POS)
        return Derivation(s, Rule.R12, (left, right))

    def verdict(self, x: str, z: str) -> Polarity | None:
        d = self.pair.get((x, z))
        return None if d is None else d.conclusion.polarity


def _subderivations(d: Derivation):
    for p in d.premises:
        yield from _subderivations(p)
    yield d


def derive(gamma: Diagram, goal: SizeStatement, _sat: Saturation | None = None) -> Derivation | None:
    gamma.check(*goal.reference, *goal.about)
    sat = _sat or Saturation(gamma)
    return sat.known.get(goal)


@dataclass
class CorrespondenceReport:
    checked: int = 0
    mismatches: list[tuple[str, str, Polarity | None, Polarity | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __str__(self) -> str:
        if self.ok:
            return f"{self.checked} pairs, no mismatches"
        rows = [f"  {x} ? {z}: paths say {a}, sizes say {b}" for x, z, a, b in self.mismatches]
        return "\n".join([f"{self.checked} pairs, {len(rows)} mismatches"] + rows)


def check_correspondence(gamma: Diagram) -> CorrespondenceReport:
    """Compare the size derivations with the path engine on every ordered pair."""
    sat = Saturation(gamma)
    engine = Engine(gamma)
    report = CorrespondenceReport()
    for x, z in gamma.pairs():
        report.checked += 1
        got = {p for p in (POS, NEG)
               if derive(gamma, statement(x, z, Grade.big, p), sat) is not None}
        if len(got) > 1:
            report.mismatches.append((x, z, engine.verdict(x, z), None))
            continue
        mine = got.pop() if got else None
        if mine is not engine.verdict(x, z):
            report.mismatches.append((x, z, engine.verdict(x, z), mine))
    return report
