"""Inheritance diagrams: nodes, signed links, paths and the degree measure.

A diagram is a finite DAG whose links are either positive (``x -> y``,
"x's are normally y's") or negative (``x !> y``, "x's are normally not
y's").  Everything here is immutable once built.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class Polarity(str, Enum):
    NEGATIVE = "neg"
    POSITIVE = "pos"

    def __neg__(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE

    @property
    def arrow(self) -> str:
        return "->" if self is Polarity.POSITIVE else "!>"


POS = Polarity.POSITIVE
NEG = Polarity.NEGATIVE


class PathKind(str, Enum):
    GENERALIZED = "generalized"
    POTENTIAL = "potential"


class DiagramError(ValueError):
    """Base class for structural problems with a diagram."""


class CycleDetected(DiagramError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cycle detected: " + " -> ".join(cycle))


class HardContradiction(DiagramError):
    def __init__(self, source: str, target: str):
        self.source, self.target = source, target
        super().__init__(f"hard contradiction: both {source} -> {target} and {source} !> {target}")


class SelfLoop(DiagramError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"self loop on {node}")


class InvalidNodeName(DiagramError):
    def __init__(self, name: object):
        self.name = name
        super().__init__(f"invalid node name {name!r}")


class UnknownNode(KeyError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(node)

    def __str__(self) -> str:
        return f"unknown node {self.node!r}"


class EndpointMismatch(ValueError):
    pass


class PathNotInDiagram(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Link:
    source: str
    target: str
    polarity: Polarity = POS

    @property
    def positive(self) -> bool:
        return self.polarity is POS

    def __str__(self) -> str:
        return f"{self.source} {self.polarity.arrow} {self.target}"


def pos(source: str, target: str) -> Link:
    return Link(source, target, POS)


def neg(source: str, target: str) -> Link:
    return Link(source, target, NEG)


@dataclass(frozen=True)
class Path:
    origin: str
    steps: tuple[Link, ...]
    kind: PathKind = PathKind.POTENTIAL

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a path needs at least one link")
        at = self.origin
        for step in self.steps:
            if step.source != at:
                raise EndpointMismatch(f"{step} does not continue from {at}")
            at = step.target
        if self.kind is PathKind.POTENTIAL and not is_potential(self.steps):
            raise ValueError(f"not a potential path: {self}")

    @classmethod
    def of(cls, *links: Link, kind: PathKind | None = None) -> "Path":
        if kind is None:
            kind = PathKind.POTENTIAL if is_potential(links) else PathKind.GENERALIZED
        return cls(links[0].source, tuple(links), kind)

    @property
    def endpoint(self) -> str:
        return self.steps[-1].target

    @property
    def polarity(self) -> Polarity:
        return self.steps[-1].polarity

    @property
    def nodes(self) -> tuple[str, ...]:
        return (self.origin,) + tuple(s.target for s in self.steps)

    @property
    def first(self) -> Link:
        return self.steps[0]

    @property
    def last(self) -> Link:
        return self.steps[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def prefix(self) -> "Path":
        """The path minus its last link."""
        return Path(self.origin, self.steps[:-1], self.kind)

    def sort_key(self) -> tuple:
        return (self.nodes, tuple(s.polarity.value for s in self.steps))

    def __str__(self) -> str:
        out = [self.origin]
        for s in self.steps:
            out += [s.polarity.arrow, s.target]
        return " ".join(out)


def is_potential(steps: Iterable[Link]) -> bool:
    steps = list(steps)
    return all(s.positive for s in steps[:-1])


def concatenate(sigma: Path, tau: Path, potential: bool = True) -> Path:
    """Join two paths sharing an endpoint/origin.

    The result is potential when requested and the potential-path shape
    still holds; otherwise it is returned as a generalized path.
    """
    if sigma.endpoint != tau.origin:
        raise EndpointMismatch(f"{sigma} ends at {sigma.endpoint}, {tau} starts at {tau.origin}")
    steps = sigma.steps + tau.steps
    kind = PathKind.POTENTIAL if potential and is_potential(steps) else PathKind.GENERALIZED
    return Path(sigma.origin, steps, kind)


@dataclass(frozen=True)
class Diagram:
    """A validated inheritance net.  Build it with :func:`build_diagram`."""

    nodes: frozenset[str]
    links: frozenset[Link]
    _out: dict = field(default=None, compare=False, repr=False, hash=False)
    _in: dict = field(default=None, compare=False, repr=False, hash=False)
    _order: tuple = field(default=None, compare=False, repr=False, hash=False)
    _deg: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        out: dict[str, list[Link]] = {n: [] for n in self.nodes}
        inc: dict[str, list[Link]] = {n: [] for n in self.nodes}
        for l in sorted(self.links):
            out[l.source].append(l)
            inc[l.target].append(l)
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})
        object.__setattr__(self, "_in", {k: tuple(v) for k, v in inc.items()})
        object.__setattr__(self, "_deg", {})

    def __repr__(self) -> str:
        return f"Diagram({', '.join(map(str, sorted(self.links)))})"

    def check(self, *nodes: str) -> None:
        for n in nodes:
            if n not in self.nodes:
                raise UnknownNode(n)

    def out_links(self, x: str) -> tuple[Link, ...]:
        self.check(x)
        return self._out[x]

    def in_links(self, y: str) -> tuple[Link, ...]:
        self.check(y)
        return self._in[y]

    def link(self, x: str, y: str) -> Link | None:
        for l in self._out.get(x, ()):
            if l.target == y:
                return l
        return None

    def __contains__(self, item) -> bool:
        if isinstance(item, Link):
            return item in self.links
        return item in self.nodes

    def contains_path(self, path: Path) -> bool:
        return all(s in self.links for s in path.steps)

    @property
    def topological_order(self) -> tuple[str, ...]:
        if self._order is None:
            object.__setattr__(self, "_order", tuple(_toposort(self.nodes, self.links)))
        return self._order

    def longest_from(self, x: str) -> dict[str, int]:
        """Longest generalized path length from ``x`` to every node reachable from it."""
        self.check(x)
        if x not in self._deg:
            order = self.topological_order
            best: dict[str, int] = {x: 0}
            for n in order[order.index(x):]:
                if n not in best:
                    continue
                for l in self._out[n]:
                    if best.get(l.target, -1) < best[n] + 1:
                        best[l.target] = best[n] + 1
            del best[x]
            self._deg[x] = best
        return self._deg[x]

    def reachable(self, x: str, y: str) -> bool:
        return y in self.longest_from(x)

    def pairs(self) -> Iterator[tuple[str, str]]:
        """All ordered pairs of distinct nodes, in sorted order."""
        for x in sorted(self.nodes):
            for y in sorted(self.nodes):
                if x != y:
                    yield x, y


def _toposort(nodes, links) -> list[str]:
    indeg = {n: 0 for n in nodes}
    out: dict[str, list[str]] = {n: [] for n in nodes}
    for l in links:
        indeg[l.target] += 1
        out[l.source].append(l.target)
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop(0)
        order.append(n)
        for m in sorted(out[n]):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
        ready.sort()
    if len(order) != len(indeg):
        raise CycleDetected(_find_cycle(nodes, links))
    return order


def _find_cycle(nodes, links) -> list[str]:
    out: dict[str, list[str]] = {n: [] for n in nodes}
    for l in sorted(links):
        out[l.source].append(l.target)
    colour: dict[str, int] = {}
    stack: list[str] = []

    def visit(n):
        colour[n] = 1
        stack.append(n)
        for m in out[n]:
            if colour.get(m) == 1:
                return stack[stack.index(m):] + [m]
            if m not in colour:
                found = visit(m)
                if found:
                    return found
        colour[n] = 2
        stack.pop()
        return None

    for n in sorted(nodes):
        if n not in colour:
            found = visit(n)
            if found:
                return found
    raise AssertionError("no cycle found")


def build_diagram(nodes: Iterable[str] = (), links: Iterable[Link] = ()) -> Diagram:
    """Validate and freeze a diagram.

    The node set is ``nodes`` plus every link endpoint.  Raises
    :class:`SelfLoop`, :class:`HardContradiction` or :class:`CycleDetected`.
    """
    links = frozenset(links)
    all_nodes = set(nodes)
    for l in links:
        all_nodes.update((l.source, l.target))
    for n in all_nodes:
        if not isinstance(n, str) or not _NAME.match(n):
            raise InvalidNodeName(n)
    seen: dict[tuple[str, str], Polarity] = {}
    for l in sorted(links):
        if l.source == l.target:
            raise SelfLoop(l.source)
        if (l.source, l.target) in seen:
            raise HardContradiction(l.source, l.target)
        seen[l.source, l.target] = l.polarity
    _toposort(all_nodes, links)
    return Diagram(frozenset(all_nodes), links)


def diagram(*links: Link, nodes: Iterable[str] = ()) -> Diagram:
    return build_diagram(nodes, links)


def degree(gamma: Diagram, x: str, y: str) -> int | None:
    """Length of the longest generalized path from ``x`` to ``y`` (None if there is none)."""
    gamma.check(x, y)
    return gamma.longest_from(x).get(y)
