"""Reactive graphs: label tables, double arrows and a walker.

``label_all`` runs the pair-labelling algorithm for one origin.  ``compile``
turns the validity decisions for one origin into double arrows: traversing
the first link of a valid path switches off every continuation that would
make the path invalid.  ``walk`` then finds the answer by plain traversal,
with no validity reasoning at all.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .config import DEFAULT, PolicyConfig, Resolver, Scepticism, Scope, UnsupportedPolicy
from .engine import Engine
from .net import NEG, POS, Diagram, Link, Path, Polarity, concatenate


class PairLabel(str, Enum):
    STAR = "*"
    PPOS = "p+"
    PNEG = "p-"
    PBOTH = "p+-"
    VPOS = "v+"
    VNEG = "v-"

    @property
    def final(self) -> bool:
        return self in (PairLabel.STAR, PairLabel.VPOS, PairLabel.VNEG)


_POTENTIAL = {POS: PairLabel.PPOS, NEG: PairLabel.PNEG}
_VALID = {POS: PairLabel.VPOS, NEG: PairLabel.VNEG}

# allowed label changes
TRANSITIONS = frozenset(
    [(PairLabel.STAR, t) for t in PairLabel if t is not PairLabel.STAR]
    + [(PairLabel.PPOS, PairLabel.PBOTH), (PairLabel.PNEG, PairLabel.PBOTH)]
    + [(p, t) for p in (PairLabel.PPOS, PairLabel.PNEG, PairLabel.PBOTH)
       for t in (PairLabel.VPOS, PairLabel.VNEG, PairLabel.STAR)]
)


@dataclass
class LabelTable:
    origin: str
    labels: dict[tuple[str, str], PairLabel]
    predecessors: dict[str, set[str]]
    transitions: list[tuple[tuple[str, str], PairLabel, PairLabel]] = field(default_factory=list)

    def __getitem__(self, y: str) -> PairLabel:
        return self.labels[self.origin, y]

    def verdict(self, y: str) -> Polarity | None:
        return {PairLabel.VPOS: POS, PairLabel.VNEG: NEG}.get(self[y])

    def set(self, y: str, new: PairLabel) -> None:
        key = (self.origin, y)
        old = self.labels[key]
        if old is not new:
            self.transitions.append((key, old, new))
            self.labels[key] = new


def _raise(label: PairLabel, polarity: Polarity) -> PairLabel:
    if label is PairLabel.STAR:
        return _POTENTIAL[polarity]
    if label is _POTENTIAL[-polarity]:
        return PairLabel.PBOTH
    return label


def label_all(gamma: Diagram, x: str, resolver: Resolver = Resolver.P22,
              _memo: dict | None = None) -> LabelTable:
    """Label every pair (x, y) for one origin.

    Labels start at ``*``; direct links give ``v+``/``v-`` at once.  Nodes
    are then visited by increasing distance (longest path) from x, so that
    every predecessor of y is final when y is reached.  Predecessors with
    ``v+`` collect potential labels, dominated ones are eliminated and the
    survivors decide: ``v+``/``v-`` if they agree, ``*`` otherwise.
    Comparisons between two sources c, c' need the table of origin c, which
    is computed recursively and shared through ``_memo``.
    """
    gamma.check(x)
    memo = {} if _memo is None else _memo
    if x in memo:
        return memo[x]
    preds = {n: {l.source for l in gamma.in_links(n)} for n in gamma.nodes}
    table = LabelTable(x, {(x, y): PairLabel.STAR for y in gamma.nodes if y != x}, preds)
    memo[x] = table

    for l in gamma.out_links(x):
        table.set(l.target, _VALID[l.polarity])

    dist = gamma.longest_from(x)
    for y in sorted(dist, key=lambda n: (dist[n], n)):
        if table[y].final and table[y] is not PairLabel.STAR:
            continue
        incoming = [l for l in gamma.in_links(y) if l.source != x and table[l.source] is PairLabel.VPOS]
        for l in incoming:
            table.set(y, _raise(table[y], l.polarity))
        if not incoming:
            continue

        def dominated(l: Link) -> bool:
            for m in incoming:
                if m is l or (resolver is Resolver.P22 and m.polarity is l.polarity):
                    continue
                if label_all(gamma, m.source, resolver, memo)[l.source] is PairLabel.VPOS:
                    return True
            return False

        survivors = {l.polarity for l in incoming if not dominated(l)}
        table.set(y, _VALID[survivors.pop()] if len(survivors) == 1 else PairLabel.STAR)
    return table


# -- double arrows -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class DoubleArrow:
    trigger: Link
    blocked: Link

    def __str__(self) -> str:
        return f"({self.trigger}) => ({self.blocked})"


@dataclass(frozen=True)
class ReactiveNet:
    base: Diagram
    origin: str
    double_arrows: frozenset[DoubleArrow] = frozenset()

    def __post_init__(self):
        for d in self.double_arrows:
            if d.trigger not in self.base or d.blocked not in self.base:
                raise ValueError(f"{d} uses a link outside the net")

    def blocked_by(self, trigger: Link) -> frozenset[Link]:
        return frozenset(d.blocked for d in self.double_arrows if d.trigger == trigger)


class WalkConflict(RuntimeError):
    """The walker reached the target with both polarities."""


def _engine(gamma: Diagram, cfg: PolicyConfig) -> Engine:
    if cfg.scepticism is not Scepticism.DIRECT:
        raise UnsupportedPolicy("compile needs a directly sceptical policy")
    if cfg.preclusion_scope is Scope.ON_PATH:
        # validity then depends on the whole path, which per-origin double arrows cannot see
        raise UnsupportedPolicy("compile supports off-path preclusion only")
    return Engine(gamma, cfg)


def compile(gamma: Diagram, origin: str, cfg: PolicyConfig = DEFAULT) -> ReactiveNet:  # noqa: A001
    """Double arrows for walks starting at ``origin``.

    For each valid positive path sigma from the origin and each link leaving
    its endpoint, if sigma followed by that link is not valid, the first link
    of sigma blocks it.  Off-path validity does not depend on the route taken,
    so one check per (endpoint, link) is enough.
    """
    gamma.check(origin)
    e = _engine(gamma, cfg)
    arrows = set()
    for y in sorted(e.reach[origin]):
        firsts = {p.first for p in e.valid_paths(origin, y) if p.polarity is POS}
        for l in gamma.out_links(y):
            if (y, l.polarity) not in e.accepted[origin].get(l.target, ()):
                arrows.update(DoubleArrow(f, l) for f in firsts)
    return ReactiveNet(gamma, origin, frozenset(arrows))


def _walk_states(rn: ReactiveNet):
    """Every (path, disabled links) the walker can produce, depth first."""
    stack = [(Path(rn.origin, (l,)), rn.blocked_by(l)) for l in reversed(rn.base.out_links(rn.origin))]
    while stack:
        path, off = stack.pop()
        yield path, off
        if path.polarity is NEG:
            continue  # nothing follows a negative link
        for l in reversed(rn.base.out_links(path.endpoint)):
            if l not in off:
                stack.append((Path(path.origin, path.steps + (l,)), off | rn.blocked_by(l)))


def recompile(rn: ReactiveNet, cfg: PolicyConfig = DEFAULT) -> ReactiveNet:
    """Run compilation again on a net whose double arrows are already in force.

    Every path the walker can still take is checked against the engine and
    any invalid continuation gets a double arrow from the path's first link.
    On a compiled net this finds nothing new.
    """
    e = _engine(rn.base, cfg)
    arrows = set(rn.double_arrows)
    for path, off in _walk_states(rn):
        if path.polarity is NEG:
            continue
        for l in rn.base.out_links(path.endpoint):
            if l not in off and not e.is_valid(concatenate(path, Path(path.endpoint, (l,)))):
                arrows.add(DoubleArrow(path.first, l))
    return ReactiveNet(rn.base, rn.origin, frozenset(arrows))


def walk(rn: ReactiveNet, target: str) -> Polarity | None:
    """Traverse from the origin and report how the target is reached."""
    rn.base.check(target)
    found = {path.polarity for path, _ in _walk_states(rn) if path.endpoint == target}
    if len(found) > 1:
        raise WalkConflict(f"{rn.origin} reaches {target} both ways")
    return found.pop() if found else None


# -- DOT ---------------------------------------------------------------------

def _mid(l: Link) -> str:
    return f'"{l.source}|{l.target}"'


def _attrs(items: list[str]) -> str:
    return f" [{', '.join(items)}]" if items else ""


def to_dot(rn: ReactiveNet) -> str:
    """Graphviz text for a compiled net.

    Links taking part in a double arrow are split at a point-shaped midpoint
    node so that the dashed "blocks" edge can run from link to link.
    """
    involved = {d.trigger for d in rn.double_arrows} | {d.blocked for d in rn.double_arrows}
    lines = [f'digraph "{rn.origin}" {{', "  rankdir=BT;"]
    for n in sorted(rn.base.nodes):
        extra = ", peripheries=2" if n == rn.origin else ""
        lines.append(f'  "{n}" [shape=ellipse{extra}];')
    for l in sorted(rn.base.links):
        neg = ['label="!"'] if l.polarity is NEG else []
        if l in involved:
            lines.append(f"  {_mid(l)} [shape=point];")
            lines.append(f'  "{l.source}" -> {_mid(l)} [{", ".join(neg + ["arrowhead=none"])}];')
            lines.append(f'  {_mid(l)} -> "{l.target}"{_attrs(neg)};')
        else:
            lines.append(f'  "{l.source}" -> "{l.target}"{_attrs(neg)};')
    for d in sorted(rn.double_arrows):
        lines.append(f'  {_mid(d.trigger)} -> {_mid(d.blocked)} [style=dashed, label="blocks"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
