"""Path validity and query answering for inheritance nets.

Validity is decided by induction on degree.  All ordered pairs (x, y) with a
generalized path between them are processed in increasing degree; for each
one we record which direct links ``u -> y`` / ``u !> y`` may end a valid path
from ``x`` (the *accepted* edges of origin ``x``).  Under off-path preclusion
that table is all later decisions need: a path is valid iff each of its steps
is accepted from the path's origin.  On-path preclusion depends on the nodes
of the path itself, so there the engine keeps the valid positive paths.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .config import DEFAULT, PolicyConfig, Resolver, Scepticism, Scope, UnsupportedPolicy, Validity
from .net import (NEG, POS, Diagram, Link, Path, PathKind, PathNotInDiagram, Polarity, degree)


@dataclass(frozen=True)
class Conclusion:
    subject: str
    predicate: str
    verdict: Polarity | None
    witnesses: frozenset[Path] = frozenset()
    strength: str | None = None

    def __post_init__(self):
        if self.verdict is None:
            if self.witnesses:
                raise ValueError("an open question has no witnesses")
        elif not self.witnesses or any(w.polarity is not self.verdict for w in self.witnesses):
            raise ValueError("witnesses must share the verdict's polarity")

    @property
    def witness(self) -> Path | None:
        """The lexicographically least witness."""
        return min(self.witnesses, key=Path.sort_key) if self.witnesses else None


# -- the plug-in conflict resolver ------------------------------------------

@dataclass(frozen=True)
class SourceReport:
    source: str
    claim_polarity: Polarity
    about: str


class EmptyReportSet(ValueError):
    pass


@dataclass(frozen=True)
class Resolution:
    verdict: Polarity | None  # None: undecided
    survivors: frozenset[SourceReport]

    @property
    def decided(self) -> bool:
        return self.verdict is not None


def resolve_sources(reports: Iterable[SourceReport],
                    better: Callable[[str, str], bool] | Iterable[tuple[str, str]],
                    resolver: Resolver = Resolver.P22) -> Resolution:
    """Combine possibly contradictory reports about one predicate.

    ``better(a, b)`` says source ``a`` is better (more specific) than ``b``;
    it need not be transitive.  P21 drops every report with a better source,
    P22 only those with a better source claiming the opposite.  Survivors
    that agree decide; disagreeing survivors leave the question open.
    """
    reports = frozenset(reports)
    if not reports:
        raise EmptyReportSet()
    if len({r.about for r in reports}) > 1:
        raise ValueError("reports are about different predicates")
    if not callable(better):
        pairs = frozenset(better)
        better = lambda a, b: (a, b) in pairs  # noqa: E731

    def dropped(r: SourceReport) -> bool:
        return any(o.source != r.source and better(o.source, r.source)
                   and (resolver is Resolver.P21 or o.claim_polarity is not r.claim_polarity)
                   for o in reports)

    survivors = frozenset(r for r in reports if not dropped(r))
    polarities = {r.claim_polarity for r in survivors}
    verdict = polarities.pop() if len(polarities) == 1 else None
    return Resolution(verdict, survivors)


# -- the engine --------------------------------------------------------------

def _opposes(polarity: Polarity, against: Polarity, resolver: Resolver) -> bool:
    return resolver is Resolver.P21 or polarity is not against


class Engine:
    """All validity decisions for one diagram under one policy.

    ``tie_seed`` shuffles the processing order among pairs of equal degree;
    results must not depend on it.
    """

    def __init__(self, gamma: Diagram, cfg: PolicyConfig = DEFAULT, tie_seed: int | None = None):
        if cfg.scepticism is not Scepticism.DIRECT:
            raise UnsupportedPolicy("use compute_extensions for extension-based reasoning")
        self.gamma = gamma
        self.cfg = cfg
        self.on_path = cfg.preclusion_scope is Scope.ON_PATH
        # accepted[x][y]: set of (u, polarity) whose link into y ends a valid path from x
        self.accepted: dict[str, dict[str, set[tuple[str, Polarity]]]] = defaultdict(dict)
        # reach[x]: nodes with a valid positive path from x
        self.reach: dict[str, set[str]] = defaultdict(set)
        # on-path only: valid positive paths from x to y, as node tuples
        self.pos_paths: dict[tuple[str, str], list[tuple[str, ...]]] = {}
        self.neg_paths: dict[tuple[str, str], list[tuple[str, ...]]] = {}
        self._decided: set[tuple[str, str]] = set()
        self._paths_cache: dict[tuple[str, str], list[Path]] = {}
        for x, y in self._schedule(tie_seed):
            if self.on_path:
                self._decide_on_path(x, y)
            else:
                self._decide(x, y)
            self._decided.add((x, y))

    def _schedule(self, tie_seed):
        pairs = [(d, x, y) for x in sorted(self.gamma.nodes)
                 for y, d in self.gamma.longest_from(x).items()]
        pairs.sort()
        if tie_seed is not None:
            rng = random.Random(tie_seed)
            keyed = [(d, rng.random(), x, y) for d, x, y in pairs]
            keyed.sort()
            pairs = [(d, x, y) for d, _, x, y in keyed]
        return [(x, y) for _, x, y in pairs]

    # lookups into lower-degree results
    def _valid_pos(self, x: str, y: str) -> bool:
        if not self.gamma.reachable(x, y):
            return False
        assert (x, y) in self._decided, f"({x},{y}) consulted before it was decided"
        return y in self.reach[x]

    def _through(self, x: str, w: str, u: str) -> bool:
        """Valid positive path from x to u passing w (w may be x)."""
        if w == x:
            return self._valid_pos(x, u)
        if not self._valid_pos(x, w):
            return False
        # walk forward from w along positive links accepted from origin x
        stack, seen = [w], {w}
        while stack:
            p = stack.pop()
            if p == u:
                return True
            for l in self.gamma.out_links(p):
                q = l.target
                if not l.positive or q in seen or not (q == u or self.gamma.reachable(q, u)):
                    continue
                if (p, POS) in self.accepted[x].get(q, ()):
                    seen.add(q)
                    stack.append(q)
        return False

    def _sources(self, x: str, y: str) -> list[Link]:
        """Links into y whose source is accessible from x."""
        return [l for l in self.gamma.in_links(y)
                if l.source == x or self._valid_pos(x, l.source)]

    def _better(self, x: str, w: str, v: str) -> bool:
        """Source w is more specific than source v, seen from origin x."""
        if self.cfg.preclusion_validity is Validity.TOTAL:
            return self._through(x, w, v)
        if w == x:
            return self._valid_pos(x, v)
        return self._valid_pos(x, w) and self._valid_pos(w, v)

    def _decide(self, x: str, y: str) -> None:
        resolver = self.cfg.resolver
        sources = self._sources(x, y)
        ok = set()
        for l in sources:
            u, s = l.source, l.polarity
            if u == x:
                ok.add((u, s))  # a direct link
                continue
            # (2) no accessible source against u is more specific than u
            precluded = any(w.source != u and _opposes(w.polarity, s, resolver)
                            and self._better(x, w.source, u) for w in sources)
            if precluded:
                continue
            # (3) every contrary source is beaten by a more specific one
            contested = False
            for v in sources:
                if v.polarity is s:
                    continue
                if not any(z.source != v.source and _opposes(z.polarity, v.polarity, resolver)
                           and (z.source == x or self._better(x, z.source, v.source))
                           for z in sources):
                    contested = True
                    break
            if not contested:
                ok.add((u, s))
        self._record(x, y, ok)

    def _record(self, x, y, ok):
        self.accepted[x][y] = ok
        if any(s is POS for _, s in ok):
            self.reach[x].add(y)

    def _decide_on_path(self, x: str, y: str) -> None:
        resolver = self.cfg.resolver
        sources = [l for l in self.gamma.in_links(y)
                   if l.source == x or self.pos_paths.get((x, l.source))]
        pos, negs = [], []
        for l in sources:
            u, s = l.source, l.polarity
            if u == x:
                (pos if s is POS else negs).append((x, y))
                continue
            # (3) each valid route to a contrary source passes a source on our side
            contested = False
            for v in sources:
                if v.polarity is s:
                    continue
                routes = [(x,)] if v.source == x else self.pos_paths[x, v.source]
                for route in routes:
                    if v.source == x:
                        hit = False
                    else:
                        hit = any(z.source in route and z.source != v.source
                                  and _opposes(z.polarity, v.polarity, resolver) for z in sources)
                    if not hit:
                        contested = True
                        break
                if contested:
                    break
            if contested:
                continue
            against = {w.source for w in sources
                       if w.source != u and _opposes(w.polarity, s, resolver)}
            for route in self.pos_paths[x, u]:
                # (2) no source against us lies on the route itself
                if against.isdisjoint(route):
                    (pos if s is POS else negs).append(route + (y,))
        self.pos_paths[x, y] = sorted(set(pos))
        self.neg_paths[x, y] = sorted(set(negs))
        ok = {(r[-2], POS) for r in pos} | {(r[-2], NEG) for r in negs}
        self._record(x, y, ok)

    # -- public surface ------------------------------------------------------

    def is_valid(self, sigma: Path) -> bool:
        if sigma.kind is not PathKind.POTENTIAL:
            return False
        if not self.gamma.contains_path(sigma):
            raise PathNotInDiagram(str(sigma))
        if len(sigma) == 1:
            return True
        x = sigma.origin
        if self.on_path:
            table = self.pos_paths if sigma.polarity is POS else self.neg_paths
            return sigma.nodes in table.get((x, sigma.endpoint), ())
        return all((l.source, l.polarity) in self.accepted[x].get(l.target, ())
                   for l in sigma.steps[1:])

    def valid_paths(self, x: str, y: str) -> list[Path]:
        """Every valid path from x to y, sorted."""
        self.gamma.check(x, y)
        key = (x, y)
        if key not in self._paths_cache:
            if self.on_path:
                routes = self.pos_paths.get(key, []) + self.neg_paths.get(key, [])
                paths = [_path_from_nodes(self.gamma, r) for r in routes]
            else:
                paths = [Path(x, steps) for steps in self._routes(x, y, last=True)]
            self._paths_cache[key] = sorted(paths, key=Path.sort_key)
        return self._paths_cache[key]

    def _routes(self, x: str, y: str, last: bool):
        for u, s in sorted(self.accepted[x].get(y, ())):
            if not last and s is NEG:
                continue
            link = Link(u, y, s)
            if u == x:
                yield (link,)
            else:
                for head in self._routes(x, u, last=False):
                    yield head + (link,)

    def verdict(self, x: str, y: str) -> Polarity | None:
        ok = self.accepted[x].get(y, ())
        found = {s for _, s in ok}
        if len(found) > 1:
            raise AssertionError(f"contradictory valid paths {x}..{y}")
        return found.pop() if found else None

    def query(self, x: str, y: str) -> Conclusion:
        self.gamma.check(x, y)
        verdict = self.verdict(x, y)
        if verdict is None:
            return Conclusion(x, y, None)
        witnesses = frozenset(self.valid_paths(x, y))
        if self.gamma.link(x, y) is not None:
            strength = x
        else:
            strength = min(w.last.source for w in witnesses)
        return Conclusion(x, y, verdict, witnesses, strength)

    def conclusions(self) -> dict[tuple[str, str], Polarity]:
        """Every decided pair and its verdict."""
        out = {}
        for x, y in self.gamma.pairs():
            v = self.verdict(x, y)
            if v is not None:
                out[x, y] = v
        return out

    def decisive_paths(self, x: str, y: str) -> list[Path]:
        """Valid paths that never arrive, by a detour, at a node x links to directly.

        A direct link settles its pair on its own, so a walker from x never
        needs a longer route into such a node.
        """
        direct = {l.target for l in self.gamma.out_links(x)}
        return [p for p in self.valid_paths(x, y)
                if not any(n in direct for n in p.nodes[2:-1])
                and not (len(p) > 1 and p.endpoint in direct)]

    def signposts(self, x: str, y: str) -> set[Link]:
        """Links a walker from x towards y should not take.

        The walker stands at x or on a decisive route to y; a signpost goes on
        every link leaving such a point that heads towards y (y is reachable
        from its target) but carries no decisive route to y.
        """
        self.gamma.check(x, y)
        routes = self.decisive_paths(x, y)
        on_route = {l for p in routes for l in p.steps}
        stands = {x} | {n for p in routes for n in p.nodes[:-1]}
        posts = set()
        for n in stands:
            for l in self.gamma.out_links(n):
                if l in on_route:
                    continue
                if l.target == y or self.gamma.reachable(l.target, y):
                    posts.add(l)
        return posts


def _path_from_nodes(gamma: Diagram, nodes: tuple[str, ...]) -> Path:
    return Path(nodes[0], tuple(gamma.link(a, b) for a, b in zip(nodes, nodes[1:])))


def is_valid(gamma: Diagram, sigma: Path, cfg: PolicyConfig = DEFAULT) -> bool:
    return Engine(gamma, cfg).is_valid(sigma)


def query(gamma: Diagram, x: str, y: str, cfg: PolicyConfig = DEFAULT) -> Conclusion:
    gamma.check(x, y)
    if cfg.scepticism is Scepticism.EXTENSIONS:
        return compute_extensions(gamma, cfg).query(x, y)
    return Engine(gamma, cfg).query(x, y)


def signposts(gamma: Diagram, x: str, y: str, cfg: PolicyConfig = DEFAULT) -> set[Link]:
    return Engine(gamma, cfg).signposts(x, y)


# -- extensions --------------------------------------------------------------

@dataclass(frozen=True)
class Extension:
    valid_paths: frozenset[Path]
    conclusions: frozenset[Conclusion]

    @property
    def verdicts(self) -> dict[tuple[str, str], Polarity]:
        return {(c.subject, c.predicate): c.verdict for c in self.conclusions}


@dataclass(frozen=True)
class ExtensionResult:
    extensions: tuple[Extension, ...]
    common: dict = field(default_factory=dict)  # (x, y) -> Polarity held in every extension

    def query(self, x: str, y: str) -> Conclusion:
        verdict = self.common.get((x, y))
        if verdict is None:
            return Conclusion(x, y, None)
        witnesses = frozenset(p for e in self.extensions for p in e.valid_paths
                              if p.origin == x and p.endpoint == y)
        strength = min(w.last.source for w in witnesses) if all(len(w) > 1 for w in witnesses) else x
        return Conclusion(x, y, verdict, witnesses, strength)


class _Branch(Engine):
    """Engine state for one extension; unresolved conflicts are returned, not dropped."""

    def __init__(self, gamma, cfg):  # noqa: super().__init__ would run the whole schedule
        self.gamma = gamma
        self.cfg = cfg
        self.on_path = False
        self.accepted = defaultdict(dict)
        self.reach = defaultdict(set)
        self._decided = set()
        self._paths_cache = {}

    def copy(self) -> "_Branch":
        b = _Branch(self.gamma, self.cfg)
        b.accepted = defaultdict(dict, {x: dict(t) for x, t in self.accepted.items()})
        b.reach = defaultdict(set, {x: set(r) for x, r in self.reach.items()})
        b._decided = set(self._decided)
        return b

    def step(self, x: str, y: str) -> tuple[set, set] | None:
        """Decide (x, y); on an unresolved conflict return the two candidate sets."""
        resolver = self.cfg.resolver
        sources = self._sources(x, y)
        survivors = [l for l in sources if l.source == x or not any(
            w.source != l.source and _opposes(w.polarity, l.polarity, resolver)
            and self._better(x, w.source, l.source) for w in sources)]
        ok = {(l.source, l.polarity) for l in survivors}
        self._decided.add((x, y))
        if len({s for _, s in ok}) > 1:
            return ({o for o in ok if o[1] is POS}, {o for o in ok if o[1] is NEG})
        self._record(x, y, ok)
        return None


def compute_extensions(gamma: Diagram, cfg: PolicyConfig = DEFAULT.replace(
        scepticism=Scepticism.EXTENSIONS)) -> ExtensionResult:
    """Branch on every unresolved conflict instead of leaving it open.

    Pairs are processed by increasing (degree, x, y).  At a conflict between
    non-precluded candidates of both polarities the current branch forks
    into one accepting the positive candidates and one accepting the
    negative ones.
    """
    if cfg.preclusion_scope is not Scope.OFF_PATH:
        raise UnsupportedPolicy("extensions are implemented for off-path preclusion only")
    schedule = sorted((d, x, y) for x in sorted(gamma.nodes)
                      for y, d in gamma.longest_from(x).items())
    leaves: list[_Branch] = []
    work = [(_Branch(gamma, cfg), 0)]
    while work:
        branch, i = work.pop()
        while i < len(schedule):
            _, x, y = schedule[i]
            i += 1
            fork = branch.step(x, y)
            if fork is not None:
                other = branch.copy()
                branch._record(x, y, fork[0])
                other._record(x, y, fork[1])
                work.append((other, i))
        leaves.append(branch)

    extensions = []
    for b in leaves:
        paths, concl = set(), set()
        for x, y in gamma.pairs():
            v = b.verdict(x, y)
            if v is None:
                continue
            ws = frozenset(Path(x, steps) for steps in b._routes(x, y, last=True))
            paths |= ws
            concl.add(Conclusion(x, y, v, ws, x if gamma.link(x, y) else
                                 min(w.last.source for w in ws)))
        extensions.append(Extension(frozenset(paths), frozenset(concl)))
    extensions.sort(key=lambda e: sorted((k, v.value) for k, v in e.verdicts.items()))
    common = dict(extensions[0].verdicts) if extensions else {}
    for e in extensions[1:]:
        ev = e.verdicts
        common = {k: v for k, v in common.items() if ev.get(k) is v}
    return ExtensionResult(tuple(extensions), common)


__all__ = ["Conclusion", "Engine", "EmptyReportSet", "Extension", "ExtensionResult",
           "Resolution", "SourceReport", "compute_extensions", "degree", "is_valid",
           "query", "resolve_sources", "signposts"]
