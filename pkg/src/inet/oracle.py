"""Brute-force ground truth.

Nothing here is clever or cached: paths are enumerated exhaustively and the
inductive validity definition is transcribed clause by clause, with every
quantifier realised as a loop over enumerated paths.  Only meant for small
nets (see ``MAX_NODES``).
"""
from __future__ import annotations

import os
import random
from typing import Iterator

from .config import DEFAULT, PolicyConfig, Resolver, Scepticism, Scope, UnsupportedPolicy, Validity
from .net import (NEG, POS, Diagram, DiagramError, Link, Path, PathKind, Polarity,
                  PathNotInDiagram, build_diagram)

MAX_NODES = 12


class DiagramTooLarge(ValueError):
    pass


def _guard(gamma: Diagram) -> None:
    if len(gamma.nodes) > MAX_NODES:
        raise DiagramTooLarge(f"{len(gamma.nodes)} nodes, oracle limit is {MAX_NODES}")


def _walk(gamma: Diagram, at: str, y: str, steps: list[Link], kind: PathKind) -> Iterator[Path]:
    for l in gamma.out_links(at):
        steps.append(l)
        if l.target == y:
            yield Path(steps[0].source, tuple(steps), kind)
        if l.positive or kind is PathKind.GENERALIZED:
            yield from _walk(gamma, l.target, y, steps, kind)
        steps.pop()


def enumerate_paths(gamma: Diagram, x: str, y: str,
                    kind: PathKind = PathKind.POTENTIAL) -> list[Path]:
    """Every generalized (or potential) path from ``x`` to ``y``."""
    _guard(gamma)
    gamma.check(x, y)
    return sorted(_walk(gamma, x, y, [], kind), key=Path.sort_key)


def _positive_paths(gamma: Diagram, x: str, y: str) -> list[Path]:
    return [p for p in enumerate_paths(gamma, x, y) if p.polarity is POS]


def _valid_positive_exists(gamma, x, y, cfg) -> bool:
    return any(naive_is_valid(gamma, p, cfg) for p in _positive_paths(gamma, x, y))


def _valid_positive_through(gamma, x, v, u, cfg) -> bool:
    """Is there a valid positive path from x to u visiting v?  (v == x allowed.)"""
    return any(v in p.nodes and naive_is_valid(gamma, p, cfg) for p in _positive_paths(gamma, x, u))


def _opposes(link: Link, polarity: Polarity, resolver: Resolver) -> bool:
    # which links into y count against a source claiming `polarity`
    return resolver is Resolver.P21 or link.polarity is not polarity


def naive_is_valid(gamma: Diagram, sigma: Path, cfg: PolicyConfig = DEFAULT) -> bool:
    """Literal recursive reading of the inductive validity definition."""
    _guard(gamma)
    if cfg.scepticism is not Scepticism.DIRECT:
        raise UnsupportedPolicy("the oracle is directly sceptical only")
    if sigma.kind is not PathKind.POTENTIAL:
        raise ValueError("only potential paths can be valid")
    if not gamma.contains_path(sigma):
        raise PathNotInDiagram(str(sigma))

    # Case I: a direct link
    if len(sigma) == 1:
        return True
    x, y = sigma.origin, sigma.endpoint
    prefix = sigma.prefix()
    last = sigma.last
    u, s = last.source, last.polarity

    # (1) upward chaining
    if not naive_is_valid(gamma, prefix, cfg):
        return False

    # (2) sigma is not precluded
    for l in gamma.in_links(y):
        v = l.source
        if v == u or not _opposes(l, s, cfg.resolver):
            continue
        if cfg.preclusion_scope is Scope.ON_PATH:
            if v in prefix.nodes:
                return False
        elif cfg.preclusion_validity is Validity.TOTAL:
            if _valid_positive_through(gamma, x, v, u, cfg):
                return False
        else:
            if (v == x or _valid_positive_exists(gamma, x, v, cfg)) and \
                    _valid_positive_exists(gamma, v, u, cfg):
                return False

    # (3) every conflicting candidate is itself precluded
    for l in gamma.in_links(y):
        v = l.source
        if l.polarity is s:
            continue
        routes = [None] if v == x else [p for p in _positive_paths(gamma, x, v)
                                        if naive_is_valid(gamma, p, cfg)]
        for tau in routes:
            if not _conflict_precluded(gamma, x, v, y, s, tau, cfg):
                return False
    return True


def _conflict_precluded(gamma, x, v, y, s, tau, cfg) -> bool:
    for l in gamma.in_links(y):
        z = l.source
        if z == v or not (l.polarity is s or cfg.resolver is Resolver.P21):
            continue
        if cfg.preclusion_scope is Scope.ON_PATH:
            on_tau = (x,) if tau is None else tau.nodes[:-1]
            if z in on_tau:
                return True
        elif z == x:
            return True
        elif cfg.preclusion_validity is Validity.TOTAL:
            if _valid_positive_through(gamma, x, z, v, cfg):
                return True
        elif _valid_positive_exists(gamma, x, z, cfg) and _valid_positive_exists(gamma, z, v, cfg):
            return True
    return False


def naive_query(gamma: Diagram, x: str, y: str, cfg: PolicyConfig = DEFAULT) -> Polarity | None:
    """Verdict for "is x a y?" by filtering every potential path."""
    valid = {p.polarity for p in enumerate_paths(gamma, x, y) if naive_is_valid(gamma, p, cfg)}
    if len(valid) > 1:
        raise AssertionError(f"both polarities valid for {x}..{y}")
    return valid.pop() if valid else None


def naive_valid_paths(gamma: Diagram, x: str, y: str, cfg: PolicyConfig = DEFAULT) -> set[Path]:
    return {p for p in enumerate_paths(gamma, x, y) if naive_is_valid(gamma, p, cfg)}


# -- random nets -------------------------------------------------------------

def seed_from_env(default: int = 0) -> int:
    raw = os.environ.get("ORACLE_SEED")
    return int(raw) if raw else default


def random_diagram(rng: random.Random, max_nodes: int = 8, density: float = 0.25,
                   min_nodes: int = 2) -> Diagram:
    """Random DAG over nodes n0..n{k-1}.

    Each ordered pair (i < j in a shuffled order) gets a link with probability
    ``density``; polarity is a fair coin.  Each unordered pair is linked in
    one direction at most, so hard contradictions cannot arise.
    """
    k = rng.randint(min_nodes, max_nodes)
    names = [f"n{i}" for i in range(k)]
    order = names[:]
    rng.shuffle(order)
    links = []
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if rng.random() < density:
                links.append(Link(a, b, POS if rng.random() < 0.5 else NEG))
    return build_diagram(names, links)


def random_diagrams(count: int, seed: int, **kw) -> Iterator[Diagram]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_diagram(rng, **kw)


__all__ = ["DiagramTooLarge", "enumerate_paths", "naive_is_valid", "naive_query",
           "naive_valid_paths", "random_diagram", "random_diagrams", "seed_from_env",
           "DiagramError"]
