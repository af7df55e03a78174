"""``inet``: query nets, compile reactive graphs, run the corpus."""
from __future__ import annotations

import argparse
import sys
import time

from . import dsl
from .config import PolicyConfig, Resolver, Scepticism, Scope, UnsupportedPolicy, Validity
from .engine import Engine, query
from .net import UnknownNode
from .reactive import compile as compile_net, to_dot

BUNDLED = "@corpus"


def _load(path: str) -> dsl.NetFile:
    if path == BUNDLED:
        return dsl.load_corpus()
    return dsl.load(path)


def _policy(args) -> PolicyConfig:
    return PolicyConfig(Scope(args.preclusion), Validity(args.validity),
                        Scepticism(args.mode), Resolver(args.resolver))


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preclusion", choices=[s.value for s in Scope], default=Scope.OFF_PATH.value)
    p.add_argument("--validity", choices=[v.value for v in Validity], default=Validity.SPLIT.value)
    p.add_argument("--mode", choices=[m.value for m in Scepticism], default=Scepticism.DIRECT.value)
    p.add_argument("--resolver", choices=[r.value for r in Resolver], default=Resolver.P22.value)


_WORD = {"pos": "POSITIVE", "neg": "NEGATIVE"}


def _answer(c) -> str:
    """One line: the verdict and its least witness."""
    if c.verdict is None:
        return "NONE"
    return f"{_WORD[c.verdict.value]} {c.witness}"


def cmd_query(args) -> int:
    nf = _load(args.file)
    gamma = nf.net(args.net)
    cfg = _policy(args)
    c = query(gamma, args.x, args.y, cfg)
    print(_answer(c))
    if args.all:
        for w in sorted(c.witnesses, key=lambda p: p.sort_key()):
            print(f"  {w}")
    if args.strength and c.strength is not None:
        print(f"strength {c.strength}")
    if args.signposts:
        if cfg.scepticism is not Scepticism.DIRECT:
            raise UnsupportedPolicy("signposts need a directly sceptical policy")
        for l in sorted(Engine(gamma, cfg).signposts(args.x, args.y)):
            print(f"stop {l}")
    return 0


def cmd_compile(args) -> int:
    nf = _load(args.file)
    rn = compile_net(nf.net(args.net), args.origin, _policy(args))
    sys.stdout.write(to_dot(rn))
    return 0


def cmd_corpus(args) -> int:
    nf = _load(args.file)
    cfg = _policy(args)
    passed = failed = 0
    for q in nf.queries:
        c = query(nf.net(q.net), q.subject, q.predicate, cfg)
        status = "    "
        if q.has_expect:
            ok = c.verdict is q.expect
            passed += ok
            failed += not ok
            status = "ok  " if ok else "FAIL"
        strength = f" [{c.strength}]" if c.strength else ""
        print(f"{status} {q.net}: {q.subject} ? {q.predicate} -> {_answer(c)}{strength}")
    tail = ", all passed" if failed == 0 and passed else ""
    print(f"{passed} passed, {failed} failed{tail}")
    return 1 if failed else 0


def cmd_check(args) -> int:
    """Compare the engine with the brute-force oracle on random nets."""
    from .config import PRECLUSION_POLICIES
    from .oracle import enumerate_paths, naive_is_valid, random_diagrams, seed_from_env

    seed = args.seed if args.seed is not None else seed_from_env()
    start = time.perf_counter()
    checked = mismatches = 0
    for gamma in random_diagrams(args.count, seed, max_nodes=args.max_nodes, density=args.density):
        for cfg in PRECLUSION_POLICIES:
            engine = Engine(gamma, cfg)
            for x, y in gamma.pairs():
                for p in enumerate_paths(gamma, x, y):
                    checked += 1
                    if engine.is_valid(p) != naive_is_valid(gamma, p, cfg):
                        mismatches += 1
                        print(f"mismatch under {cfg}: {p} in {gamma!r}")
    print(f"seed {seed}: {checked} paths checked, {mismatches} mismatches "
          f"({time.perf_counter() - start:.1f}s)")
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="inet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", help="answer 'is x a y?'")
    p.add_argument("file", help=f".inet file, or {BUNDLED} for the bundled corpus")
    p.add_argument("net")
    p.add_argument("x")
    p.add_argument("y")
    _add_policy_flags(p)
    p.add_argument("--all", action="store_true", help="print every witness")
    p.add_argument("--strength", action="store_true", help="print the information source")
    p.add_argument("--signposts", action="store_true", help="print links not to take")
    p.add_argument("--seed", type=int, default=None, help="accepted for uniformity; queries are deterministic")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compile", help="reactive graph for one origin, as DOT")
    p.add_argument("file")
    p.add_argument("net")
    p.add_argument("origin")
    _add_policy_flags(p)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("corpus", help="run every query in a file and check expectations")
    p.add_argument("file", nargs="?", default=BUNDLED)
    _add_policy_flags(p)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("check", help="engine against oracle on random nets")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--max-nodes", type=int, default=8)
    p.add_argument("--density", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=None, help="defaults to $ORACLE_SEED or 0")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (dsl.SyntaxError, dsl.SemanticError, UnsupportedPolicy, OSError) as e:
        print(f"inet: {e}", file=sys.stderr)
        return 2
    except UnknownNode as e:
        print(f"inet: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"inet: unknown net {e.args[0]!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
