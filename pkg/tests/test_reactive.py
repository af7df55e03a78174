import pytest
from hypothesis import given, settings

from inet.config import DEFAULT, Scope, UnsupportedPolicy, Validity
from inet.engine import Engine
from inet.net import NEG, POS, diagram, neg, pos
from inet.reactive import (TRANSITIONS, DoubleArrow, PairLabel, ReactiveNet, WalkConflict, compile,
                           label_all, recompile, to_dot, walk)

from conftest import diagrams


def arrows(rn):
    return {str(d) for d in rn.double_arrows}


def test_updown_from_u(updown):
    rn = compile(updown, "u")
    assert arrows(rn) == {"(u -> v) => (v -> y)", "(u -> x) => (v -> y)"}
    assert walk(rn, "y") is NEG


def test_updown_from_z(updown):
    rn = compile(updown, "z")
    assert not any(d.blocked == pos("v", "y") for d in rn.double_arrows)
    assert walk(rn, "y") is POS


def test_tweety_from_a(tweety):
    assert arrows(compile(tweety, "a")) == {"(a -> b) => (b -> d)", "(a -> c) => (b -> d)"}


def test_inheruniv_from_x(inheruniv):
    assert arrows(compile(inheruniv, "x")) == {
        "(x -> c) => (g !> b)", "(x -> c) => (b !> y)", "(x -> c) => (f !> a)"}


def test_chain_has_no_double_arrows():
    assert compile(diagram(pos("a", "b"), pos("b", "c")), "a").double_arrows == frozenset()


def test_walk_to_origin(tweety):
    assert walk(compile(tweety, "a"), "a") is None


def test_walk_reports_conflicts(nixon):
    with pytest.raises(WalkConflict):
        walk(ReactiveNet(nixon, "a"), "d")


def test_on_path_unsupported(tweety):
    with pytest.raises(UnsupportedPolicy):
        compile(tweety, "a", DEFAULT.replace(preclusion_scope=Scope.ON_PATH))


def test_double_arrow_links_checked(tweety):
    with pytest.raises(ValueError):
        ReactiveNet(tweety, "a", frozenset([DoubleArrow(pos("a", "b"), pos("x", "y"))]))


def test_labels_tweety(tweety):
    t = label_all(tweety, "a")
    assert (t["c"], t["b"], t["d"]) == (PairLabel.VPOS, PairLabel.VPOS, PairLabel.VNEG)


def test_labels_nixon(nixon):
    t = label_all(nixon, "a")
    assert t["d"] is PairLabel.STAR
    assert (("a", "d"), PairLabel.PPOS, PairLabel.PBOTH) in t.transitions


def test_unreachable_pair_untouched(tweety):
    t = label_all(tweety, "d")
    assert t["a"] is PairLabel.STAR
    assert not t.transitions


def test_predecessor_lists(tweety):
    assert label_all(tweety, "a").predecessors["b"] == {"a", "c"}


@pytest.mark.parametrize("cfg", [DEFAULT, DEFAULT.replace(preclusion_validity=Validity.TOTAL)])
def test_walk_equivalence_corpus(corpus, cfg):
    for _, g in corpus.nets:
        e = Engine(g, cfg)
        for x in g.nodes:
            rn = compile(g, x, cfg)
            for y in g.nodes - {x}:
                assert walk(rn, y) is e.verdict(x, y)


@settings(max_examples=100, deadline=None)
@given(diagrams(max_nodes=8))
def test_walk_equivalence(g):
    e = Engine(g)
    for x in g.nodes:
        rn = compile(g, x)
        assert recompile(rn) == rn
        for y in g.nodes - {x}:
            assert walk(rn, y) is e.verdict(x, y)


@settings(max_examples=100, deadline=None)
@given(diagrams(max_nodes=8))
def test_labels_match_engine(g):
    e = Engine(g)
    memo = {}
    for x in g.nodes:
        t = label_all(g, x, _memo=memo)
        assert all((a, b) in TRANSITIONS for _, a, b in t.transitions)
        assert not any(not lab.final for lab in t.labels.values())
        for y in g.nodes - {x}:
            assert t.verdict(y) is e.verdict(x, y)


def test_dot_shape(updown):
    dot = to_dot(compile(updown, "u"))
    assert dot.startswith('digraph "u" {')
    assert '"u|v" -> "v|y" [style=dashed, label="blocks"];' in dot
    assert dot.count("dashed") == 2
    assert '"x|y" [shape=point];' not in dot


def test_dot_deterministic(inheruniv):
    assert to_dot(compile(inheruniv, "c")) == to_dot(compile(inheruniv, "c"))


def test_dot_marks_negative_links(tweety):
    assert '"c" -> "d" [label="!"];' in to_dot(compile(tweety, "a"))


def test_on_path_validity_depends_on_the_route():
    # both routes start with x -> a, so a double arrow fired by x -> a cannot tell them apart
    g = diagram(pos("x", "a"), pos("a", "p"), pos("a", "q"), pos("p", "k"), pos("q", "k"),
                neg("q", "z"), pos("k", "z"), pos("a", "z"))
    e = Engine(g, DEFAULT.replace(preclusion_scope=Scope.ON_PATH))
    routes = {str(p) for p in e.valid_paths("x", "z")}
    assert "x -> a -> p -> k -> z" in routes
    assert "x -> a -> q -> k -> z" not in routes
