import time

import pytest

from cfdigraph.diagram import Arc, TransitionDiagram, build_diagram, walk_label
from cfdigraph.engine import (
    NfaGenerator,
    automaton_from_diagram,
    diagram_from_automaton,
    enumerate_unpruned,
    enumerate_words,
    find_walk,
    generate,
    member,
    member_unpruned,
)
from cfdigraph.errors import AutomatonError, DiagramError, InputError
from cfdigraph.grammar import cyk_member, enumerate_oracle, parse_grammar, to_cnf, words_up_to
from cfdigraph.monoid import EPS, WPair, emit, pop, push
from oracles import cnf_corpus


@pytest.fixture
def d1(example1):
    return build_diagram(example1)


@pytest.mark.parametrize("word, expected", [("01", True), ("0011", True), ("10", False), ("001", False), ("0", False)])
def test_member_example1(d1, example1, word, expected):
    assert member(d1, "S", word) is expected
    assert cyk_member(example1, "S", word) is expected


@pytest.mark.parametrize("word", ["", "02"])
def test_member_input_errors(d1, word):
    with pytest.raises(InputError):
        member(d1, "S", word)


def test_member_unknown_start(d1):
    with pytest.raises(InputError):
        member(d1, "Z", "01")


def test_member_rejects_invalid_diagram():
    d = TransitionDiagram({"S", "A"}, {"a"}, (Arc("S", "A", push("A")), Arc("A", "Z", emit("a"))))
    with pytest.raises(DiagramError):
        member(d, "S", "a")


def test_find_walk_shortest(d1):
    walk = find_walk(d1, "S", "01")
    assert walk == [Arc("S", "A", push("C")), Arc("A", "Z", emit("0")), Arc("Z", "C", pop("C")), Arc("C", "Z", emit("1"))]
    assert walk_label(d1, walk) == WPair("01", EPS)


def test_find_walk_absent(d1):
    assert find_walk(d1, "S", "0") is None


def test_find_walk_longer(d1):
    walk = find_walk(d1, "S", "000111")
    assert walk_label(d1, walk) == WPair("000111", EPS)
    assert walk[0].source == "S" and walk[-1].target == "Z"


def test_enumerate_example1(d1):
    assert enumerate_words(d1, "S", 12) == ["0" * n + "1" * n for n in range(1, 7)]
    assert enumerate_words(d1, "S", 1) == []


def test_enumerate_single_rule():
    d = build_diagram(to_cnf(parse_grammar("S -> a")))
    assert enumerate_words(d, "S", 3) == ["a"]


def test_enumerate_order_is_length_lex():
    g = to_cnf(parse_grammar("S -> S S\nS -> a\nS -> b"))
    words = enumerate_words(build_diagram(g), "S", 3)
    assert words == list(words_up_to("ab", 3))


def test_enumerate_bad_bound(d1):
    with pytest.raises(InputError):
        enumerate_words(d1, "S", 0)


def test_left_recursion_terminates():
    g = to_cnf(parse_grammar("S -> S A\nS -> a\nA -> S S"))
    d = build_diagram(g)
    t = time.perf_counter()
    assert enumerate_words(d, "S", 7) == enumerate_oracle(g, "S", 7)
    assert not member(d, "S", "aa")
    assert time.perf_counter() - t < 5


def test_unproductive_nonterminals_tolerated():
    g = to_cnf(parse_grammar("S -> a\nS -> U S\nU -> U U"))
    d = build_diagram(g)
    assert enumerate_words(d, "S", 4) == ["a"]
    assert enumerate_words(d, "U", 4) == []


@pytest.mark.parametrize("g", cnf_corpus(40, seed=11))
def test_pruned_matches_unpruned(g):
    d = build_diagram(g)
    for a in sorted(g.nonterminals):
        assert enumerate_words(d, a, 5) == enumerate_unpruned(d, a, 5) == enumerate_oracle(g, a, 5)
        for w in words_up_to(g.terminals, 4):
            assert member(d, a, w) == member_unpruned(d, a, w) == cyk_member(g, a, w)


def test_automaton_example1(d1):
    y = automaton_from_diagram(d1, "S")
    assert dict(y.delta) == {"S": {"A"}, "A": {"Z"}, "Z": {"B", "C"}, "B": {"S"}, "C": {"Z"}}
    assert dict(y.labels) == {
        ("S", "A"): {push("B"), push("C")},
        ("A", "Z"): {emit("0")},
        ("Z", "B"): {pop("B")},
        ("Z", "C"): {pop("C")},
        ("B", "S"): {push("C")},
        ("C", "Z"): {emit("1")},
    }
    assert y.states == {"S", "A", "B", "C", "Z"}
    assert diagram_from_automaton(y) == d1


def _y(delta, labels, start="S", nts=("S", "A", "C")):
    return NfaGenerator(frozenset("a"), frozenset(nts), start, delta, labels)


def test_automaton_condition_1():
    with pytest.raises(AutomatonError) as exc:
        _y({"A": {"Z"}, "Z": {"C"}}, {("A", "Z"): {push("C")}, ("Z", "C"): {pop("C")}})
    assert exc.value.item == 1


def test_automaton_condition_1_from_z():
    with pytest.raises(AutomatonError) as exc:
        _y({"Z": {"Z"}}, {("Z", "Z"): {emit("a")}})
    assert exc.value.item == 1


def test_automaton_condition_2_missing_pop():
    with pytest.raises(AutomatonError) as exc:
        _y({"S": {"A"}, "A": {"Z"}}, {("S", "A"): {push("C")}, ("A", "Z"): {emit("a")}})
    assert exc.value.item == 2


def test_automaton_condition_2_wrong_pop():
    with pytest.raises(AutomatonError) as exc:
        _y({"S": {"A"}, "Z": {"C"}}, {("S", "A"): {push("C")}, ("Z", "C"): {pop("A")}})
    assert exc.value.item == 2


def test_automaton_condition_3_labels_off_transitions():
    with pytest.raises(AutomatonError) as exc:
        _y({"S": {"Z"}}, {("S", "Z"): {emit("a")}, ("A", "Z"): {emit("a")}})
    assert exc.value.item == 3


def test_generate_example1(d1):
    y = automaton_from_diagram(d1, "S")
    assert generate(y, 6) == ["01", "0011", "000111"]


@pytest.mark.parametrize("g", cnf_corpus(30, seed=3))
def test_generate_never_emits_epsilon(g):
    y = automaton_from_diagram(build_diagram(g), "S")
    words = generate(y, 5)
    assert "" not in words
    assert words == enumerate_words(build_diagram(g), "S", 5)


def test_generate_single_rule():
    y = automaton_from_diagram(build_diagram(to_cnf(parse_grammar("S -> a"))), "S")
    assert generate(y, 1) == ["a"]
